#pragma once

// Independent reference computations used to check the library. None of these
// call into the code paths they are compared against.

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "torloop/io.hpp"
#include "torloop/scalar.hpp"
#include "torloop/twist.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Value of a cyclotomic scalar under the embedding zeta_M -> exp(2 pi i / M).
inline cplx embed(const torloop::CycloScalar& x) {
  const double pi = 3.14159265358979323846;
  const cplx z = std::polar(1.0, 2 * pi / x.modulus());
  cplx acc = 0, p = 1;
  for (const auto& q : x.coeffs()) {
    acc += q.get_d() * p;
    p *= z;
  }
  return acc;
}

inline bool close(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) <= tol * (1 + std::abs(a) + std::abs(b)); }

/// 2x2 matrices over Q: the defining representation of sl2.
struct M2 {
  torloop::Rational a, b, c, d;
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  M2 operator-(const M2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  M2 operator+(const M2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  M2 scaled(const torloop::Rational& s) const { return {s * a, s * b, s * c, s * d}; }
  bool operator==(const M2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  torloop::Rational trace() const { return a + d; }
};

inline M2 sl2_e() { return {0, 1, 0, 0}; }
inline M2 sl2_f() { return {0, 0, 1, 0}; }
inline M2 sl2_h() { return {1, 0, 0, -1}; }
inline M2 bracket(const M2& x, const M2& y) { return x * y - y * x; }
/// Trace form; on sl2 it already gives (e, f) = 1 and long roots length 2.
inline torloop::Rational trace_form(const M2& x, const M2& y) { return (x * y).trace(); }

/// Coordinates (e, f, h) of an sl2 matrix.
inline std::vector<torloop::Rational> sl2_coords(const M2& m) { return {m.b, m.c, m.a}; }

/// sum over subsets S of {0..d-1} of (-1)^|S| f(sum_S steps)
template <class F>
void inclusion_exclusion(const std::vector<std::vector<std::int64_t>>& steps, std::size_t len, F&& f) {
  const std::size_t d = steps.size();
  for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
    std::vector<std::int64_t> shift(len, 0);
    int sign = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (mask & (1ULL << i)) {
        sign = -sign;
        for (std::size_t j = 0; j < len; ++j) shift[j] += steps[i][j];
      }
    }
    f(sign, shift);
  }
}

inline std::int64_t gcd_all(const std::vector<std::int64_t>& c) {
  std::int64_t g = 0;
  for (auto x : c) g = std::gcd(g, x);
  return g;
}

inline torloop::TwistedSetup load_setup(const std::string& name) {
  return torloop::setup_from_json(torloop::read_text_file(std::string(TORLOOP_DATA_DIR) + "/" + name));
}

/// Adapted index whose vector is a multiple of Chevalley basis vector `chev`, with that multiple.
inline std::pair<std::size_t, torloop::CycloScalar> adapted_of(const torloop::TwistedSetup& s, std::size_t chev) {
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const auto& v = s.basis(a).chev;
    bool only = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != chev && !v[i].is_zero()) only = false;
    }
    if (only && !v[chev].is_zero()) return {a, v[chev]};
  }
  throw torloop::Error("no adapted vector is proportional to Chevalley vector " + std::to_string(chev));
}

}  // namespace oracle
