#include "torloop/lattice.hpp"

#include <numeric>
#include <sstream>

#include <gmpxx.h>

#include "torloop/error.hpp"

namespace torloop {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVec scale(std::int64_t s, const IntVec& a) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

bool is_zero(const IntVec& a) {
  for (auto x : a) {
    if (x != 0) return false;
  }
  return true;
}

std::string to_string(const IntVec& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

IntVec residue(const IntVec& k, const IntVec& orders) {
  IntVec out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = floor_mod(k[i], orders[i]);
  return out;
}

bool in_lattice(const IntVec& k, const IntVec& orders) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (floor_mod(k[i], orders[i]) != 0) return false;
  }
  return true;
}

IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

IntVec int_mul(const IntMatrix& a, const IntVec& v) {
  IntVec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

IntMatrix int_transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace {

// Fraction-free elimination over Q; returns det and optionally the inverse.
mpq_class rational_det_inverse(const IntMatrix& a, std::vector<std::vector<mpq_class>>* inv) {
  const std::size_t n = a.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw AlgebraError("integer matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a[i][j]);
    m[i][n + i] = 1;
  }
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    mpq_class piv_inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= piv_inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  if (inv) {
    inv->assign(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) (*inv)[i][j] = m[i][n + j];
  }
  return det;
}

}  // namespace

std::int64_t int_det(const IntMatrix& a) {
  mpq_class d = rational_det_inverse(a, nullptr);
  return d.get_num().get_si();
}

IntMatrix int_inverse(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> inv;
  mpq_class d = rational_det_inverse(a, &inv);
  if (d != 1 && d != -1) throw AlgebraError("integer matrix is not unimodular (det " + d.get_str() + ")");
  IntMatrix out(a.size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = inv[i][j].get_num().get_si();
  return out;
}

std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi) {
  std::vector<IntVec> pts;
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (hi[i] < lo[i]) return pts;
  }
  IntVec cur = lo;
  while (true) {
    pts.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < n; ++j) cur[j] = lo[j];
        break;
      }
      if (i == 0) return pts;
    }
    if (n == 0) return pts;
  }
}

}  // namespace torloop
