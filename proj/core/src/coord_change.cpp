#include "torloop/coord_change.hpp"

#include <cstdlib>

#include "torloop/error.hpp"

namespace torloop {

LatticeAuto LatticeAuto::make(IntMatrix b) {
  const std::size_t n = b.size();
  for (const auto& row : b) {
    if (row.size() != n) throw InputError("lattice automorphism must be square");
  }
  LatticeAuto out;
  out.Binv = int_inverse(b);
  out.B = std::move(b);
  return out;
}

LatticeAuto LatticeAuto::identity(std::size_t n1) { return {int_identity(n1), int_identity(n1)}; }

LatticeAuto LatticeAuto::operator*(const LatticeAuto& o) const { return {int_mul(B, o.B), int_mul(o.Binv, Binv)}; }

TauElement apply_lattice_auto(const TwistedSetup& s, const LatticeAuto& b, const TauElement& x) {
  if (!s.untwisted()) throw InputError("change of coordinates is only defined on untwisted setups");
  const std::size_t n1 = s.n() + 1;
  if (b.B.size() != n1) throw InputError("lattice automorphism has the wrong size");
  TauElement out;
  out.setup_id = x.setup_id;
  for (const auto& [key, v] : x.loop) out += TauElement::loop_term(key.first, int_mul(b.B, key.second), v);
  for (const auto& [key, v] : x.central) {
    const IntVec deg = int_mul(b.B, key.first);
    for (std::size_t p = 0; p < n1; ++p) {
      const auto c = b.B[p][key.second];
      if (c != 0) out.central[{deg, p}] += v * CycloScalar(static_cast<long>(c));
    }
  }
  for (const auto& [key, v] : x.deriv) {
    const IntVec deg = int_mul(b.B, key.first);
    for (std::size_t p = 0; p < n1; ++p) {
      const auto c = b.Binv[key.second][p];
      if (c != 0) out += TauElement::deriv_term(deg, p, v * CycloScalar(static_cast<long>(c)));
    }
  }
  out.normalize();
  return out;
}

IntVec transform_charge(const LatticeAuto& b, const IntVec& c) { return int_mul(int_transpose(b.B), c); }

std::pair<LatticeAuto, IntVec> normalize_central_charge(const IntVec& c) {
  if (c.empty() || is_zero(c)) throw InputError("central charge must be nonzero");
  const std::size_t n = c.size();
  IntMatrix b = int_identity(n);
  IntVec v = c;
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t r = 0; r < n; ++r) b[r][dst] -= q * b[r][src];
    v[dst] -= q * v[src];
  };
  while (true) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] != 0 && (piv == n || std::llabs(v[i]) < std::llabs(v[piv]))) piv = i;
    }
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == piv || v[j] == 0) continue;
      col_axpy(j, piv, v[j] / v[piv]);
      if (v[j] != 0) done = false;
    }
    if (done) {
      if (piv != 0) {
        for (std::size_t r = 0; r < n; ++r) std::swap(b[r][0], b[r][piv]);
        std::swap(v[0], v[piv]);
      }
      if (v[0] < 0) {
        for (std::size_t r = 0; r < n; ++r) b[r][0] = -b[r][0];
        v[0] = -v[0];
      }
      break;
    }
  }
  return {LatticeAuto::make(std::move(b)), v};
}

}  // namespace torloop
