#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torloop {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;  // row-major

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t m);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(std::int64_t s, const IntVec& a);
bool is_zero(const IntVec& a);
std::string to_string(const IntVec& a);

/// Reduce each coordinate modulo the matching order.
IntVec residue(const IntVec& k, const IntVec& orders);
/// k lies in the lattice  m_0 Z + ... + m_n Z.
bool in_lattice(const IntVec& k, const IntVec& orders);

IntMatrix int_identity(std::size_t n);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
IntVec int_mul(const IntMatrix& a, const IntVec& v);
IntMatrix int_transpose(const IntMatrix& a);
std::int64_t int_det(const IntMatrix& a);
/// Inverse of a unimodular matrix; throws AlgebraError if det != +-1.
IntMatrix int_inverse(const IntMatrix& a);

/// All points of the box prod [lo_i, hi_i], lexicographic.
std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi);

}  // namespace torloop
