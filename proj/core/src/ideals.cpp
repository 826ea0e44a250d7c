#include "torloop/ideals.hpp"

#include <algorithm>

#include "torloop/error.hpp"

namespace torloop {

namespace {

template <class Map>
void acc(Map& m, const typename Map::key_type& k, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

bool in_gamma(const TwistedSetup& s, const IntVec& r) {
  return r.size() == s.n() && in_lattice(r, s.spatial_orders());
}

// All subset sums of rs, paired with (-1)^|S|.
std::vector<std::pair<IntVec, int>> signed_subset_sums(const IntVec& base, const std::vector<IntVec>& rs) {
  std::vector<std::pair<IntVec, int>> out{{base, 1}};
  for (const auto& r : rs) {
    const std::size_t cur = out.size();
    for (std::size_t i = 0; i < cur; ++i) out.emplace_back(add(out[i].first, r), -out[i].second);
  }
  return out;
}

// Nondecreasing sequences of length d over 0..n-1.
std::vector<std::vector<std::size_t>> multisets(std::size_t n, int d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(cur.size()) == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = start; j < n; ++j) {
      cur.push_back(j);
      self(self, j);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Points of base + (m .* Z^n) inside the box.
std::vector<IntVec> coset_points(const IntVec& cls, const IntVec& m, const Box& b) {
  const std::size_t n = m.size();
  IntVec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t a = b.lo[i] - cls[i], z = b.hi[i] - cls[i];
    lo[i] = -((-a - floor_mod(-a, m[i])) / m[i]);
    hi[i] = (z - floor_mod(z, m[i])) / m[i];
    if (lo[i] > hi[i]) return {};
  }
  std::vector<IntVec> out;
  for (const auto& q : box_points(lo, hi)) {
    IntVec k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = cls[i] + m[i] * q[i];
    out.push_back(std::move(k));
  }
  return out;
}

// Row echelon over Q keyed by leading (largest) index; rows are top-reduced only.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Rational>;

  // Reduces v in place; true when it vanishes.
  bool reduce(Row& v) const {
    while (!v.empty()) {
      auto last = std::prev(v.end());
      auto it = rows_.find(last->first);
      if (it == rows_.end()) return false;
      const Rational f = last->second;
      for (const auto& [j, c] : it->second) {
        auto [pos, ins] = v.try_emplace(j, -f * c);
        if (!ins) {
          pos->second -= f * c;
          if (pos->second == 0) v.erase(pos);
        }
      }
    }
    return true;
  }

  void add(Row v) {
    if (reduce(v)) return;
    const Rational lead = std::prev(v.end())->second;
    for (auto& [j, c] : v) c /= lead;
    const std::size_t p = std::prev(v.end())->first;
    rows_.emplace(p, std::move(v));
  }

 private:
  std::map<std::size_t, Row> rows_;
};

// Is target (coefficients on coset points) in the span of t^k prod (1 - t^{m_j e_j}) within the box?
bool truncated_span_contains(const std::map<IntVec, CycloScalar>& target, const IntVec& cls, const IntVec& m,
                             const Box& box, int d) {
  if (d <= 0) return true;
  auto pts = coset_points(cls, m, box);
  std::map<IntVec, std::size_t> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
  for (const auto& [k, c] : target) {
    if (!index.count(k)) throw InputError("support escapes the truncation box at " + to_string(k));
  }
  const std::size_t n = m.size();
  std::vector<IntVec> steps;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(n, 0);
    e[j] = m[j];
    steps.push_back(e);
  }
  SparseEchelon span;
  const auto shapes = multisets(n, d);
  for (const auto& k : pts) {
    for (const auto& ms : shapes) {
      std::vector<IntVec> rs;
      for (auto j : ms) rs.push_back(steps[j]);
      SparseEchelon::Row v;
      bool inside = true;
      for (const auto& [p, sign] : signed_subset_sums(k, rs)) {
        auto it = index.find(p);
        if (it == index.end()) {
          inside = false;
          break;
        }
        v[it->second] += sign;
      }
      if (!inside) continue;
      for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
      span.add(std::move(v));
    }
  }
  // The generators are rational, so each power-basis coordinate is tested separately.
  std::size_t width = 0;
  for (const auto& [k, c] : target) width = std::max(width, c.coeffs().size());
  for (std::size_t e = 0; e < width; ++e) {
    SparseEchelon::Row t;
    for (const auto& [k, c] : target) {
      if (e < c.coeffs().size() && c.coeffs()[e] != 0) t[index.at(k)] = c.coeffs()[e];
    }
    if (!span.reduce(t)) return false;
  }
  return true;
}

// Multi-indices beta with |beta| < d.
std::vector<IntVec> low_multi_indices(std::size_t n, int d) {
  std::vector<IntVec> out;
  if (d <= 0) return out;
  IntVec lo(n, 0), hi(n, d - 1);
  for (auto& b : box_points(lo, hi)) {
    std::int64_t s = 0;
    for (auto x : b) s += x;
    if (s < d) out.push_back(b);
  }
  return out;
}

bool moments_vanish(const std::map<IntVec, CycloScalar>& coeffs, const IntVec& cls, const IntVec& m, int d) {
  const std::size_t n = m.size();
  for (const auto& beta : low_multi_indices(n, d)) {
    CycloScalar sum;
    for (const auto& [k, c] : coeffs) {
      mpz_class mono = 1;
      for (std::size_t i = 0; i < n; ++i) {
        mpz_class q = (k[i] - cls[i]) / m[i];
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(beta[i]));
        mono *= pw;
      }
      sum += c * CycloScalar(Rational(mono));
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

Box grow(IntVec lo, IntVec hi, const IntVec& m, int d) {
  const std::int64_t steps = std::max(d, 1);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= steps * m[i];
    hi[i] += steps * m[i];
  }
  return {lo, hi};
}

}  // namespace

LoopElem loop_monomial(const TwistedSetup& s, std::size_t x, const IntVec& k, const CycloScalar& c) {
  LoopElem e;
  acc(e, {x, k}, c);
  validate_loop(s, e);
  return e;
}

void validate_loop(const TwistedSetup& s, const LoopElem& x) {
  const auto& gn = s.g_naught();
  for (const auto& [key, c] : x) {
    const auto& [idx, k] = key;
    if (std::find(gn.begin(), gn.end(), idx) == gn.end()) {
      throw InputError("basis vector " + std::to_string(idx) + " is not in g-naught");
    }
    if (k.size() != s.n() || residue(k, s.spatial_orders()) != s.spatial_class(idx)) {
      throw InputError("degree " + to_string(k) + " does not match the grading of " + s.label(idx));
    }
  }
}

LoopElem expand_fd(const TwistedSetup& s, const FdGenerator& g) {
  for (const auto& r : g.rs) {
    if (!in_gamma(s, r)) throw InputError("generator step " + to_string(r) + " is not in Gamma");
  }
  LoopElem out;
  for (const auto& [k, sign] : signed_subset_sums(g.k, g.rs)) acc(out, {g.x, k}, CycloScalar(static_cast<long>(sign)));
  validate_loop(s, out);
  return out;
}

DerElem d_element(const RatVec& u, const IntVec& r) {
  DerElem out;
  for (std::size_t i = 0; i < u.size(); ++i) acc(out, {r, i}, CycloScalar(u[i]));
  return out;
}

DerElem expand_id(const TwistedSetup& s, const IdGenerator& g) {
  if (g.u.size() != s.n()) throw InputError("u must have length n");
  if (!in_gamma(s, g.r)) throw InputError("r = " + to_string(g.r) + " is not in Gamma");
  for (const auto& x : g.ss) {
    if (!in_gamma(s, x)) throw InputError("generator step " + to_string(x) + " is not in Gamma");
  }
  DerElem out;
  const IntVec zero(s.n(), 0);
  for (const auto& [r, sign] : signed_subset_sums(g.r, g.ss)) {
    add_to(out, d_element(g.u, r), CycloScalar(static_cast<long>(sign)));
    add_to(out, d_element(g.u, zero), CycloScalar(static_cast<long>(-sign)));
  }
  return out;
}

void add_to(LoopElem& a, const LoopElem& b, const CycloScalar& c) {
  for (const auto& [k, v] : b) acc(a, k, c * v);
}

void add_to(DerElem& a, const DerElem& b, const CycloScalar& c) {
  for (const auto& [k, v] : b) acc(a, k, c * v);
}

LoopElem loop_bracket(const TwistedSetup& s, const LoopElem& a, const LoopElem& b) {
  LoopElem out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      const IntVec deg = add(ka.second, kb.second);
      for (const auto& [z, c] : s.bracket_terms(ka.first, kb.first)) acc(out, {z, deg}, va * vb * c);
    }
  return out;
}

DerElem der_bracket(const DerElem& a, const DerElem& b) {
  // [t^r d_i, t^s d_j] = s_i t^{r+s} d_j - r_j t^{r+s} d_i
  DerElem out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      const auto& [r, i] = ka;
      const auto& [s, j] = kb;
      const IntVec deg = add(r, s);
      acc(out, {deg, j}, va * vb * CycloScalar(static_cast<long>(s[i])));
      acc(out, {deg, i}, va * vb * CycloScalar(static_cast<long>(-r[j])));
    }
  return out;
}

LoopElem der_act(const DerElem& a, const LoopElem& x) {
  LoopElem out;
  for (const auto& [ka, va] : a)
    for (const auto& [kx, vx] : x) {
      const auto& [r, i] = ka;
      const auto& l = kx.second;
      if (l[i] != 0) acc(out, {kx.first, add(l, r)}, va * vx * CycloScalar(static_cast<long>(l[i])));
    }
  return out;
}

Box default_box(const TwistedSetup& s, const LoopElem& x, int d) {
  const std::size_t n = s.n();
  IntVec lo(n, 0), hi(n, 0);
  bool first = true;
  for (const auto& [key, c] : x) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = first ? key.second[i] : std::min(lo[i], key.second[i]);
      hi[i] = first ? key.second[i] : std::max(hi[i], key.second[i]);
    }
    first = false;
  }
  return grow(lo, hi, s.spatial_orders(), d);
}

Box default_box(const TwistedSetup& s, const DerElem& x, int d) {
  const std::size_t n = s.n();
  IntVec lo(n, 0), hi(n, 0);
  for (const auto& [key, c] : x) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], key.first[i]);
      hi[i] = std::max(hi[i], key.first[i]);
    }
  }
  return grow(lo, hi, s.spatial_orders(), d);
}

bool member_F_d(const TwistedSetup& s, const LoopElem& x, int d, const std::optional<Box>& box) {
  validate_loop(s, x);
  const Box b = box ? *box : default_box(s, x, d);
  std::map<std::size_t, std::map<IntVec, CycloScalar>> parts;
  for (const auto& [key, c] : x) parts[key.first][key.second] = c;
  for (const auto& [idx, coeffs] : parts) {
    if (!truncated_span_contains(coeffs, s.spatial_class(idx), s.spatial_orders(), b, d)) return false;
  }
  return true;
}

bool member_F_d_moments(const TwistedSetup& s, const LoopElem& x, int d) {
  validate_loop(s, x);
  std::map<std::size_t, std::map<IntVec, CycloScalar>> parts;
  for (const auto& [key, c] : x) parts[key.first][key.second] = c;
  for (const auto& [idx, coeffs] : parts) {
    if (!moments_vanish(coeffs, s.spatial_class(idx), s.spatial_orders(), d)) return false;
  }
  return true;
}

namespace {

std::map<std::size_t, std::map<IntVec, CycloScalar>> der_parts(const TwistedSetup& s, const DerElem& x) {
  std::map<std::size_t, std::map<IntVec, CycloScalar>> parts;
  for (const auto& [key, c] : x) {
    if (!in_gamma(s, key.first) || key.second >= s.n()) throw InputError("derivation term outside Der A(m)");
    parts[key.second][key.first] = c;
  }
  return parts;
}

}  // namespace

bool member_I_d(const TwistedSetup& s, const DerElem& x, int d, const std::optional<Box>& box) {
  const Box b = box ? *box : default_box(s, x, d);
  const IntVec zero(s.n(), 0);
  for (const auto& [axis, coeffs] : der_parts(s, x)) {
    if (!truncated_span_contains(coeffs, zero, s.spatial_orders(), b, std::max(d, 1))) return false;
  }
  return true;
}

bool member_I_d_moments(const TwistedSetup& s, const DerElem& x, int d) {
  const IntVec zero(s.n(), 0);
  for (const auto& [axis, coeffs] : der_parts(s, x)) {
    if (!moments_vanish(coeffs, zero, s.spatial_orders(), std::max(d, 1))) return false;
  }
  return true;
}

Matrix gl_n_image(const RatVec& u, const IntVec& r) {
  const std::size_t n = u.size();
  if (r.size() != n) throw InputError("u and r must have the same length");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, i) = CycloScalar(u[i] * static_cast<long>(r[j]));
  return m;
}

Matrix gl_n_image(std::size_t n, const DerElem& x) {
  Matrix m(n, n);
  for (const auto& [key, c] : x) {
    const auto& [r, i] = key;
    for (std::size_t j = 0; j < n; ++j) {
      if (r[j] != 0) m(j, i) += c * CycloScalar(static_cast<long>(r[j]));
    }
  }
  return m;
}

}  // namespace torloop
