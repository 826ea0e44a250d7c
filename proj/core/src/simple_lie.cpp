#include "torloop/simple_lie.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace torloop {

GElement GElement::basis(std::size_t i) {
  GElement g;
  g.coeffs[i] = CycloScalar(1);
  return g;
}

GElement GElement::from_dense(const Vector& v) {
  GElement g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) g.coeffs[i] = v[i];
  }
  return g;
}

Vector GElement::to_dense(std::size_t dim) const {
  Vector v(dim);
  for (const auto& [i, c] : coeffs) {
    if (i >= dim) throw AlgebraError("GElement index out of range");
    v[i] = c;
  }
  return v;
}

namespace {

std::vector<std::vector<Rational>> gram_matrix(char type, int r) {
  const std::size_t n = static_cast<std::size_t>(r);
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, 0));
  auto link = [&](std::size_t i, std::size_t j, const Rational& v) {
    g[i][j] = v;
    g[j][i] = v;
  };
  switch (type) {
    case 'A':
      for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
      g[n - 1][n - 1] = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'C':
      for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
      g[n - 1][n - 1] = 2;
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, Rational(-1, 2));
      link(n - 2, n - 1, -1);
      break;
    case 'D':
      for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'E': {
      for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    }
    case 'F':
      g[0][0] = 2;
      g[1][1] = 2;
      g[2][2] = 1;
      g[3][3] = 1;
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      break;
    case 'G':
      g[0][0] = Rational(2, 3);
      g[1][1] = 2;
      link(0, 1, -1);
      break;
    default:
      break;
  }
  return g;
}

bool valid_type(char type, int r) {
  switch (type) {
    case 'A': return r >= 1;
    case 'B': return r >= 2;
    case 'C': return r >= 2;
    case 'D': return r >= 4;
    case 'E': return r >= 6 && r <= 8;
    case 'F': return r == 4;
    case 'G': return r == 2;
    default: return false;
  }
}

std::int64_t height(const IntVec& v) {
  std::int64_t h = 0;
  for (auto x : v) h += x;
  return h;
}

}  // namespace

std::string SimpleAlgebra::name() const { return std::string(1, type_) + std::to_string(rank_); }

Rational SimpleAlgebra::inner(const IntVec& a, const IntVec& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) s += gram_[i][j] * static_cast<long>(a[i] * b[j]);
    }
  }
  return s;
}

IntVec SimpleAlgebra::coroot_coords(const IntVec& alpha) const {
  Rational len = inner(alpha, alpha);
  IntVec out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Rational c = gram_[i][i] * static_cast<long>(alpha[i]) / len;
    if (c.get_den() != 1) throw AlgebraError("non-integral coroot coordinate");
    out[i] = c.get_num().get_si();
  }
  return out;
}

std::int64_t SimpleAlgebra::pairing(const IntVec& alpha, int i) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) s += alpha[j] * cartan_[static_cast<std::size_t>(i)][j];
  return s;
}

std::optional<std::size_t> SimpleAlgebra::root_index(const IntVec& coords) const {
  auto it = root_lookup_.find(coords);
  if (it == root_lookup_.end()) return std::nullopt;
  return it->second;
}

std::string SimpleAlgebra::label(std::size_t i) const {
  if (is_cartan(i)) return "h" + std::to_string(i - 2 * npos_ + 1);
  std::ostringstream os;
  os << (i < npos_ ? "e[" : "f[");
  const IntVec& r = roots_[i];
  for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << (i < npos_ ? r[j] : -r[j]);
  os << "]";
  return os.str();
}

SimpleAlgebra SimpleAlgebra::build(char type, int rank) {
  if (!valid_type(type, rank)) {
    throw InputError("invalid Cartan type " + std::string(1, type) + std::to_string(rank));
  }
  SimpleAlgebra g;
  g.type_ = type;
  g.rank_ = rank;
  const std::size_t r = static_cast<std::size_t>(rank);
  g.gram_ = gram_matrix(type, rank);
  g.cartan_.assign(r, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational a = 2 * g.gram_[i][j] / g.gram_[i][i];
      g.cartan_[i][j] = a.get_num().get_si();
    }

  // Positive roots by the root-string criterion, generated height by height.
  std::set<IntVec> found;
  std::vector<IntVec> layer;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    layer.push_back(e);
    found.insert(e);
  }
  std::vector<IntVec> positive = layer;
  while (!layer.empty()) {
    std::vector<IntVec> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < r; ++i) {
        IntVec down = beta;
        std::int64_t p = 0;
        while (true) {
          down[i] -= 1;
          if (!found.count(down)) break;
          ++p;
        }
        std::int64_t pair = 0;
        for (std::size_t j = 0; j < r; ++j) pair += beta[j] * g.cartan_[i][j];
        if (p - pair > 0) {
          IntVec up = beta;
          up[i] += 1;
          if (!found.count(up)) {
            found.insert(up);
            next.push_back(up);
          }
        }
      }
    }
    positive.insert(positive.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(positive.begin(), positive.end(), [](const IntVec& a, const IntVec& b) {
    auto ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;  // so that alpha_1 precedes alpha_2 among equal heights
  });

  const std::size_t P = positive.size();
  g.npos_ = P;
  g.dim_ = 2 * P + r;
  g.roots_ = positive;
  for (const auto& p : positive) g.roots_.push_back(scale(-1, p));
  for (std::size_t i = 0; i < 2 * P; ++i) g.root_lookup_[g.roots_[i]] = i;
  g.simple_idx_.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    g.simple_idx_[i] = g.root_lookup_.at(e);
  }

  // Extraspecial pairs: lowest simple index i with xi - alpha_i positive.
  g.extraspecial_.assign(P, {-1, 0});
  std::map<std::pair<std::size_t, std::size_t>, Rational> memo;
  for (std::size_t x = 0; x < P; ++x) {
    if (height(positive[x]) == 1) continue;
    for (std::size_t i = 0; i < r; ++i) {
      IntVec rest = positive[x];
      rest[i] -= 1;
      auto it = g.root_lookup_.find(rest);
      if (it != g.root_lookup_.end() && it->second < P) {
        g.extraspecial_[x] = {static_cast<int>(i), it->second};
        break;
      }
    }
  }

  auto len = [&](std::size_t idx) { return g.inner(g.roots_[idx], g.roots_[idx]); };
  auto sum_index = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    return g.root_index(add(g.roots_[a], g.roots_[b]));
  };
  auto neg = [&](std::size_t a) { return g.negative_of(a); };

  std::function<Rational(std::size_t, std::size_t)> N = [&](std::size_t a, std::size_t b) -> Rational {
    auto s = sum_index(a, b);
    if (!s) return 0;
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational val;
    const bool pa = a < P, pb = b < P;
    if (pa && pb) {
      const std::size_t xi = *s;
      auto [si, partner] = g.extraspecial_[xi];
      const std::size_t a1 = g.simple_idx_[static_cast<std::size_t>(si)];
      const std::size_t b1 = partner;
      if (a == a1 && b == b1) {
        std::int64_t p = 0;
        IntVec down = g.roots_[b1];
        while (true) {
          down = sub(down, g.roots_[a1]);
          if (!g.root_index(down)) break;
          ++p;
        }
        val = p + 1;
      } else if (a == b1 && b == a1) {
        val = -N(b, a);
      } else {
        Rational acc = 0;
        // N_{b,-a1} N_{a,-b1} / (b-a1, b-a1)
        if (auto d1 = g.root_index(sub(g.roots_[b], g.roots_[a1]))) {
          acc += N(b, neg(a1)) * N(a, neg(b1)) / len(*d1);
        }
        // N_{-a1,a} N_{b,-b1} / (a-a1, a-a1)
        if (auto d2 = g.root_index(sub(g.roots_[a], g.roots_[a1]))) {
          acc += N(neg(a1), a) * N(b, neg(b1)) / len(*d2);
        }
        val = len(xi) / N(a1, b1) * acc;
      }
    } else if (!pa && !pb) {
      val = -N(neg(a), neg(b));
    } else if (!pa && pb) {
      val = -N(b, a);
    } else {
      // a positive, b negative; c = -(a+b) closes the triple.
      const std::size_t c = neg(*s);
      if (*s < P) {
        val = len(c) / len(a) * N(b, c);
      } else {
        val = len(c) / len(b) * N(c, a);
      }
    }
    memo[key] = val;
    return val;
  };

  const std::size_t D = g.dim_;
  g.sc_.assign(D * D, {});
  g.form_.assign(D * D, Rational(0));
  for (std::size_t a = 0; a < 2 * P; ++a) {
    for (std::size_t b = 0; b < 2 * P; ++b) {
      if (b == neg(a)) {
        IntVec cc = g.coroot_coords(g.roots_[a]);
        SparseTerms t;
        for (std::size_t i = 0; i < r; ++i) {
          if (cc[i] != 0) t.emplace_back(static_cast<std::uint32_t>(2 * P + i), Rational(static_cast<long>(cc[i])));
        }
        g.sc_[a * D + b] = std::move(t);
        continue;
      }
      if (auto s = sum_index(a, b)) {
        g.sc_[a * D + b] = {{static_cast<std::uint32_t>(*s), N(a, b)}};
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t h = 2 * P + i;
      std::int64_t w = g.pairing(g.roots_[a], static_cast<int>(i));
      if (w != 0) {
        g.sc_[h * D + a] = {{static_cast<std::uint32_t>(a), Rational(static_cast<long>(w))}};
        g.sc_[a * D + h] = {{static_cast<std::uint32_t>(a), Rational(static_cast<long>(-w))}};
      }
    }
    g.form_[a * D + neg(a)] = 2 / len(a);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      g.form_[(2 * P + i) * D + 2 * P + j] = 4 * g.gram_[i][j] / (g.gram_[i][i] * g.gram_[j][j]);
    }
  return g;
}

Rational SimpleAlgebra::structure_constant(std::size_t a, std::size_t b) const {
  const auto& t = bracket_terms(a, b);
  if (t.size() != 1 || is_cartan(t[0].first)) return 0;
  return t[0].second;
}

Vector SimpleAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& terms = sc_[i * dim_ + j];
      if (terms.empty()) continue;
      CycloScalar c = x[i] * y[j];
      for (const auto& [k, v] : terms) out[k] += c * CycloScalar(v);
    }
  }
  return out;
}

CycloScalar SimpleAlgebra::form(const Vector& x, const Vector& y) const {
  CycloScalar s;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Rational& f = form_[i * dim_ + j];
      if (f != 0 && !y[j].is_zero()) s += x[i] * y[j] * CycloScalar(f);
    }
  }
  return s;
}

GElement SimpleAlgebra::bracket(const GElement& x, const GElement& y) const {
  std::map<std::size_t, CycloScalar> acc;
  for (const auto& [i, a] : x.coeffs) {
    for (const auto& [j, b] : y.coeffs) {
      for (const auto& [k, v] : sc_[i * dim_ + j]) acc[k] += a * b * CycloScalar(v);
    }
  }
  GElement out;
  for (auto& [k, c] : acc) {
    if (!c.is_zero()) out.coeffs.emplace(k, std::move(c));
  }
  return out;
}

CycloScalar SimpleAlgebra::form(const GElement& x, const GElement& y) const {
  CycloScalar s;
  for (const auto& [i, a] : x.coeffs) {
    for (const auto& [j, b] : y.coeffs) {
      const Rational& f = form_[i * dim_ + j];
      if (f != 0) s += a * b * CycloScalar(f);
    }
  }
  return s;
}

void SimpleAlgebra::override_tables(std::vector<SparseTerms> sc, std::vector<Rational> form) {
  if (sc.size() != dim_ * dim_ || form.size() != dim_ * dim_) {
    throw InputError("structure table size does not match " + name());
  }
  sc_ = std::move(sc);
  form_ = std::move(form);
}

std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> find_jacobi_violation(const SimpleAlgebra& g) {
  const std::size_t D = g.dim();
  // [[i,j],k] + [[j,k],i] + [[k,i],j] expanded through the stored tables.
  auto accumulate = [&](std::map<std::size_t, Rational>& acc, std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& [m, v] : g.bracket_terms(a, b)) {
      for (const auto& [n, w] : g.bracket_terms(m, c)) acc[n] += v * w;
    }
  };
  auto violates = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::map<std::size_t, Rational> acc;
    accumulate(acc, i, j, k);
    accumulate(acc, j, k, i);
    accumulate(acc, k, i, j);
    for (const auto& [n, v] : acc) {
      if (v != 0) return true;
    }
    return false;
  };
  auto antisymmetric = [&](std::size_t i, std::size_t j) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [m, v] : g.bracket_terms(i, j)) acc[m] += v;
    for (const auto& [m, v] : g.bracket_terms(j, i)) acc[m] += v;
    for (const auto& [m, v] : acc) {
      if (v != 0) return false;
    }
    return true;
  };
  bool alternating = true;
  for (std::size_t i = 0; i < D && alternating; ++i)
    for (std::size_t j = i; j < D && alternating; ++j) alternating = antisymmetric(i, j);

  // With an alternating table the cyclic sum only needs i < j < k; otherwise every ordered triple.
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = alternating ? i + 1 : 0; j < D; ++j)
      for (std::size_t k = alternating ? j + 1 : 0; k < D; ++k) {
        if (violates(i, j, k)) return std::make_tuple(i, j, k);
      }
  return std::nullopt;
}

}  // namespace torloop
