#include "torloop/twist.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

namespace torloop {

namespace {

std::atomic<std::uint64_t> next_setup_id{1};

Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v(dim);
  v[i] = CycloScalar(1);
  return v;
}

// Total order on scalars: numeric for rationals, canonical coefficients otherwise.
int compare_scalar(const CycloScalar& a, const CycloScalar& b) {
  const bool ra = a.is_rational(), rb = b.is_rational();
  if (ra && rb) {
    int c = cmp(a.rational_value(), b.rational_value());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (ra != rb) return ra ? -1 : 1;
  auto ca = a.coeffs(), cb = b.coeffs();
  if (a.modulus() != b.modulus()) return a.modulus() < b.modulus() ? -1 : 1;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    int c = cmp(ca[i], cb[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

struct WeightLess {
  bool operator()(const Vector& a, const Vector& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = compare_scalar(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

std::vector<IntVec> classes_of(const IntVec& orders) {
  IntVec lo(orders.size(), 0), hi(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) hi[i] = orders[i] - 1;
  return box_points(lo, hi);
}

}  // namespace

Matrix realize_auto(const SimpleAlgebra& g, const AutoSpec& spec, std::uint32_t modulus) {
  const std::size_t D = g.dim();
  const std::size_t r = static_cast<std::size_t>(g.rank());
  switch (spec.kind) {
    case AutoSpec::Kind::Identity:
      return Matrix::identity(D);
    case AutoSpec::Kind::Diagram: {
      const auto& pi = spec.perm;
      if (pi.size() != r) throw InputError("diagram automorphism: permutation has wrong length");
      std::vector<bool> seen(r, false);
      for (int x : pi) {
        if (x < 0 || static_cast<std::size_t>(x) >= r || seen[static_cast<std::size_t>(x)]) {
          throw InputError("diagram automorphism: not a permutation of the nodes");
        }
        seen[static_cast<std::size_t>(x)] = true;
      }
      const auto& A = g.cartan_matrix();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (A[static_cast<std::size_t>(pi[i])][static_cast<std::size_t>(pi[j])] != A[i][j]) {
            throw AlgebraError("diagram automorphism: permutation does not preserve the Cartan matrix");
          }
        }
      std::vector<Vector> img(D);
      for (std::size_t i = 0; i < r; ++i) {
        const int p = pi[i];
        const std::size_t si = g.simple_index(static_cast<int>(i)), sp = g.simple_index(p);
        img[si] = basis_vector(D, sp);
        img[g.negative_of(si)] = basis_vector(D, g.negative_of(sp));
        img[g.cartan_index(static_cast<int>(i))] = basis_vector(D, g.cartan_index(p));
      }
      const std::size_t P = g.num_positive();
      for (std::size_t x = 0; x < P; ++x) {
        if (!img[x].empty()) continue;
        auto [si, partner] = g.extraspecial(x);
        const std::size_t a = g.simple_index(si);
        Rational n = g.structure_constant(a, partner);
        img[x] = g.bracket(img[a], img[partner]);
        for (auto& c : img[x]) c /= CycloScalar(n);
        const std::size_t na = g.negative_of(a), nb = g.negative_of(partner);
        Rational nn = g.structure_constant(na, nb);
        img[g.negative_of(x)] = g.bracket(img[na], img[nb]);
        for (auto& c : img[g.negative_of(x)]) c /= CycloScalar(nn);
      }
      return Matrix::from_columns(img, D);
    }
    case AutoSpec::Kind::Inner: {
      if (spec.coweight.size() != r) throw InputError("inner automorphism: coweight has wrong length");
      if (spec.order <= 0 || modulus % static_cast<std::uint32_t>(spec.order) != 0) {
        throw InputError("inner automorphism: order must divide the working modulus");
      }
      const std::uint32_t step = modulus / static_cast<std::uint32_t>(spec.order);
      Matrix m = Matrix::identity(D);
      for (std::size_t a = 0; a < 2 * g.num_positive(); ++a) {
        Rational e = 0;
        for (std::size_t i = 0; i < r; ++i) e += spec.coweight[i] * static_cast<long>(g.pairing(g.root(a), static_cast<int>(i)));
        if (e.get_den() != 1) throw InputError("inner automorphism: coweight pairs non-integrally with " + g.label(a));
        m(a, a) = CycloScalar::root_of_unity(modulus, e.get_num().get_si() * static_cast<std::int64_t>(step));
      }
      return m;
    }
    case AutoSpec::Kind::Matrix: {
      if (spec.matrix.rows() != D || spec.matrix.cols() != D) {
        throw InputError("matrix automorphism: expected " + std::to_string(D) + "x" + std::to_string(D));
      }
      Matrix m(D, D);
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
          const auto& x = spec.matrix(i, j);
          if (x.modulus() != 1 && modulus % x.modulus() != 0) {
            throw InputError("matrix automorphism: entry lives outside Q(zeta_" + std::to_string(modulus) + ")");
          }
          m(i, j) = x.modulus() == 1 ? x : x.lifted(modulus);
        }
      return m;
    }
    case AutoSpec::Kind::Compose: {
      Matrix m = Matrix::identity(D);
      for (const auto& part : spec.parts) m = m * realize_auto(g, part, modulus);
      return m;
    }
  }
  return Matrix::identity(D);
}

std::optional<std::pair<std::size_t, std::size_t>> automorphism_defect(const SimpleAlgebra& g, const Matrix& a) {
  const std::size_t D = g.dim();
  std::vector<GElement> cols(D);
  for (std::size_t i = 0; i < D; ++i) cols[i] = GElement::from_dense(a.column(i));
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j) {
      GElement lhs;
      for (const auto& [k, c] : g.bracket_terms(i, j)) {
        for (const auto& [l, v] : cols[k].coeffs) lhs.coeffs[l] += CycloScalar(c) * v;
      }
      GElement rhs = g.bracket(cols[i], cols[j]);
      for (const auto& [l, v] : rhs.coeffs) lhs.coeffs[l] -= v;
      for (const auto& [l, v] : lhs.coeffs) {
        if (!v.is_zero()) return std::make_pair(i, j);
      }
    }
  return std::nullopt;
}

std::optional<RatVec> rational_weight(const Vector& w) {
  RatVec out;
  out.reserve(w.size());
  for (const auto& x : w) {
    if (!x.is_rational()) return std::nullopt;
    out.push_back(x.rational_value());
  }
  return out;
}

bool lex_positive(const RatVec& v) {
  for (const auto& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

RatVec rat_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec rat_scale(const Rational& s, const RatVec& a) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

bool rat_is_zero(const RatVec& a) {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

std::string to_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

Rational weight_inner(const ZeroRootData& rd, const RatVec& mu, const RatVec& nu) {
  Rational s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0) continue;
    for (std::size_t j = 0; j < nu.size(); ++j) s += mu[i] * rd.gram_inv[i][j] * nu[j];
  }
  return s;
}

namespace {

std::string classify_label(std::size_t rank, std::size_t count, std::size_t nshort, std::size_t nlengths) {
  auto l = rank;
  if (nlengths == 1) {
    if (count == l * (l + 1)) return "A" + std::to_string(l);
    if (l >= 4 && count == 2 * l * (l - 1)) return "D" + std::to_string(l);
    if (l == 6 && count == 72) return "E6";
    if (l == 7 && count == 126) return "E7";
    if (l == 8 && count == 240) return "E8";
  } else if (nlengths == 2) {
    if (l == 2 && count == 12) return "G2";
    if (l == 4 && count == 48) return "F4";
    if (count == 2 * l * l) {
      if (nshort == 2 * l) return "B" + std::to_string(l);
      return "C" + std::to_string(l);
    }
  }
  return "unknown";
}

void compute_root_data(ZeroRootData& rd, const std::vector<AdaptedVector>& basis, const Matrix& gram,
                       std::size_t h0dim) {
  rd = ZeroRootData{};
  std::set<RatVec> all, zero;
  for (const auto& b : basis) {
    auto w = rational_weight(b.weight);
    if (!w) return;
    if (rat_is_zero(*w)) continue;
    all.insert(*w);
    bool zc = true;
    for (auto k : b.klass) zc = zc && k == 0;
    if (zc) zero.insert(*w);
  }
  rd.rational = true;
  for (std::size_t i = 0; i < h0dim; ++i)
    for (std::size_t j = 0; j < h0dim; ++j) {
      if (!gram(i, j).is_rational()) {
        rd.rational = false;
        return;
      }
    }
  rd.weights.assign(all.begin(), all.end());
  rd.delta0.assign(zero.begin(), zero.end());
  if (h0dim > 0) {
    if (rank(gram) < h0dim) return;
    Matrix inv = inverse(gram);
    rd.gram_inv.assign(h0dim, RatVec(h0dim));
    for (std::size_t i = 0; i < h0dim; ++i)
      for (std::size_t j = 0; j < h0dim; ++j) rd.gram_inv[i][j] = inv(i, j).rational_value();
  }
  rd.form_nondegenerate = true;

  for (const auto& a : rd.delta0) {
    if (lex_positive(a)) rd.positive0.push_back(a);
  }
  std::set<RatVec> pos(rd.positive0.begin(), rd.positive0.end());
  for (const auto& a : rd.positive0) {
    bool decomposable = false;
    for (const auto& b : rd.positive0) {
      RatVec d = rat_add(a, rat_scale(-1, b));
      if (pos.count(d)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) rd.simple.push_back(a);
  }
  const std::size_t p = rd.simple.size();
  // Irreducible iff the Dynkin graph on the simple roots is connected.
  if (p > 0) {
    std::vector<bool> seen(p, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < p; ++j) {
        if (!seen[j] && weight_inner(rd, rd.simple[i], rd.simple[j]) != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    rd.irreducible = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  std::set<Rational> lengths;
  for (const auto& a : rd.delta0) lengths.insert(weight_inner(rd, a, a));
  std::size_t nshort = 0;
  if (!lengths.empty()) {
    for (const auto& a : rd.delta0) {
      if (weight_inner(rd, a, a) == *lengths.begin()) ++nshort;
    }
  }
  if (rd.irreducible) {
    if (p == 1) {
      RatVec twice = rat_scale(2, rd.simple[0]);
      rd.type_b = all.count(twice) > 0;
      rd.type_label = rd.type_b ? "B1" : "A1";
    } else {
      rd.type_label = classify_label(p, rd.delta0.size(), nshort, lengths.size());
      rd.type_b = rd.type_label[0] == 'B';
    }
  } else {
    rd.type_label = p == 0 ? "empty" : "reducible";
  }
  std::set<RatVec> en(rd.delta0.begin(), rd.delta0.end());
  if (rd.type_b) {
    const Rational shortest = *lengths.begin();
    for (const auto& a : rd.delta0) {
      if (weight_inner(rd, a, a) == shortest) en.insert(rat_scale(2, a));
    }
  }
  rd.enhanced.assign(en.begin(), en.end());

  // Highest root: maximal height in simple-root coordinates.
  if (p > 0) {
    Matrix s(h0dim, p);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = 0; i < h0dim; ++i) s(i, j) = CycloScalar(rd.simple[j][i]);
    Rational best;
    bool have = false;
    for (const auto& a : rd.enhanced) {
      Vector rhs(h0dim);
      for (std::size_t i = 0; i < h0dim; ++i) rhs[i] = CycloScalar(a[i]);
      auto c = solve(s, rhs);
      if (!c) continue;
      Rational h = 0;
      for (const auto& x : *c) h += x.rational_value();
      if (!have || h > best) {
        best = h;
        rd.highest = a;
        have = true;
      }
    }
  }
}

}  // namespace

bool TwistedSetup::untwisted() const {
  for (auto m : data_->orders) {
    if (m != 1) return false;
  }
  return true;
}

CycloScalar TwistedSetup::xi(std::size_t i) const {
  const auto m = static_cast<std::uint32_t>(data_->orders[i]);
  return CycloScalar::root_of_unity(data_->modulus, data_->modulus / m);
}

std::string TwistedSetup::label(std::size_t a) const {
  const auto& v = data_->basis[a].chev;
  std::size_t nz = 0, at = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j].is_zero()) {
      ++nz;
      at = j;
    }
  }
  std::string name = "e(" + std::to_string(a) + ")";
  if (nz == 1 && v[at].is_one()) name += "=" + data_->g.label(at);
  return name;
}

IntVec TwistedSetup::spatial_class(std::size_t a) const {
  const auto& k = data_->basis[a].klass;
  return IntVec(k.begin() + 1, k.end());
}

Vector TwistedSetup::bracket(const Vector& x, const Vector& y) const {
  const std::size_t D = dim();
  Vector out(D);
  for (std::size_t i = 0; i < D; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < D; ++j) {
      if (y[j].is_zero()) continue;
      const auto& t = bracket_terms(i, j);
      if (t.empty()) continue;
      CycloScalar c = x[i] * y[j];
      for (const auto& [k, v] : t) out[k] += c * v;
    }
  }
  return out;
}

CycloScalar TwistedSetup::form(const Vector& x, const Vector& y) const {
  const std::size_t D = dim();
  CycloScalar s;
  for (std::size_t i = 0; i < D; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < D; ++j) {
      const auto& f = form_entry(i, j);
      if (!f.is_zero() && !y[j].is_zero()) s += x[i] * y[j] * f;
    }
  }
  return s;
}

Vector TwistedSetup::to_adapted(const Vector& chev) const {
  Vector out(dim());
  for (std::size_t j = 0; j < chev.size(); ++j) {
    if (chev[j].is_zero()) continue;
    for (const auto& [k, v] : data_->qinv_cols[j]) out[k] += chev[j] * v;
  }
  return out;
}

Vector TwistedSetup::to_chevalley(const Vector& adapted) const {
  Vector out(dim());
  for (std::size_t a = 0; a < adapted.size(); ++a) {
    if (!adapted[a].is_zero()) axpy(out, adapted[a], data_->basis[a].chev);
  }
  return out;
}

std::vector<std::size_t> TwistedSetup::weight_space(const IntVec& degree, const RatVec& weight) const {
  IntVec cls = residue(degree, data_->orders);
  std::vector<std::size_t> out;
  auto it = data_->eigenspaces.find(cls);
  if (it == data_->eigenspaces.end()) return out;
  for (auto a : it->second) {
    auto w = rational_weight(data_->basis[a].weight);
    if (w && *w == weight) out.push_back(a);
  }
  return out;
}

TwistedSetup TwistedSetup::build(SimpleAlgebra g, std::vector<AutoSpec> autos, IntVec orders) {
  if (orders.size() < 2) throw InputError("a setup needs at least sigma_0 and sigma_1 (n >= 1)");
  if (autos.size() != orders.size()) throw InputError("number of automorphisms must equal number of orders");
  std::int64_t M = 1;
  for (auto m : orders) {
    if (m <= 0) throw InputError("automorphism orders must be positive");
    M = lcm64(M, m);
  }
  if (M > 1000000) throw InputError("lcm of orders is too large");
  auto data = std::make_shared<Data>();
  data->g = std::move(g);
  data->orders = orders;
  data->modulus = static_cast<std::uint32_t>(M);
  data->id = next_setup_id.fetch_add(1);
  const SimpleAlgebra& G = data->g;
  const std::size_t D = G.dim();
  const std::size_t r = static_cast<std::size_t>(G.rank());

  for (std::size_t i = 0; i < autos.size(); ++i) {
    autos[i].order = orders[i];
    Matrix a = realize_auto(G, autos[i], data->modulus);
    if (!a.is_identity()) {
      if (auto bad = automorphism_defect(G, a)) {
        throw AlgebraError("sigma_" + std::to_string(i) + " is not a Lie algebra automorphism: fails on (" +
                           G.label(bad->first) + ", " + G.label(bad->second) + ")");
      }
      if (!matrix_power(a, orders[i]).is_identity()) {
        throw AlgebraError("sigma_" + std::to_string(i) + " does not have order dividing " + std::to_string(orders[i]));
      }
    }
    data->autos.push_back(std::move(a));
  }
  data->specs = std::move(autos);
  for (std::size_t i = 0; i < data->autos.size(); ++i)
    for (std::size_t j = i + 1; j < data->autos.size(); ++j) {
      if (!(data->autos[i] * data->autos[j] == data->autos[j] * data->autos[i])) {
        throw AlgebraError("sigma_" + std::to_string(i) + " and sigma_" + std::to_string(j) + " do not commute");
      }
    }

  // h(0): vectors of h fixed by every sigma_i.
  Matrix fix(data->autos.size() * D, r);
  for (std::size_t i = 0; i < data->autos.size(); ++i)
    for (std::size_t t = 0; t < D; ++t)
      for (std::size_t j = 0; j < r; ++j) {
        CycloScalar x = data->autos[i](t, G.cartan_index(static_cast<int>(j)));
        if (t == G.cartan_index(static_cast<int>(j))) x -= CycloScalar(1);
        fix(i * D + t, j) = x;
      }
  for (const auto& c : nullspace(fix)) {
    Vector h(D);
    for (std::size_t j = 0; j < r; ++j) h[G.cartan_index(static_cast<int>(j))] = c[j];
    data->h0.push_back(std::move(h));
  }
  const std::size_t h0dim = data->h0.size();
  data->h0_gram = Matrix(h0dim, h0dim);
  for (std::size_t i = 0; i < h0dim; ++i)
    for (std::size_t j = 0; j < h0dim; ++j) data->h0_gram(i, j) = G.form(data->h0[i], data->h0[j]);

  auto weight_of = [&](std::size_t idx) {
    Vector w(h0dim);
    if (G.is_cartan(idx)) return w;
    for (std::size_t q = 0; q < h0dim; ++q) {
      CycloScalar s;
      for (std::size_t l = 0; l < r; ++l) {
        const auto& c = data->h0[q][G.cartan_index(static_cast<int>(l))];
        if (!c.is_zero()) s += c * CycloScalar(static_cast<long>(G.pairing(G.root(idx), static_cast<int>(l))));
      }
      w[q] = s;
    }
    return w;
  };
  std::map<Vector, std::vector<std::size_t>, WeightLess> groups;
  for (std::size_t j = 0; j < D; ++j) groups[weight_of(j)].push_back(j);

  // Eigenspace projectors, one per (axis, residue).
  std::vector<std::vector<Matrix>> proj(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto m = orders[i];
    if (m == 1) continue;
    std::vector<Matrix> powers{Matrix::identity(D)};
    for (std::int64_t t = 1; t < m; ++t) powers.push_back(powers.back() * data->autos[i]);
    const CycloScalar xi = CycloScalar::root_of_unity(data->modulus, M / m);
    for (std::int64_t k = 0; k < m; ++k) {
      Matrix p(D, D);
      for (std::int64_t t = 0; t < m; ++t) p += powers[static_cast<std::size_t>(t)] * xi.pow(-k * t);
      p *= CycloScalar(Rational(1, m));
      proj[i].push_back(std::move(p));
    }
  }

  const auto classes = classes_of(orders);
  for (const auto& [w, idxs] : groups) {
    bool zero_weight = is_zero(w);
    for (const auto& cls : classes) {
      std::vector<Vector> cands;
      bool zero_class = is_zero(cls);
      if (zero_weight && zero_class) cands = data->h0;
      for (auto j : idxs) {
        Vector v = basis_vector(D, j);
        for (std::size_t i = 0; i < orders.size(); ++i) {
          if (orders[i] > 1) v = proj[i][static_cast<std::size_t>(cls[i])] * v;
        }
        cands.push_back(std::move(v));
      }
      EchelonBasis eb(D);
      for (auto& v : cands) {
        if (is_zero(v)) continue;
        if (eb.add(v)) {
          data->eigenspaces[cls].push_back(data->basis.size());
          data->basis.push_back(AdaptedVector{v, cls, w});
        }
      }
    }
  }
  if (data->basis.size() != D) throw AlgebraError("eigenspace decomposition is incomplete");

  std::vector<Vector> cols;
  for (const auto& b : data->basis) cols.push_back(b.chev);
  Matrix qinv = inverse(Matrix::from_columns(cols, D));
  data->qinv_cols.assign(D, {});
  for (std::size_t j = 0; j < D; ++j)
    for (std::size_t a = 0; a < D; ++a) {
      if (!qinv(a, j).is_zero()) data->qinv_cols[j].emplace_back(static_cast<std::uint32_t>(a), qinv(a, j));
    }
  std::vector<GElement> sparse;
  for (const auto& b : data->basis) sparse.push_back(GElement::from_dense(b.chev));
  data->sc.assign(D * D, {});
  data->form.assign(D * D, CycloScalar());
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = a; b < D; ++b) {
      data->form[a * D + b] = G.form(sparse[a], sparse[b]);
      data->form[b * D + a] = data->form[a * D + b];
      if (a == b) continue;
      GElement br = G.bracket(sparse[a], sparse[b]);
      std::map<std::uint32_t, CycloScalar> acc;
      for (const auto& [j, c] : br.coeffs) {
        for (const auto& [k, v] : data->qinv_cols[j]) acc[k] += c * v;
      }
      SparseCyclo t, tn;
      for (auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        tn.emplace_back(k, -c);
        t.emplace_back(k, std::move(c));
      }
      data->sc[a * D + b] = std::move(t);
      data->sc[b * D + a] = std::move(tn);
    }

  compute_root_data(data->roots, data->basis, data->h0_gram, h0dim);
  for (std::size_t a = 0; a < D; ++a) {
    const auto& b = data->basis[a];
    if (b.klass[0] == 0 && is_zero(b.weight)) data->gnaught.push_back(a);
  }
  TwistedSetup s;
  s.data_ = std::move(data);
  return s;
}

namespace {

// Ideal of the algebra spanned by `idx` (structure in `setup`) generated by x.
std::size_t ideal_dimension(const TwistedSetup& s, const std::vector<std::size_t>& idx, std::size_t x) {
  const std::size_t D = s.dim();
  EchelonBasis span(D);
  std::vector<Vector> frontier{basis_vector(D, x)};
  span.add(frontier[0]);
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier) {
      for (auto y : idx) {
        Vector w = s.bracket(basis_vector(D, y), v);
        if (!is_zero(w) && span.add(w)) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return span.dim();
}

bool generic_simple(const TwistedSetup& s, const std::vector<std::size_t>& idx, std::string& detail) {
  const std::size_t d = idx.size();
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < d; ++i) pos[idx[i]] = i;
  std::vector<Matrix> ad(d, Matrix(d, d));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (const auto& [k, c] : s.bracket_terms(idx[x], idx[y])) ad[x](pos.at(k), y) += c;
  Matrix kill(d, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      Matrix p = ad[x] * ad[y];
      CycloScalar t;
      for (std::size_t i = 0; i < d; ++i) t += p(i, i);
      kill(x, y) = t;
    }
  if (rank(kill) < d) {
    detail = "Killing form of the fixed subalgebra is degenerate (not semisimple)";
    return false;
  }
  // Commutant of the adjoint action.
  Matrix eq(d * d * d, d * d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t row = x * d * d + i * d + j;
        for (std::size_t k = 0; k < d; ++k) {
          eq(row, i * d + k) += ad[x](k, j);
          eq(row, k * d + j) -= ad[x](i, k);
        }
      }
  const std::size_t comm = d * d - rank(eq);
  if (comm != 1) {
    detail = "adjoint commutant has dimension " + std::to_string(comm) + " (several simple ideals)";
    return false;
  }
  detail = "semisimple with one-dimensional adjoint commutant";
  return true;
}

}  // namespace

AssumptionReport check_assumptions(const TwistedSetup& s) {
  AssumptionReport rep;
  const auto& rd = s.root_data();
  IntVec zero(s.orders().size(), 0);
  std::vector<std::size_t> g00;
  if (auto it = s.eigenspaces().find(zero); it != s.eigenspaces().end()) g00 = it->second;
  const std::size_t h0dim = s.h0().size();

  std::size_t centralizer = 0;
  for (auto a : g00) {
    if (is_zero(s.basis(a).weight)) ++centralizer;
  }
  rep.cartan = h0dim > 0 && centralizer == h0dim;
  rep.cartan_detail = "dim h(0) = " + std::to_string(h0dim) + ", centralizer of h(0) in g(0,0) has dim " +
                      std::to_string(centralizer);

  if (g00.empty()) {
    rep.simple = false;
    rep.simple_detail = "g(0,0) is zero";
  } else if (rep.cartan && rd.rational && rd.form_nondegenerate) {
    Matrix span(rd.delta0.size(), h0dim);
    for (std::size_t i = 0; i < rd.delta0.size(); ++i)
      for (std::size_t j = 0; j < h0dim; ++j) span(i, j) = CycloScalar(rd.delta0[i][j]);
    const bool spans = !rd.delta0.empty() && rank(span) == h0dim;
    rep.simple = spans && rd.irreducible;
    if (rd.delta0.empty()) {
      rep.simple_detail = "g(0,0) = h(0) is abelian";
    } else if (!spans) {
      rep.simple_detail = "g(0,0) has a nonzero center";
    } else if (!rd.irreducible) {
      rep.simple_detail = "root system of g(0,0) is reducible";
    } else {
      rep.simple_detail = "g(0,0) has irreducible root system of type " + rd.type_label;
    }
  } else {
    rep.simple = generic_simple(s, g00, rep.simple_detail);
  }
  if (g00.size() <= 64) {
    for (auto x : g00) {
      std::size_t k = ideal_dimension(s, g00, x);
      if (k < g00.size()) {
        rep.simple = false;
        rep.simple_detail += "; ideal generated by " + s.label(x) + " has dim " + std::to_string(k) + " < " +
                             std::to_string(g00.size());
        break;
      }
    }
  }

  if (!rd.rational || !rd.form_nondegenerate) {
    rep.roots = false;
    rep.roots_detail = "weights of h(0) are not rational or the form on h(0) is degenerate";
  } else {
    bool has_zero = false;
    for (std::size_t a = 0; a < s.dim(); ++a) has_zero = has_zero || is_zero(s.basis(a).weight);
    rep.roots = has_zero && rd.weights == rd.enhanced && !rd.delta0.empty();
    rep.roots_detail = "type " + rd.type_label + (rd.type_b ? " (enhanced)" : "") + ", |Delta(g,h(0))^x| = " +
                       std::to_string(rd.weights.size()) + ", |Delta_0,en| = " + std::to_string(rd.enhanced.size());
  }
  return rep;
}

}  // namespace torloop
