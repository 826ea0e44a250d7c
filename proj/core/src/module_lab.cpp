#include "torloop/module_lab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "torloop/error.hpp"
#include "torloop/ideals.hpp"

namespace torloop {

namespace {

Rational pair(const RatVec& u, const IntVec& k) {
  Rational out = 0;
  for (std::size_t i = 0; i < u.size(); ++i) out += u[i] * Rational(static_cast<long>(k[i]));
  return out;
}

Rational pair(const RatVec& u, const IntVec& k, const RatVec& alpha) {
  Rational out = pair(u, k);
  for (std::size_t i = 0; i < u.size(); ++i) out += u[i] * alpha[i];
  return out;
}

IntVec spatial(const TwistedSetup& s) { return s.spatial_orders(); }

bool in_gamma(const TwistedSetup& s, const IntVec& r) { return r.size() == s.n() && in_lattice(r, spatial(s)); }

void acc(LoopVec& out, const IntVec& mono, const Vector& v, const CycloScalar& c = CycloScalar(1)) {
  if (is_zero(v) || c.is_zero()) return;
  auto [it, inserted] = out.try_emplace(mono, v.size());
  axpy(it->second, c, v);
  if (is_zero(it->second)) out.erase(it);
}

std::size_t gn_position(const TwistedSetup& s, std::size_t x) {
  const auto& g = s.g_naught();
  auto it = std::find(g.begin(), g.end(), x);
  if (it == g.end()) throw InputError("adapted index " + std::to_string(x) + " is not in g-naught");
  return static_cast<std::size_t>(it - g.begin());
}

Matrix unit(std::size_t d, std::size_t r, std::size_t c) {
  Matrix m(d, d);
  m(r, c) = CycloScalar(1);
  return m;
}

Matrix rho_of(const std::map<std::size_t, Matrix>& rho, const SparseCyclo& terms,
              std::size_t dim) {
  Matrix out(dim, dim);
  for (const auto& [z, c] : terms) {
    auto it = rho.find(z);
    if (it == rho.end()) throw InputError("bracket leaves g-naught at adapted index " + std::to_string(z));
    out += it->second * c;
  }
  return out;
}

LoopVec sub(LoopVec a, const LoopVec& b) {
  add_to(a, b, CycloScalar(-1));
  return a;
}

LoopVec commutator_on(const TwistedSetup& s, const GradedModule& m, const LAction& a, const LAction& b,
                      const LoopVec& v) {
  return sub(apply(s, m, a, apply(s, m, b, v)), apply(s, m, b, apply(s, m, a, v)));
}

std::string describe(const LoopVec& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, vec] : v) {
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (std::size_t i = 0; i < vec.size(); ++i) os << (i ? "," : "") << vec[i].to_string();
    os << "]t^" << to_string(mono);
  }
  return first ? "0" : os.str();
}

RatVec random_u(std::size_t n, Rng& rng) {
  RatVec u(n);
  for (auto& x : u) {
    x = Rational(static_cast<long>(rng.uniform(-2, 2)));
    x /= Rational(static_cast<long>(rng.uniform(1, 2)));
  }
  return u;
}

IntVec random_in_class(const IntVec& cls, const IntVec& m, Rng& rng, std::int64_t spread = 2) {
  IntVec k(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) k[i] = cls[i] + m[i] * rng.uniform(-spread, spread);
  return k;
}

IntVec random_gamma(const IntVec& m, Rng& rng) { return random_in_class(IntVec(m.size(), 0), m, rng); }

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

GlRep gl_trivial(std::size_t n) { return {n, 1, std::vector<Matrix>(n * n, Matrix(1, 1))}; }

GlRep gl_natural(std::size_t n) {
  GlRep r{n, n, {}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.e.push_back(unit(n, a, b));
  return r;
}

GlRep gl_adjoint(std::size_t n) {
  const std::size_t d = n * n;
  GlRep r{n, d, {}};
  // ad E_ab (E_cd) = delta_bc E_ad - delta_da E_cb
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix m(d, d);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          if (b == c) m(a * n + e, c * n + e) += CycloScalar(1);
          if (e == a) m(c * n + b, c * n + e) -= CycloScalar(1);
        }
      r.e.push_back(std::move(m));
    }
  return r;
}

GnaughtRep gnaught_trivial(const TwistedSetup& s) {
  GnaughtRep r{1, {IntVec(s.n(), 0)}, {}};
  for (auto x : s.g_naught()) r.x.emplace(x, Matrix(1, 1));
  return r;
}

GnaughtRep gnaught_adjoint(const TwistedSetup& s) {
  const auto& g = s.g_naught();
  const std::size_t d = g.size();
  GnaughtRep r{d, {}, {}};
  for (auto y : g) r.grading.push_back(s.spatial_class(y));
  for (auto x : g) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [z, c] : s.bracket_terms(x, g[j])) m(gn_position(s, z), j) += c;
    r.x.emplace(x, std::move(m));
  }
  return r;
}

GradedModule tensor_module(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2, const RatVec& alpha,
                           const Rational& d0) {
  if (v1.n != s.n()) throw InputError("gl_n module has the wrong n");
  GradedModule m;
  m.n = v1.n;
  m.dim = v1.dim * v2.dim;
  const Matrix i1 = Matrix::identity(v1.dim), i2 = Matrix::identity(v2.dim);
  for (std::size_t i = 0; i < v1.dim; ++i)
    for (std::size_t j = 0; j < v2.dim; ++j) m.grading.push_back(v2.grading[j]);
  for (const auto& e : v1.e) m.gl.push_back(kron(e, i2));
  for (const auto& [x, mat] : v2.x) m.gnaught.emplace(x, kron(i1, mat));
  m.alpha = alpha;
  m.d0 = d0;
  return m;
}

Matrix gl_action(const GradedModule& m, const Matrix& a) {
  Matrix out(m.dim, m.dim);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) {
      if (!a(i, j).is_zero()) out += m.gl[i * m.n + j] * a(i, j);
    }
  return out;
}

void validate_module(const TwistedSetup& s, const GradedModule& m) {
  const std::size_t n = s.n();
  const IntVec orders = spatial(s);
  if (m.n != n) throw InputError("module n does not match the setup");
  if (m.alpha.size() != n) throw InputError("alpha must have n entries");
  if (m.grading.size() != m.dim) throw InputError("grading must list one degree per basis vector");
  for (const auto& g : m.grading) {
    if (g.size() != n || residue(g, orders) != g) throw InputError("grading degree " + to_string(g) + " is not reduced mod Gamma");
  }
  if (m.gl.size() != n * n) throw InputError("gl_n action needs n^2 matrices");
  auto square = [&](const Matrix& a) { return a.rows() == m.dim && a.cols() == m.dim; };
  for (const auto& a : m.gl) {
    if (!square(a)) throw InputError("gl_n action matrix has the wrong shape");
  }
  for (auto x : s.g_naught()) {
    auto it = m.gnaught.find(x);
    if (it == m.gnaught.end()) throw InputError("missing action of g-naught vector " + s.label(x));
    if (!square(it->second)) throw InputError("g-naught action matrix has the wrong shape");
  }
  for (const auto& [x, mat] : m.gnaught) gn_position(s, x);

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          Matrix rhs(m.dim, m.dim);
          if (b == c) rhs += m.gl[a * n + d];
          if (d == a) rhs -= m.gl[c * n + b];
          if (!(commutator(m.gl[a * n + b], m.gl[c * n + d]) == rhs))
            throw InputError("gl_n action is not a homomorphism at E" + std::to_string(a + 1) + std::to_string(b + 1) +
                             ", E" + std::to_string(c + 1) + std::to_string(d + 1));
        }
  for (const auto& [x, mx] : m.gnaught)
    for (const auto& [y, my] : m.gnaught) {
      if (!(commutator(mx, my) == rho_of(m.gnaught, s.bracket_terms(x, y), m.dim)))
        throw InputError("g-naught action is not a homomorphism at " + s.label(x) + ", " + s.label(y));
    }
  for (const auto& e : m.gl)
    for (const auto& [x, mx] : m.gnaught) {
      if (!commutator(e, mx).is_zero()) throw InputError("gl_n and g-naught actions do not commute");
    }
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) {
      for (const auto& e : m.gl) {
        if (!e(i, j).is_zero() && m.grading[i] != m.grading[j])
          throw InputError("gl_n action does not preserve the grading");
      }
      for (const auto& [x, mx] : m.gnaught) {
        if (!mx(i, j).is_zero() && m.grading[i] != residue(add(m.grading[j], s.spatial_class(x)), orders))
          throw InputError("action of " + s.label(x) + " does not shift degrees by its class");
      }
    }
}

void add_to(LoopVec& a, const LoopVec& b, const CycloScalar& c) {
  for (const auto& [mono, v] : b) acc(a, mono, v, c);
}

bool is_zero(const LoopVec& v) {
  for (const auto& [mono, vec] : v) {
    if (!is_zero(vec)) return false;
  }
  return true;
}

LoopVec apply(const TwistedSetup& s, const GradedModule& m, const LAction& a, const LoopVec& v) {
  const std::size_t n = s.n();
  if (a.deg.size() != n) throw InputError("action degree must have n entries");
  LoopVec out;
  switch (a.kind) {
    case LAction::Kind::Loop: {
      if (residue(a.deg, spatial(s)) != s.spatial_class(a.x))
        throw InputError("X(k) needs k in the class of " + s.label(a.x));
      const Matrix& rx = m.gnaught.at(a.x);
      for (const auto& [mono, vec] : v) acc(out, add(mono, a.deg), rx * vec);
      break;
    }
    case LAction::Kind::Der: {
      if (!in_gamma(s, a.deg)) throw InputError("D(u, r) needs r in Gamma");
      if (a.u.size() != n) throw InputError("D(u, r) needs u with n entries");
      const Matrix rho = gl_action(m, gl_n_image(a.u, a.deg));
      for (const auto& [mono, vec] : v) {
        Vector w = rho * vec;
        axpy(w, CycloScalar(pair(a.u, mono, m.alpha)), vec);
        acc(out, add(mono, a.deg), w);
      }
      break;
    }
    case LAction::Kind::T:
      if (!in_gamma(s, a.deg)) throw InputError("t^s needs s in Gamma");
      for (const auto& [mono, vec] : v) acc(out, add(mono, a.deg), vec);
      break;
    case LAction::Kind::TD0:
      if (!in_gamma(s, a.deg)) throw InputError("t^r d0 needs r in Gamma");
      for (const auto& [mono, vec] : v) acc(out, add(mono, a.deg), vec, CycloScalar(m.d0));
      break;
  }
  return out;
}

FactorVec evaluation_action(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2, const RatVec& alpha,
                            const Rational& d0, const LAction& a, const FactorVec& v) {
  const std::size_t n = s.n();
  FactorVec out;
  auto put = [&](const IntVec& mono, const Matrix& mat) {
    auto [it, inserted] = out.try_emplace(mono, mat);
    if (!inserted) it->second += mat;
  };
  for (const auto& [k, mat] : v) {
    switch (a.kind) {
      case LAction::Kind::Loop:
        put(add(k, a.deg), mat * v2.x.at(a.x).transpose());
        break;
      case LAction::Kind::Der: {
        // (u, k + alpha) v1 + sum_ij u_i r_j E_ji v1
        Matrix w = mat * CycloScalar(pair(a.u, k, alpha));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const Rational c = a.u[i] * Rational(static_cast<long>(a.deg[j]));
            if (c != 0) w += (v1.e[j * n + i] * mat) * CycloScalar(c);
          }
        put(add(k, a.deg), w);
        break;
      }
      case LAction::Kind::T:
        put(add(k, a.deg), mat);
        break;
      case LAction::Kind::TD0:
        put(add(k, a.deg), mat * CycloScalar(d0));
        break;
    }
  }
  return out;
}

LoopVec flatten(const FactorVec& v) {
  LoopVec out;
  for (const auto& [k, mat] : v) {
    Vector flat;
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) flat.push_back(mat(i, j));
    acc(out, k, flat);
  }
  return out;
}

LAction random_action(const TwistedSetup& s, Rng& rng) {
  const IntVec m = spatial(s);
  switch (rng.uniform(0, 3)) {
    case 0: {
      const auto& g = s.g_naught();
      if (!g.empty()) {
        const std::size_t x = g[rng.index(g.size())];
        return LAction::loop(x, random_in_class(s.spatial_class(x), m, rng));
      }
      [[fallthrough]];
    }
    case 1:
      return LAction::der(random_u(s.n(), rng), random_gamma(m, rng));
    case 2:
      return LAction::t(random_gamma(m, rng));
    default:
      return LAction::td0(random_gamma(m, rng));
  }
}

LoopVec random_loop_vector(const TwistedSetup& s, const GradedModule& m, Rng& rng, int terms) {
  LoopVec out;
  for (int t = 0; t < terms; ++t) {
    IntVec mono(s.n());
    for (auto& x : mono) x = rng.uniform(-3, 3);
    Vector v(m.dim);
    for (auto& x : v) x = CycloScalar(static_cast<long>(rng.uniform(-2, 2)));
    acc(out, mono, v);
  }
  return out;
}

std::vector<RelationResult> relation_residuals(const TwistedSetup& s, const GradedModule& m, std::size_t samples,
                                               Rng& rng) {
  const IntVec orders = spatial(s);
  const auto& g = s.g_naught();
  std::vector<RelationResult> out;
  auto record = [&](RelationResult& r, const LoopVec& residual, const std::string& what) {
    ++r.samples;
    if (!is_zero(residual)) {
      if (r.failures++ == 0) r.first_failure = what + ": residual " + describe(residual);
    }
  };

  RelationResult ll{"module-loop-loop", 0, 0, {}};
  if (!g.empty()) {
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t x = g[rng.index(g.size())], y = g[rng.index(g.size())];
      const IntVec k = random_in_class(s.spatial_class(x), orders, rng);
      const IntVec l = random_in_class(s.spatial_class(y), orders, rng);
      const LoopVec v = random_loop_vector(s, m, rng);
      LoopVec res = commutator_on(s, m, LAction::loop(x, k), LAction::loop(y, l), v);
      for (const auto& [z, c] : s.bracket_terms(x, y)) add_to(res, apply(s, m, LAction::loop(z, add(k, l)), v), -c);
      record(ll, res, s.label(x) + "(" + to_string(k) + "), " + s.label(y) + "(" + to_string(l) + ")");
    }
  }
  out.push_back(ll);

  RelationResult dd{"module-der-der", 0, 0, {}};
  RelationResult dt{"module-der-t", 0, 0, {}};
  RelationResult dl{"module-der-loop", 0, 0, {}};
  RelationResult dd0{"module-der-td0", 0, 0, {}};
  for (std::size_t t = 0; t < samples; ++t) {
    const RatVec u = random_u(s.n(), rng), w = random_u(s.n(), rng);
    const IntVec r = random_gamma(orders, rng), q = random_gamma(orders, rng);
    const LoopVec v = random_loop_vector(s, m, rng);
    const LAction du = LAction::der(u, r);
    const std::string tag = "D(" + to_string(u) + "," + to_string(r) + ")";
    {
      // [D(u,r), D(w,q)] = D((u,q)w - (w,r)u, r+q)
      const RatVec z = rat_add(rat_scale(pair(u, q), w), rat_scale(-pair(w, r), u));
      LoopVec res = commutator_on(s, m, du, LAction::der(w, q), v);
      add_to(res, apply(s, m, LAction::der(z, add(r, q)), v), CycloScalar(-1));
      record(dd, res, tag + ", D(" + to_string(w) + "," + to_string(q) + ")");
    }
    {
      LoopVec res = commutator_on(s, m, du, LAction::t(q), v);
      add_to(res, apply(s, m, LAction::t(add(r, q)), v), CycloScalar(-pair(u, q)));
      record(dt, res, tag + ", t^" + to_string(q));
    }
    {
      LoopVec res = commutator_on(s, m, du, LAction::td0(q), v);
      add_to(res, apply(s, m, LAction::td0(add(r, q)), v), CycloScalar(-pair(u, q)));
      record(dd0, res, tag + ", t^" + to_string(q) + " d0");
    }
    if (!g.empty()) {
      const std::size_t x = g[rng.index(g.size())];
      const IntVec k = random_in_class(s.spatial_class(x), orders, rng);
      LoopVec res = commutator_on(s, m, du, LAction::loop(x, k), v);
      add_to(res, apply(s, m, LAction::loop(x, add(k, r)), v), CycloScalar(-pair(u, k)));
      record(dl, res, tag + ", " + s.label(x) + "(" + to_string(k) + ")");
    }
  }
  out.push_back(dd);
  out.push_back(dt);
  out.push_back(dl);
  out.push_back(dd0);
  return out;
}

LoopVec graded_component(const TwistedSetup& s, const GradedModule& m, const IntVec& p, const LoopVec& v) {
  const IntVec orders = spatial(s);
  const IntVec target = residue(p, orders);
  LoopVec out;
  for (const auto& [mono, vec] : v) {
    Vector w(vec.size());
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (residue(sub(mono, m.grading[i]), orders) == target) w[i] = vec[i];
    }
    acc(out, mono, w);
  }
  return out;
}

std::size_t graded_dim(const TwistedSetup& s, const GradedModule& m, const IntVec& k) {
  const IntVec cls = residue(k, spatial(s));
  return static_cast<std::size_t>(std::count(m.grading.begin(), m.grading.end(), cls));
}

std::size_t weight_slice_dim(const TwistedSetup& s, const GradedModule& m, const IntVec& p, const IntVec& k) {
  const std::size_t n = s.n();
  // Window of monomials around k; D(u, 0) does not move monomials.
  std::vector<std::pair<IntVec, std::size_t>> basis;
  for (const auto& mono : box_points(sub(k, IntVec(n, 1)), add(k, IntVec(n, 1)))) {
    for (std::size_t i = 0; i < m.dim; ++i) {
      Vector e(m.dim);
      e[i] = CycloScalar(1);
      if (!graded_component(s, m, p, LoopVec{{mono, e}}).empty()) basis.emplace_back(mono, i);
    }
  }
  const std::size_t w = basis.size();
  if (w == 0) return 0;
  std::map<std::pair<IntVec, std::size_t>, std::size_t> pos;
  for (std::size_t c = 0; c < w; ++c) pos[basis[c]] = c;
  Matrix stacked(n * w, w);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec u(n, Rational(0));
    u[j] = 1;
    const CycloScalar eig(pair(u, k, m.alpha));
    for (std::size_t c = 0; c < w; ++c) {
      Vector e(m.dim);
      e[basis[c].second] = CycloScalar(1);
      const LoopVec img = apply(s, m, LAction::der(u, IntVec(n, 0)), LoopVec{{basis[c].first, e}});
      for (const auto& [mono, vec] : img)
        for (std::size_t i = 0; i < vec.size(); ++i) {
          if (vec[i].is_zero()) continue;
          auto it = pos.find({mono, i});
          if (it == pos.end()) throw AlgebraError("D(u, 0) leaves the weight window");
          stacked(j * w + it->second, c) += vec[i];
        }
      stacked(j * w + c, c) -= eig;
    }
  }
  return nullspace(stacked).size();
}

std::int64_t shift_order(const IntVec& p, const IntVec& orders) {
  std::int64_t out = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const std::int64_t r = floor_mod(p[i], orders[i]);
    out = lcm64(out, orders[i] / gcd64(r == 0 ? orders[i] : r, orders[i]));
  }
  return out;
}

IntVec lambda_p_class(const IntVec& k, const IntVec& orders, const IntVec& p) {
  const std::int64_t np = shift_order(p, orders);
  IntVec best = residue(k, orders);
  IntVec cur = best;
  for (std::int64_t j = 1; j < np; ++j) {
    cur = residue(add(cur, p), orders);
    best = std::min(best, cur);
  }
  return best;
}

std::vector<IntVec> lambda_p_reps(const IntVec& orders, const IntVec& p) {
  IntVec hi(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) hi[i] = orders[i] - 1;
  std::set<IntVec> reps;
  for (const auto& k : box_points(IntVec(orders.size(), 0), hi)) reps.insert(lambda_p_class(k, orders, p));
  return {reps.begin(), reps.end()};
}

void validate_theta(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th) {
  const IntVec orders = spatial(s);
  if (th.theta.rows() != m.dim || th.theta.cols() != m.dim) throw InputError("theta has the wrong shape");
  if (th.shift.size() != s.n()) throw InputError("theta shift must have n entries");
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) {
      if (!th.theta(i, j).is_zero() && m.grading[i] != residue(sub(m.grading[j], th.shift), orders))
        throw InputError("theta does not map V_k onto V_(k-p)");
    }
  if (rank(th.theta) != m.dim) throw InputError("theta is not invertible");
  const std::int64_t np = shift_order(th.shift, orders);
  if (!matrix_power(th.theta, np).is_identity())
    throw InputError("theta^" + std::to_string(np) + " is not the identity");
  for (const auto& e : m.gl) {
    if (!commutator(th.theta, e).is_zero()) throw InputError("theta does not commute with the gl_n action");
  }
  for (const auto& [x, mx] : m.gnaught) {
    if (!commutator(th.theta, mx).is_zero()) throw InputError("theta does not commute with " + s.label(x));
  }
}

ThetaDecomposition theta_eigendecompose(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th) {
  validate_theta(s, m, th);
  ThetaDecomposition dec;
  dec.order = shift_order(th.shift, spatial(s));
  const std::uint32_t big = s.modulus();
  if (big % dec.order != 0) throw AlgebraError("order of theta does not divide the field modulus");
  dec.zeta = CycloScalar::root_of_unity(big, static_cast<std::int64_t>(big / dec.order));
  std::vector<Matrix> powers{Matrix::identity(m.dim)};
  for (std::int64_t j = 1; j < dec.order; ++j) powers.push_back(powers.back() * th.theta);
  const CycloScalar inv_n(Rational(1) / Rational(static_cast<long>(dec.order)));
  for (std::int64_t i = 0; i < dec.order; ++i) {
    Matrix p(m.dim, m.dim);
    for (std::int64_t j = 0; j < dec.order; ++j) p += powers[j] * dec.zeta.pow(i * j);
    p *= inv_n;
    dec.bases.push_back(column_space_basis(p));
    dec.projectors.push_back(std::move(p));
  }
  return dec;
}

std::vector<std::size_t> lambda_p_slice(const TwistedSetup& s, const GradedModule& m, const IntVec& p,
                                        const IntVec& cls) {
  const IntVec orders = spatial(s);
  const IntVec target = lambda_p_class(cls, orders, p);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (lambda_p_class(m.grading[i], orders, p) == target) out.push_back(i);
  }
  return out;
}

std::vector<Vector> component_fiber(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th,
                                    const ThetaDecomposition& dec, std::size_t i, std::size_t l, const IntVec& mono) {
  const IntVec orders = spatial(s);
  const auto reps = lambda_p_reps(orders, th.shift);
  if (l >= reps.size()) throw InputError("component index out of range");
  const auto idx = lambda_p_slice(s, m, th.shift, sub(mono, reps[l]));
  std::vector<Vector> cols;
  for (auto c : idx) cols.push_back(dec.projectors.at(i).column(c));
  if (cols.empty()) return {};
  return column_space_basis(Matrix::from_columns(cols, m.dim));
}

TriangularParts classify_triangular(const TwistedSetup& s, const TauElement& x) {
  TriangularParts out;
  out.minus.setup_id = out.zero.setup_id = out.plus.setup_id = x.setup_id;
  auto part = [&](std::int64_t k0) -> TauElement& { return k0 > 0 ? out.plus : (k0 < 0 ? out.minus : out.zero); };
  for (const auto& [key, c] : x.loop) {
    const std::int64_t k0 = key.second[0];
    if (k0 != 0) {
      part(k0).loop[key] = c;
      continue;
    }
    const auto w = rational_weight(s.basis(key.first).weight);
    if (!w) throw AlgebraError("weight of " + s.label(key.first) + " is not rational");
    if (rat_is_zero(*w))
      out.zero.loop[key] = c;
    else
      (lex_positive(*w) ? out.plus : out.minus).loop[key] = c;
  }
  for (const auto& [key, c] : x.central) part(key.first[0]).central[key] = c;
  for (const auto& [key, c] : x.deriv) part(key.first[0]).deriv[key] = c;
  return out;
}

}  // namespace torloop
