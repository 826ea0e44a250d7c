#include "torloop/root_data.hpp"

#include <algorithm>
#include <sstream>

#include "torloop/error.hpp"

namespace torloop {

namespace {

void require_assumptions(const TwistedSetup& s) {
  auto rep = check_assumptions(s);
  if (!rep.all()) {
    throw AlgebraError("standing assumptions fail for this setup: " +
                       std::string(!rep.simple ? rep.simple_detail : !rep.cartan ? rep.cartan_detail : rep.roots_detail));
  }
}

RatVec zeros(std::size_t n) { return RatVec(n, Rational(0)); }

RatVec rat_sub(const RatVec& a, const RatVec& b) { return rat_add(a, rat_scale(-1, b)); }

}  // namespace

WeightFunctional zero_functional(const TwistedSetup& s) {
  return {zeros(s.h0().size()), zeros(s.n() + 1), zeros(s.n() + 1)};
}

WeightFunctional delta(const TwistedSetup& s, std::size_t i) {
  auto w = zero_functional(s);
  w.delta.at(i) = 1;
  return w;
}

WeightFunctional big_lambda(const TwistedSetup& s, std::size_t i) {
  auto w = zero_functional(s);
  w.lambda.at(i) = 1;
  return w;
}

WeightFunctional functional_of(const TwistedSetup& s, const RootLabel& g) {
  if (g.alpha.size() != s.h0().size() || g.degree.size() != s.n() + 1) throw InputError("root label has wrong shape");
  auto w = zero_functional(s);
  w.finite = g.alpha;
  for (std::size_t i = 0; i < g.degree.size(); ++i) w.delta[i] = static_cast<long>(g.degree[i]);
  return w;
}

std::optional<RootLabel> label_of(const WeightFunctional& w) {
  if (!rat_is_zero(w.lambda)) return std::nullopt;
  RootLabel g{w.finite, IntVec(w.delta.size())};
  for (std::size_t i = 0; i < w.delta.size(); ++i) {
    if (w.delta[i].get_den() != 1) return std::nullopt;
    g.degree[i] = w.delta[i].get_num().get_si();
  }
  return g;
}

WeightFunctional operator+(const WeightFunctional& a, const WeightFunctional& b) {
  return {rat_add(a.finite, b.finite), rat_add(a.delta, b.delta), rat_add(a.lambda, b.lambda)};
}

WeightFunctional operator-(const WeightFunctional& a, const WeightFunctional& b) {
  return {rat_sub(a.finite, b.finite), rat_sub(a.delta, b.delta), rat_sub(a.lambda, b.lambda)};
}

WeightFunctional operator*(const Rational& c, const WeightFunctional& a) {
  return {rat_scale(c, a.finite), rat_scale(c, a.delta), rat_scale(c, a.lambda)};
}

Rational evaluate(const WeightFunctional& w, const HElement& h) {
  Rational v = 0;
  for (std::size_t i = 0; i < w.finite.size(); ++i) v += w.finite[i] * h.h0[i];
  for (std::size_t i = 0; i < w.delta.size(); ++i) v += w.delta[i] * h.d[i] + w.lambda[i] * h.K[i];
  return v;
}

Rational form_hstar(const TwistedSetup& s, const WeightFunctional& a, const WeightFunctional& b) {
  const auto& rd = s.root_data();
  if (!rd.form_nondegenerate) throw AlgebraError("form on h(0) is degenerate");
  Rational v = weight_inner(rd, a.finite, b.finite);
  for (std::size_t i = 0; i < a.delta.size(); ++i) v += a.delta[i] * b.lambda[i] + a.lambda[i] * b.delta[i];
  return v;
}

std::size_t root_space_dim(const TwistedSetup& s, const RootLabel& g) {
  const std::size_t n1 = s.n() + 1;
  if (g.degree.size() != n1 || g.alpha.size() != s.h0().size()) throw InputError("root label has wrong shape");
  std::size_t dim = s.weight_space(g.degree, g.alpha).size();
  if (!g.is_real()) {
    dim += is_zero(g.degree) ? n1 : n1 - 1;
    if (in_lattice(g.degree, s.orders())) dim += n1;
  }
  return dim;
}

bool is_root(const TwistedSetup& s, const RootLabel& g) {
  if (g.is_real() && !g.degree.empty()) {
    const auto& w = s.root_data().weights;
    if (std::find(w.begin(), w.end(), g.alpha) == w.end()) return false;
  }
  return root_space_dim(s, g) > 0;
}

std::vector<std::pair<RootLabel, std::size_t>> root_spaces(const TwistedSetup& s, const IntVec& box) {
  require_assumptions(s);
  if (box.size() != s.n() + 1) throw InputError("box needs n+1 bounds");
  std::vector<RatVec> alphas{zeros(s.h0().size())};
  for (const auto& w : s.root_data().weights) alphas.push_back(w);
  std::vector<std::pair<RootLabel, std::size_t>> out;
  for (const auto& deg : box_points(scale(-1, box), box)) {
    for (const auto& a : alphas) {
      RootLabel g{a, deg};
      if (auto d = root_space_dim(s, g); d > 0) out.emplace_back(std::move(g), d);
    }
  }
  return out;
}

HElement coroot(const TwistedSetup& s, const RootLabel& g) {
  if (!g.is_real()) throw InputError("coroot of an imaginary root");
  const auto& rd = s.root_data();
  if (!rd.form_nondegenerate) throw AlgebraError("form on h(0) is degenerate");
  const std::size_t r = s.h0().size(), n1 = s.n() + 1;
  const Rational len = weight_inner(rd, g.alpha, g.alpha);
  if (len == 0) throw AlgebraError("isotropic finite part");
  const Rational f = Rational(2) / len;
  HElement h{zeros(r), zeros(n1), zeros(n1)};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) h.h0[i] += f * rd.gram_inv[i][j] * g.alpha[j];
  for (std::size_t i = 0; i < n1; ++i) h.K[i] = f * static_cast<long>(g.degree[i]);
  return h;
}

WeightFunctional reflect(const TwistedSetup& s, const RootLabel& g, const WeightFunctional& w) {
  const HElement cv = coroot(s, g);
  return w - evaluate(w, cv) * functional_of(s, g);
}

bool leq(const TwistedSetup& s, const WeightFunctional& lambda, const WeightFunctional& mu) {
  require_assumptions(s);
  const auto& rd = s.root_data();
  WeightFunctional nu = mu - lambda;
  if (!rat_is_zero(nu.lambda)) return false;
  for (std::size_t i = 1; i < nu.delta.size(); ++i) {
    if (nu.delta[i] != 0) return false;
  }
  const Rational c = nu.delta[0];
  if (c < 0 || c.get_den() != 1) return false;
  RatVec target = rat_add(nu.finite, rat_scale(c, rd.highest));
  const std::size_t r = s.h0().size(), p = rd.simple.size();
  Matrix a(r, p);
  Vector rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    rhs[i] = CycloScalar(target[i]);
    for (std::size_t j = 0; j < p; ++j) a(i, j) = CycloScalar(rd.simple[j][i]);
  }
  auto x = solve(a, rhs);
  if (!x) return false;
  for (const auto& v : *x) {
    Rational q = v.rational_value();
    if (q < 0 || q.get_den() != 1) return false;
  }
  return true;
}

std::string to_string(const RootLabel& g) {
  std::ostringstream os;
  os << to_string(g.alpha) << " + " << g.degree[0] << "*delta0";
  for (std::size_t i = 1; i < g.degree.size(); ++i) {
    if (g.degree[i] != 0) os << " + " << g.degree[i] << "*delta" << i;
  }
  return os.str();
}

std::string to_string(const WeightFunctional& w) {
  std::ostringstream os;
  os << "finite=" << to_string(w.finite) << " delta=" << to_string(w.delta) << " Lambda=" << to_string(w.lambda);
  return os.str();
}

std::string to_string(const HElement& h) {
  std::ostringstream os;
  os << "h0=" << to_string(h.h0) << " K=" << to_string(h.K) << " d=" << to_string(h.d);
  return os.str();
}

}  // namespace torloop
