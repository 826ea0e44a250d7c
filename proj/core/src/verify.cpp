#include "torloop/verify.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "torloop/coord_change.hpp"
#include "torloop/error.hpp"
#include "torloop/ideals.hpp"

namespace torloop {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { c_.name = std::move(name); }
  void ok() { ++c_.samples; }
  void fail(const std::string& what) {
    ++c_.samples;
    if (c_.pass) c_.detail = what;
    c_.pass = false;
    ++failures_;
  }
  void expect(bool cond, const std::string& what) { cond ? ok() : fail(what); }
  Check done() {
    if (failures_ > 1) c_.detail += " (" + std::to_string(failures_) + " failures)";
    return c_;
  }

 private:
  Check c_;
  std::size_t failures_ = 0;
};

std::string phi_tag(const CocycleParams& p) { return "[phi=" + p.mu1.to_string() + "," + p.mu2.to_string() + "]"; }

CycloScalar small_scalar(Rng& rng) { return CycloScalar(static_cast<long>(rng.uniform(-3, 3))); }

IntVec random_lattice_point(const IntVec& orders, Rng& rng, std::int64_t spread = 2) {
  IntVec r(orders.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = orders[i] * rng.uniform(-spread, spread);
  return r;
}

RatVec random_ratvec(std::size_t n, Rng& rng) {
  RatVec u(n);
  for (auto& x : u) {
    x = Rational(static_cast<long>(rng.uniform(-3, 3)));
    x /= Rational(static_cast<long>(rng.uniform(1, 2)));
  }
  return u;
}

WeightFunctional random_functional(const TwistedSetup& s, Rng& rng) {
  return {random_ratvec(s.h0().size(), rng), random_ratvec(s.n() + 1, rng), random_ratvec(s.n() + 1, rng)};
}

LatticeAuto random_unimodular(std::size_t n, Rng& rng) {
  while (true) {
    IntMatrix b(n, IntVec(n));
    for (auto& row : b)
      for (auto& x : row) x = rng.uniform(-3, 3);
    const auto d = int_det(b);
    if (d == 1 || d == -1) return LatticeAuto::make(std::move(b));
  }
}

TauElement random_any(const TwistedSetup& s, Rng& rng) {
  TauElement x;
  x.setup_id = s.id();
  const std::size_t n1 = s.n() + 1;
  for (int t = 0; t < 3; ++t) {
    IntVec d(n1);
    for (auto& v : d) v = rng.uniform(-3, 3);
    const CycloScalar c = small_scalar(rng);
    switch (rng.uniform(0, 2)) {
      case 0:
        x += c * TauElement::loop_term(rng.index(s.dim()), d);
        break;
      case 1:
        x += c * TauElement::central_term(d, rng.index(n1));
        break;
      default:
        x += c * TauElement::deriv_term(d, rng.index(n1));
    }
  }
  return x;
}

FdGenerator random_fd(const TwistedSetup& s, int d, Rng& rng) {
  const auto& g = s.g_naught();
  FdGenerator out;
  out.x = g[rng.index(g.size())];
  const IntVec m = s.spatial_orders();
  out.k = add(s.spatial_class(out.x), random_lattice_point(m, rng));
  for (int i = 0; i < d; ++i) out.rs.push_back(random_lattice_point(m, rng, 1));
  return out;
}

IdGenerator random_id(const TwistedSetup& s, int d, Rng& rng) {
  IdGenerator out;
  const IntVec m = s.spatial_orders();
  for (std::size_t i = 0; i < s.n(); ++i) out.u.push_back(Rational(static_cast<long>(rng.uniform(-2, 2))));
  out.r = random_lattice_point(m, rng, 1);
  for (int i = 0; i < d; ++i) out.ss.push_back(random_lattice_point(m, rng, 1));
  return out;
}

Box grow(const Box& b, const IntVec& m) {
  Box out = b;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.lo[i] -= m[i];
    out.hi[i] += m[i];
  }
  return out;
}

std::string describe(const FdGenerator& g) {
  std::string s = "X=" + std::to_string(g.x) + " k=" + to_string(g.k);
  for (const auto& r : g.rs) s += " r=" + to_string(r);
  return s;
}

std::string describe(const IdGenerator& g) {
  std::string s = "u=" + to_string(g.u) + " r=" + to_string(g.r);
  for (const auto& r : g.ss) s += " s=" + to_string(r);
  return s;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  EchelonBasis ea(dim), eb(dim);
  for (const auto& v : a) ea.add(v);
  for (const auto& v : b) eb.add(v);
  if (ea.dim() != eb.dim()) return false;
  for (const auto& v : a) {
    if (!eb.contains(v)) return false;
  }
  return true;
}

std::vector<Vector> project_columns(const Matrix& p, const std::vector<std::size_t>& idx) {
  std::vector<Vector> out;
  for (auto c : idx) out.push_back(p.column(c));
  return out;
}

std::size_t span_dim(const std::vector<Vector>& vs, std::size_t dim) {
  EchelonBasis e(dim);
  for (const auto& v : vs) e.add(v);
  return e.dim();
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_json() const {
  using json = nlohmann::ordered_json;
  std::vector<Check> sorted = checks;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  json j;
  j["command"] = command;
  j["seed"] = seed;
  json arr = json::array();
  for (const auto& c : sorted) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"samples", c.samples}, {"detail", c.detail}});
  j["checks"] = arr;
  j["pass"] = pass();
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::vector<Check> sorted = checks;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  std::ostringstream os;
  os << command << " (seed " << seed << ")\n";
  for (const auto& c : sorted) {
    os << (c.pass ? "  PASS " : "  FAIL ") << c.name << "  [" << c.samples << " samples]";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << (pass() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

TauElement random_homogeneous(const TwistedSetup& s, Rng& rng, int terms) {
  const std::size_t n1 = s.n() + 1;
  const IntVec& orders = s.orders();
  IntVec d(n1);
  if (rng.coin()) {
    for (std::size_t i = 0; i < n1; ++i) d[i] = orders[i] * rng.uniform(-2, 2);
  } else {
    for (auto& v : d) v = rng.uniform(-3, 3);
  }
  const bool lattice = in_lattice(d, orders);
  const auto it = s.eigenspaces().find(residue(d, orders));
  TauElement x;
  x.setup_id = s.id();
  for (int t = 0; t < terms; ++t) {
    const CycloScalar c = small_scalar(rng);
    switch (rng.uniform(0, 2)) {
      case 0:
        if (it != s.eigenspaces().end()) {
          x += c * TauElement::loop_term(it->second[rng.index(it->second.size())], d);
          break;
        }
        [[fallthrough]];
      case 1:
        x += c * TauElement::central_term(d, rng.index(n1));
        break;
      default:
        if (lattice) x += c * TauElement::deriv_term(d, rng.index(n1));
        else x += c * TauElement::central_term(d, rng.index(n1));
    }
  }
  x.setup_id = s.id();
  return x;
}

TauElement random_derivation(const TwistedSetup& s, Rng& rng) {
  TauElement x = TauElement::deriv_term(random_lattice_point(s.orders(), rng), rng.index(s.n() + 1), CycloScalar(1));
  x.setup_id = s.id();
  return x;
}

std::vector<Check> suite_jacobi(const TwistedSetup& s, const std::vector<CocycleParams>& phis, std::size_t samples,
                                Rng& rng) {
  std::vector<Check> out;
  for (const auto& phi : phis) {
    Tally jac("tau-jacobi" + phi_tag(phi)), anti("tau-antisymmetry" + phi_tag(phi)), grade("tau-bracket-degree" + phi_tag(phi));
    for (std::size_t t = 0; t < samples; ++t) {
      const TauElement a = random_homogeneous(s, rng), b = random_homogeneous(s, rng), c = random_homogeneous(s, rng);
      const TauElement r = jacobi_residual(s, a, b, c, phi);
      jac.expect(r.is_zero(), "a=" + to_string(s, a) + "; b=" + to_string(s, b) + "; c=" + to_string(s, c) +
                                  "; residual=" + to_string(s, r));
      const TauElement ab = tau_bracket(s, a, b, phi);
      anti.expect((ab + tau_bracket(s, b, a, phi)).is_zero(), "a=" + to_string(s, a) + "; b=" + to_string(s, b));
      const auto da = homogeneous_degree(a), db = homogeneous_degree(b), dab = homogeneous_degree(ab);
      if (da && db && !ab.is_zero()) grade.expect(dab && *dab == add(*da, *db), "a=" + to_string(s, a) + "; b=" + to_string(s, b));
    }
    out.push_back(jac.done());
    out.push_back(anti.done());
    out.push_back(grade.done());
  }
  return out;
}

Check check_structure_jacobi(const SimpleAlgebra& g) {
  Tally t("structure-jacobi");
  const auto bad = find_jacobi_violation(g);
  if (bad) {
    const auto [i, j, k] = *bad;
    t.fail("basis triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ") = (" +
           g.label(i) + ", " + g.label(j) + ", " + g.label(k) + ")");
  } else {
    t.ok();
  }
  return t.done();
}

std::vector<Check> suite_cocycle(const TwistedSetup& s, std::size_t samples, Rng& rng) {
  const std::vector<std::pair<std::string, CocycleParams>> cases{{"cocycle-phi1", {CycloScalar(1), CycloScalar(0)}},
                                                                  {"cocycle-phi2", {CycloScalar(0), CycloScalar(1)}}};
  std::vector<Check> out;
  for (const auto& [name, phi] : cases) {
    Tally t(name);
    for (std::size_t i = 0; i < samples; ++i) {
      const TauElement a = random_derivation(s, rng), b = random_derivation(s, rng), c = random_derivation(s, rng);
      const TauElement r = jacobi_residual(s, a, b, c, phi);
      t.expect(r.is_zero(), to_string(s, a) + ", " + to_string(s, b) + ", " + to_string(s, c) + " -> " + to_string(s, r));
    }
    out.push_back(t.done());
  }
  Tally comb("cocycle-combination");
  for (std::size_t i = 0; i < samples; ++i) {
    const CocycleParams phi{small_scalar(rng), small_scalar(rng)};
    const TauElement a = random_derivation(s, rng), b = random_derivation(s, rng), c = random_derivation(s, rng);
    const TauElement r = jacobi_residual(s, a, b, c, phi);
    comb.expect(r.is_zero(), phi_tag(phi) + " " + to_string(s, a) + ", " + to_string(s, b) + ", " + to_string(s, c));
  }
  out.push_back(comb.done());

  Tally anti("cocycle-antisymmetry"), cons("derivation-central-consistency");
  const std::size_t n1 = s.n() + 1;
  for (std::size_t i = 0; i < samples; ++i) {
    const IntVec r = random_lattice_point(s.orders(), rng), q = random_lattice_point(s.orders(), rng);
    const std::size_t a = rng.index(n1), b = rng.index(n1);
    for (int which = 1; which <= 2; ++which) {
      AxisMap sum = cocycle_value(r, a, q, b, which);
      for (const auto& [k, v] : cocycle_value(q, b, r, a, which)) sum[k] += v;
      anti.expect(central_normal_form(sum).empty(), "phi" + std::to_string(which) + " at r=" + to_string(r) + " s=" + to_string(q));
    }
    IntVec sdeg(n1);
    for (auto& v : sdeg) v = rng.uniform(-3, 3);
    TauElement d = TauElement::deriv_term(r, a), k = TauElement::central_term(sdeg, b);
    d.setup_id = k.setup_id = s.id();
    const TauElement br = tau_bracket(s, d, k);
    cons.expect(br.loop.empty() && br.deriv.empty() && br.central == derivation_on_central(r, a, sdeg, b),
                to_string(s, d) + " on " + to_string(s, k));
  }
  out.push_back(anti.done());
  out.push_back(cons.done());
  return out;
}

std::vector<Check> suite_invariance(const TwistedSetup& s, std::size_t samples, Rng& rng) {
  const SimpleAlgebra& g = s.algebra();
  const std::size_t D = g.dim();
  std::vector<Check> out;
  out.push_back(check_structure_jacobi(g));
  Tally jac("g-jacobi"), inv("form-invariance"), sym("form-symmetry"), anti("g-antisymmetry");
  auto rv = [&]() {
    Vector v(D);
    for (auto& x : v) x = small_scalar(rng);
    return v;
  };
  for (std::size_t t = 0; t < samples; ++t) {
    const Vector x = rv(), y = rv(), z = rv();
    Vector r = g.bracket(g.bracket(x, y), z);
    axpy(r, CycloScalar(1), g.bracket(g.bracket(y, z), x));
    axpy(r, CycloScalar(1), g.bracket(g.bracket(z, x), y));
    jac.expect(is_zero(r), "random triple " + std::to_string(t));
    inv.expect(g.form(g.bracket(x, y), z) == g.form(x, g.bracket(y, z)), "random triple " + std::to_string(t));
    sym.expect(g.form(x, y) == g.form(y, x), "random pair " + std::to_string(t));
    Vector a = g.bracket(x, y);
    axpy(a, CycloScalar(1), g.bracket(y, x));
    anti.expect(is_zero(a), "random pair " + std::to_string(t));
  }
  out.push_back(jac.done());
  out.push_back(inv.done());
  out.push_back(sym.done());
  out.push_back(anti.done());

  Tally sigma("form-sigma-invariance");
  for (std::size_t i = 0; i < s.auto_matrices().size(); ++i) {
    const Matrix& A = s.auto_matrices()[i];
    for (std::size_t a = 0; a < D; ++a)
      for (std::size_t b = 0; b < D; ++b) {
        Vector ea(D), eb(D);
        ea[a] = CycloScalar(1);
        eb[b] = CycloScalar(1);
        sigma.expect(g.form(A * ea, A * eb) == g.form(ea, eb),
                     "sigma_" + std::to_string(i) + " on (" + g.label(a) + ", " + g.label(b) + ")");
      }
  }
  out.push_back(sigma.done());

  Tally wd("form-degree-compatibility");
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b) {
      if (s.form_entry(a, b).is_zero()) {
        wd.ok();
        continue;
      }
      wd.expect(is_zero(residue(add(s.basis(a).klass, s.basis(b).klass), s.orders())),
                "(" + s.label(a) + ", " + s.label(b) + ") != 0 but classes do not sum to 0");
    }
  out.push_back(wd.done());
  return out;
}

std::vector<Check> suite_grading(const TwistedSetup& s, std::size_t samples, Rng& rng) {
  std::vector<Check> out;
  const SimpleAlgebra& g = s.algebra();
  Tally count("eigenspace-dimension-sum");
  std::size_t total = 0;
  for (const auto& [cls, idx] : s.eigenspaces()) total += idx.size();
  count.expect(total == g.dim(), "sum " + std::to_string(total) + " vs dim " + std::to_string(g.dim()));
  out.push_back(count.done());

  Tally eig("eigenspace-eigenvalues");
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t i = 0; i < s.auto_matrices().size(); ++i) {
      const Vector& v = s.basis(a).chev;
      Vector lhs = s.auto_matrices()[i] * v;
      axpy(lhs, -s.xi(i).pow(s.basis(a).klass[i]), v);
      eig.expect(is_zero(lhs), "sigma_" + std::to_string(i) + " on " + s.label(a));
    }
  out.push_back(eig.done());

  Tally comm("automorphisms-commute");
  const auto& autos = s.auto_matrices();
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = i + 1; j < autos.size(); ++j)
      comm.expect(commutator(autos[i], autos[j]).is_zero(), "sigma_" + std::to_string(i) + ", sigma_" + std::to_string(j));
  out.push_back(comm.done());

  Tally stable("gnaught-sigma-stable"), central("gnaught-centralizes-h0");
  EchelonBasis gn(g.dim());
  for (auto x : s.g_naught()) gn.add(s.basis(x).chev);
  for (auto x : s.g_naught()) {
    for (std::size_t i = 1; i < autos.size(); ++i)
      stable.expect(gn.contains(autos[i] * s.basis(x).chev), "sigma_" + std::to_string(i) + " on " + s.label(x));
    for (const auto& h : s.h0()) central.expect(is_zero(g.bracket(h, s.basis(x).chev)), "[h(0), " + s.label(x) + "]");
  }
  out.push_back(stable.done());
  out.push_back(central.done());

  Tally tri("triangular-decomposition");
  for (std::size_t t = 0; t < samples; ++t) {
    const TauElement x = random_any(s, rng);
    TriangularParts p;
    try {
      p = classify_triangular(s, x);
    } catch (const AlgebraError& e) {
      tri.fail(e.what());
      continue;
    }
    bool good = (p.minus + p.zero + p.plus) == x;
    const TriangularParts again = classify_triangular(s, p.plus);
    good = good && again.plus == p.plus && again.minus.is_zero() && again.zero.is_zero();
    for (const auto& [k, v] : p.plus.central) good = good && k.first[0] > 0;
    for (const auto& [k, v] : p.minus.deriv) good = good && k.first[0] < 0;
    for (const auto& [k, v] : p.zero.loop) {
      const auto w = rational_weight(s.basis(k.first).weight);
      good = good && k.second[0] == 0 && w && rat_is_zero(*w);
    }
    tri.expect(good, to_string(s, x));
  }
  out.push_back(tri.done());
  return out;
}

std::vector<Check> suite_assumptions(const TwistedSetup& s) {
  const AssumptionReport r = check_assumptions(s);
  Tally a("assumption-simple-fixed-algebra"), b("assumption-cartan-compatible"), c("assumption-enhanced-roots");
  a.expect(r.simple, r.simple_detail);
  b.expect(r.cartan, r.cartan_detail);
  c.expect(r.roots, r.roots_detail);
  return {a.done(), b.done(), c.done()};
}

std::vector<Check> suite_roots(const TwistedSetup& s, const IntVec& box, std::size_t samples, Rng& rng) {
  const auto spaces = root_spaces(s, box);
  std::vector<RootLabel> real;
  for (const auto& [g, d] : spaces) {
    if (g.is_real()) real.push_back(g);
  }
  Tally pair("root-coroot-pairing"), invol("reflection-involution"), form("reflection-preserves-form"),
      closure("reflection-preserves-roots"), zero("root-zero-space");
  for (const auto& g : real) {
    const Rational v = evaluate(functional_of(s, g), coroot(s, g));
    pair.expect(v == 2, to_string(g) + " gives " + v.get_str());
  }
  for (const auto& g : real)
    for (const auto& h : real) {
      const WeightFunctional w = reflect(s, g, functional_of(s, h));
      const auto lab = label_of(w);
      closure.expect(lab && is_root(s, *lab), "r_" + to_string(g) + "(" + to_string(h) + ")");
    }
  for (std::size_t t = 0; t < samples && !real.empty(); ++t) {
    const RootLabel& g = real[rng.index(real.size())];
    const WeightFunctional a = random_functional(s, rng), b = random_functional(s, rng);
    invol.expect(reflect(s, g, reflect(s, g, a)) == a, to_string(g) + " on " + to_string(a));
    form.expect(form_hstar(s, reflect(s, g, a), reflect(s, g, b)) == form_hstar(s, a, b), to_string(g));
  }
  const RootLabel origin{RatVec(s.h0().size(), Rational(0)), IntVec(s.n() + 1, 0)};
  const std::size_t want = s.h0().size() + 2 * (s.n() + 1);
  zero.expect(root_space_dim(s, origin) == want,
              "dim tau_0 = " + std::to_string(root_space_dim(s, origin)) + ", expected " + std::to_string(want));
  return {pair.done(), invol.done(), form.done(), closure.done(), zero.done()};
}

Check check_charge_normalization(std::size_t len, std::int64_t bound) {
  Tally t("charge-normalization[len=" + std::to_string(len) + "]");
  IntVec lo(len, -bound), hi(len, bound);
  for (const auto& c : box_points(lo, hi)) {
    if (is_zero(c)) continue;
    std::int64_t g = 0;
    for (auto x : c) g = gcd64(g, x);
    const auto [B, v] = normalize_central_charge(c);
    IntVec want(len, 0);
    want[0] = g;
    const auto det = int_det(B.B);
    t.expect(v == want && transform_charge(B, c) == want && (det == 1 || det == -1), "c=" + to_string(c));
  }
  return t.done();
}

std::vector<Check> suite_automorphism(const TwistedSetup& s, std::size_t samples, Rng& rng) {
  if (!s.untwisted()) throw InputError("change of coordinates is only defined on untwisted setups");
  const std::size_t n1 = s.n() + 1;
  Tally aut("coord-automorphism"), comp("coord-composition"), inv("coord-inverse"), nf("coord-normal-form"),
      charge("coord-charge-transform");
  for (std::size_t t = 0; t < samples; ++t) {
    const LatticeAuto B = random_unimodular(n1, rng), C = random_unimodular(n1, rng);
    const TauElement a = random_any(s, rng), b = random_any(s, rng);
    aut.expect(apply_lattice_auto(s, B, tau_bracket(s, a, b)) ==
                   tau_bracket(s, apply_lattice_auto(s, B, a), apply_lattice_auto(s, B, b)),
               "a=" + to_string(s, a) + "; b=" + to_string(s, b));
    comp.expect(apply_lattice_auto(s, C, apply_lattice_auto(s, B, a)) == apply_lattice_auto(s, C * B, a), to_string(s, a));
    inv.expect(apply_lattice_auto(s, LatticeAuto::make(B.Binv), apply_lattice_auto(s, B, a)) == a, to_string(s, a));
    TauElement raw;
    raw.setup_id = s.id();
    IntVec d(n1);
    for (auto& v : d) v = rng.uniform(-3, 3);
    for (std::size_t j = 0; j < n1; ++j) raw.central[{d, j}] = small_scalar(rng);
    TauElement normal = raw;
    normal.normalize();
    nf.expect(apply_lattice_auto(s, B, raw) == apply_lattice_auto(s, B, normal), "degree " + to_string(d));
    // a central charge c (values of K_i) is carried to B^T c
    IntVec c(n1);
    for (auto& v : c) v = rng.uniform(-5, 5);
    Rational before = 0, after = 0;
    const TauElement k = TauElement::central_term(IntVec(n1, 0), rng.index(n1));
    for (const auto& [key, v] : apply_lattice_auto(s, B, k).central) after += v.rational_value() * Rational(static_cast<long>(c[key.second]));
    const IntVec ct = transform_charge(B, c);
    for (const auto& [key, v] : k.central) before += v.rational_value() * Rational(static_cast<long>(ct[key.second]));
    charge.expect(before == after, "c=" + to_string(c));
  }
  return {aut.done(), comp.done(), inv.done(), nf.done(), charge.done(), check_charge_normalization(n1, 10)};
}

Check check_gl_quotient(std::size_t n, std::size_t samples, Rng& rng) {
  Tally t("gl-quotient-bracket[n=" + std::to_string(n) + "]");
  IntVec orders(n);
  for (auto& m : orders) m = rng.uniform(1, 3);
  for (std::size_t i = 0; i < samples; ++i) {
    const RatVec u = random_ratvec(n, rng), v = random_ratvec(n, rng);
    const IntVec r = random_lattice_point(orders, rng), q = random_lattice_point(orders, rng);
    DerElem iu = d_element(u, r), iv = d_element(v, q);
    add_to(iu, d_element(u, IntVec(n, 0)), CycloScalar(-1));
    add_to(iv, d_element(v, IntVec(n, 0)), CycloScalar(-1));
    const Matrix lhs = gl_n_image(n, der_bracket(iu, iv));
    const Matrix rhs = commutator(gl_n_image(u, r), gl_n_image(v, q));
    t.expect(lhs == rhs, "u=" + to_string(u) + " r=" + to_string(r) + " v=" + to_string(v) + " s=" + to_string(q));
  }
  return t.done();
}

std::vector<Check> suite_ideal_chain(const TwistedSetup& s, int max_d, std::size_t samples, Rng& rng) {
  if (max_d < 1) throw InputError("ideal chain depth must be at least 1");
  if (s.g_naught().empty()) throw InputError("g-naught is empty for this setup");
  const IntVec m = s.spatial_orders();
  std::vector<Check> out;
  for (int d = 1; d <= max_d; ++d) {
    const std::string tag = "[d=" + std::to_string(d) + "]";
    Tally fchain("fd-bracket-chain" + tag), fsub("fd-containment" + tag), fideal("fd-ideal" + tag),
        foracle("fd-membership-oracle" + tag), ichain(d == 1 ? "id-bracket-mod-i2" + tag : "id-bracket-chain" + tag),
        isub("id-containment" + tag), ioracle("id-membership-oracle" + tag), act("id-loop-action" + tag),
        stab("membership-box-stability" + tag);
    for (std::size_t t = 0; t < samples; ++t) {
      const FdGenerator g1 = random_fd(s, d, rng), g2 = random_fd(s, d, rng);
      const LoopElem a = expand_fd(s, g1), b = expand_fd(s, g2);
      const LoopElem ab = loop_bracket(s, a, b);
      const bool in_next = member_F_d(s, ab, d + 1);
      fchain.expect(in_next, describe(g1) + " | " + describe(g2));
      foracle.expect(in_next == member_F_d_moments(s, ab, d + 1), describe(g1) + " | " + describe(g2));
      if (!a.empty()) {
        const bool prev = d == 1 || member_F_d(s, a, d - 1);
        fsub.expect(prev, describe(g1));
        const FdGenerator g0 = random_fd(s, 0, rng);
        fideal.expect(member_F_d(s, loop_bracket(s, expand_fd(s, g0), a), d), describe(g0) + " | " + describe(g1));
        const LoopElem single = loop_monomial(s, a.begin()->first.first, a.begin()->first.second);
        const bool sm = member_F_d(s, single, d);
        foracle.expect(sm == member_F_d_moments(s, single, d), "monomial of " + describe(g1));
        const Box box = default_box(s, single, d);
        stab.expect(sm == member_F_d(s, single, d, grow(box, m)), "monomial of " + describe(g1));
      } else {
        fsub.ok();
        fideal.ok();
      }

      const IdGenerator h1 = random_id(s, d, rng), h2 = random_id(s, d, rng);
      const DerElem p = expand_id(s, h1), q = expand_id(s, h2);
      const DerElem pq = der_bracket(p, q);
      const bool i_next = member_I_d(s, pq, d + 1);
      if (d == 1) {
        // I/I_2 is gl_n: a bracket of two elements of I lies in I_2 exactly when its image vanishes
        const bool image_zero = gl_n_image(s.n(), pq).is_zero();
        ichain.expect(i_next == image_zero, describe(h1) + " | " + describe(h2));
      } else {
        ichain.expect(i_next, describe(h1) + " | " + describe(h2));
      }
      ioracle.expect(i_next == member_I_d_moments(s, pq, d + 1), describe(h1) + " | " + describe(h2));
      if (!p.empty()) {
        isub.expect(d == 1 || member_I_d(s, p, d - 1), describe(h1));
        stab.expect(member_I_d(s, p, d) == member_I_d(s, p, d, grow(default_box(s, p, d), m)), describe(h1));
      } else {
        isub.ok();
      }

      // [I_d(u, k, r_1..r_d), X(l)] = (u, l) X(k + l, r_1..r_d)
      const FdGenerator x = random_fd(s, 0, rng);
      FdGenerator shifted{x.x, add(x.k, h1.r), h1.ss};
      LoopElem want = expand_fd(s, shifted);
      Rational ul = 0;
      for (std::size_t i = 0; i < s.n(); ++i) ul += h1.u[i] * Rational(static_cast<long>(x.k[i]));
      LoopElem got = der_act(p, expand_fd(s, x));
      add_to(got, want, CycloScalar(-ul));
      act.expect(got.empty(), describe(h1) + " on " + describe(x));
    }
    for (auto* tl : {&fchain, &fsub, &fideal, &foracle, &ichain, &isub, &ioracle, &act, &stab}) out.push_back(tl->done());
  }
  out.push_back(check_gl_quotient(s.n(), samples, rng));
  return out;
}

std::vector<Check> suite_module_relations(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2,
                                          const RatVec& alpha, const Rational& d0, std::size_t samples, Rng& rng) {
  const GradedModule m = tensor_module(s, v1, v2, alpha, d0);
  validate_module(s, m);
  std::vector<Check> out;
  for (const auto& r : relation_residuals(s, m, samples, rng)) {
    Check c{r.name, r.failures == 0, r.samples, r.first_failure};
    if (r.failures > 1) c.detail += " (" + std::to_string(r.failures) + " failures)";
    out.push_back(std::move(c));
  }
  Tally eval("module-evaluation-oracle"), unit("module-unit-action"), weight("module-weight-action");
  for (std::size_t t = 0; t < samples; ++t) {
    const LAction a = random_action(s, rng);
    FactorVec fv;
    for (int term = 0; term < 2; ++term) {
      Matrix mat(v1.dim, v2.dim);
      for (std::size_t i = 0; i < v1.dim; ++i)
        for (std::size_t j = 0; j < v2.dim; ++j) mat(i, j) = small_scalar(rng);
      IntVec k(s.n());
      for (auto& x : k) x = rng.uniform(-3, 3);
      fv[k] = mat;
    }
    LoopVec lhs = apply(s, m, a, flatten(fv));
    add_to(lhs, flatten(evaluation_action(s, v1, v2, alpha, d0, a, fv)), CycloScalar(-1));
    eval.expect(is_zero(lhs), "random action sample " + std::to_string(t));

    const LoopVec v = random_loop_vector(s, m, rng);
    unit.expect(apply(s, m, LAction::t(IntVec(s.n(), 0)), v) == v, "t^0");
    const RatVec u = random_ratvec(s.n(), rng);
    LoopVec w = apply(s, m, LAction::der(u, IntVec(s.n(), 0)), v);
    for (const auto& [mono, vec] : v) {
      Rational c = 0;
      for (std::size_t i = 0; i < s.n(); ++i) c += u[i] * (Rational(static_cast<long>(mono[i])) + alpha[i]);
      add_to(w, LoopVec{{mono, vec}}, CycloScalar(-c));
    }
    weight.expect(is_zero(w), "D(" + to_string(u) + ", 0)");
  }
  out.push_back(eval.done());
  out.push_back(unit.done());
  out.push_back(weight.done());
  return out;
}

std::vector<Check> suite_components(const TwistedSetup& s, const GradedModule& m, std::size_t samples, Rng& rng) {
  validate_module(s, m);
  const IntVec orders = s.spatial_orders();
  IntVec hi(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) hi[i] = orders[i] - 1;
  const auto lambda = box_points(IntVec(orders.size(), 0), hi);
  Tally closure("component-closure"), sum("component-direct-sum"), lemma("component-slice-dimensions"),
      count("component-count");
  std::size_t nonempty = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    const LoopVec v = random_loop_vector(s, m, rng, 3);
    LoopVec total;
    for (const auto& p : lambda) add_to(total, graded_component(s, m, p, v));
    sum.expect(total == v, "sample " + std::to_string(t));
    const IntVec& p = lambda[rng.index(lambda.size())];
    const LoopVec comp = graded_component(s, m, p, v);
    const LoopVec img = apply(s, m, random_action(s, rng), comp);
    closure.expect(graded_component(s, m, p, img) == img, "p=" + to_string(p));
  }
  for (const auto& p : lambda) {
    // the component is nonzero iff some basis vector has degree in it after a shift; it always is for dim > 0
    Vector e(m.dim);
    if (m.dim == 0) break;
    e[0] = CycloScalar(1);
    const IntVec mono = add(m.grading[0], p);
    if (!graded_component(s, m, p, LoopVec{{mono, e}}).empty()) ++nonempty;
  }
  count.expect(nonempty == lambda.size(), std::to_string(nonempty) + " of " + std::to_string(lambda.size()));
  const std::size_t slice_samples = std::max<std::size_t>(1, samples / 10);
  for (std::size_t t = 0; t < slice_samples; ++t) {
    IntVec k(s.n());
    for (auto& x : k) x = rng.uniform(-3, 3);
    IntVec p(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) p[i] = rng.uniform(-3, 3);
    const std::size_t want = graded_dim(s, m, k);
    const std::size_t d0 = weight_slice_dim(s, m, IntVec(s.n(), 0), k);
    const std::size_t dp = weight_slice_dim(s, m, p, add(k, p));
    lemma.expect(want == d0 && want == dp, "k=" + to_string(k) + " p=" + to_string(p) + ": " + std::to_string(want) +
                                               ", " + std::to_string(d0) + ", " + std::to_string(dp));
  }
  return {closure.done(), sum.done(), lemma.done(), count.done()};
}

std::vector<Check> suite_theta(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th,
                               std::size_t samples, Rng& rng) {
  const IntVec orders = s.spatial_orders();
  const ThetaDecomposition dec = theta_eigendecompose(s, m, th);
  const auto np = static_cast<std::size_t>(dec.order);
  const auto reps = lambda_p_reps(orders, th.shift);
  IntVec hi(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) hi[i] = orders[i] - 1;
  const auto lambda = box_points(IntVec(orders.size(), 0), hi);

  Tally eig("theta-eigenvalues"), dsum("theta-direct-sum"), grading("theta-lambda-p-grading"),
      cor("theta-slice-dimensions"), claim("theta-eigenvector-shift"), fiber("component-fiber-dimension"),
      split("component-decomposition"), closure("component-fiber-closure"), base("component-base-representative");

  for (std::size_t t = 0; t < samples; ++t) {
    Vector v(m.dim);
    for (auto& x : v) x = small_scalar(rng);
    const std::size_t i = rng.index(np);
    Vector vi(m.dim);
    Vector cur = v;
    for (std::size_t j = 0; j < np; ++j) {
      axpy(vi, dec.zeta.pow(static_cast<std::int64_t>(i * j)), cur);
      cur = th.theta * cur;
    }
    Vector lhs = th.theta * vi;
    axpy(lhs, -dec.zeta.pow(-static_cast<std::int64_t>(i)), vi);
    eig.expect(is_zero(lhs), "i=" + std::to_string(i));
  }

  std::vector<Vector> all;
  std::size_t total = 0;
  for (const auto& b : dec.bases) {
    total += b.size();
    all.insert(all.end(), b.begin(), b.end());
  }
  dsum.expect(total == m.dim && span_dim(all, m.dim) == m.dim,
              "dims sum to " + std::to_string(total) + ", span " + std::to_string(span_dim(all, m.dim)));

  for (std::size_t i = 0; i < np; ++i) {
    std::size_t graded = 0;
    for (const auto& q : reps) graded += span_dim(project_columns(dec.projectors[i], lambda_p_slice(s, m, th.shift, q)), m.dim);
    grading.expect(graded == dec.bases[i].size(), "M_" + std::to_string(i));
  }

  for (const auto& k : lambda) {
    const std::size_t dk = graded_dim(s, m, k);
    for (std::size_t j = 0; j < np; ++j) {
      const IntVec jp = scale(static_cast<std::int64_t>(j), th.shift);
      cor.expect(graded_dim(s, m, add(k, jp)) == dk, "k=" + to_string(k) + " j=" + std::to_string(j));
      const std::size_t ip = rng.index(np);
      const IntVec kk = add(k, scale(static_cast<std::int64_t>(ip), th.shift));
      cor.expect(weight_slice_dim(s, m, jp, kk) == dk, "slice k=" + to_string(kk) + " component j=" + std::to_string(j));
    }
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < m.dim; ++a) {
      if (m.grading[a] == k) idx.push_back(a);
    }
    for (std::size_t i = 0; i < np; ++i) {
      const auto here = project_columns(dec.projectors[i], idx);
      for (std::size_t j = 1; j < np; ++j) {
        std::vector<std::size_t> idx2;
        const IntVec kj = residue(sub(k, scale(static_cast<std::int64_t>(j), th.shift)), orders);
        for (std::size_t a = 0; a < m.dim; ++a) {
          if (m.grading[a] == kj) idx2.push_back(a);
        }
        claim.expect(same_span(here, project_columns(dec.projectors[i], idx2), m.dim),
                     "k=" + to_string(k) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
      for (std::size_t l = 0; l < reps.size(); ++l) {
        const auto f = component_fiber(s, m, th, dec, i, l, add(k, reps[l]));
        fiber.expect(f.size() == graded_dim(s, m, k), "i=" + std::to_string(i) + " l=" + std::to_string(l) + " k=" + to_string(k));
      }
    }
  }
  base.expect(!reps.empty() && is_zero(reps[0]), "q_0 is not 0");

  for (std::size_t t = 0; t < samples; ++t) {
    IntVec mono(s.n());
    for (auto& x : mono) x = rng.uniform(-3, 3);
    const std::size_t i = rng.index(np);
    std::vector<Vector> all_l;
    std::size_t sum = 0;
    for (std::size_t l = 0; l < reps.size(); ++l) {
      const auto f = component_fiber(s, m, th, dec, i, l, mono);
      sum += f.size();
      all_l.insert(all_l.end(), f.begin(), f.end());
    }
    split.expect(sum == dec.bases[i].size() && same_span(all_l, dec.bases[i], m.dim),
                 "i=" + std::to_string(i) + " t^" + to_string(mono));

    const std::size_t l = rng.index(reps.size());
    LoopVec v;
    for (int term = 0; term < 2; ++term) {
      IntVec at(s.n());
      for (auto& x : at) x = rng.uniform(-3, 3);
      Vector w(m.dim);
      for (const auto& b : component_fiber(s, m, th, dec, i, l, at)) axpy(w, small_scalar(rng), b);
      add_to(v, LoopVec{{at, w}});
    }
    const LoopVec img = apply(s, m, random_action(s, rng), v);
    bool inside = true;
    for (const auto& [at, w] : img) {
      EchelonBasis e(m.dim);
      for (const auto& b : component_fiber(s, m, th, dec, i, l, at)) e.add(b);
      inside = inside && e.contains(w);
    }
    closure.expect(inside, "i=" + std::to_string(i) + " l=" + std::to_string(l));
  }
  return {eig.done(),   dsum.done(),  grading.done(), cor.done(),    claim.done(),
          fiber.done(), split.done(), closure.done(), base.done()};
}

}  // namespace torloop
