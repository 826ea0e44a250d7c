#include "torloop/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torloop/error.hpp"

namespace torloop {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + what + "' has the wrong type");
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

CycloScalar scalar_from(const json& j, std::uint32_t target) {
  if (j.is_object()) {
    const auto m = get_as<std::int64_t>(require(j, "modulus"), "modulus");
    if (m < 1) throw InputError("scalar modulus must be positive");
    const json& cj = require(j, "coeffs");
    if (!cj.is_array()) throw InputError("scalar coeffs must be an array");
    std::vector<Rational> coeffs;
    for (const auto& c : cj) coeffs.push_back(rational_from(c));
    if (static_cast<std::int64_t>(coeffs.size()) != euler_phi(m))
      throw InputError("scalar with modulus " + std::to_string(m) + " needs " + std::to_string(euler_phi(m)) + " coefficients");
    CycloScalar x(std::move(coeffs), static_cast<std::uint32_t>(m));
    if (x.modulus() == 1 || x.modulus() == target) return x;
    if (target % x.modulus() != 0)
      throw InputError("scalar modulus " + std::to_string(m) + " does not divide " + std::to_string(target));
    return x.lifted(target);
  }
  return CycloScalar(rational_from(j));
}

RatVec ratvec_from(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("field '") + what + "' must be an array");
  RatVec out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

IntVec intvec_from(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("field '") + what + "' must be an array");
  IntVec out;
  for (const auto& x : j) out.push_back(get_as<std::int64_t>(x, what));
  return out;
}

Matrix matrix_from(const json& j, std::uint32_t modulus, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim) throw InputError(std::string(what) + " must have " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim)
      throw InputError(std::string(what) + " must have " + std::to_string(dim) + " columns");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = scalar_from(j[r][c], modulus);
  }
  return m;
}

json scalar_json(const CycloScalar& x) {
  json j;
  j["modulus"] = x.modulus();
  json c = json::array();
  for (const auto& q : x.coeffs()) c.push_back(q.get_str());
  j["coeffs"] = c;
  return j;
}

AutoSpec auto_from(const json& j, std::uint32_t modulus, std::size_t dim, int rank) {
  AutoSpec a;
  const std::string kind = get_as<std::string>(require(j, "kind"), "kind");
  if (j.contains("order")) a.order = get_as<std::int64_t>(j.at("order"), "order");
  if (kind == "identity") {
    a.kind = AutoSpec::Kind::Identity;
  } else if (kind == "diagram") {
    a.kind = AutoSpec::Kind::Diagram;
    const IntVec p = intvec_from(require(j, "perm"), "perm");
    if (static_cast<int>(p.size()) != rank) throw InputError("diagram perm must list every node");
    for (auto x : p) {
      if (x < 1 || x > rank) throw InputError("diagram perm entries are 1-based node numbers");
      a.perm.push_back(static_cast<int>(x - 1));
    }
  } else if (kind == "inner") {
    a.kind = AutoSpec::Kind::Inner;
    a.coweight = ratvec_from(require(j, "coweight"), "coweight");
    if (static_cast<int>(a.coweight.size()) != rank) throw InputError("inner coweight must have rank entries");
  } else if (kind == "matrix") {
    a.kind = AutoSpec::Kind::Matrix;
    a.matrix = matrix_from(require(j, "matrix"), modulus, dim, "automorphism matrix");
  } else if (kind == "compose") {
    a.kind = AutoSpec::Kind::Compose;
    const json& parts = require(j, "parts");
    if (!parts.is_array() || parts.empty()) throw InputError("compose needs a nonempty parts array");
    for (const auto& p : parts) a.parts.push_back(auto_from(p, modulus, dim, rank));
  } else {
    throw InputError("unknown automorphism kind '" + kind + "'");
  }
  return a;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

SimpleAlgebra algebra_from_name(const std::string& name) {
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw InputError("algebra name must look like A2 or G2");
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw InputError("algebra name must look like A2 or G2");
  }
  return SimpleAlgebra::build(static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))), std::stoi(name.substr(1)));
}

std::string scalar_to_json(const CycloScalar& x) { return scalar_json(x).dump(); }

CycloScalar scalar_from_json(const std::string& text, std::uint32_t target_modulus) {
  return scalar_from(parse_json(text, "scalar"), target_modulus);
}

std::string export_algebra(const SimpleAlgebra& g) {
  json j;
  j["type"] = std::string(1, g.type());
  j["rank"] = g.rank();
  j["dim"] = g.dim();
  json basis = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json b;
    b["index"] = i;
    b["label"] = g.label(i);
    b["root"] = g.is_cartan(i) ? json(nullptr) : json(g.root(i));
    basis.push_back(b);
  }
  j["basis"] = basis;
  json sc = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = 0; k < g.dim(); ++k)
      for (const auto& [idx, c] : g.bracket_terms(i, k)) sc.push_back({{"i", i}, {"j", k}, {"k", idx}, {"c", c.get_str()}});
  j["structure_constants"] = sc;
  json form = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = 0; k < g.dim(); ++k) {
      const Rational& c = g.form_entry(i, k);
      if (c != 0) form.push_back({{"i", i}, {"j", k}, {"c", c.get_str()}});
    }
  j["form"] = form;
  return j.dump(2) + "\n";
}

void apply_structure_override(SimpleAlgebra& g, const std::string& export_text) {
  const json j = parse_json(export_text, "structure");
  const auto dim = get_as<std::size_t>(require(j, "dim"), "dim");
  if (dim != g.dim()) throw InputError("structure file has dim " + std::to_string(dim) + ", algebra has " + std::to_string(g.dim()));
  std::vector<SparseTerms> sc(dim * dim);
  for (const auto& e : require(j, "structure_constants")) {
    const auto i = get_as<std::size_t>(require(e, "i"), "i"), k = get_as<std::size_t>(require(e, "j"), "j");
    const auto t = get_as<std::size_t>(require(e, "k"), "k");
    if (i >= dim || k >= dim || t >= dim) throw InputError("structure constant index out of range");
    const Rational c = rational_from(require(e, "c"));
    if (c != 0) sc[i * dim + k].emplace_back(static_cast<std::uint32_t>(t), c);
  }
  std::vector<Rational> form(dim * dim, Rational(0));
  for (const auto& e : require(j, "form")) {
    const auto i = get_as<std::size_t>(require(e, "i"), "i"), k = get_as<std::size_t>(require(e, "j"), "j");
    if (i >= dim || k >= dim) throw InputError("form index out of range");
    form[i * dim + k] = rational_from(require(e, "c"));
  }
  g.override_tables(std::move(sc), std::move(form));
}

TwistedSetup setup_from_json(const std::string& text, const std::optional<std::string>& structure) {
  const json j = parse_json(text, "setup");
  const json& alg = require(j, "algebra");
  const std::string type = get_as<std::string>(require(alg, "type"), "type");
  const auto rank = get_as<int>(require(alg, "rank"), "rank");
  if (type.size() != 1) throw InputError("algebra type must be a single letter");
  SimpleAlgebra g = SimpleAlgebra::build(type[0], rank);
  if (structure) apply_structure_override(g, *structure);

  const json& autos_j = require(j, "autos");
  if (!autos_j.is_array() || autos_j.empty()) throw InputError("autos must be a nonempty array (sigma_0 .. sigma_n)");
  IntVec orders;
  if (j.contains("orders")) {
    orders = intvec_from(j.at("orders"), "orders");
  } else {
    for (const auto& a : autos_j) orders.push_back(a.contains("order") ? get_as<std::int64_t>(a.at("order"), "order") : 1);
  }
  if (orders.size() != autos_j.size()) throw InputError("orders must have one entry per automorphism");
  std::uint32_t modulus = 1;
  for (auto m : orders) {
    if (m < 1) throw InputError("orders must be positive");
    modulus = static_cast<std::uint32_t>(lcm64(modulus, m));
  }
  std::vector<AutoSpec> autos;
  for (std::size_t i = 0; i < autos_j.size(); ++i) {
    AutoSpec a = auto_from(autos_j[i], modulus, g.dim(), g.rank());
    if (autos_j[i].contains("order") && a.order != orders[i])
      throw InputError("sigma_" + std::to_string(i) + " order disagrees with orders[" + std::to_string(i) + "]");
    a.order = orders[i];
    autos.push_back(std::move(a));
  }
  return TwistedSetup::build(std::move(g), std::move(autos), std::move(orders));
}

std::string setup_summary_json(const TwistedSetup& s) {
  json j;
  j["algebra"] = s.algebra().name();
  j["n"] = s.n();
  j["orders"] = s.orders();
  j["modulus"] = s.modulus();
  j["dim"] = s.dim();
  json spaces = json::array();
  for (const auto& [cls, idx] : s.eigenspaces()) spaces.push_back({{"class", cls}, {"dim", idx.size()}});
  j["eigenspaces"] = spaces;
  json basis = json::array();
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const auto w = rational_weight(s.basis(a).weight);
    basis.push_back({{"index", a},
                     {"label", s.label(a)},
                     {"class", s.basis(a).klass},
                     {"weight", w ? to_string(*w) : std::string("irrational")}});
  }
  j["basis"] = basis;
  j["h0_dim"] = s.h0().size();
  j["g_naught"] = s.g_naught();
  const AssumptionReport r = check_assumptions(s);
  j["assumptions"] = {{"simple", r.simple}, {"cartan", r.cartan}, {"roots", r.roots}};
  return j.dump(2) + "\n";
}

ModuleSpec module_from_json(const TwistedSetup& s, const std::string& text) {
  const json j = parse_json(text, "module");
  const std::size_t n = s.n();
  const std::uint32_t mod = s.modulus();
  ModuleSpec out;

  const json& glj = require(j, "gl");
  if (glj.is_string()) {
    const auto name = glj.get<std::string>();
    if (name == "trivial") out.v1 = gl_trivial(n);
    else if (name == "natural") out.v1 = gl_natural(n);
    else if (name == "adjoint") out.v1 = gl_adjoint(n);
    else throw InputError("unknown gl preset '" + name + "'");
  } else {
    out.v1.n = n;
    out.v1.dim = get_as<std::size_t>(require(glj, "dim"), "dim");
    const json& mats = require(glj, "matrices");
    if (!mats.is_array() || mats.size() != n * n) throw InputError("gl matrices must list E_11, E_12, ..., E_nn");
    for (const auto& m : mats) out.v1.e.push_back(matrix_from(m, mod, out.v1.dim, "gl matrix"));
  }

  const json& gnj = require(j, "gnaught");
  if (gnj.is_string()) {
    const auto name = gnj.get<std::string>();
    if (name == "trivial") out.v2 = gnaught_trivial(s);
    else if (name == "adjoint") out.v2 = gnaught_adjoint(s);
    else throw InputError("unknown g-naught preset '" + name + "'");
  } else {
    out.v2.dim = get_as<std::size_t>(require(gnj, "dim"), "dim");
    const json& gr = require(gnj, "grading");
    if (!gr.is_array() || gr.size() != out.v2.dim) throw InputError("grading must give one degree per basis vector");
    for (const auto& g : gr) out.v2.grading.push_back(residue(intvec_from(g, "grading"), s.spatial_orders()));
    for (const auto& [key, m] : require(gnj, "matrices").items()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw InputError("g-naught matrices are keyed by adapted index, got '" + key + "'");
      }
      out.v2.x.emplace(idx, matrix_from(m, mod, out.v2.dim, "g-naught matrix"));
    }
  }

  out.alpha = j.contains("alpha") ? ratvec_from(j.at("alpha"), "alpha") : RatVec(n, Rational(0));
  out.d0 = j.contains("d0") ? rational_from(j.at("d0")) : Rational(0);
  out.module = tensor_module(s, out.v1, out.v2, out.alpha, out.d0);
  validate_module(s, out.module);

  if (j.contains("theta")) {
    const json& tj = j.at("theta");
    GradedAutomorphism th;
    th.theta = matrix_from(require(tj, "matrix"), mod, out.module.dim, "theta");
    th.shift = intvec_from(require(tj, "shift"), "shift");
    validate_theta(s, out.module, th);
    out.theta = std::move(th);
  }
  return out;
}

}  // namespace torloop
