#include "torloop/toroidal.hpp"

#include <sstream>

#include "torloop/error.hpp"

namespace torloop {

namespace {

template <class Map>
void accumulate(Map& m, const typename Map::key_type& k, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

template <class Map>
void add_scaled(Map& dst, const Map& src, const CycloScalar& c) {
  for (const auto& [k, v] : src) accumulate(dst, k, c * v);
}

std::uint64_t common_setup(const TauElement& a, const TauElement& b) {
  if (a.setup_id && b.setup_id && a.setup_id != b.setup_id) {
    throw InputError("elements belong to different setups");
  }
  return a.setup_id ? a.setup_id : b.setup_id;
}

// Sum_p r_p t^{deg} K_p
void add_radial(AxisMap& out, const IntVec& r, const IntVec& deg, const CycloScalar& c) {
  for (std::size_t p = 0; p < r.size(); ++p) {
    if (r[p] != 0) accumulate(out, AxisKey{deg, p}, c * CycloScalar(static_cast<long>(r[p])));
  }
}

}  // namespace

TauElement TauElement::loop_term(std::size_t idx, IntVec degree, CycloScalar c) {
  TauElement x;
  accumulate(x.loop, LoopKey{idx, std::move(degree)}, c);
  return x;
}

TauElement TauElement::central_term(IntVec degree, std::size_t axis, CycloScalar c) {
  TauElement x;
  accumulate(x.central, AxisKey{std::move(degree), axis}, c);
  x.normalize();
  return x;
}

TauElement TauElement::deriv_term(IntVec degree, std::size_t axis, CycloScalar c) {
  TauElement x;
  accumulate(x.deriv, AxisKey{std::move(degree), axis}, c);
  return x;
}

void TauElement::normalize() { central = central_normal_form(central); }

TauElement& TauElement::operator+=(const TauElement& o) {
  setup_id = common_setup(*this, o);
  add_scaled(loop, o.loop, CycloScalar(1));
  add_scaled(central, o.central, CycloScalar(1));
  add_scaled(deriv, o.deriv, CycloScalar(1));
  return *this;
}

TauElement& TauElement::operator-=(const TauElement& o) {
  setup_id = common_setup(*this, o);
  add_scaled(loop, o.loop, CycloScalar(-1));
  add_scaled(central, o.central, CycloScalar(-1));
  add_scaled(deriv, o.deriv, CycloScalar(-1));
  return *this;
}

TauElement& TauElement::operator*=(const CycloScalar& c) {
  if (c.is_zero()) {
    loop.clear();
    central.clear();
    deriv.clear();
    return *this;
  }
  for (auto& [k, v] : loop) v *= c;
  for (auto& [k, v] : central) v *= c;
  for (auto& [k, v] : deriv) v *= c;
  return *this;
}

bool TauElement::operator==(const TauElement& o) const {
  return loop == o.loop && central == o.central && deriv == o.deriv;
}

AxisMap central_normal_form(const AxisMap& raw) {
  AxisMap out;
  for (const auto& [key, c] : raw) {
    const auto& [deg, axis] = key;
    std::size_t j = deg.size();
    for (std::size_t i = deg.size(); i > 0; --i) {
      if (deg[i - 1] != 0) {
        j = i - 1;
        break;
      }
    }
    if (j == deg.size() || axis != j) {
      accumulate(out, key, c);
      continue;
    }
    // K_j = -sum_{i != j} (d_i / d_j) K_i
    for (std::size_t i = 0; i < deg.size(); ++i) {
      if (i == j || deg[i] == 0) continue;
      Rational q(static_cast<long>(-deg[i]));
      q /= static_cast<long>(deg[j]);
      CycloScalar f(q);
      accumulate(out, AxisKey{deg, i}, c * f);
    }
  }
  return out;
}

void validate_element(const TwistedSetup& s, const TauElement& x) {
  const std::size_t len = s.n() + 1;
  if (x.setup_id && x.setup_id != s.id()) throw InputError("element belongs to a different setup");
  for (const auto& [key, c] : x.loop) {
    const auto& [idx, deg] = key;
    if (idx >= s.dim() || deg.size() != len) throw InputError("loop term out of range");
    if (residue(deg, s.orders()) != s.basis(idx).klass) {
      throw InputError("loop term " + s.label(idx) + " at degree " + to_string(deg) +
                       " violates the multiloop grading");
    }
  }
  for (const auto& [key, c] : x.central) {
    if (key.first.size() != len || key.second >= len) throw InputError("central term out of range");
  }
  for (const auto& [key, c] : x.deriv) {
    if (key.first.size() != len || key.second >= len) throw InputError("derivation term out of range");
    if (!in_lattice(key.first, s.orders())) {
      throw InputError("derivation degree " + to_string(key.first) + " is not in Gamma0 x Gamma");
    }
  }
}

AxisMap cocycle_value(const IntVec& r, std::size_t a, const IntVec& s, std::size_t b, int which) {
  AxisMap out;
  const IntVec deg = add(r, s);
  std::int64_t f = 0;
  if (which == 1) {
    f = -s[a] * r[b];
  } else if (which == 2) {
    f = r[a] * s[b];
  } else {
    throw InputError("cocycle index must be 1 or 2");
  }
  if (f != 0) add_radial(out, r, deg, CycloScalar(static_cast<long>(f)));
  return central_normal_form(out);
}

AxisMap derivation_on_central(const IntVec& r, std::size_t a, const IntVec& s, std::size_t b) {
  AxisMap out;
  const IntVec deg = add(r, s);
  accumulate(out, AxisKey{deg, b}, CycloScalar(static_cast<long>(s[a])));
  if (a == b) add_radial(out, r, deg, CycloScalar(1));
  return central_normal_form(out);
}

namespace {

// [t^r d_a, y] for a single derivation monomial; central part left raw.
void deriv_bracket(const TauElement& y, const IntVec& r, std::size_t a, const CycloScalar& c,
                   const CocycleParams& phi, TauElement& out) {
  for (const auto& [key, v] : y.loop) {
    const auto& [idx, k] = key;
    if (k[a] != 0) accumulate(out.loop, LoopKey{idx, add(k, r)}, c * v * CycloScalar(static_cast<long>(k[a])));
  }
  for (const auto& [key, v] : y.central) {
    add_scaled(out.central, derivation_on_central(r, a, key.first, key.second), c * v);
  }
  for (const auto& [key, v] : y.deriv) {
    const auto& [s, b] = key;
    const IntVec deg = add(r, s);
    const CycloScalar cv = c * v;
    accumulate(out.deriv, AxisKey{deg, b}, cv * CycloScalar(static_cast<long>(s[a])));
    accumulate(out.deriv, AxisKey{deg, a}, cv * CycloScalar(static_cast<long>(-r[b])));
    if (!phi.mu1.is_zero()) add_scaled(out.central, cocycle_value(r, a, s, b, 1), cv * phi.mu1);
    if (!phi.mu2.is_zero()) add_scaled(out.central, cocycle_value(r, a, s, b, 2), cv * phi.mu2);
  }
}

}  // namespace

TauElement tau_bracket(const TwistedSetup& s, const TauElement& a, const TauElement& b, const CocycleParams& phi) {
  const std::uint64_t id = common_setup(a, b);
  if (id && id != s.id()) throw InputError("elements belong to a different setup");
  TauElement out;
  out.setup_id = id;
  for (const auto& [ka, va] : a.loop) {
    const auto& [x, k] = ka;
    for (const auto& [kb, vb] : b.loop) {
      const auto& [y, l] = kb;
      const CycloScalar c = va * vb;
      const IntVec deg = add(k, l);
      for (const auto& [z, sc] : s.bracket_terms(x, y)) accumulate(out.loop, LoopKey{z, deg}, c * sc);
      const auto& f = s.form_entry(x, y);
      if (!f.is_zero()) add_radial(out.central, k, deg, c * f);
    }
  }
  // [loop, deriv] = -[deriv, loop]; central elements only meet derivations.
  TauElement tmp;
  for (const auto& [key, v] : a.deriv) deriv_bracket(b, key.first, key.second, v, phi, out);
  for (const auto& [key, v] : b.deriv) {
    TauElement a_nonderiv;
    a_nonderiv.loop = a.loop;
    a_nonderiv.central = a.central;
    deriv_bracket(a_nonderiv, key.first, key.second, v, phi, tmp);
  }
  out -= tmp;
  out.normalize();
  return out;
}

TauElement jacobi_residual(const TwistedSetup& s, const TauElement& a, const TauElement& b, const TauElement& c,
                           const CocycleParams& phi) {
  TauElement r = tau_bracket(s, tau_bracket(s, a, b, phi), c, phi);
  r += tau_bracket(s, tau_bracket(s, b, c, phi), a, phi);
  r += tau_bracket(s, tau_bracket(s, c, a, phi), b, phi);
  r.normalize();
  return r;
}

std::optional<IntVec> homogeneous_degree(const TauElement& x) {
  std::optional<IntVec> deg;
  auto visit = [&](const IntVec& d) {
    if (!deg) {
      deg = d;
      return true;
    }
    return *deg == d;
  };
  for (const auto& [k, v] : x.loop) {
    if (!visit(k.second)) return std::nullopt;
  }
  for (const auto& [k, v] : x.central) {
    if (!visit(k.first)) return std::nullopt;
  }
  for (const auto& [k, v] : x.deriv) {
    if (!visit(k.first)) return std::nullopt;
  }
  return deg;
}

namespace {

std::string coeff_prefix(const CycloScalar& c, bool first) {
  std::string s = c.to_string();
  bool compound = !c.is_rational();
  if (!compound && s.size() > 1 && s.find(' ') != std::string::npos) compound = true;
  std::string out;
  if (!first) out += " + ";
  if (compound) return out + "(" + s + ")*";
  if (c.is_one()) return out;
  return out + s + "*";
}

std::string monomial(const IntVec& deg) {
  std::string s;
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] != 0) s += "*t" + std::to_string(i) + "^" + std::to_string(deg[i]);
  }
  return s;
}

std::string at_degree(const IntVec& deg) {
  std::string s = "@(";
  for (std::size_t i = 0; i < deg.size(); ++i) s += (i ? "," : "") + std::to_string(deg[i]);
  return s + ")";
}

}  // namespace

std::string to_string(const TwistedSetup&, const TauElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : x.loop) {
    os << coeff_prefix(v, first) << "e(" << k.first << ")" << monomial(k.second);
    first = false;
  }
  for (const auto& [k, v] : x.central) {
    os << coeff_prefix(v, first) << "K" << k.second << at_degree(k.first);
    first = false;
  }
  for (const auto& [k, v] : x.deriv) {
    os << coeff_prefix(v, first) << "d" << k.second << at_degree(k.first);
    first = false;
  }
  return os.str();
}

}  // namespace torloop
