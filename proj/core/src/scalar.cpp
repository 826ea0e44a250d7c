#include "torloop/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace torloop {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  std::size_t start = s[0] == '-' ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (slash || i == start || i + 1 == s.size()) throw InputError("bad rational literal '" + text + "'");
      slash = true;
    } else if (s[i] < '0' || s[i] > '9') {
      throw InputError("bad rational literal '" + text + "'");
    }
  }
  if (start == s.size()) throw InputError("bad rational literal '" + text + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::int64_t euler_phi(std::int64_t m) {
  if (m <= 0) throw AlgebraError("euler_phi of non-positive integer");
  std::int64_t result = m;
  std::int64_t x = m;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    if (x % p == 0) {
      while (x % p == 0) x /= p;
      result -= result / p;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

namespace {

using IntPoly = std::vector<std::int64_t>;

// Exact division of monic integer polynomials.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw AlgebraError("cyclotomic: bad division");
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

struct CycloTables {
  std::mutex mu;
  std::map<std::uint32_t, IntPoly> polys;
  // powers[M][e] = canonical coefficients of z^e, 0 <= e < M.
  std::map<std::uint32_t, std::vector<std::vector<Rational>>> powers;
};

CycloTables& tables() {
  static CycloTables t;
  return t;
}

const IntPoly& cyclo_locked(CycloTables& t, std::uint32_t m) {
  auto it = t.polys.find(m);
  if (it != t.polys.end()) return it->second;
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::uint32_t d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_exact(p, cyclo_locked(t, d));
  }
  return t.polys.emplace(m, std::move(p)).first->second;
}

// Reduce a dense polynomial (lowest first) modulo the monic cyclotomic poly.
std::vector<Rational> reduce(std::vector<Rational> poly, const IntPoly& phi_poly) {
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    Rational c = poly[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi_poly[j] != 0) poly[i - deg + j] -= c * phi_poly[j];
    }
    poly[i] = 0;
  }
  poly.resize(deg);
  return poly;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t m) {
  if (m == 0) throw AlgebraError("cyclotomic polynomial of order 0");
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  return cyclo_locked(t, m);
}

namespace {

const std::vector<std::vector<Rational>>& power_table(std::uint32_t m) {
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.powers.find(m);
  if (it != t.powers.end()) return it->second;
  const IntPoly& phi_poly = cyclo_locked(t, m);
  const std::size_t deg = phi_poly.size() - 1;
  std::vector<std::vector<Rational>> table;
  table.reserve(m);
  std::vector<Rational> cur(deg, 0);
  cur[0] = 1;
  for (std::uint32_t e = 0; e < m; ++e) {
    table.push_back(cur);
    std::vector<Rational> shifted(deg + 1, 0);
    for (std::size_t i = 0; i < deg; ++i) shifted[i + 1] = cur[i];
    cur = reduce(std::move(shifted), phi_poly);
  }
  return t.powers.emplace(m, std::move(table)).first->second;
}

std::size_t phi_size(std::uint32_t m) { return cyclotomic_polynomial(m).size() - 1; }

}  // namespace

std::uint32_t common_modulus(std::uint32_t a, std::uint32_t b) {
  if (a == b || b == 1) return a;
  if (a == 1) return b;
  throw AlgebraError("cyclotomic modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

CycloScalar::CycloScalar() : modulus_(1), coeffs_(1, Rational(0)) {}

CycloScalar::CycloScalar(long value) : modulus_(1), coeffs_(1, Rational(value)) {}

CycloScalar::CycloScalar(const Rational& value, std::uint32_t modulus)
    : modulus_(modulus), coeffs_(phi_size(modulus), Rational(0)) {
  coeffs_[0] = value;
}

CycloScalar::CycloScalar(std::vector<Rational> coeffs, std::uint32_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw AlgebraError("cyclotomic modulus must be positive");
  coeffs_ = reduce(std::move(coeffs), cyclotomic_polynomial(modulus));
  for (auto& c : coeffs_) c.canonicalize();
}

CycloScalar CycloScalar::root_of_unity(std::uint32_t modulus, std::int64_t e) {
  if (modulus == 0) throw AlgebraError("root_of_unity: modulus must be positive");
  std::int64_t m = modulus;
  std::int64_t r = ((e % m) + m) % m;
  CycloScalar out;
  out.modulus_ = modulus;
  out.coeffs_ = power_table(modulus)[static_cast<std::size_t>(r)];
  return out;
}

bool CycloScalar::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycloScalar::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

Rational CycloScalar::rational_value() const {
  if (!is_rational()) throw AlgebraError("scalar " + to_string() + " is not rational");
  return coeffs_[0];
}

void CycloScalar::promote_to(std::uint32_t modulus) {
  if (modulus == modulus_) return;
  *this = lifted(modulus);
}

CycloScalar CycloScalar::lifted(std::uint32_t target) const {
  if (target == modulus_) return *this;
  if (target == 0 || target % modulus_ != 0) {
    throw AlgebraError("cannot lift Q(z" + std::to_string(modulus_) + ") into Q(z" + std::to_string(target) + ")");
  }
  const std::uint32_t step = target / modulus_;
  const auto& pw = power_table(target);
  std::vector<Rational> acc(phi_size(target), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& zi = pw[(i * step) % target];
    for (std::size_t j = 0; j < acc.size(); ++j) {
      if (zi[j] != 0) acc[j] += coeffs_[i] * zi[j];
    }
  }
  CycloScalar out;
  out.modulus_ = target;
  out.coeffs_ = std::move(acc);
  return out;
}

void CycloScalar::align(CycloScalar& other) {
  const std::uint32_t m = common_modulus(modulus_, other.modulus_);
  promote_to(m);
  other.promote_to(m);
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& other) {
  if (other.modulus_ == modulus_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  CycloScalar b = other;
  align(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& other) {
  if (other.modulus_ == modulus_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  CycloScalar b = other;
  align(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& other) {
  if (other.modulus_ != modulus_) {
    // Rational factor: scale coefficient-wise without touching the field.
    if (other.modulus_ == 1) {
      const Rational& s = other.coeffs_[0];
      for (auto& c : coeffs_) c *= s;
      return *this;
    }
    if (modulus_ == 1) {
      Rational s = coeffs_[0];
      *this = other;
      for (auto& c : coeffs_) c *= s;
      return *this;
    }
    common_modulus(modulus_, other.modulus_);  // throws
  }
  const std::size_t d = coeffs_.size();
  if (d == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (other.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = reduce(std::move(prod), cyclotomic_polynomial(modulus_));
  return *this;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw AlgebraError("inverse of zero scalar");
  const std::size_t d = coeffs_.size();
  if (d == 1) return CycloScalar(Rational(1) / coeffs_[0], modulus_);
  // Solve (multiplication-by-this) * b = e_0 over Q.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
  const auto& phi_poly = cyclotomic_polynomial(modulus_);
  std::vector<Rational> col = coeffs_;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = col[i];
    std::vector<Rational> shifted(d + 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) shifted[i + 1] = col[i];
    col = reduce(std::move(shifted), phi_poly);
  }
  a[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) throw AlgebraError("singular multiplication matrix in inverse");
    std::swap(a[piv], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (std::size_t j = c; j <= d; ++j) a[c][j] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = c; j <= d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> b(d);
  for (std::size_t i = 0; i < d; ++i) b[i] = a[i][d];
  CycloScalar out;
  out.modulus_ = modulus_;
  out.coeffs_ = std::move(b);
  return out;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& other) {
  if (other.modulus_ == 1) {
    if (other.coeffs_[0] == 0) throw AlgebraError("division by zero scalar");
    for (auto& c : coeffs_) c /= other.coeffs_[0];
    return *this;
  }
  return *this *= other.inverse();
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycloScalar CycloScalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  CycloScalar result(Rational(1), modulus_);
  CycloScalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::int64_t CycloScalar::multiplicative_order(std::int64_t limit) const {
  if (is_zero()) return 0;
  CycloScalar acc = *this;
  for (std::int64_t t = 1; t <= limit; ++t) {
    if (acc.is_one()) return t;
    acc *= *this;
  }
  return 0;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.modulus_ == b.modulus_) return a.coeffs_ == b.coeffs_;
  if (a.modulus_ == 1) return b.is_rational() && b.coeffs_[0] == a.coeffs_[0];
  if (b.modulus_ == 1) return a.is_rational() && a.coeffs_[0] == b.coeffs_[0];
  common_modulus(a.modulus_, b.modulus_);  // throws
  return false;
}

std::string CycloScalar::to_string() const {
  if (is_rational()) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << modulus_ << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloScalar& x) { return os << x.to_string(); }

}  // namespace torloop
