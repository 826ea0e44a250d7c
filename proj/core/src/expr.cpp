#include "torloop/expr.hpp"

#include <cctype>
#include <optional>

#include "torloop/error.hpp"

namespace torloop {

namespace {

struct Term {
  CycloScalar coeff{1};
  enum class Gen { None, Loop, K, D } gen = Gen::None;
  std::size_t index = 0;
  IntVec degree;
};

class Parser {
 public:
  Parser(std::string text, std::uint32_t modulus, std::size_t n1) : text_(std::move(text)), modulus_(modulus), n1_(n1) {}

  std::vector<Term> parse_all() {
    auto terms = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression: " + what + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  std::int64_t number() {
    skip_ws();
    if (!peek_digit()) fail("expected a number");
    std::int64_t v = 0;
    while (peek_digit()) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t{1} << 50)) fail("number too large");
      ++pos_;
    }
    return v;
  }

  std::int64_t signed_number() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    const auto v = number();
    return neg ? -v : v;
  }

  IntVec degree_tuple() {
    expect('(');
    IntVec d;
    do {
      d.push_back(signed_number());
    } while (eat(','));
    expect(')');
    if (d.size() != n1_) fail("degree needs " + std::to_string(n1_) + " entries");
    return d;
  }

  std::vector<Term> parse_sum() {
    std::vector<Term> out;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    while (true) {
      Term t = parse_product();
      if (neg) t.coeff = -t.coeff;
      out.push_back(std::move(t));
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else break;
    }
    return out;
  }

  void set_gen(Term& t, Term::Gen g, std::size_t index) {
    if (t.gen != Term::Gen::None) fail("a term may contain only one of e(i), K_j, d_j");
    t.gen = g;
    t.index = index;
  }

  Term parse_product() {
    Term t;
    t.degree.assign(n1_, 0);
    do {
      skip_ws();
      if (eat('-')) t.coeff = -t.coeff;
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of input");
      const char c = text_[pos_];
      if (peek_digit()) {
        Rational q(static_cast<long>(number()));
        if (eat('/')) {
          const auto den = number();
          if (den == 0) fail("zero denominator");
          q /= Rational(static_cast<long>(den));
        }
        t.coeff *= CycloScalar(q);
      } else if (c == '(') {
        ++pos_;
        CycloScalar sum(0);
        for (const auto& inner : parse_sum()) {
          if (inner.gen != Term::Gen::None || !is_zero(inner.degree)) fail("parentheses may only hold scalars");
          sum += inner.coeff;
        }
        expect(')');
        t.coeff *= sum;
      } else if (c == 'z') {
        ++pos_;
        std::uint32_t m = modulus_;
        if (peek_digit()) m = static_cast<std::uint32_t>(number());
        if (m == 0 || modulus_ % m != 0) fail("z" + std::to_string(m) + " is not in the field of the setup");
        std::int64_t e = 1;
        if (eat('^')) e = signed_number();
        t.coeff *= CycloScalar::root_of_unity(m, e).lifted(modulus_);
      } else if (c == 'e') {
        ++pos_;
        expect('(');
        const auto idx = number();
        expect(')');
        set_gen(t, Term::Gen::Loop, static_cast<std::size_t>(idx));
      } else if (c == 't') {
        ++pos_;
        const auto axis = number();
        if (static_cast<std::size_t>(axis) >= n1_) fail("t" + std::to_string(axis) + " is not a variable of the setup");
        std::int64_t e = 1;
        if (eat('^')) e = signed_number();
        t.degree[static_cast<std::size_t>(axis)] += e;
      } else if (c == 'K' || c == 'd') {
        ++pos_;
        const auto axis = number();
        if (static_cast<std::size_t>(axis) >= n1_) fail(std::string(1, c) + std::to_string(axis) + " is out of range");
        set_gen(t, c == 'K' ? Term::Gen::K : Term::Gen::D, static_cast<std::size_t>(axis));
        skip_ws();
        if (eat('@')) t.degree = add(t.degree, degree_tuple());
      } else {
        fail("unexpected '" + std::string(1, c) + "'");
      }
    } while (eat('*'));
    return t;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::uint32_t modulus_;
  std::size_t n1_;
};

}  // namespace

TauElement parse_element(const TwistedSetup& s, const std::string& text) {
  Parser p(text, s.modulus(), s.n() + 1);
  TauElement out;
  out.setup_id = s.id();
  for (const auto& t : p.parse_all()) {
    switch (t.gen) {
      case Term::Gen::None:
        if (!t.coeff.is_zero()) throw InputError("expression: bare scalar term (a term needs e(i), K_j or d_j)");
        break;
      case Term::Gen::Loop:
        if (t.index >= s.dim()) throw InputError("expression: e(" + std::to_string(t.index) + ") out of range");
        out += TauElement::loop_term(t.index, t.degree, t.coeff);
        break;
      case Term::Gen::K:
        out += TauElement::central_term(t.degree, t.index, t.coeff);
        break;
      case Term::Gen::D:
        out += TauElement::deriv_term(t.degree, t.index, t.coeff);
        break;
    }
  }
  out.normalize();
  out.setup_id = s.id();
  validate_element(s, out);
  return out;
}

CycloScalar parse_scalar(const std::string& text, std::uint32_t modulus) {
  Parser p(text, modulus, 0);
  CycloScalar sum(0);
  for (const auto& t : p.parse_all()) {
    if (t.gen != Term::Gen::None) throw InputError("expression: expected a scalar");
    sum += t.coeff;
  }
  return sum;
}

}  // namespace torloop
