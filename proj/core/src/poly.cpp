#include "tilelab/poly.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "tilelab/real_roots.hpp"

namespace tilelab {

int multiplicity(const RationalPoly& p, const Rational& r) {
  if (p.is_zero()) throw DomainError("multiplicity of a root of the zero polynomial is unbounded");
  auto [q, rem] = deflate(p, r);
  if (rem != 0) throw NotARoot("p(r) != 0");
  int m = 1;
  while (q.degree() >= 1) {
    auto [next, next_rem] = deflate(q, r);
    if (next_rem != 0) break;
    q = std::move(next);
    ++m;
  }
  return m;
}

int multiplicity(const ComplexPoly& p, const Complex& r, double tol) {
  if (!(tol > 0)) throw DomainError("multiplicity tolerance must be positive");
  if (p.is_zero()) throw DomainError("multiplicity of a root of the zero polynomial is unbounded");
  auto [q, rem] = deflate(p, r);
  if (std::abs(rem) >= tol) throw NotARoot("|p(r)| >= tol");
  int m = 1;
  while (q.degree() >= 1) {
    auto [next, next_rem] = deflate(q, r);
    if (std::abs(next_rem) >= tol) break;
    q = std::move(next);
    ++m;
  }
  return m;
}

bool is_nicely_factored(const RationalPoly& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return true;
  return rational_root_count(p) == p.degree();
}

ComplexPoly to_complex(const RationalPoly& p) {
  std::vector<Complex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(c.convert_to<double>(), 0.0);
  return ComplexPoly(std::move(out));
}

bool has_real_coefficients(const ComplexPoly& p) noexcept {
  for (const auto& c : p.coeffs()) {
    if (c.imag() != 0.0) return false;
  }
  return true;
}

namespace {

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite coefficient");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // mant * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational out{boost::multiprecision::cpp_int(scaled)};
  exp -= 53;
  const boost::multiprecision::cpp_int two_pow = boost::multiprecision::cpp_int(1) << std::abs(exp);
  if (exp >= 0) {
    out *= two_pow;
  } else {
    out /= two_pow;
  }
  return out;
}

}  // namespace

RationalPoly to_rational_exact(const ComplexPoly& p) {
  std::vector<Rational> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.imag() != 0.0) throw DomainError("coefficient has a nonzero imaginary part");
    out.push_back(exact_rational(c.real()));
  }
  return RationalPoly(std::move(out));
}

std::string_view kind_name(const AnyPoly& p) noexcept {
  return std::holds_alternative<RationalPoly>(p) ? CoeffTraits<Rational>::kind : CoeffTraits<Complex>::kind;
}

AnyPoly add(const AnyPoly& p, const AnyPoly& q) {
  if (p.index() != q.index()) throw KindMismatch();
  return std::visit(
      [&](const auto& a) -> AnyPoly { return add(a, std::get<std::decay_t<decltype(a)>>(q)); }, p);
}

AnyPoly mul(const AnyPoly& p, const AnyPoly& q) {
  if (p.index() != q.index()) throw KindMismatch();
  return std::visit(
      [&](const auto& a) -> AnyPoly { return mul(a, std::get<std::decay_t<decltype(a)>>(q)); }, p);
}

ComplexPoly as_complex(const AnyPoly& p) {
  if (const auto* r = std::get_if<RationalPoly>(&p)) return to_complex(*r);
  return std::get<ComplexPoly>(p);
}

// ---------------------------------------------------------------------------
// Coefficient expressions

namespace {

struct Value {
  bool exact = true;
  Rational q;
  Complex z;

  static Value of(Rational r) { return {true, std::move(r), {}}; }
  static Value of(Complex c) { return {false, 0, c}; }
  Complex complex() const { return exact ? Complex(q.convert_to<double>(), 0.0) : z; }
};

Value operator+(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(a.q + b.q));
  return Value::of(a.complex() + b.complex());
}
Value operator-(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(a.q - b.q));
  return Value::of(a.complex() - b.complex());
}
Value operator*(const Value& a, const Value& b) {
  if (a.exact && b.exact) return Value::of(Rational(a.q * b.q));
  return Value::of(a.complex() * b.complex());
}
Value operator/(const Value& a, const Value& b) {
  if (b.exact ? b.q == 0 : b.z == Complex(0, 0)) throw DomainError("division by zero in coefficient");
  if (a.exact && b.exact) return Value::of(Rational(a.q / b.q));
  return Value::of(a.complex() / b.complex());
}

class CoefficientParser {
 public:
  explicit CoefficientParser(std::string_view text) : s_(text) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("bad coefficient \"" + std::string(s_) + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'p' || c == 'i';
  }

  Value expr() {
    Value v = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        v = v + term();
      } else if (c == '-') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v = v * unary();
      } else if (c == '/') {
        ++pos_;
        v = v / unary();
      } else if (starts_atom(c)) {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  Value unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return Value::of(Rational(0)) - unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer literal");
    int e = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (ec != std::errc() || e > 1024) fail("exponent out of range");
    Value out = Value::of(Rational(1));
    for (int k = 0; k < e; ++k) out = out * base;
    if (negative) out = Value::of(Rational(1)) / out;
    return out;
  }

  Value atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return Value::of(Complex(std::numbers::pi, 0.0));
    }
    if (c == 'i') {
      ++pos_;
      return Value::of(Complex(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value number() {
    using boost::multiprecision::cpp_int;
    cpp_int digits = 0;
    int frac_digits = 0;
    bool any = false;
    bool seen_point = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = digits * 10 + (c - '0');
        if (seen_point) ++frac_digits;
        any = true;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!any) fail("malformed number");
    long exp10 = -frac_digits;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
        neg = s_[p] == '-';
        ++p;
      }
      const std::size_t start = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p == start) fail("malformed exponent");
      long e = 0;
      const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + p, e);
      if (ec != std::errc() || e > 4000) fail("exponent out of range");
      exp10 += neg ? -e : e;
      pos_ = p;
    }
    const cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::labs(exp10)));
    Rational out(digits);
    if (exp10 >= 0) {
      out *= scale;
    } else {
      out /= scale;
    }
    return Value::of(std::move(out));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

}  // namespace

std::variant<Rational, Complex> parse_coefficient(std::string_view text) {
  Value v = CoefficientParser(text).parse();
  if (v.exact) return v.q;
  return v.z;
}

AnyPoly parse_poly(std::string_view text) {
  std::vector<Value> values;
  bool exact = true;
  for (auto part : split_top_level(text)) {
    values.push_back(CoefficientParser(part).parse());
    exact = exact && values.back().exact;
  }
  if (exact) {
    std::vector<Rational> coeffs;
    for (auto& v : values) coeffs.push_back(std::move(v.q));
    return RationalPoly(std::move(coeffs));
  }
  std::vector<Complex> coeffs;
  for (const auto& v : values) coeffs.push_back(v.complex());
  return ComplexPoly(std::move(coeffs));
}

AnyPoly poly_from_strings(const std::vector<std::string>& coeffs, std::string_view kind) {
  if (kind == "rational") {
    std::vector<Rational> out;
    for (const auto& s : coeffs) {
      Value v = CoefficientParser(s).parse();
      if (!v.exact) throw DomainError("coefficient \"" + s + "\" is not rational");
      out.push_back(std::move(v.q));
    }
    return RationalPoly(std::move(out));
  }
  if (kind == "complex") {
    std::vector<Complex> out;
    for (const auto& s : coeffs) out.push_back(CoefficientParser(s).parse().complex());
    return ComplexPoly(std::move(out));
  }
  throw DomainError("unknown polynomial kind \"" + std::string(kind) + "\"");
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_coefficient(const Rational& v) {
  if (boost::multiprecision::denominator(v) == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

std::string format_coefficient(const Complex& v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string im = format_double(std::abs(v.imag())) + "i";
  if (v.real() == 0.0) return (v.imag() < 0 ? "-" : "") + im;
  return format_double(v.real()) + (v.imag() < 0 ? "-" : "+") + im;
}

std::vector<std::string> coefficient_strings(const AnyPoly& p) {
  std::vector<std::string> out;
  std::visit(
      [&](const auto& poly) {
        for (const auto& c : poly.coeffs()) out.push_back(format_coefficient(c));
      },
      p);
  return out;
}

std::string format_poly(const AnyPoly& p) {
  const auto parts = coefficient_strings(p);
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace tilelab
