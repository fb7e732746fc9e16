#pragma once

// Univariate polynomials over exact rationals or complex doubles.
// Coefficients are stored low-to-high; the zero polynomial is empty.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tilelab/errors.hpp"

namespace tilelab {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

template <class T>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  using Magnitude = Rational;
  static bool is_zero(const Rational& v) { return v == 0; }
  static Magnitude magnitude(const Rational& v) { return v < 0 ? Rational(-v) : v; }
  static constexpr std::string_view kind = "rational";
};

template <>
struct CoeffTraits<Complex> {
  using Magnitude = double;
  static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
  static Magnitude magnitude(const Complex& v) { return std::abs(v); }
  static constexpr std::string_view kind = "complex";
};

template <class T>
class Polynomial {
 public:
  using Coeff = T;
  using Magnitude = typename CoeffTraits<T>::Magnitude;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }
  /// x - r
  static Polynomial linear_factor(const T& r) { return Polynomial(std::vector<T>{T(-r), T(1)}); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  const T& leading() const {
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  bool operator==(const Polynomial&) const = default;

 private:
  void trim() {
    while (!coeffs_.empty() && CoeffTraits<T>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPoly = Polynomial<Rational>;
using ComplexPoly = Polynomial<Complex>;
using AnyPoly = std::variant<RationalPoly, ComplexPoly>;

/// Degree-many multiply-adds from the leading coefficient down.
template <class T>
T eval_horner(const Polynomial<T>& p, const T& x) {
  T acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Complex eval_horner(const ComplexPoly& p, double x) { return eval_horner(p, Complex(x, 0.0)); }

template <class T>
Polynomial<T> add(const Polynomial<T>& p, const Polynomial<T>& q) {
  std::vector<T> out(std::max(p.coeffs().size(), q.coeffs().size()), T(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) out[i] += q.coeffs()[i];
  return Polynomial<T>(std::move(out));
}

template <class T>
Polynomial<T> sub(const Polynomial<T>& p, const Polynomial<T>& q) {
  std::vector<T> out(std::max(p.coeffs().size(), q.coeffs().size()), T(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) out[i] -= q.coeffs()[i];
  return Polynomial<T>(std::move(out));
}

template <class T>
Polynomial<T> scale(const Polynomial<T>& p, const T& s) {
  std::vector<T> out = p.coeffs();
  for (auto& c : out) c *= s;
  return Polynomial<T>(std::move(out));
}

/// c_k = sum_{i+j=k} a_i b_j
template <class T>
Polynomial<T> mul(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial<T>(std::move(out));
}

template <class T>
Polynomial<T> power(const Polynomial<T>& p, unsigned e) {
  Polynomial<T> out = Polynomial<T>::constant(T(1));
  for (unsigned i = 0; i < e; ++i) out = mul(out, p);
  return out;
}

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p) {
  if (p.degree() < 1) return {};
  std::vector<T> out(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = p.coeffs()[i] * T(static_cast<long>(i));
  return Polynomial<T>(std::move(out));
}

template <class T>
struct DivMod {
  Polynomial<T> quotient;
  Polynomial<T> remainder;
};

/// Long division. For complex coefficients the remainder is exact only up to
/// rounding.
template <class T>
DivMod<T> divmod(const Polynomial<T>& p, const Polynomial<T>& d) {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.degree() < d.degree()) return {{}, p};
  std::vector<T> rem = p.coeffs();
  std::vector<T> quot(static_cast<std::size_t>(p.degree() - d.degree() + 1), T(0));
  const T& lead = d.leading();
  const std::size_t dd = static_cast<std::size_t>(d.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const T factor = rem[k + dd] / lead;
    quot[k] = factor;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= factor * d.coeffs()[j];
    rem[k + dd] = T(0);
  }
  rem.resize(dd);
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

/// Synthetic division by (x - r): quotient and remainder p(r).
template <class T>
std::pair<Polynomial<T>, T> deflate(const Polynomial<T>& p, const T& r) {
  if (p.degree() < 1) return {Polynomial<T>{}, p.coeff(0)};
  const auto& c = p.coeffs();
  std::vector<T> q(c.size() - 1, T(0));
  T carry(0);
  for (std::size_t k = c.size(); k-- > 1;) {
    carry = carry * r + c[k];
    q[k - 1] = carry;
  }
  T remainder = carry * r + c[0];
  return {Polynomial<T>(std::move(q)), remainder};
}

/// max |a_i|; 0 for the zero polynomial.
template <class T>
typename CoeffTraits<T>::Magnitude max_norm(const Polynomial<T>& p) {
  typename CoeffTraits<T>::Magnitude best(0);
  for (const auto& c : p.coeffs()) best = std::max(best, CoeffTraits<T>::magnitude(c));
  return best;
}

template <class M>
struct NormCheck {
  bool holds = false;
  M lhs{};  // max_norm(p * q)
  M rhs{};  // max_norm(p) * max_norm(q)
};

/// Compares max_norm(p q) with max_norm(p) max_norm(q). Exact for rationals,
/// relative 1e-12 for complex.
template <class T>
NormCheck<typename CoeffTraits<T>::Magnitude> norm_claim_check(const Polynomial<T>& p, const Polynomial<T>& q) {
  NormCheck<typename CoeffTraits<T>::Magnitude> out;
  out.lhs = max_norm(mul(p, q));
  out.rhs = max_norm(p) * max_norm(q);
  if constexpr (std::is_same_v<T, Rational>) {
    out.holds = out.lhs == out.rhs;
  } else {
    out.holds = std::abs(out.lhs - out.rhs) <= 1e-12 * std::max(1.0, std::abs(out.rhs));
  }
  return out;
}

/// Largest m with (x - r)^m | p. Exact division for rationals (tol ignored);
/// for complex, each stage's remainder must stay below tol. Throws NotARoot.
int multiplicity(const RationalPoly& p, const Rational& r);
int multiplicity(const ComplexPoly& p, const Complex& r, double tol);

/// True when repeated rational-root extraction leaves a nonzero constant,
/// i.e. p splits into linear factors over the rationals.
bool is_nicely_factored(const RationalPoly& p);

ComplexPoly to_complex(const RationalPoly& p);
/// Exact conversion of a complex polynomial with zero imaginary parts (every
/// double is a dyadic rational). Throws DomainError otherwise.
RationalPoly to_rational_exact(const ComplexPoly& p);
bool has_real_coefficients(const ComplexPoly& p) noexcept;

std::string_view kind_name(const AnyPoly& p) noexcept;
AnyPoly add(const AnyPoly& p, const AnyPoly& q);
AnyPoly mul(const AnyPoly& p, const AnyPoly& q);
ComplexPoly as_complex(const AnyPoly& p);

/// Coefficient expression: sums/products/quotients of decimal or integer
/// literals, `pi`, `i` and integer powers, e.g. "-pi^2", "3/4", "1+2i".
/// Exact rational unless `pi` or `i` appears.
std::variant<Rational, Complex> parse_coefficient(std::string_view text);

/// "pi/2, -pi^2, 0, 2" (low to high). Rational kind when every coefficient is
/// exact, complex otherwise.
AnyPoly parse_poly(std::string_view text);
/// Builds from coefficient strings with an explicit kind ("rational"/"complex").
AnyPoly poly_from_strings(const std::vector<std::string>& coeffs, std::string_view kind);

std::string format_coefficient(const Rational& v);
std::string format_coefficient(const Complex& v);
std::vector<std::string> coefficient_strings(const AnyPoly& p);
std::string format_poly(const AnyPoly& p);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace tilelab
