#include "tilelab/real_roots.hpp"

#include <algorithm>
#include <cmath>

namespace tilelab {

namespace mp = boost::multiprecision;
using mp::cpp_int;

int RootSet::total_multiplicity() const noexcept {
  int total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

namespace {

// Integer coefficients, low to high, no trailing zeros.
using IntPoly = std::vector<cpp_int>;

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Positive multiple of p with coprime integer coefficients.
IntPoly primitive(const RationalPoly& p) {
  cpp_int den = 1;
  for (const auto& c : p.coeffs()) den = mp::lcm(den, mp::denominator(c));
  IntPoly out;
  out.reserve(p.coeffs().size());
  cpp_int content = 0;
  for (const auto& c : p.coeffs()) {
    out.push_back(mp::numerator(c) * (den / mp::denominator(c)));
    content = mp::gcd(content, out.back());
  }
  if (content > 1) {
    for (auto& c : out) c /= content;
  }
  return out;
}

RationalPoly to_rational(const IntPoly& p) {
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c);
  return RationalPoly(std::move(out));
}

/// Sign of p at x, evaluated exactly.
int sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  const cpp_int& m = mp::numerator(x);
  const cpp_int& d = mp::denominator(x);
  cpp_int acc = p.back();
  cpp_int dpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dpow *= d;
    acc = acc * m + p[i] * dpow;
  }
  return acc.sign();
}

IntPoly derivative(const IntPoly& p) {
  IntPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
  return out;
}

IntPoly remainder(const IntPoly& a, const IntPoly& b) {
  return primitive(divmod(to_rational(a), to_rational(b)).remainder);
}

IntPoly gcd(IntPoly a, IntPoly b) {
  while (!b.empty()) {
    IntPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& c : a) c = -c;
  }
  return a;
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  return primitive(divmod(to_rational(a), to_rational(b)).quotient);
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain{p};
  IntPoly d = derivative(p);
  if (d.empty()) return chain;
  chain.push_back(std::move(d));
  for (;;) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    IntPoly r = remainder(a, b);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes(const std::vector<IntPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Distinct roots in (lo, hi]; lo must not be a root.
int count_in(const std::vector<IntPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

/// Power of two strictly above every root modulus.
Rational root_bound(const IntPoly& p) {
  Rational worst = 0;
  const Rational lead = mp::abs(p.back());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) worst = std::max(worst, Rational(mp::abs(p[i])) / lead);
  const Rational bound = worst + 1;
  Rational b = 1;
  while (b <= bound) b *= 2;
  return b;
}

struct Isolator {
  const IntPoly& sqf;
  const std::vector<IntPoly>& chain;
  std::vector<std::pair<Rational, Rational>> found;

  void run(const Rational& lo, const Rational& hi, int count) {
    if (count == 0) return;
    if (count == 1) {
      found.emplace_back(lo, hi);
      return;
    }
    Rational mid = (lo + hi) / 2;
    for (int k = 3; sign_at(sqf, mid) == 0; ++k) {
      mid = (lo + hi) / 2 + (hi - lo) / Rational(cpp_int(1) << k);
    }
    const int left = count_in(chain, lo, mid);
    run(lo, mid, left);
    run(mid, hi, count - left);
  }
};

void refine(const IntPoly& sqf, Rational& lo, Rational& hi, const Rational& width) {
  if (lo == hi) return;
  const int s_lo = sign_at(sqf, lo);
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    const int s = sign_at(sqf, mid);
    if (s == 0) {
      lo = hi = mid;
      return;
    }
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

// A rational root u/v of a primitive integer polynomial has v | lead, so
// lead * root is an integer. Once the interval is narrower than 1/(2 lead) it
// holds at most one such point; pin the interval to it when it is the root.
void pin_rational(const IntPoly& sqf, Rational& lo, Rational& hi) {
  if (lo == hi) return;
  const cpp_int lead = mp::abs(sqf.back());
  refine(sqf, lo, hi, Rational(1) / Rational(2 * lead + 1));
  if (lo == hi) return;
  const Rational scaled_hi = hi * lead;
  cpp_int floor_hi = mp::numerator(scaled_hi) / mp::denominator(scaled_hi);
  if (Rational(floor_hi) > scaled_hi) floor_hi -= 1;
  const Rational candidate = Rational(floor_hi) / Rational(lead);
  if (candidate > lo && candidate <= hi && sign_at(sqf, candidate) == 0) lo = hi = candidate;
}

int multiplicity_in(const std::vector<std::vector<IntPoly>>& gcd_chains, const RealRootInterval& iv) {
  int m = 0;
  for (const auto& chain : gcd_chains) {
    const bool has_root = iv.lo == iv.hi ? sign_at(chain.front(), iv.lo) == 0 : count_in(chain, iv.lo, iv.hi) > 0;
    if (!has_root) break;
    ++m;
  }
  return m;
}

Rational default_width() { return Rational(1) / Rational(cpp_int(1) << 40); }

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const RationalPoly& poly, const Rational& width) {
  if (poly.is_zero()) throw DomainError("real roots of the zero polynomial are not isolated");
  const IntPoly p = primitive(poly);
  if (degree(p) < 1) return {};

  // g_0 = p, g_j = gcd(g_{j-1}, g_{j-1}'); a root of multiplicity m divides
  // exactly g_0 .. g_{m-1}.
  std::vector<IntPoly> gs{p};
  while (degree(gs.back()) >= 1) gs.push_back(gcd(gs.back(), derivative(gs.back())));
  const IntPoly sqf = degree(gs[1]) >= 1 ? exact_quotient(p, gs[1]) : p;

  const auto chain = sturm_chain(sqf);
  const Rational bound = root_bound(sqf);
  Isolator iso{sqf, chain, {}};
  iso.run(-bound, bound, count_in(chain, -bound, bound));

  std::vector<std::vector<IntPoly>> gcd_chains;
  for (std::size_t j = 0; j + 1 < gs.size(); ++j) gcd_chains.push_back(sturm_chain(gs[j]));

  std::vector<RealRootInterval> out;
  for (auto& [lo, hi] : iso.found) {
    RealRootInterval iv{lo, hi, 1};
    pin_rational(sqf, iv.lo, iv.hi);
    refine(sqf, iv.lo, iv.hi, width);
    iv.multiplicity = multiplicity_in(gcd_chains, iv);
    out.push_back(std::move(iv));
  }
  return out;
}

RootSet oracle_real_roots(const RationalPoly& p) {
  const ComplexPoly numeric = to_complex(p);
  RootSet out;
  for (const auto& iv : isolate_real_roots(p, default_width())) {
    const double x = ((iv.lo + iv.hi) / 2).convert_to<double>();
    out.roots.push_back({Complex(x, 0.0), iv.multiplicity, std::abs(eval_horner(numeric, x))});
  }
  return out;
}

RootSet oracle_real_roots(const ComplexPoly& p) {
  const RationalPoly exact = to_rational_exact(p);
  RootSet out;
  for (const auto& iv : isolate_real_roots(exact, default_width())) {
    const double x = ((iv.lo + iv.hi) / 2).convert_to<double>();
    out.roots.push_back({Complex(x, 0.0), iv.multiplicity, std::abs(eval_horner(p, x))});
  }
  return out;
}

RootSet oracle_real_roots(const AnyPoly& p) {
  return std::visit([](const auto& poly) { return oracle_real_roots(poly); }, p);
}

int count_distinct_roots(const RationalPoly& poly) {
  if (poly.is_zero()) throw DomainError("roots of the zero polynomial are not isolated");
  const IntPoly p = primitive(poly);
  if (degree(p) < 1) return 0;
  return degree(p) - degree(gcd(p, derivative(p)));
}

int count_distinct_real_roots(const RationalPoly& poly) {
  if (poly.is_zero()) throw DomainError("real roots of the zero polynomial are not isolated");
  IntPoly p = primitive(poly);
  if (degree(p) < 1) return 0;
  const auto chain = sturm_chain(p);
  const Rational bound = root_bound(p);
  return count_in(chain, -bound, bound);
}

int rational_root_count(const RationalPoly& poly) {
  const IntPoly p = primitive(poly);
  if (degree(p) < 1) return 0;
  int total = 0;
  for (const auto& iv : isolate_real_roots(poly, Rational(1))) {
    if (iv.lo == iv.hi) total += iv.multiplicity;
  }
  return total;
}

}  // namespace tilelab
