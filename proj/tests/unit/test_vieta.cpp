#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <numeric>
#include <set>

#include "tilelab/vieta.hpp"

namespace tilelab {
namespace {

constexpr double kPi = std::numbers::pi;

ComplexPoly cubic() { return ComplexPoly{kPi / 2, -kPi * kPi, 0.0, 2.0}; }

RationalPoly rp(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalPoly(std::move(v));
}

MultiplicityPattern pat(std::vector<int> m, int q = 0) { return {std::move(m), q}; }

std::vector<std::string> labels(const std::vector<MultiplicityPattern>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.label());
  return out;
}

// Every composition of s, sorted descending and deduplicated.
std::set<std::vector<int>> brute_partitions(int s) {
  std::set<std::vector<int>> out;
  if (s == 0) {
    out.insert(std::vector<int>{});
    return out;
  }
  for (unsigned mask = 0; mask < (1u << (s - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int i = 0; i < s - 1; ++i) {
      if (mask & (1u << i)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    std::sort(parts.rbegin(), parts.rend());
    out.insert(parts);
  }
  return out;
}

TEST(Patterns, CubicRealOrder) {
  const auto ps = enumerate_patterns(3, Mode::Real);
  ASSERT_GE(ps.size(), 3u);
  EXPECT_EQ(ps[0], pat({3}));
  EXPECT_EQ(ps[1], pat({2, 1}));
  EXPECT_EQ(ps[2], pat({1, 1, 1}));
  EXPECT_EQ(labels(ps), (std::vector<std::string>{"3", "2,1", "1,1,1", "1|2", "|3"}));
  EXPECT_EQ(labels(enumerate_patterns(3, Mode::Complex)), (std::vector<std::string>{"1,1,1", "2,1", "3"}));
  EXPECT_EQ(labels(enumerate_patterns(3, Mode::Complex, CaseOrder::FewestRootsFirst)),
            (std::vector<std::string>{"3", "2,1", "1,1,1"}));
}

TEST(Patterns, QuinticHasCofactorCase) {
  const auto ps = enumerate_patterns(5, Mode::Real);
  EXPECT_NE(std::find(ps.begin(), ps.end(), pat({1, 1, 1}, 2)), ps.end());
}

TEST(Patterns, Linear) {
  EXPECT_EQ(labels(enumerate_patterns(1, Mode::Real)), (std::vector<std::string>{"1"}));
  EXPECT_EQ(labels(enumerate_patterns(1, Mode::Complex)), (std::vector<std::string>{"1"}));
}

TEST(Patterns, LabelRoundTrip) {
  for (int d = 1; d <= 8; ++d)
    for (const auto& p : enumerate_patterns(d, Mode::Real)) EXPECT_EQ(MultiplicityPattern::parse(p.label()), p);
  EXPECT_THROW(MultiplicityPattern::parse("1,2"), DomainError);
  EXPECT_THROW(MultiplicityPattern::parse("x"), DomainError);
}

TEST(PatternsProperty, MatchBruteForcePartitions) {
  for (int d = 1; d <= 8; ++d) {
    for (Mode mode : {Mode::Real, Mode::Complex}) {
      std::set<std::pair<std::vector<int>, int>> expected;
      std::vector<int> admissible{d};
      if (mode == Mode::Real)
        for (int s = d - 2; s >= 0; --s) admissible.push_back(s);
      for (int s : admissible)
        for (const auto& parts : brute_partitions(s)) expected.insert({parts, d - s});

      const auto ps = enumerate_patterns(d, mode);
      std::set<std::pair<std::vector<int>, int>> got;
      for (const auto& p : ps) {
        std::vector<int> sum(p.mults);
        EXPECT_EQ(std::accumulate(sum.begin(), sum.end(), 0) + p.cofactor_degree, d);
        got.insert({p.mults, p.cofactor_degree});
      }
      EXPECT_EQ(ps.size(), expected.size()) << d;
      EXPECT_EQ(got, expected) << d;
    }
  }
}

TEST(Expand, Examples) {
  const std::vector<Rational> r{1, 2, 3};
  EXPECT_EQ(expand_pattern<Rational>(pat({1, 1, 1}), Rational(1), r, {}), (std::vector<Rational>{-6, 11, -6, 1}));

  const Rational root(5, 3), c(-2);
  const std::vector<Rational> one{root};
  EXPECT_EQ(expand_pattern<Rational>(pat({3}), c, one, {}),
            (std::vector<Rational>{-c * root * root * root, 3 * c * root * root, -3 * c * root, c}));

  const std::vector<Rational> six{1, 2, 3, 4, 5, 6};
  RationalPoly product = rp({1});
  for (const auto& x : six) product = mul(product, RationalPoly::linear_factor(x));
  EXPECT_EQ(expand_pattern<Rational>(pat({1, 1, 1, 1, 1, 1}), Rational(1), six, {}), product.coeffs());
}

TEST(ExpandProperty, MatchesMulComposition) {
  std::mt19937_64 rng(71);
  for (int d = 1; d <= 8; ++d) {
    for (const auto& p : enumerate_patterns(d, Mode::Real)) {
      for (int trial = 0; trial < 5; ++trial) {
        const Rational c(static_cast<long>(rng() % 7) + 1, static_cast<long>(rng() % 3) + 1);
        std::vector<Rational> roots, cof;
        for (int i = 0; i < p.k(); ++i) roots.emplace_back(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1);
        for (int i = 0; i < p.cofactor_degree; ++i) cof.emplace_back(static_cast<long>(rng() % 11) - 5, 2);

        RationalPoly expected = RationalPoly::constant(c);
        for (int i = 0; i < p.k(); ++i)
          expected = mul(expected, power(RationalPoly::linear_factor(roots[i]), static_cast<unsigned>(p.mults[i])));
        std::vector<Rational> b = cof;
        b.emplace_back(1);
        expected = mul(expected, RationalPoly(b));

        EXPECT_EQ(RationalPoly(expand_pattern<Rational>(p, c, roots, cof)), expected) << p.label();
      }
    }
  }
}

TEST(System, RejectsDegreeMismatch) {
  EXPECT_THROW(VietaSystem(pat({2, 1}), ComplexPoly{1.0, 1.0}), DegreeMismatch);
  EXPECT_NO_THROW(VietaSystem(pat({1}, 1), ComplexPoly{1.0, 1.0, 1.0}));
}

TEST(SystemProperty, JacobianMatchesForwardDifferences) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int d = 1; d <= 5; ++d) {
    for (const auto& p : enumerate_patterns(d, Mode::Real)) {
      std::vector<Complex> target(static_cast<std::size_t>(d + 1));
      for (auto& t : target) t = Complex(u(rng), u(rng));
      target.back() = Complex(2.0, -1.0);
      const VietaSystem sys(p, ComplexPoly(target));
      const int m = sys.unknowns();
      for (int point = 0; point < 100; ++point) {
        std::vector<Complex> x(static_cast<std::size_t>(m));
        for (auto& v : x) v = Complex(u(rng), u(rng));
        const auto J = sys.jacobian(x);
        const auto f0 = sys.residual(x);
        ASSERT_EQ(J.size(), static_cast<std::size_t>(d * m));
        for (int j = 0; j < m; ++j) {
          const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
          auto xh = x;
          xh[j] += h;
          const auto f1 = sys.residual(xh);
          double diff = 0, scale = 1;
          for (int i = 0; i < d; ++i) {
            const Complex fd = (f1[i] - f0[i]) / h;
            diff = std::max(diff, std::abs(fd - J[i * m + j]));
            scale = std::max(scale, std::abs(J[i * m + j]));
          }
          EXPECT_LE(diff, 1e-4 * scale) << p.label() << " column " << j;
        }
      }
    }
  }
}

TEST(SolveCase, CubicFewRootPatternsAreInconsistent) {
  const VietaSystem triple(pat({3}), cubic());
  const auto a = solve_case(triple, Mode::Real);
  EXPECT_EQ(a.status, CaseStatus::Inconsistent);
  EXPECT_EQ(a.trace.method, "elimination");

  const auto b = solve_case(VietaSystem(pat({2, 1}), cubic()), Mode::Real);
  EXPECT_EQ(b.status, CaseStatus::Inconsistent);

  const auto c = solve_case(VietaSystem(pat({1, 1, 1}), cubic()), Mode::Real);
  EXPECT_EQ(c.status, CaseStatus::Solved);
  EXPECT_EQ(c.roots.size(), 3u);
  EXPECT_LT(c.residual, 1e-9);
}

TEST(FindRoots, CubicMatchesOracle) {
  const FindResult r = find_roots(cubic(), Mode::Real);
  ASSERT_EQ(r.outcomes.size(), 3u);
  EXPECT_EQ(r.outcomes[0].status, CaseStatus::Inconsistent);
  EXPECT_EQ(r.outcomes[1].status, CaseStatus::Inconsistent);
  EXPECT_EQ(r.outcomes[2].status, CaseStatus::Solved);
  EXPECT_FALSE(r.no_pattern_solved);
  EXPECT_EQ(r.oracle_agrees, true);
  ASSERT_EQ(r.roots.tau(), 3);
  const RootSet oracle = oracle_real_roots(cubic());
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.roots.roots[i].value.real(), oracle.roots[i].value.real(), 1e-8);
    EXPECT_EQ(r.roots.roots[i].value.imag(), 0.0);
    EXPECT_LT(std::abs(eval_horner(cubic(), r.roots.roots[i].value)), 1e-9);
  }
}

TEST(FindRoots, NoRealRoots) {
  const FindResult r = find_roots(rp({1, 0, 1}), Mode::Real);
  EXPECT_TRUE(r.no_pattern_solved);
  EXPECT_EQ(r.roots.tau(), 0);
  ASSERT_EQ(r.outcomes.size(), 3u);
  EXPECT_EQ(r.outcomes[0].pattern.label(), "2");
  EXPECT_EQ(r.outcomes[0].status, CaseStatus::Inconsistent);
  EXPECT_EQ(r.outcomes[1].pattern.label(), "1,1");
  EXPECT_EQ(r.outcomes[1].status, CaseStatus::Inconsistent);
  EXPECT_EQ(r.outcomes[2].pattern.label(), "|2");
  EXPECT_EQ(r.outcomes[2].status, CaseStatus::Solved);
  EXPECT_EQ(r.selected, 2u);
}

TEST(FindRoots, RepeatedRoot) {
  const auto p = mul(power(rp({-1, 1}), 2), rp({-2, 1}));
  for (Mode mode : {Mode::Real, Mode::Complex}) {
    const FindResult r = find_roots(p, mode);
    ASSERT_EQ(r.roots.tau(), 2) << mode_name(mode);
    EXPECT_NEAR(r.roots.roots[0].value.real(), 1.0, 1e-9);
    EXPECT_EQ(r.roots.roots[0].multiplicity, 2);
    EXPECT_NEAR(r.roots.roots[1].value.real(), 2.0, 1e-9);
    EXPECT_EQ(r.roots.roots[1].multiplicity, 1);
  }
}

TEST(FindRoots, ComplexModeFindsImaginaryPair) {
  const FindResult r = find_roots(rp({1, 0, 1}), Mode::Complex);
  ASSERT_EQ(r.roots.tau(), 2);
  EXPECT_FALSE(r.oracle_agrees.has_value());
  std::vector<double> im{r.roots.roots[0].value.imag(), r.roots.roots[1].value.imag()};
  std::sort(im.begin(), im.end());
  EXPECT_NEAR(im[0], -1.0, 1e-9);
  EXPECT_NEAR(im[1], 1.0, 1e-9);
  EXPECT_NEAR(r.roots.roots[0].value.real(), 0.0, 1e-9);
}

TEST(FindRoots, ComplexModeOnCubicAgreesWithRealMode) {
  const FindResult a = find_roots(cubic(), Mode::Real);
  const FindResult b = find_roots(cubic(), Mode::Complex);
  ASSERT_EQ(b.roots.tau(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(a.roots.roots[i].value - b.roots.roots[i].value), 0.0, 1e-9);
}

TEST(FindRoots, Deterministic) {
  const FindResult a = find_roots(cubic(), Mode::Real);
  const FindResult b = find_roots(cubic(), Mode::Real);
  ASSERT_EQ(a.roots.tau(), b.roots.tau());
  for (int i = 0; i < a.roots.tau(); ++i) EXPECT_EQ(a.roots.roots[i].value, b.roots.roots[i].value);
}

TEST(FindRoots, ConstantsAreRejected) {
  EXPECT_THROW(find_roots(rp({3}), Mode::Real), DomainError);
  EXPECT_THROW(find_roots(RationalPoly{}, Mode::Real), DomainError);
}

struct RoundTrip {
  int solved = 0;
  int no_convergence = 0;
  int wrong = 0;
};

RoundTrip round_trip(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-5, 5);
  const std::array<double, 4> cs{1, -1, 2, -2};
  RoundTrip out;
  for (int t = 0; t < instances; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    std::vector<Complex> roots;
    for (int i = 0; i < k; ++i) roots.emplace_back(u(rng));
    const Complex c = cs[rng() % 4];
    const auto coeffs = expand_pattern<Complex>(pat(std::vector<int>(static_cast<std::size_t>(k), 1)), c, roots, {});
    const ComplexPoly p(coeffs);
    const FindResult r = find_roots(p, Mode::Real);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    bool ok = r.roots.tau() == k;
    for (int i = 0; ok && i < k; ++i) ok = std::abs(r.roots.roots[i].value - roots[i]) < 1e-6;
    for (const auto& root : r.roots.roots) ok = ok && std::abs(eval_horner(p, root.value)) < 1e-9;
    if (ok) {
      ++out.solved;
    } else if (r.no_pattern_solved &&
               std::all_of(r.outcomes.begin(), r.outcomes.end(),
                           [](const CaseOutcome& o) { return o.status != CaseStatus::Solved || o.roots.empty(); })) {
      ++out.no_convergence;
    } else {
      ++out.wrong;
    }
  }
  return out;
}

TEST(FindRootsProperty, RoundTripRecoversRoots) {
  const RoundTrip r = round_trip(200, 73);
  EXPECT_EQ(r.wrong, 0);
  EXPECT_GE(r.solved, 198);
}

TEST(FindRootsProperty, SolvedOutcomesHaveSmallResiduals) {
  std::mt19937_64 rng(74);
  SolverConfig config;
  for (int t = 0; t < 60; ++t) {
    std::vector<Rational> c;
    for (int i = 0; i <= 2 + t % 4; ++i) c.emplace_back(static_cast<long>(rng() % 19) - 9);
    if (c.back() == 0) c.back() = 1;
    const RationalPoly p(c);
    for (Mode mode : {Mode::Real, Mode::Complex}) {
      const FindResult r = find_roots(p, mode, config);
      for (const auto& o : r.outcomes) {
        if (o.status != CaseStatus::Solved) continue;
        for (const auto& root : o.roots) {
          EXPECT_LT(std::abs(eval_horner(to_complex(p), root)), 10 * config.tol) << format_poly(p) << " " << o.pattern.label();
        }
      }
    }
  }
}

}  // namespace
}  // namespace tilelab
