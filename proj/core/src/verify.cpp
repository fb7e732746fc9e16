#include "tilelab/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace tilelab {

using HighPrecision = boost::multiprecision::cpp_bin_float_100;

bool verify_solution(const TileGrid& grid, const MoveSeq& seq) {
  CostLedger ledger;
  return instrumented_verify(grid, seq, ledger);
}

bool verify_solution(const TileGrid& grid, const MoveSeq& seq, CostLedger& ledger) {
  return instrumented_verify(grid, seq, ledger);
}

namespace {

void require_at_least(int n, int minimum, const char* what) {
  if (n < minimum) throw DomainError(std::string(what) + " requires n >= " + std::to_string(minimum));
}

HighPrecision log4_factorial(int n) {
  require_at_least(n, 1, "log4((n^2)!)");
  if (n > 64) throw DomainError("log4((n^2)!) limited to n <= 64");
  const BigInt f = count_lemma1(n);
  return boost::multiprecision::log(HighPrecision(f)) / boost::multiprecision::log(HighPrecision(4));
}

}  // namespace

BigInt count_lemma1(int n) {
  require_at_least(n, 1, "(n^2)!");
  if (n > 64) throw DomainError("(n^2)! limited to n <= 64");
  BigInt out = 1;
  for (int i = 2; i <= n * n; ++i) out *= i;
  return out;
}

double bound_thm2(int n) {
  require_at_least(n, 2, "bound_thm2");
  return log4_factorial(n).convert_to<double>();
}

std::string bound_thm2_string(int n, int digits) {
  require_at_least(n, 2, "bound_thm2");
  std::ostringstream out;
  out.precision(digits);
  out << log4_factorial(n);
  return out.str();
}

BigInt bound_thm3(int n) {
  require_at_least(n, 2, "bound_thm3");
  const HighPrecision half = (log4_factorial(n) - 1) / 2;
  const auto f = boost::multiprecision::floor(half).convert_to<long long>();
  if (f < 0) throw DomainError("bound_thm3 exponent is negative");
  const auto e = static_cast<unsigned>(f);
  return 4 * boost::multiprecision::pow(BigInt(3), e) * boost::multiprecision::pow(BigInt(4), e) + 4;
}

std::int64_t bound_thm4(int n) {
  require_at_least(n, 3, "bound_thm4");
  const std::int64_t m = n;
  return 4 * (m * m - m - 4);
}

std::int64_t bound_cor1(int n) {
  require_at_least(n, 3, "bound_cor1");
  const std::int64_t m = n;
  return 4 * (m * m - m - 2);
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Untested: return "untested";
  }
  return "untested";
}

namespace {

Verdict holds_if(bool ok) { return ok ? Verdict::Holds : Verdict::Fails; }

std::uint64_t enumerate_arrangements(int n) {
  std::vector<int> symbols(static_cast<std::size_t>(n * n));
  std::iota(symbols.begin(), symbols.end(), 0);
  std::uint64_t count = 0;
  do {
    ++count;
  } while (std::next_permutation(symbols.begin(), symbols.end()));
  return count;
}

}  // namespace

BoundReport claim_report(int n, const SearchLimits& limits) {
  if (n != 2 && n != 3) throw DomainError("claim_report supports n in {2, 3}");
  BoundReport r;
  r.n = n;

  const ReachabilityTable table = enumerate_reachable(n, std::nullopt, limits);
  r.ground_truth_count = table.count();
  r.ground_truth_diameter = table.diameter();

  r.thm2_bound = bound_thm2(n);
  r.thm2_bound_exact = bound_thm2_string(n);
  r.thm3_bound = bound_thm3(n);
  r.lemma1_count = count_lemma1(n);
  r.lemma1_enumerated = enumerate_arrangements(n);

  r.thm2 = holds_if(HighPrecision(r.ground_truth_diameter) <= log4_factorial(n));
  r.thm3 = holds_if(BigInt(r.ground_truth_count) <= r.thm3_bound);
  r.lemma1 = holds_if(BigInt(r.lemma1_enumerated) == r.lemma1_count);
  if (n >= 3) {
    r.thm4_bound = bound_thm4(n);
    r.cor1_bound = bound_cor1(n);
    r.thm4 = holds_if(static_cast<std::int64_t>(r.ground_truth_count) <= *r.thm4_bound);
    r.cor1 = holds_if(r.ground_truth_diameter <= *r.cor1_bound);
  }
  return r;
}

}  // namespace tilelab
