#pragma once

// Root finding by factorization shape: each multiplicity pattern fixes the
// form c * prod (x - r_i)^{m_i} * b(x), whose expanded coefficients are matched
// against the target by exact elimination or damped Gauss-Newton.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tilelab/poly.hpp"
#include "tilelab/real_roots.hpp"

namespace tilelab {

enum class Mode { Real, Complex };
std::string_view mode_name(Mode m) noexcept;
Mode parse_mode(std::string_view text);

/// FewestRootsFirst works {3}, {2,1}, {1,1,1}; MostRootsFirst the reverse.
/// Default is FewestRootsFirst in real mode and MostRootsFirst in complex mode.
enum class CaseOrder { Default, FewestRootsFirst, MostRootsFirst };
CaseOrder parse_case_order(std::string_view text);

struct MultiplicityPattern {
  /// Nonincreasing, each >= 1.
  std::vector<int> mults;
  /// Degree of the monic root-free cofactor b(x); 0 when absent.
  int cofactor_degree = 0;

  int k() const noexcept { return static_cast<int>(mults.size()); }
  int total() const noexcept;
  /// "2,1", "1,1,1|2", "|3".
  std::string label() const;
  static MultiplicityPattern parse(std::string_view label);
  bool operator==(const MultiplicityPattern&) const = default;
};

/// Partitions of s for s = d only (complex) or s = d, d-2, d-3, ..., 0 (real),
/// descending s, partitions ordered per `order` within each s.
std::vector<MultiplicityPattern> enumerate_patterns(int d, Mode mode, CaseOrder order = CaseOrder::Default);

/// Coefficients (low to high) of c * prod (x - roots[i])^{mults[i]} * b(x),
/// where b is monic with lower coefficients `cofactor`, by iterated convolution.
template <class T>
std::vector<T> expand_pattern(const MultiplicityPattern& pattern, const T& c, std::span<const T> roots,
                              std::span<const T> cofactor) {
  if (roots.size() != pattern.mults.size() ||
      cofactor.size() != static_cast<std::size_t>(pattern.cofactor_degree)) {
    throw DomainError("unknowns do not fit the pattern");
  }
  std::vector<T> acc{c};
  auto times_linear = [&acc](const T& r) {
    acc.push_back(T(0));
    for (std::size_t j = acc.size() - 1; j > 0; --j) acc[j] = acc[j - 1] - r * acc[j];
    acc[0] = -r * acc[0];
  };
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int e = 0; e < pattern.mults[i]; ++e) times_linear(roots[i]);
  }
  if (!cofactor.empty()) {
    std::vector<T> b(cofactor.begin(), cofactor.end());
    b.push_back(T(1));
    std::vector<T> out(acc.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += acc[i] * b[j];
    }
    acc = std::move(out);
  }
  return acc;
}

/// Unknowns u = (r_1 .. r_k, b_0 .. b_{q-1}); the leading scalar c is fixed
/// to the target's leading coefficient. Equations are coefficients 0 .. d-1.
class VietaSystem {
 public:
  /// Throws DegreeMismatch when pattern.total() != degree(target).
  VietaSystem(MultiplicityPattern pattern, ComplexPoly target);

  const MultiplicityPattern& pattern() const noexcept { return pattern_; }
  const ComplexPoly& target() const noexcept { return target_; }
  int degree() const noexcept { return target_.degree(); }
  Complex leading() const { return target_.leading(); }
  int unknowns() const noexcept { return pattern_.k() + pattern_.cofactor_degree; }

  /// f_0 .. f_d at u.
  std::vector<Complex> coefficients(std::span<const Complex> u) const;
  /// f_i(u) - a_i for i < d.
  std::vector<Complex> residual(std::span<const Complex> u) const;
  /// d x unknowns, row-major, by differentiating the product.
  std::vector<Complex> jacobian(std::span<const Complex> u) const;

 private:
  MultiplicityPattern pattern_;
  ComplexPoly target_;
};

struct SolverConfig {
  /// Coefficient residual bound, scaled by max(1, max_norm(target)).
  double tol = 1e-10;
  int max_iters = 100;
  int starts = 32;
  /// Roots closer than radius * max(1, |r|) are the same root.
  double cluster_radius = 1e-6;
};

enum class CaseStatus { Solved, Inconsistent, NoConvergence };
std::string_view case_status_name(CaseStatus s) noexcept;

struct SolveTrace {
  /// "elimination", "newton" or "direct".
  std::string method;
  int iterations = 0;
  int starts_used = 0;
  int converged_starts = 0;
  int constraint_violations = 0;
  /// Pattern obtained by merging clustered roots of a converged start.
  std::optional<MultiplicityPattern> redispatch;
};

struct CaseOutcome {
  MultiplicityPattern pattern;
  CaseStatus status = CaseStatus::NoConvergence;
  /// Distinct roots in pattern order, then sorted by value.
  std::vector<Complex> roots;
  std::vector<int> multiplicities;
  /// Lower coefficients of the monic cofactor.
  std::vector<Complex> cofactor;
  /// Max-norm of the coefficient residual at the reported point.
  double residual = 0;
  std::string reason;
  SolveTrace trace;
};

/// Exact elimination where the pattern allows it (one root, or two roots in
/// real mode), Gauss-Newton multi-start otherwise.
CaseOutcome solve_case(const VietaSystem& system, Mode mode, const SolverConfig& config = {});

struct FindResult {
  RootSet roots;
  std::vector<CaseOutcome> outcomes;
  /// Index into outcomes of the accepted case.
  std::optional<std::size_t> selected;
  /// True when no pattern with at least one root was solved; roots is then
  /// empty (a root-free cofactor may still have been accepted).
  bool no_pattern_solved = true;
  /// Real mode only: whether the accepted roots matched the Sturm oracle.
  std::optional<bool> oracle_agrees;
};

/// Works the patterns in order and stops at the first Solved case. In real
/// mode the roots must match oracle_real_roots pairwise within 1e-6
/// (absolute or relative); a mismatch downgrades that case to NoConvergence.
FindResult find_roots(const AnyPoly& p, Mode mode, const SolverConfig& config = {},
                      CaseOrder order = CaseOrder::Default);

}  // namespace tilelab
