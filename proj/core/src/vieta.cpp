#include "tilelab/vieta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace tilelab {

std::string_view mode_name(Mode m) noexcept { return m == Mode::Real ? "real" : "complex"; }

Mode parse_mode(std::string_view text) {
  if (text == "real") return Mode::Real;
  if (text == "complex") return Mode::Complex;
  throw DomainError("unknown mode \"" + std::string(text) + "\"");
}

CaseOrder parse_case_order(std::string_view text) {
  if (text == "default") return CaseOrder::Default;
  if (text == "fewest-roots-first") return CaseOrder::FewestRootsFirst;
  if (text == "most-roots-first") return CaseOrder::MostRootsFirst;
  throw DomainError("unknown case order \"" + std::string(text) + "\"");
}

std::string_view case_status_name(CaseStatus s) noexcept {
  switch (s) {
    case CaseStatus::Solved: return "solved";
    case CaseStatus::Inconsistent: return "inconsistent";
    case CaseStatus::NoConvergence: return "no_convergence";
  }
  return "no_convergence";
}

int MultiplicityPattern::total() const noexcept {
  int t = cofactor_degree;
  for (int m : mults) t += m;
  return t;
}

std::string MultiplicityPattern::label() const {
  std::string out;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(mults[i]);
  }
  if (cofactor_degree > 0) out += "|" + std::to_string(cofactor_degree);
  return out;
}

MultiplicityPattern MultiplicityPattern::parse(std::string_view label) {
  MultiplicityPattern p;
  const auto bar = label.find('|');
  const std::string_view roots = label.substr(0, bar);
  auto to_int = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw DomainError("bad pattern label \"" + std::string(label) + "\"");
    }
    return std::stoi(std::string(s));
  };
  std::size_t start = 0;
  while (start < roots.size()) {
    const auto comma = roots.find(',', start);
    p.mults.push_back(to_int(roots.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (bar != std::string_view::npos) p.cofactor_degree = to_int(label.substr(bar + 1));
  if (!std::is_sorted(p.mults.rbegin(), p.mults.rend()) ||
      std::any_of(p.mults.begin(), p.mults.end(), [](int m) { return m < 1; }) ||
      (p.mults.empty() && p.cofactor_degree == 0)) {
    throw DomainError("bad pattern label \"" + std::string(label) + "\"");
  }
  return p;
}

namespace {

void partitions(int s, int max_part, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (s == 0) {
    out.push_back(prefix);
    return;
  }
  for (int first = std::min(s, max_part); first >= 1; --first) {
    prefix.push_back(first);
    partitions(s - first, first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiplicityPattern> enumerate_patterns(int d, Mode mode, CaseOrder order) {
  if (d < 1) throw DomainError("enumerate_patterns requires d >= 1");
  if (order == CaseOrder::Default) {
    order = mode == Mode::Real ? CaseOrder::FewestRootsFirst : CaseOrder::MostRootsFirst;
  }
  std::vector<int> sums{d};
  if (mode == Mode::Real) {
    for (int s = d - 2; s >= 0; --s) sums.push_back(s);
  }
  std::vector<MultiplicityPattern> out;
  for (int s : sums) {
    std::vector<std::vector<int>> parts;
    std::vector<int> prefix;
    partitions(s, s, prefix, parts);
    if (order == CaseOrder::MostRootsFirst) std::reverse(parts.begin(), parts.end());
    for (auto& m : parts) out.push_back({std::move(m), d - s});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient functions

namespace {

template <class S>
std::vector<S> times_linear(std::vector<S> acc, const S& r) {
  acc.push_back(S(0));
  for (std::size_t j = acc.size() - 1; j > 0; --j) acc[j] = acc[j - 1] - r * acc[j];
  acc[0] = -r * acc[0];
  return acc;
}

template <class S>
std::vector<S> convolve(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> out(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Residual and Jacobian of one pattern over scalar S (double in real mode).
template <class S>
struct Equations {
  const MultiplicityPattern& pattern;
  S c;
  std::vector<S> target;  // a_0 .. a_d

  int k() const { return pattern.k(); }
  int q() const { return pattern.cofactor_degree; }
  int d() const { return static_cast<int>(target.size()) - 1; }
  int n() const { return k() + q(); }

  std::vector<S> cofactor(std::span<const S> u) const {
    std::vector<S> b(u.begin() + k(), u.end());
    b.push_back(S(1));
    return b;
  }

  /// c * prod_{j != skip} (x - r_j)^{m_j} * (x - r_skip)^{m_skip - 1}
  std::vector<S> root_product(std::span<const S> u, int skip) const {
    std::vector<S> acc{c};
    for (int i = 0; i < k(); ++i) {
      const int m = pattern.mults[static_cast<std::size_t>(i)] - (i == skip ? 1 : 0);
      for (int e = 0; e < m; ++e) acc = times_linear(std::move(acc), u[static_cast<std::size_t>(i)]);
    }
    return acc;
  }

  std::vector<S> coefficients(std::span<const S> u) const {
    return convolve(root_product(u, -1), cofactor(u));
  }

  Eigen::Matrix<S, Eigen::Dynamic, 1> residual(std::span<const S> u) const {
    const auto f = coefficients(u);
    Eigen::Matrix<S, Eigen::Dynamic, 1> r(d());
    for (int i = 0; i < d(); ++i) r(i) = f[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)];
    return r;
  }

  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> jacobian(std::span<const S> u) const {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> J =
        Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(d(), n());
    const auto b = cofactor(u);
    // d/dr_i: -m_i * (product with one factor (x - r_i) removed) * b
    for (int i = 0; i < k(); ++i) {
      const auto col = convolve(root_product(u, i), b);
      const S m = S(static_cast<double>(pattern.mults[static_cast<std::size_t>(i)]));
      for (int row = 0; row < d() && row < static_cast<int>(col.size()); ++row) {
        J(row, i) = -m * col[static_cast<std::size_t>(row)];
      }
    }
    // d/db_j: (c prod (x - r_i)^{m_i}) * x^j
    if (q() > 0) {
      const auto full = root_product(u, -1);
      for (int j = 0; j < q(); ++j) {
        for (std::size_t t = 0; t < full.size(); ++t) {
          const int row = j + static_cast<int>(t);
          if (row < d()) J(row, k() + j) = full[t];
        }
      }
    }
    return J;
  }
};

std::vector<Complex> to_vector(const ComplexPoly& p, int d) {
  std::vector<Complex> out(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) out[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
  return out;
}

}  // namespace

VietaSystem::VietaSystem(MultiplicityPattern pattern, ComplexPoly target)
    : pattern_(std::move(pattern)), target_(std::move(target)) {
  if (target_.degree() < 1) throw DegreeMismatch("target must have degree >= 1");
  if (pattern_.total() != target_.degree()) {
    throw DegreeMismatch("pattern " + pattern_.label() + " has total " + std::to_string(pattern_.total()) +
                         " but the target has degree " + std::to_string(target_.degree()));
  }
}

std::vector<Complex> VietaSystem::coefficients(std::span<const Complex> u) const {
  if (static_cast<int>(u.size()) != unknowns()) throw DomainError("wrong number of unknowns");
  Equations<Complex> eq{pattern_, leading(), to_vector(target_, degree())};
  return eq.coefficients(u);
}

std::vector<Complex> VietaSystem::residual(std::span<const Complex> u) const {
  if (static_cast<int>(u.size()) != unknowns()) throw DomainError("wrong number of unknowns");
  Equations<Complex> eq{pattern_, leading(), to_vector(target_, degree())};
  const auto r = eq.residual(u);
  return {r.data(), r.data() + r.size()};
}

std::vector<Complex> VietaSystem::jacobian(std::span<const Complex> u) const {
  if (static_cast<int>(u.size()) != unknowns()) throw DomainError("wrong number of unknowns");
  Equations<Complex> eq{pattern_, leading(), to_vector(target_, degree())};
  const auto J = eq.jacobian(u);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(J.size()));
  for (int row = 0; row < J.rows(); ++row) {
    for (int col = 0; col < J.cols(); ++col) out.push_back(J(row, col));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Case solving

namespace {

double scaled_tol(const ComplexPoly& target, const SolverConfig& config) {
  return config.tol * std::max(1.0, max_norm(target));
}

double cauchy_radius(const ComplexPoly& target) {
  const double lead = std::abs(target.leading());
  double worst = 0;
  for (int i = 0; i < target.degree(); ++i) worst = std::max(worst, std::abs(target.coeff(static_cast<std::size_t>(i))) / lead);
  return 1.0 + worst;
}

template <class S>
double max_abs(const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) {
  double m = 0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, static_cast<double>(std::abs(v(i))));
  return m;
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
}

bool same_root(const Complex& a, const Complex& b, double radius) {
  return std::abs(a - b) < radius * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Merge {
  MultiplicityPattern pattern;
  std::vector<Complex> roots;  // multiplicity-weighted group means, in pattern order
};

/// Pattern obtained by merging roots that fall inside the clustering radius,
/// or nullopt when all roots are distinct.
std::optional<Merge> merged_pattern(const MultiplicityPattern& pattern, const std::vector<Complex>& roots,
                                    double radius) {
  std::vector<int> group(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) group[i] = static_cast<int>(i);
  bool merged = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (group[j] == static_cast<int>(j) && same_root(roots[i], roots[j], radius)) {
        group[j] = group[i];
        merged = true;
      }
    }
  }
  if (!merged) return std::nullopt;
  std::vector<int> sums(roots.size(), 0);
  std::vector<Complex> weighted(roots.size(), 0.0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto g = static_cast<std::size_t>(group[i]);
    sums[g] += pattern.mults[i];
    weighted[g] += static_cast<double>(pattern.mults[i]) * roots[i];
  }
  std::vector<std::pair<int, Complex>> parts;
  for (std::size_t g = 0; g < roots.size(); ++g) {
    if (sums[g] > 0) parts.emplace_back(sums[g], weighted[g] / static_cast<double>(sums[g]));
  }
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Merge out{{{}, pattern.cofactor_degree}, {}};
  for (const auto& [m, r] : parts) {
    out.pattern.mults.push_back(m);
    out.roots.push_back(r);
  }
  return out;
}

bool cofactor_root_free(const std::vector<Complex>& lower) {
  std::vector<Complex> b = lower;
  b.push_back(1.0);
  return count_distinct_real_roots(to_rational_exact(ComplexPoly(std::move(b)))) == 0;
}

void fill_solution(CaseOutcome& out, const MultiplicityPattern& pattern, std::vector<Complex> roots,
                   std::vector<Complex> cofactor) {
  std::vector<std::pair<Complex, int>> pairs;
  for (std::size_t i = 0; i < roots.size(); ++i) pairs.emplace_back(roots[i], pattern.mults[i]);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.first.real() != b.first.real() ? a.first.real() < b.first.real() : a.first.imag() < b.first.imag();
  });
  out.roots.clear();
  out.multiplicities.clear();
  for (const auto& [r, m] : pairs) {
    out.roots.push_back(r);
    out.multiplicities.push_back(m);
  }
  out.cofactor = std::move(cofactor);
}

std::string describe(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

/// Drops real or imaginary parts at rounding level relative to |z|.
Complex snap(Complex z) {
  const double floor = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z));
  if (std::abs(z.imag()) <= floor) z.imag(0.0);
  if (std::abs(z.real()) <= floor) z.real(0.0);
  return z;
}

struct StartResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0;
  std::vector<Complex> u;
};

/// Damped Gauss-Newton with step halving; stops on convergence, when no
/// halving reduces the residual, or after max_iters.
template <class S>
StartResult newton(const Equations<S>& eq, std::vector<S> u, double tol, int max_iters) {
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  StartResult out;
  Vec r = eq.residual(u);
  double norm = r.norm();
  for (; out.iterations < max_iters; ++out.iterations) {
    if (!std::isfinite(norm)) break;
    if (max_abs(r) < tol) {
      out.converged = true;
      break;
    }
    const auto J = eq.jacobian(u);
    const Vec step = J.colPivHouseholderQr().solve(-r);
    bool improved = false;
    double alpha = 1.0;
    for (int h = 0; h < 30; ++h, alpha /= 2) {
      std::vector<S> trial = u;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += S(alpha) * step(static_cast<int>(i));
      const Vec rt = eq.residual(trial);
      const double nt = rt.norm();
      if (std::isfinite(nt) && nt < norm) {
        u = std::move(trial);
        r = rt;
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!out.converged && std::isfinite(norm) && max_abs(r) < tol) out.converged = true;
  // A few full steps past the tolerance while they still help.
  for (int extra = 0; out.converged && extra < 3 && norm > 0; ++extra) {
    const Vec step = eq.jacobian(u).colPivHouseholderQr().solve(-r);
    std::vector<S> trial = u;
    for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += step(static_cast<int>(i));
    const Vec rt = eq.residual(trial);
    if (!(rt.norm() < norm)) break;
    u = std::move(trial);
    r = rt;
    norm = rt.norm();
  }
  out.residual = max_abs(r);
  out.u.assign(u.begin(), u.end());
  for (auto& z : out.u) z = snap(z);
  return out;
}

/// Starting point s: roots on Chebyshev nodes (real) or a golden-angle spiral
/// (complex) scaled by the Cauchy radius; cofactor (x^2 + rho^2)^{q/2}, times
/// (x + rho) when q is odd.
template <class S>
std::vector<S> start_point(const MultiplicityPattern& pattern, int s, double radius) {
  constexpr int kNodes = 32;
  const int k = pattern.k();
  const double scale = radius * (0.35 + 0.65 * static_cast<double>((s * 11) % kNodes) / (kNodes - 1));
  std::vector<S> u;
  for (int i = 0; i < k; ++i) {
    const int idx = (s * 7 + i * (kNodes / std::max(k, 1)) + i) % kNodes;
    if constexpr (std::is_same_v<S, double>) {
      u.push_back(scale * std::cos(std::numbers::pi * (idx + 0.5) / kNodes));
    } else {
      const double angle = 2.399963229728653 * idx + 0.5;
      const double mag = 0.2 + 0.8 * (idx + 0.5) / kNodes;
      u.push_back(std::polar(scale * mag, angle));
    }
  }
  if (pattern.cofactor_degree > 0) {
    const double rho = 0.5 * scale + 0.5;
    std::vector<S> b{S(1)};
    for (int j = 0; j + 1 < pattern.cofactor_degree; j += 2) b = convolve(b, std::vector<S>{S(rho * rho), S(0), S(1)});
    if (pattern.cofactor_degree % 2 == 1) b = convolve(b, std::vector<S>{S(rho), S(1)});
    for (int j = 0; j < pattern.cofactor_degree; ++j) u.push_back(b[static_cast<std::size_t>(j)]);
  }
  return u;
}

template <class S>
Equations<S> make_equations(const VietaSystem& sys) {
  const auto target = to_vector(sys.target(), sys.degree());
  if constexpr (std::is_same_v<S, double>) {
    std::vector<double> re;
    for (const auto& a : target) re.push_back(a.real());
    return {sys.pattern(), sys.leading().real(), std::move(re)};
  } else {
    return {sys.pattern(), sys.leading(), target};
  }
}

/// Roots this far apart (relative) are tested for a hidden coincidence.
constexpr double kProbeRadius = 1e-2;

/// Checks a converged point against the distinctness and cofactor
/// constraints. Returns an empty string when it is admissible.
///
/// Near a repeated root the separate roots of a finer pattern spread out by
/// roughly tol^(1/m), far beyond the clustering radius. So a wider probe is
/// used as well: the nearby roots are merged, Newton polishes the merged
/// point, and they count as one root only if that point meets the tolerance.
std::string violation(const VietaSystem& sys, const std::vector<Complex>& u, Mode mode, const SolverConfig& config,
                      double tol, std::optional<MultiplicityPattern>& redispatch) {
  const MultiplicityPattern& pattern = sys.pattern();
  const std::vector<Complex> roots(u.begin(), u.begin() + pattern.k());
  if (auto merged = merged_pattern(pattern, roots, config.cluster_radius)) {
    redispatch = std::move(merged->pattern);
    return "roots coincide within the clustering radius";
  }
  auto probe = merged_pattern(pattern, roots, std::max(kProbeRadius, config.cluster_radius));
  // With real coefficients the exact distinct-root count rules out merges
  // that would leave too few distinct roots for the target.
  if (probe && has_real_coefficients(sys.target()) &&
      count_distinct_roots(to_rational_exact(sys.target())) > static_cast<int>(probe->pattern.k()) + pattern.cofactor_degree) {
    probe.reset();
  }
  if (probe) {
    std::vector<Complex> start = probe->roots;
    start.insert(start.end(), u.begin() + pattern.k(), u.end());
    const VietaSystem coarse(probe->pattern, sys.target());
    const StartResult r = newton(make_equations<Complex>(coarse), std::move(start), tol, config.max_iters);
    if (r.converged) {
      redispatch = std::move(probe->pattern);
      return "roots coincide: the merged pattern also meets the tolerance";
    }
  }
  if (mode == Mode::Real && pattern.cofactor_degree > 0) {
    const std::vector<Complex> lower(u.begin() + pattern.k(), u.end());
    if (!cofactor_root_free(lower)) return "cofactor has a real root";
  }
  return {};
}

template <class S>
CaseOutcome solve_newton(const VietaSystem& sys, Mode mode, const SolverConfig& config) {
  CaseOutcome out;
  out.pattern = sys.pattern();
  out.trace.method = "newton";
  const Equations<S> eq = make_equations<S>(sys);
  const double tol = scaled_tol(sys.target(), config);
  const double radius = cauchy_radius(sys.target());

  std::optional<StartResult> best;
  std::vector<Complex> best_roots;
  double closest = std::numeric_limits<double>::infinity();
  std::string last_violation;
  for (int s = 0; s < config.starts; ++s) {
    StartResult r = newton(eq, start_point<S>(sys.pattern(), s, radius), tol, config.max_iters);
    ++out.trace.starts_used;
    out.trace.iterations += r.iterations;
    closest = std::min(closest, r.residual);
    if (!r.converged) continue;
    ++out.trace.converged_starts;
    std::optional<MultiplicityPattern> redispatch;
    const std::string why = violation(sys, r.u, mode, config, tol, redispatch);
    if (!why.empty()) {
      ++out.trace.constraint_violations;
      last_violation = why;
      if (redispatch && !out.trace.redispatch) out.trace.redispatch = redispatch;
      continue;
    }
    std::vector<Complex> roots(r.u.begin(), r.u.begin() + sys.pattern().k());
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    if (!best || r.residual < best->residual || (r.residual == best->residual && lex_less(roots, best_roots))) {
      best = std::move(r);
      best_roots = std::move(roots);
    }
  }

  if (best) {
    out.status = CaseStatus::Solved;
    out.residual = best->residual;
    const auto k = static_cast<std::ptrdiff_t>(sys.pattern().k());
    fill_solution(out, sys.pattern(), {best->u.begin(), best->u.begin() + k}, {best->u.begin() + k, best->u.end()});
    return out;
  }
  out.residual = closest;
  if (out.trace.converged_starts > 0 && out.trace.converged_starts == out.trace.starts_used) {
    out.status = CaseStatus::Inconsistent;
    out.reason = "every start converged to a point violating the constraints (" + last_violation + ")";
  } else {
    out.status = CaseStatus::NoConvergence;
    out.reason = "no start reached the tolerance; smallest residual " + describe(closest);
  }
  return out;
}

CaseOutcome solve_cofactor_only(const VietaSystem& sys, Mode mode, const SolverConfig& config) {
  CaseOutcome out;
  out.pattern = sys.pattern();
  out.trace.method = "direct";
  const Complex c = sys.leading();
  for (int j = 0; j < sys.degree(); ++j) out.cofactor.push_back(sys.target().coeff(static_cast<std::size_t>(j)) / c);
  out.residual = 0;
  if (mode == Mode::Real && !cofactor_root_free(out.cofactor)) {
    out.status = CaseStatus::Inconsistent;
    out.reason = "the polynomial has a real root, so it is not a root-free cofactor";
    return out;
  }
  (void)config;
  out.status = CaseStatus::Solved;
  return out;
}

/// One root of multiplicity d: the x^{d-1} coefficient forces r = -a_{d-1} / (d c).
CaseOutcome solve_single_root(const VietaSystem& sys, const SolverConfig& config) {
  CaseOutcome out;
  out.pattern = sys.pattern();
  out.trace.method = "elimination";
  const int d = sys.degree();
  const Complex c = sys.leading();
  const Complex r = -sys.target().coeff(static_cast<std::size_t>(d - 1)) / (c * static_cast<double>(d));
  const std::vector<Complex> u{r};
  const auto res = sys.residual(u);
  int worst = 0;
  for (int i = 1; i < d; ++i) {
    if (std::abs(res[static_cast<std::size_t>(i)]) > std::abs(res[static_cast<std::size_t>(worst)])) worst = i;
  }
  out.residual = std::abs(res[static_cast<std::size_t>(worst)]);
  if (out.residual < scaled_tol(sys.target(), config)) {
    out.status = CaseStatus::Solved;
    fill_solution(out, sys.pattern(), {r}, {});
    return out;
  }
  out.status = CaseStatus::Inconsistent;
  out.reason = "x^" + std::to_string(d - 1) + " coefficient forces r = " + format_coefficient(r) + ", then the x^" +
               std::to_string(worst) + " coefficient is off by " + describe(out.residual);
  return out;
}

/// Polynomials in t whose coefficients are indexed by powers of x.
using BiPoly = std::vector<RationalPoly>;

BiPoly bi_mul(const BiPoly& a, const BiPoly& b) {
  BiPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j]));
  }
  return out;
}

/// Two real roots with multiplicities m1, m2: the x^{d-1} coefficient gives
/// m1 r1 + m2 r2 = -a_{d-1} / c, so r1 = (S - m2 t) / m1 with t = r2. The
/// remaining coefficient equations become univariate in t and are solved
/// exactly for their real roots.
std::optional<CaseOutcome> solve_two_roots_real(const VietaSystem& sys, const SolverConfig& config) {
  const auto& pattern = sys.pattern();
  const int d = sys.degree();
  const RationalPoly target = to_rational_exact(sys.target());
  const Rational c = target.leading();
  const Rational m1 = pattern.mults[0];
  const Rational m2 = pattern.mults[1];
  const Rational S = -target.coeff(static_cast<std::size_t>(d - 1)) / c;

  // (x - r1) and (x - t) with r1 = S/m1 - (m2/m1) t.
  const BiPoly f1{RationalPoly{Rational(-S / m1), Rational(m2 / m1)}, RationalPoly{Rational(1)}};
  const BiPoly f2{RationalPoly{Rational(0), Rational(-1)}, RationalPoly{Rational(1)}};
  BiPoly prod{RationalPoly{c}};
  for (int e = 0; e < pattern.mults[0]; ++e) prod = bi_mul(prod, f1);
  for (int e = 0; e < pattern.mults[1]; ++e) prod = bi_mul(prod, f2);

  std::vector<RationalPoly> eqs;
  for (int j = 0; j + 1 < d; ++j) {
    eqs.push_back(sub(prod[static_cast<std::size_t>(j)], RationalPoly::constant(target.coeff(static_cast<std::size_t>(j)))));
  }

  CaseOutcome out;
  out.pattern = pattern;
  out.trace.method = "elimination";
  const double tol = scaled_tol(sys.target(), config);

  const RationalPoly* pivot = nullptr;
  for (std::size_t j = 0; j < eqs.size(); ++j) {
    const auto& e = eqs[j];
    if (e.degree() == 0) {
      out.status = CaseStatus::Inconsistent;
      out.residual = std::abs(e.coeff(0).convert_to<double>());
      out.reason = "the x^" + std::to_string(j) + " coefficient equation does not depend on the roots and fails by " +
                   describe(out.residual);
      return out;
    }
    if (e.degree() >= 1 && (!pivot || e.degree() < pivot->degree())) pivot = &e;
  }
  if (!pivot) return std::nullopt;

  const auto candidates = oracle_real_roots(*pivot);
  if (candidates.roots.empty()) {
    out.status = CaseStatus::Inconsistent;
    out.residual = std::numeric_limits<double>::infinity();
    out.reason = "after eliminating r1 with the x^" + std::to_string(d - 1) +
                 " coefficient, a remaining coefficient equation has no real solution";
    return out;
  }

  // Polish every candidate on the full system, then accept or reject it.
  const Equations<double> eq = make_equations<double>(sys);
  const double m1d = pattern.mults[0];
  const double m2d = pattern.mults[1];
  const double Sd = S.convert_to<double>();
  double closest = std::numeric_limits<double>::infinity();
  bool merged_only = true;
  std::optional<StartResult> best;
  for (const auto& cand : candidates.roots) {
    const double t = cand.value.real();
    StartResult r = newton(eq, std::vector<double>{(Sd - m2d * t) / m1d, t}, tol, 8);
    out.trace.iterations += r.iterations;
    ++out.trace.starts_used;
    closest = std::min(closest, r.residual);
    if (!r.converged) {
      merged_only = false;
      continue;
    }
    ++out.trace.converged_starts;
    std::optional<MultiplicityPattern> redispatch;
    if (!violation(sys, r.u, Mode::Real, config, tol, redispatch).empty()) {
      ++out.trace.constraint_violations;
      if (redispatch && !out.trace.redispatch) out.trace.redispatch = redispatch;
      continue;
    }
    merged_only = false;
    if (!best || r.residual < best->residual) best = std::move(r);
  }
  if (best) {
    out.status = CaseStatus::Solved;
    out.residual = best->residual;
    fill_solution(out, pattern, best->u, {});
    return out;
  }
  out.residual = closest;
  if (merged_only) {
    out.status = CaseStatus::Inconsistent;
    out.reason = "the only solutions make the two roots coincide";
    return out;
  }
  // Clear failure of every candidate certifies inconsistency; a near miss is
  // left to Newton.
  if (closest > 1e-6 * std::max(1.0, max_norm(sys.target()))) {
    out.status = CaseStatus::Inconsistent;
    out.reason = "after eliminating r1 with the x^" + std::to_string(d - 1) +
                 " coefficient, no real t satisfies all coefficient equations (smallest residual " + describe(closest) +
                 ")";
    return out;
  }
  return std::nullopt;
}

}  // namespace

CaseOutcome solve_case(const VietaSystem& sys, Mode mode, const SolverConfig& config) {
  const auto& pattern = sys.pattern();
  if (mode == Mode::Real && !has_real_coefficients(sys.target())) {
    throw DomainError("real mode requires real coefficients");
  }
  if (pattern.k() == 0) return solve_cofactor_only(sys, mode, config);
  if (pattern.k() == 1 && pattern.cofactor_degree == 0) return solve_single_root(sys, config);
  if (mode == Mode::Real && pattern.k() == 2 && pattern.cofactor_degree == 0) {
    if (auto out = solve_two_roots_real(sys, config)) return *out;
  }
  return mode == Mode::Real ? solve_newton<double>(sys, mode, config) : solve_newton<Complex>(sys, mode, config);
}

namespace {

/// Pairwise match of ascending real roots within 1e-6, absolute or relative.
bool matches_oracle(const std::vector<Complex>& found, const RootSet& oracle) {
  if (found.size() != oracle.roots.size()) return false;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const double a = found[i].real();
    const double b = oracle.roots[i].value.real();
    if (std::abs(a - b) > 1e-6 * std::max(1.0, std::abs(b))) return false;
  }
  return true;
}

}  // namespace

FindResult find_roots(const AnyPoly& p, Mode mode, const SolverConfig& config, CaseOrder order) {
  const ComplexPoly target = as_complex(p);
  if (target.degree() < 1) throw DomainError("find_roots requires degree >= 1");
  if (mode == Mode::Real && !has_real_coefficients(target)) throw DomainError("real mode requires real coefficients");

  std::optional<RootSet> oracle;
  if (mode == Mode::Real) {
    oracle = std::holds_alternative<RationalPoly>(p) ? oracle_real_roots(std::get<RationalPoly>(p))
                                                     : oracle_real_roots(target);
  }

  FindResult result;
  for (auto& pattern : enumerate_patterns(target.degree(), mode, order)) {
    const VietaSystem sys(std::move(pattern), target);
    CaseOutcome outcome = solve_case(sys, mode, config);
    if (outcome.status == CaseStatus::Solved && oracle) {
      const bool agrees = matches_oracle(outcome.roots, *oracle);
      result.oracle_agrees = agrees;
      if (!agrees) {
        outcome.status = CaseStatus::NoConvergence;
        outcome.reason = "solution disagrees with the Sturm oracle (" + std::to_string(outcome.roots.size()) +
                         " roots found, oracle has " + std::to_string(oracle->roots.size()) + ")";
      }
    }
    result.outcomes.push_back(std::move(outcome));
    const auto& last = result.outcomes.back();
    if (last.status == CaseStatus::Solved) {
      result.selected = result.outcomes.size() - 1;
      result.no_pattern_solved = last.roots.empty();
      for (std::size_t i = 0; i < last.roots.size(); ++i) {
        result.roots.roots.push_back(
            {last.roots[i], last.multiplicities[i], std::abs(eval_horner(target, last.roots[i]))});
      }
      break;
    }
  }
  return result;
}

}  // namespace tilelab
