// tilelab: command-line front end for the puzzle and polynomial modules.
//
// Exit codes: 0 success, 1 negative result (invalid solution, unsolvable,
// not found, not a root, no pattern solved), 2 usage or input error,
// 3 resource limit or internal failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tilelab/cost.hpp"
#include "tilelab/grid.hpp"
#include "tilelab/json_io.hpp"
#include "tilelab/poly.hpp"
#include "tilelab/real_roots.hpp"
#include "tilelab/search.hpp"
#include "tilelab/verify.hpp"
#include "tilelab/vieta.hpp"

namespace {

using tilelab::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Result {
  Json doc;
  int code = kOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------------------
// Shared option groups

struct GridInput {
  std::string path;
  std::string inline_grid;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--in", path, "Grid file (text or JSON)");
    auto* grid = cmd->add_option("--grid", inline_grid, "Inline grid, rows separated by '/' (e.g. \"1 2/3 _\")");
    in->excludes(grid);
  }

  tilelab::TileGrid load() const {
    if (!path.empty()) return tilelab::parse_grid_input(read_file(path));
    if (!inline_grid.empty()) return tilelab::parse_grid_input(inline_grid);
    throw UsageError("one of --in or --grid is required");
  }
};

struct PolyInput {
  std::string path;
  std::string inline_poly;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--in", path, "Polynomial file (text or JSON)");
    auto* poly = cmd->add_option("--poly", inline_poly, "Low-to-high coefficients, e.g. \"pi/2,-pi^2,0,2\"");
    in->excludes(poly);
  }

  tilelab::AnyPoly load() const {
    if (!path.empty()) return tilelab::parse_poly_input(read_file(path));
    if (!inline_poly.empty()) return tilelab::parse_poly_input(inline_poly);
    throw UsageError("one of --in or --poly is required");
  }
};

struct Limits {
  std::uint64_t max_states = tilelab::SearchLimits{}.max_states;
  std::uint64_t max_nodes = tilelab::SearchLimits{}.max_nodes;
  std::uint64_t max_sequences = tilelab::SearchLimits{}.max_sequences;
  double timeout = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-states", max_states, "Cap on stored BFS states")->capture_default_str();
    cmd->add_option("--max-nodes", max_nodes, "Cap on IDA* node expansions")->capture_default_str();
    cmd->add_option("--max-sequences", max_sequences, "Cap on candidate sequences in exhaust")->capture_default_str();
    cmd->add_option("--timeout", timeout, "Wall-clock limit in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  tilelab::SearchLimits get() const {
    tilelab::SearchLimits l;
    l.max_states = max_states;
    l.max_nodes = max_nodes;
    l.max_sequences = max_sequences;
    if (timeout > 0) {
      l.timeout = std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
    }
    return l;
  }
};

struct SolverFlags {
  std::string mode = "real";
  std::string order = "default";
  tilelab::SolverConfig config;

  void attach(CLI::App* cmd, bool with_config = true) {
    cmd->add_option("--mode", mode, "real | complex")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
    cmd->add_option("--order", order, "default | fewest-roots-first | most-roots-first")
        ->check(CLI::IsMember({"default", "fewest-roots-first", "most-roots-first"}))
        ->capture_default_str();
    if (!with_config) return;
    cmd->add_option("--tol", config.tol, "Coefficient residual tolerance (scaled by max(1, max norm))")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iters", config.max_iters, "Newton iterations per start")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--starts", config.starts, "Newton starting points per case")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cluster-radius", config.cluster_radius, "Relative distance under which roots merge")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
};

std::string format_rational_or_double(const tilelab::Rational& v) { return tilelab::format_coefficient(v); }
std::string format_rational_or_double(double v) { return tilelab::format_double(v); }

// ---------------------------------------------------------------------------
// puzzle

Result puzzle_solve(const GridInput& input, const std::string& algo, int kmax, const Limits& limits) {
  const auto grid = input.load();
  Json doc;
  doc["algorithm"] = algo;
  doc["n"] = grid.n();
  try {
    tilelab::SearchResult r;
    if (algo == "exhaust") {
      if (!tilelab::is_solvable(grid)) throw tilelab::Unsolvable();
      r = tilelab::exhaust_sequences(grid, kmax, nullptr, limits.get());
    } else {
      const auto which = algo == "bfs"   ? tilelab::SearchAlgorithm::Bfs
                         : algo == "ida" ? tilelab::SearchAlgorithm::IdaStar
                                         : tilelab::SearchAlgorithm::Auto;
      r = tilelab::solve_optimal(grid, which, limits.get());
    }
    doc["solvable"] = true;
    doc["found"] = true;
    doc["psi"] = r.psi;
    doc["seq"] = r.seq.to_string();
    doc["expanded"] = r.expanded;
    return {doc, kOk};
  } catch (const tilelab::Unsolvable&) {
    doc["solvable"] = false;
    doc["found"] = false;
  } catch (const tilelab::NotFound&) {
    doc["solvable"] = true;
    doc["found"] = false;
  }
  doc["psi"] = nullptr;
  doc["seq"] = nullptr;
  doc["expanded"] = nullptr;
  return {doc, kNegative};
}

Result puzzle_verify(const GridInput& input, const std::string& seq_text) {
  const auto grid = input.load();
  const auto seq = tilelab::MoveSeq::parse(seq_text);
  tilelab::CostLedger ledger;
  const bool valid = tilelab::verify_solution(grid, seq, ledger);
  const auto b = tilelab::budget(tilelab::BudgetKind::Verify, grid.n(), seq.size());

  Json doc;
  doc["valid"] = valid;
  doc["decisions"] = ledger.decisions();
  doc["n"] = grid.n();
  doc["k"] = seq.size();
  doc["budget"] = b.ceiling.str();
  doc["within_budget"] = tilelab::BigInt(ledger.decisions()) <= b.ceiling;
  try {
    tilelab::apply_seq(grid, seq, tilelab::ApplyMode::Strict);
    doc["first_illegal_step"] = nullptr;
  } catch (const tilelab::IllegalMove& e) {
    doc["first_illegal_step"] = e.step() ? Json(*e.step()) : Json(nullptr);
  }
  return {doc, valid ? kOk : kNegative};
}

Result puzzle_enumerate(int n, std::optional<int> depth_limit, const std::string& out_path, const Limits& limits) {
  const auto table = tilelab::enumerate_reachable(n, depth_limit, limits.get());
  Json doc;
  doc["n"] = n;
  doc["count"] = table.count();
  doc["diameter"] = table.diameter();
  doc["truncated"] = table.truncated();
  doc["depth_limit"] = depth_limit ? Json(*depth_limit) : Json(nullptr);
  doc["depth_histogram"] = table.depth_histogram();
  if (!out_path.empty()) {
    Json full = doc;
    Json levels = Json::array();
    for (const auto& level : table.levels()) {
      Json states = Json::array();
      for (auto key : level) states.push_back(tilelab::grid_to_json(tilelab::decode_state(n, key))["cells"]);
      levels.push_back(std::move(states));
    }
    full["levels"] = std::move(levels);
    write_file(out_path, full.dump() + "\n");
    doc["out"] = out_path;
  }
  return {doc, kOk};
}

Json bounds_formula_only(int n) {
  Json bounds;
  bounds["thm2"] = tilelab::bound_thm2(n);
  bounds["thm2_exact"] = tilelab::bound_thm2_string(n);
  bounds["thm3"] = tilelab::bound_thm3(n).str();
  bounds["thm4"] = n >= 3 ? Json(tilelab::bound_thm4(n)) : Json(nullptr);
  bounds["cor1"] = n >= 3 ? Json(tilelab::bound_cor1(n)) : Json(nullptr);
  bounds["lemma1"] = tilelab::count_lemma1(n).str();
  Json verdicts;
  for (const char* key : {"thm2", "thm3", "thm4", "cor1", "lemma1"}) verdicts[key] = "untested";
  Json doc;
  doc["n"] = n;
  doc["count"] = nullptr;
  doc["diameter"] = nullptr;
  doc["lemma1_enumerated"] = nullptr;
  doc["bounds"] = std::move(bounds);
  doc["verdicts"] = std::move(verdicts);
  return doc;
}

Result puzzle_bounds(int n, const Limits& limits) {
  if (n < 2 || n > 64) throw UsageError("--n must be in 2..64");
  if (n <= 3) return {tilelab::bound_report_to_json(tilelab::claim_report(n, limits.get())), kOk};
  return {bounds_formula_only(n), kOk};
}

Result puzzle_cost(const GridInput& input, const std::string& seq_text, bool emit_ledger,
                   std::optional<std::uint64_t> program_length) {
  const auto grid = input.load();
  const auto seq = tilelab::MoveSeq::parse(seq_text);
  tilelab::CostLedger ledger;
  const bool valid = tilelab::instrumented_verify(grid, seq, ledger);
  const auto b = tilelab::budget(tilelab::BudgetKind::Verify, grid.n(), seq.size());
  Json doc;
  doc["decisions"] = ledger.decisions();
  doc["ceiling"] = b.ceiling.str();
  doc["within"] = tilelab::BigInt(ledger.decisions()) <= b.ceiling;
  doc["valid"] = valid;
  doc["n"] = grid.n();
  doc["k"] = seq.size();
  if (program_length) {
    doc["polytime_witness"] =
        tilelab::polytime_witness(tilelab::BigInt(ledger.decisions()), *program_length, grid.n(), seq.size());
  }
  if (emit_ledger) doc["per_primitive"] = tilelab::ledger_to_json(ledger)["per_primitive"];
  return {doc, kOk};
}

Result puzzle_exhaust(const GridInput& input, int kmax, bool emit_ledger, const Limits& limits) {
  const auto grid = input.load();
  tilelab::CostLedger ledger;
  Json doc;
  doc["n"] = grid.n();
  doc["kmax"] = kmax;
  int code = kOk;
  try {
    const auto r = tilelab::exhaust_sequences(grid, kmax, &ledger, limits.get());
    doc["found"] = true;
    doc["seq"] = r.seq.to_string();
    doc["length"] = r.psi;
    doc["expanded"] = r.expanded;
  } catch (const tilelab::NotFound&) {
    doc["found"] = false;
    doc["seq"] = nullptr;
    doc["length"] = nullptr;
    doc["expanded"] = nullptr;
    code = kNegative;
  }
  const auto printed = tilelab::budget(tilelab::BudgetKind::Search, grid.n(), static_cast<std::uint64_t>(kmax)).ceiling;
  const auto summed = tilelab::search_ceiling_summed(grid.n(), static_cast<std::uint64_t>(kmax));
  doc["decisions"] = ledger.decisions();
  doc["ceiling"] = printed.str();
  doc["within"] = tilelab::BigInt(ledger.decisions()) <= printed;
  doc["summed_ceiling"] = summed.str();
  doc["within_summed"] = tilelab::BigInt(ledger.decisions()) <= summed;
  if (emit_ledger) doc["per_primitive"] = tilelab::ledger_to_json(ledger)["per_primitive"];
  return {doc, code};
}

// ---------------------------------------------------------------------------
// roots

Json find_result_to_json(const tilelab::AnyPoly& p, const tilelab::FindResult& r, tilelab::Mode mode) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(tilelab::case_outcome_to_json(o));
  Json doc;
  doc["poly"] = tilelab::poly_to_json(p);
  doc["mode"] = std::string(tilelab::mode_name(mode));
  doc["roots"] = tilelab::root_set_to_json(r.roots);
  doc["tau"] = r.roots.tau();
  doc["case"] = r.selected ? Json(r.outcomes[*r.selected].pattern.label()) : Json(nullptr);
  doc["no_pattern_solved"] = r.no_pattern_solved;
  doc["oracle_agrees"] = r.oracle_agrees ? Json(*r.oracle_agrees) : Json(nullptr);
  doc["outcomes"] = std::move(outcomes);
  return doc;
}

Result roots_find(const PolyInput& input, const SolverFlags& flags) {
  const auto p = input.load();
  const auto mode = tilelab::parse_mode(flags.mode);
  const auto r = tilelab::find_roots(p, mode, flags.config, tilelab::parse_case_order(flags.order));
  return {find_result_to_json(p, r, mode), r.no_pattern_solved ? kNegative : kOk};
}

Result roots_verify(const PolyInput& input, const std::string& root_text, double tol) {
  const auto p = input.load();
  const auto root = tilelab::parse_coefficient(root_text);
  Json doc;
  doc["poly"] = tilelab::poly_to_json(p);

  const auto* exact_poly = std::get_if<tilelab::RationalPoly>(&p);
  const auto* exact_root = std::get_if<tilelab::Rational>(&root);
  if (exact_poly && exact_root) {
    const tilelab::Rational value = tilelab::eval_horner(*exact_poly, *exact_root);
    const bool is_root = value == 0;
    doc["root"] = tilelab::format_coefficient(*exact_root);
    doc["exact"] = true;
    doc["residual"] = boost::multiprecision::abs(value).convert_to<double>();
    doc["is_root"] = is_root;
    doc["multiplicity"] = is_root ? Json(tilelab::multiplicity(*exact_poly, *exact_root)) : Json(nullptr);
    return {doc, is_root ? kOk : kNegative};
  }
  const tilelab::Complex z = exact_root ? tilelab::Complex(exact_root->convert_to<double>(), 0.0)
                                        : std::get<tilelab::Complex>(root);
  const auto cp = tilelab::as_complex(p);
  const double residual = std::abs(tilelab::eval_horner(cp, z));
  const bool is_root = residual < tol;
  doc["root"] = tilelab::complex_to_json(z);
  doc["exact"] = false;
  doc["residual"] = residual;
  doc["is_root"] = is_root;
  doc["multiplicity"] = is_root ? Json(tilelab::multiplicity(cp, z, tol)) : Json(nullptr);
  return {doc, is_root ? kOk : kNegative};
}

Result roots_cases(int degree, const SolverFlags& flags) {
  const auto mode = tilelab::parse_mode(flags.mode);
  Json patterns = Json::array();
  for (const auto& p : tilelab::enumerate_patterns(degree, mode, tilelab::parse_case_order(flags.order))) {
    patterns.push_back(tilelab::pattern_to_json(p));
  }
  Json doc;
  doc["degree"] = degree;
  doc["mode"] = flags.mode;
  doc["order"] = flags.order;
  doc["patterns"] = std::move(patterns);
  return {doc, kOk};
}

// ---------------------------------------------------------------------------
// report

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Json norm_entry(const tilelab::AnyPoly& p, const tilelab::AnyPoly& q) {
  if (p.index() != q.index()) throw tilelab::KindMismatch();
  Json doc;
  doc["p"] = tilelab::poly_to_json(p);
  doc["q"] = tilelab::poly_to_json(q);
  std::visit(
      [&](const auto& a) {
        const auto& b = std::get<std::decay_t<decltype(a)>>(q);
        const auto check = tilelab::norm_claim_check(a, b);
        doc["lhs"] = format_rational_or_double(check.lhs);
        doc["rhs"] = format_rational_or_double(check.rhs);
        doc["holds"] = check.holds;
      },
      p);
  return doc;
}

Json root_entry(const tilelab::AnyPoly& p, tilelab::Mode mode, const tilelab::SolverConfig& config,
                tilelab::CaseOrder order) {
  Json doc;
  doc["poly"] = tilelab::poly_to_json(p);
  std::visit([&](const auto& a) { doc["max_norm"] = format_rational_or_double(tilelab::max_norm(a)); }, p);
  const auto* exact = std::get_if<tilelab::RationalPoly>(&p);
  doc["nicely_factored"] = exact ? Json(tilelab::is_nicely_factored(*exact)) : Json(nullptr);
  const auto r = tilelab::find_roots(p, mode, config, order);
  doc["tau"] = r.roots.tau();
  doc["roots"] = tilelab::root_set_to_json(r.roots);
  doc["case"] = r.selected ? Json(r.outcomes[*r.selected].pattern.label()) : Json(nullptr);
  doc["no_pattern_solved"] = r.no_pattern_solved;
  doc["oracle_agrees"] = r.oracle_agrees ? Json(*r.oracle_agrees) : Json(nullptr);
  Json statuses = Json::array();
  for (const auto& o : r.outcomes) {
    Json s;
    s["case"] = o.pattern.label();
    s["status"] = std::string(tilelab::case_status_name(o.status));
    statuses.push_back(std::move(s));
  }
  doc["outcomes"] = std::move(statuses);
  return doc;
}

Result report(const std::vector<int>& ns, const std::string& corpus_path, const SolverFlags& flags,
              const Limits& limits) {
  Json bounds = Json::array();
  for (int n : ns) {
    if (n != 2 && n != 3) throw UsageError("report --n accepts only 2 and 3");
    bounds.push_back(tilelab::bound_report_to_json(tilelab::claim_report(n, limits.get())));
  }

  const auto mode = tilelab::parse_mode(flags.mode);
  const auto order = tilelab::parse_case_order(flags.order);
  Json polys = Json::array();
  Json norms = Json::array();
  int violations = 0;
  if (!corpus_path.empty()) {
    std::istringstream lines(read_file(corpus_path));
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      const std::string body = trim(line.substr(0, line.find('#')));
      if (body.empty()) continue;
      try {
        const auto semi = body.find(';');
        if (semi != std::string::npos) {
          Json entry = norm_entry(tilelab::parse_poly(trim(body.substr(0, semi))),
                                  tilelab::parse_poly(trim(body.substr(semi + 1))));
          if (!entry["holds"].get<bool>()) ++violations;
          norms.push_back(std::move(entry));
        } else {
          polys.push_back(root_entry(tilelab::parse_poly(body), mode, flags.config, order));
        }
      } catch (const tilelab::DomainError& e) {
        throw UsageError(corpus_path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  Json doc;
  doc["bounds"] = std::move(bounds);
  doc["polynomials"] = std::move(polys);
  doc["norm_checks"] = std::move(norms);
  doc["norm_violations"] = violations;
  return {doc, kOk};
}

// ---------------------------------------------------------------------------
// output

void render_text(const Json& doc, std::ostream& out) {
  if (!doc.is_object()) {
    out << doc.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    out << key << ": ";
    if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

void emit(const Json& doc, const std::string& format) {
  if (format == "text") {
    render_text(doc, std::cout);
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

Json error_doc(const std::string& kind, const std::string& message) {
  Json err;
  err["kind"] = kind;
  err["message"] = message;
  Json doc;
  doc["error"] = std::move(err);
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-tile and polynomial workbench"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.fallthrough();

  auto* puzzle = app.add_subcommand("puzzle", "Sliding-tile operations");
  puzzle->require_subcommand(1);
  auto* roots = app.add_subcommand("roots", "Polynomial root finding");
  roots->require_subcommand(1);

  // puzzle solve
  GridInput solve_in;
  std::string algo = "auto";
  int solve_kmax = 12;
  Limits solve_limits;
  auto* solve = puzzle->add_subcommand("solve", "Optimal solution (BFS, IDA*, or exhaustive enumeration)");
  solve_in.attach(solve);
  solve->add_option("--algo", algo, "auto | bfs | ida | exhaust")
      ->check(CLI::IsMember({"auto", "bfs", "ida", "exhaust"}))
      ->capture_default_str();
  solve->add_option("--kmax", solve_kmax, "Longest sequence tried by --algo exhaust")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  solve_limits.attach(solve);

  // puzzle verify
  GridInput verify_in;
  std::string verify_seq;
  auto* verify = puzzle->add_subcommand("verify", "Check a move sequence against the goal state");
  verify_in.attach(verify);
  verify->add_option("--seq", verify_seq, "Move letters U, D, R, L (blank direction)")->required();

  // puzzle enumerate
  int enum_n = 0;
  std::optional<int> depth_limit;
  std::string enum_out;
  Limits enum_limits;
  auto* enumerate = puzzle->add_subcommand("enumerate", "Breadth-first closure of the goal state");
  enumerate->add_option("--n", enum_n, "Side length (2..4; 4 needs --depth-limit)")->required()->check(CLI::Range(2, 4));
  enumerate->add_option("--depth-limit", depth_limit, "Stop after this depth")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--out", enum_out, "Also write every state, grouped by depth, to this file");
  enum_limits.attach(enumerate);

  // puzzle bounds
  int bounds_n = 0;
  Limits bounds_limits;
  auto* bounds = puzzle->add_subcommand("bounds", "Evaluate the bound formulas against BFS ground truth");
  bounds->add_option("--n", bounds_n, "Side length (2 or 3 for verdicts; up to 64 for formulas only)")->required();
  bounds_limits.attach(bounds);

  // puzzle cost
  GridInput cost_in;
  std::string cost_seq;
  bool cost_ledger = false;
  std::optional<std::uint64_t> program_length;
  auto* cost = puzzle->add_subcommand("cost", "Decision count of verifying a sequence");
  cost_in.attach(cost);
  cost->add_option("--seq", cost_seq, "Move letters U, D, R, L")->required();
  cost->add_flag("--emit-ledger", cost_ledger, "Include the per-primitive breakdown");
  cost->add_option("--program-length", program_length, "Also test decisions <= (L^2 + 1)^(n^2 + 27k + 1)")
      ->check(CLI::PositiveNumber);

  // puzzle exhaust
  GridInput exhaust_in;
  int exhaust_kmax = 0;
  bool exhaust_ledger = false;
  Limits exhaust_limits;
  auto* exhaust = puzzle->add_subcommand("exhaust", "Instrumented enumeration of every sequence up to --kmax");
  exhaust_in.attach(exhaust);
  exhaust->add_option("--kmax", exhaust_kmax, "Longest sequence length")->required()->check(CLI::Range(0, 30));
  exhaust->add_flag("--emit-ledger", exhaust_ledger, "Include the per-primitive breakdown");
  exhaust_limits.attach(exhaust);

  // roots find
  PolyInput find_in;
  SolverFlags find_flags;
  auto* find = roots->add_subcommand("find", "Roots by multiplicity pattern");
  find_in.attach(find);
  find_flags.attach(find);

  // roots verify
  PolyInput rverify_in;
  std::string root_text;
  double rverify_tol = 1e-9;
  auto* rverify = roots->add_subcommand("verify", "Residual and multiplicity of a candidate root");
  rverify_in.attach(rverify);
  rverify->add_option("--root", root_text, "Candidate root, e.g. 0.15998 or 1/2 or 1+2i")->required();
  rverify->add_option("--tol", rverify_tol, "Residual below which the candidate counts as a root")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // roots cases
  int cases_degree = 0;
  SolverFlags cases_flags;
  auto* cases = roots->add_subcommand("cases", "List multiplicity patterns in solving order");
  cases->add_option("--degree", cases_degree, "Polynomial degree")->required()->check(CLI::Range(1, 40));
  cases_flags.attach(cases, false);

  // report
  std::vector<int> report_ns{2, 3};
  std::string corpus;
  SolverFlags report_flags;
  Limits report_limits;
  auto* rep = app.add_subcommand("report", "Bound verdicts plus norm and root checks over a corpus");
  rep->add_option("--n", report_ns, "Side lengths (subset of {2, 3})")->delimiter(',')->capture_default_str();
  rep->add_option("--corpus", corpus,
                  "Polynomial corpus: one polynomial per line, or 'p ; q' for a norm check; '#' starts a comment");
  report_flags.attach(rep);
  report_limits.attach(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "tilelab: " << e.what() << '\n';
    if (format == "json") emit(error_doc("usage", e.what()), format);
    return kUsage;
  }

  try {
    Result r;
    if (*solve) {
      r = puzzle_solve(solve_in, algo, solve_kmax, solve_limits);
    } else if (*verify) {
      r = puzzle_verify(verify_in, verify_seq);
    } else if (*enumerate) {
      r = puzzle_enumerate(enum_n, depth_limit, enum_out, enum_limits);
    } else if (*bounds) {
      r = puzzle_bounds(bounds_n, bounds_limits);
    } else if (*cost) {
      r = puzzle_cost(cost_in, cost_seq, cost_ledger, program_length);
    } else if (*exhaust) {
      r = puzzle_exhaust(exhaust_in, exhaust_kmax, exhaust_ledger, exhaust_limits);
    } else if (*find) {
      r = roots_find(find_in, find_flags);
    } else if (*rverify) {
      r = roots_verify(rverify_in, root_text, rverify_tol);
    } else if (*cases) {
      r = roots_cases(cases_degree, cases_flags);
    } else if (*rep) {
      r = report(report_ns, corpus, report_flags, report_limits);
    }
    emit(r.doc, format);
    return r.code;
  } catch (const tilelab::ResourceLimit& e) {
    std::cerr << "tilelab: resource limit: " << e.what() << '\n';
    emit(error_doc("resource_limit", e.what()), format);
    return kResource;
  } catch (const tilelab::NotARoot& e) {
    std::cerr << "tilelab: " << e.what() << '\n';
    emit(error_doc("not_a_root", e.what()), format);
    return kNegative;
  } catch (const UsageError& e) {
    std::cerr << "tilelab: " << e.what() << '\n';
    emit(error_doc("usage", e.what()), format);
    return kUsage;
  } catch (const tilelab::Error& e) {
    // Malformed grids or polynomials, illegal strict moves, kind and degree
    // mismatches: the request itself was wrong.
    std::cerr << "tilelab: " << e.what() << '\n';
    emit(error_doc("input", e.what()), format);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "tilelab: internal error: " << e.what() << '\n';
    emit(error_doc("internal", e.what()), format);
    return kResource;
  }
}
