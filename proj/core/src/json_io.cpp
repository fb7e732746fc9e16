#include "tilelab/json_io.hpp"

#include <algorithm>

namespace tilelab {

Json grid_to_json(const TileGrid& grid) {
  Json cells = Json::array();
  for (const auto& cell : grid.entries()) cells.push_back(cell ? Json(*cell) : Json(nullptr));
  Json out;
  out["n"] = grid.n();
  out["cells"] = std::move(cells);
  return out;
}

TileGrid grid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("cells")) {
    throw InvalidGrid(InvalidGrid::Reason::BadShape, "grid JSON needs \"n\" and \"cells\"");
  }
  const Json& cells = j.at("cells");
  if (!j.at("n").is_number_integer() || !cells.is_array()) {
    throw InvalidGrid(InvalidGrid::Reason::BadShape, "grid JSON needs an integer n and a cell array");
  }
  std::vector<Cell> entries;
  for (const auto& cell : cells) {
    if (cell.is_null()) {
      entries.emplace_back(std::nullopt);
    } else if (cell.is_number_integer()) {
      entries.emplace_back(cell.get<int>());
    } else {
      throw InvalidGrid(InvalidGrid::Reason::ValueOutOfRange, "grid cells must be integers or null");
    }
  }
  return TileGrid::from_entries(j.at("n").get<int>(), entries);
}

namespace {

bool looks_like_json(std::string_view payload) {
  const auto pos = payload.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && (payload[pos] == '{' || payload[pos] == '[');
}

Json parse_json(std::string_view payload) {
  try {
    return Json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

TileGrid parse_grid_input(std::string_view payload) {
  if (looks_like_json(payload)) {
    try {
      return grid_from_json(parse_json(payload));
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("bad grid JSON: ") + e.what());
    }
  }
  return parse_grid_text(payload);
}

Json poly_to_json(const AnyPoly& p) {
  Json out;
  out["coeffs"] = coefficient_strings(p);
  out["kind"] = std::string(kind_name(p));
  return out;
}

AnyPoly poly_from_json(const Json& j) {
  try {
    std::vector<std::string> coeffs;
    for (const auto& c : j.at("coeffs")) {
      if (c.is_string()) {
        coeffs.push_back(c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeffs.push_back(std::to_string(c.get<long long>()));
      } else {
        throw DomainError("polynomial coefficients must be strings or integers");
      }
    }
    return poly_from_strings(coeffs, j.value("kind", std::string("rational")));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad polynomial JSON: ") + e.what());
  }
}

AnyPoly parse_poly_input(std::string_view payload) {
  if (looks_like_json(payload)) return poly_from_json(parse_json(payload));
  return parse_poly(payload);
}

Json complex_to_json(const Complex& z) {
  if (z.imag() == 0.0) return z.real();
  Json out;
  out["re"] = z.real();
  out["im"] = z.imag();
  return out;
}

Json ledger_to_json(const CostLedger& ledger) {
  Json per = Json::object();
  for (const auto& [name, count] : ledger.per_primitive()) per[name] = count;
  Json out;
  out["decisions"] = ledger.decisions();
  out["per_primitive"] = std::move(per);
  return out;
}

Json bound_report_to_json(const BoundReport& r) {
  auto optional_int = [](const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); };
  Json bounds;
  bounds["thm2"] = r.thm2_bound;
  bounds["thm2_exact"] = r.thm2_bound_exact;
  bounds["thm3"] = r.thm3_bound.str();
  bounds["thm4"] = optional_int(r.thm4_bound);
  bounds["cor1"] = optional_int(r.cor1_bound);
  bounds["lemma1"] = r.lemma1_count.str();

  Json verdicts;
  verdicts["thm2"] = std::string(verdict_name(r.thm2));
  verdicts["thm3"] = std::string(verdict_name(r.thm3));
  verdicts["thm4"] = std::string(verdict_name(r.thm4));
  verdicts["cor1"] = std::string(verdict_name(r.cor1));
  verdicts["lemma1"] = std::string(verdict_name(r.lemma1));

  Json out;
  out["n"] = r.n;
  out["count"] = r.ground_truth_count;
  out["diameter"] = r.ground_truth_diameter;
  out["lemma1_enumerated"] = r.lemma1_enumerated;
  out["bounds"] = std::move(bounds);
  out["verdicts"] = std::move(verdicts);
  return out;
}

Json root_set_to_json(const RootSet& roots) {
  Json arr = Json::array();
  for (const auto& r : roots.roots) {
    Json item;
    item["value"] = complex_to_json(r.value);
    item["mult"] = r.multiplicity;
    item["residual"] = r.residual;
    arr.push_back(std::move(item));
  }
  return arr;
}

Json pattern_to_json(const MultiplicityPattern& p) {
  Json out;
  out["label"] = p.label();
  out["mults"] = p.mults;
  out["cofactor_degree"] = p.cofactor_degree;
  return out;
}

Json case_outcome_to_json(const CaseOutcome& o) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < o.roots.size(); ++i) {
    Json item;
    item["value"] = complex_to_json(o.roots[i]);
    item["mult"] = o.multiplicities[i];
    roots.push_back(std::move(item));
  }
  Json cofactor = Json::array();
  for (const auto& c : o.cofactor) cofactor.push_back(complex_to_json(c));

  Json trace;
  trace["method"] = o.trace.method;
  trace["iterations"] = o.trace.iterations;
  trace["starts_used"] = o.trace.starts_used;
  trace["converged_starts"] = o.trace.converged_starts;
  trace["constraint_violations"] = o.trace.constraint_violations;
  trace["redispatch"] = o.trace.redispatch ? Json(o.trace.redispatch->label()) : Json(nullptr);

  Json out;
  out["case"] = o.pattern.label();
  out["status"] = std::string(case_status_name(o.status));
  out["roots"] = std::move(roots);
  out["cofactor"] = std::move(cofactor);
  out["residual"] = std::isfinite(o.residual) ? Json(o.residual) : Json(nullptr);
  out["reason"] = o.reason;
  out["trace"] = std::move(trace);
  return out;
}

}  // namespace tilelab
