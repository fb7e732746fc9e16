#pragma once

// JSON forms of grids, polynomials and results. Keys are emitted in a fixed
// order so identical inputs give byte-identical documents.

#include <string_view>

#include <nlohmann/json.hpp>

#include "tilelab/cost.hpp"
#include "tilelab/grid.hpp"
#include "tilelab/poly.hpp"
#include "tilelab/real_roots.hpp"
#include "tilelab/verify.hpp"
#include "tilelab/vieta.hpp"

namespace tilelab {

using Json = nlohmann::ordered_json;

/// {"n": 4, "cells": [1, null, 2, 4, ...]}, row-major, null for the blank.
Json grid_to_json(const TileGrid& grid);
TileGrid grid_from_json(const Json& j);
/// JSON when the payload starts with '{', the text format otherwise.
TileGrid parse_grid_input(std::string_view payload);

/// {"coeffs": ["1/2", ...], "kind": "rational" | "complex"}
Json poly_to_json(const AnyPoly& p);
AnyPoly poly_from_json(const Json& j);
/// JSON object or the comma-separated text format.
AnyPoly parse_poly_input(std::string_view payload);

/// A real number, or {"re": x, "im": y} when the imaginary part is nonzero.
Json complex_to_json(const Complex& z);

Json ledger_to_json(const CostLedger& ledger);
Json bound_report_to_json(const BoundReport& report);
Json root_set_to_json(const RootSet& roots);
Json case_outcome_to_json(const CaseOutcome& outcome);
Json pattern_to_json(const MultiplicityPattern& pattern);

}  // namespace tilelab
