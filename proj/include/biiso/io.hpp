#pragma once

#include <string>

#include <json.hpp>

#include "biiso/bcl.hpp"
#include "biiso/lattice.hpp"
#include "biiso/linalg.hpp"
#include "biiso/symbols.hpp"
#include "biiso/windowed.hpp"

namespace biiso {

using json = nlohmann::json;

/// Malformed input document.
class InputError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kVersion = "0.1.0";

json read_json_file(const std::string& path);

/// Complex numbers are [re, im] pairs; matrices are lists of rows.
json complex_to_json(cd z);
cd complex_from_json(const json& j);
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

/// {dim, entries: [{poly: [[re, im], ...], blaschke: {zeros, constant}}]}, row-major.
json symbol_to_json(const OpSymbol& s);
OpSymbol symbol_from_json(const json& j);

/// {dim, U, P: [0/1 flags], mask?}.
json bcl_to_json(const BCLPair& b);
BCLPair bcl_from_json(const json& j);

/// {core_lo, core_hi, mask, left, right}; tails are "all_in", "all_out" or
/// "periodic:<bits>".
json zset_to_json(const ZSet& a);
ZSet zset_from_json(const json& j);

/// {anchor: {n, i, j}, window_lo, steps: "HVV...", left, right}; tails are
/// "all_H", "all_V" or "periodic:<HV pattern>".
json staircase_to_json(const Staircase& s, long lo, long hi);
Staircase staircase_from_json(const json& j);

/// {fiber_dim, grades: [lo, hi], w0, w1, interior_top?, exact_top?}. Columns
/// of the top grade are inexact unless exact_top is true; rows are exact.
BiIsometry biisometry_from_json(const json& j);
json biisometry_to_json(const BiIsometry& w);

/// {fiber_dim, grades: [lo, hi], v, interior_top?} for a single operator.
WindowedOp operator_from_json(const json& j, Window* interior);

/// Sorted keys, floats with 12 significant digits, two-space indent.
std::string dump_report(const json& j);

}  // namespace biiso
