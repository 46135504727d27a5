#pragma once

// JSON forms of the library's data. Complex numbers are [re, im] pairs.
//
//   signal        {"L": int, "n": int, "data": [[[re, im] x n] x L]}
//   coefficients  {"a": int, "b": int, "L": int, "c": [[[re, im] x M] x N]}
//   weight        {"L": int, "kind": "constant|polynomial|custom",
//                  "s": real?, "value": real?, "values": [real]?,
//                  "submultiplicative": bool?}
//   shift op      {"L": int?, "n": int?,
//                  "terms": [{"x": int, "symbol": [[[[re, im] x n] x n] x L]}]}
//
// Parsing throws FormatError on any schema violation.

#include <string>

#include <json.hpp>

#include "gabor_super/amalgam.hpp"
#include "gabor_super/core.hpp"
#include "gabor_super/duality.hpp"
#include "gabor_super/gabor.hpp"
#include "gabor_super/shiftalg.hpp"
#include "gabor_super/walnut.hpp"

namespace gabor_super::json_io {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const Eigen::Ref<const HMatrix>& m);
HMatrix matrix_from_json(const json& j, int dim);

json signal_to_json(const VectorSignal& f);
VectorSignal signal_from_json(const json& j);

json coefficients_to_json(const GaborCoefficients& c);
GaborCoefficients coefficients_from_json(const json& j);

json weight_to_json(const Weight& w);
WeightSpec weight_spec_from_json(const json& j);
/// Builds the weight; "L" must match `length` when present.
Weight weight_from_json(const json& j, int length);

json correlations_to_json(const CorrelationFamily& G);
json janssen_to_json(const JanssenTable& table);

json shift_operator_to_json(const ShiftOperator& A);
ShiftOperator shift_operator_from_json(const json& j);

json frame_bounds_to_json(const FrameBounds& fb);

/// Reads and parses a JSON file; IoError for unreadable paths, FormatError
/// for parse failures.
json read_file(const std::string& path);

/// Writes `text` to `path`, or to stdout when `path` is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace gabor_super::json_io
