#pragma once

// Matrix JSON: {"dim": d, "re": [[...], ...], "im": [[...], ...]}, row-major.
// QuasiProbTable CSV: header `a,b,value`, rows in order (1,1), (1,0), (0,1),
// (0,0), values printed with 17 significant digits.

#include "qlogic/hilbert.hpp"

#include <json.hpp>

#include <string>

namespace qlogic::hilbert {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Throws std::invalid_argument on schema violations (missing keys, ragged
/// rows, dim disagreeing with the arrays).
ComplexMatrix matrix_from_json(const nlohmann::json& j);

std::string quasi_prob_to_csv(const QuasiProbTable& t);
QuasiProbTable quasi_prob_from_csv(const std::string& text);

}  // namespace qlogic::hilbert
