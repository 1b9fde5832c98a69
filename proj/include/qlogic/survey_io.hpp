#pragma once

// Survey count files and report renderings.
//
// Input CSV:
//
//   # labels: Clinton,Gore        (optional; comment lines only before the header)
//   order,first,second,count
//   AB,1,1,245
//   ... exactly 8 data rows, one per (order, first, second)
//
// `order` is AB or BA, `first`/`second` are the answers in asking order.

#include "qlogic/survey.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace qlogic::survey {

SequentialCountTable parse_counts(std::istream& in);
SequentialCountTable parse_counts_text(const std::string& text);
/// Throws SurveyError(schema) when the file cannot be opened.
SequentialCountTable parse_counts_file(const std::string& path);

std::string counts_to_csv(const SequentialCountTable& t);

/// Full report. `meta` (tool version, tolerance, ...) is embedded verbatim.
nlohmann::json report_to_json(const ReconstructionReport& r, const nlohmann::json& meta = nlohmann::json::object());

/// Grouped-bar data, `series,cell,value`, on common cells (a, b).
std::string plot_data_csv(const ReconstructionReport& r);

/// Human-readable summary.
std::string report_to_text(const ReconstructionReport& r);

/// Self-contained SVG grouped bar chart: sequential probabilities in blue
/// hues, logical joint probabilities in red hues, one group per cell.
std::string render_svg(const ReconstructionReport& r);

}  // namespace qlogic::survey
