#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "emknot/charges.hpp"
#include "emknot/fieldlines.hpp"
#include "emknot/knotfield.hpp"

namespace emknot {

/// Coefficient document:
///   {"j": "1/2", "ell": 1.0,
///    "coefficients": [{"m": "-1/2", "n": "3/2", "re": 0.1, "im": -0.2}, ...]}
/// or a JSON array of such documents (one per spin). Half-integers are exact
/// fraction strings or JSON integers. Modes not listed are zero. Throws
/// ParseError with a 1-based line for malformed input.
std::vector<ModeCoefficients> parse_coefficients(const std::string& text, const std::string& source = "<input>");
std::vector<ModeCoefficients> load_coefficients(const std::string& path);

/// Inverse of parse_coefficients for one set; nonzero modes only.
std::string coefficients_to_json(const ModeCoefficients& lambda);

std::string report_to_json(const std::vector<std::pair<ModeCoefficients, ChargeReport>>& reports);
/// Columns j,ell,name,value,reference,abs_deviation,rel_deviation,doubling_change.
std::string report_to_csv(const std::vector<std::pair<ModeCoefficients, ChargeReport>>& reports);

/// List of polylines, each with seed, field, closed flag and points [[x,y,z], ...].
std::string polylines_to_json(const std::vector<TraceOutcome>& lines);
/// Concatenated CSV: a "# seed ..." header per line followed by s,x,y,z rows.
std::string polylines_to_csv(const std::vector<TraceOutcome>& lines);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace emknot
