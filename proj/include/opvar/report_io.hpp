#pragma once

#include <string>
#include <vector>

#include "opvar/sensitivity.hpp"

namespace opvar {

/// Scientific notation with 9 significant digits, '.' decimal separator,
/// locale independent; identical inputs give identical bytes.
std::string csv_number(double v);

/// RFC-4180 field quoting: wraps the value in double quotes when it
/// contains a comma, quote or newline (free-text flag fields may).
std::string csv_field(const std::string& v);

/// analyze-command CSV: header plus one row per report with the columns
/// alpha,var_L,var_S,var_LS,delta_var,approx,error,regime,k,engine,
/// achieved_tol,flag. Fields that were not computed (var_S outside the
/// regimes that need it) or belong to failed rows print the literal NA and
/// the flag column carries the warning.
std::string analyze_csv(const std::vector<SensitivityReport>& reports);

/// Same reports as a JSON array (machine-friendly mirror of the CSV).
std::string analyze_json(const std::vector<SensitivityReport>& reports);

/// Writes content to path via a temp file + rename so partial output never
/// lands under the final name.
void atomic_write(const std::string& path, const std::string& content);

} // namespace opvar
