#pragma once

#include <iosfwd>
#include <string>

#include "levdun/inference.hpp"

namespace levdun {

std::string to_string(ContrastKind kind);
std::string to_string(Alternative alt);
ContrastKind contrast_kind_from_string(const std::string& s);
Alternative alternative_from_string(const std::string& s);

// JSON document with every numeric field of the report. Infinite interval
// ends are encoded as the strings "inf"/"-inf".
std::string report_to_json(const TestReport& report);

// Aligned text table, 4 significant digits.
void write_report_table(std::ostream& out, const TestReport& report);

// One CSV row per contrast: label,estimate,lower,upper. Full precision,
// infinities as "inf"/"-inf".
void write_ci_csv(std::ostream& out, const TestReport& report);

}  // namespace levdun
