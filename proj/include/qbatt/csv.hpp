// csv.hpp — deterministic CSV/JSON formatting shared by the figure emitters
// and the CLI. Numbers are printed with 12 significant digits so identical
// configurations produce byte-identical output.

#pragma once

#include "qbatt/trajectory.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qbatt {

inline constexpr const char* kVersion = "0.1.0";

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);

// "# key = value" metadata lines plus the tool/version banner.
void write_csv_metadata(std::ostream& out,
                        const std::vector<std::pair<std::string, std::string>>& params);

void write_csv_row(std::ostream& out, const std::vector<double>& values);

// Distribution rows "value,prob"; the infinite atom prints as literal "inf".
void write_distribution_csv(std::ostream& out, const DiscreteDistribution& dist);

}  // namespace qbatt
