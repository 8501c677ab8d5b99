#include "qbatt/csv.hpp"

#include <cstdio>

namespace qbatt {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_csv_metadata(std::ostream& out,
                        const std::vector<std::pair<std::string, std::string>>& params) {
    out << "# qbatt " << kVersion << "\n";
    for (const auto& [key, value] : params) out << "# " << key << " = " << value << "\n";
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ",";
        out << format_number(values[i]);
    }
    out << "\n";
}

void write_distribution_csv(std::ostream& out, const DiscreteDistribution& dist) {
    out << "value,prob\n";
    for (const auto& atom : dist.atoms()) {
        out << format_number(atom.value) << "," << format_number(atom.prob) << "\n";
    }
    if (dist.inf_prob() > 0.0) out << "inf," << format_number(dist.inf_prob()) << "\n";
}

}  // namespace qbatt
