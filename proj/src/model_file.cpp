#include "qbatt/model_file.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qbatt {

namespace {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawSection {
    std::vector<std::pair<int, std::string>> lines;  // (line number, content)
};

Matrix parse_matrix(const RawSection& sec, const std::string& origin,
                    const std::string& name) {
    if (sec.lines.empty()) {
        throw ParseError(origin + ": section [" + name + "] has no rows");
    }
    std::vector<std::vector<Complex>> rows;
    for (const auto& [lineno, text] : sec.lines) {
        std::istringstream is(text);
        std::vector<Complex> row;
        std::string cell;
        while (is >> cell) {
            const auto comma = cell.find(',');
            if (comma == std::string::npos) {
                fail(origin, lineno, "[" + name + "] entry '" + cell +
                                         "' is not a re,im pair");
            }
            try {
                std::size_t used_re = 0, used_im = 0;
                const std::string re_s = cell.substr(0, comma);
                const std::string im_s = cell.substr(comma + 1);
                const double re = std::stod(re_s, &used_re);
                const double im = std::stod(im_s, &used_im);
                if (used_re != re_s.size() || used_im != im_s.size()) {
                    fail(origin, lineno, "[" + name + "] trailing characters in '" + cell + "'");
                }
                row.emplace_back(re, im);
            } catch (const std::logic_error&) {
                fail(origin, lineno, "[" + name + "] cannot parse entry '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            fail(origin, lineno, "[" + name + "] row has " + std::to_string(row.size()) +
                                     " entries, expected " +
                                     std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != rows.front().size()) {
        throw ParseError(origin + ": [" + name + "] is " + std::to_string(rows.size()) + "x" +
                         std::to_string(rows.front().size()) + ", expected square");
    }
    Matrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return m;
}

HermitianOperator hermitian_or_fail(const Matrix& m, const std::string& origin,
                                    const std::string& name) {
    // Name the worst entry pair before delegating to the type check.
    double worst = 0.0;
    int wi = 0, wj = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
            if (dev > worst) {
                worst = dev;
                wi = static_cast<int>(i);
                wj = static_cast<int>(j);
            }
        }
    if (worst > tol().hermiticity) {
        throw ParseError(origin + ": [" + name + "] is not Hermitian, entries (" +
                         std::to_string(wi + 1) + "," + std::to_string(wj + 1) + ") and (" +
                         std::to_string(wj + 1) + "," + std::to_string(wi + 1) +
                         ") differ by " + std::to_string(worst));
    }
    return HermitianOperator(m);
}

}  // namespace

Model load_custom_model(std::istream& in, const std::string& origin) {
    std::map<std::string, RawSection> sections;
    std::map<std::string, std::pair<int, double>> params;

    std::string current;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail(origin, lineno, "unterminated section header '" + t + "'");
            current = t.substr(1, t.size() - 2);
            if (current != "H_S" && current != "H_B" && current != "V" && current != "H_0" &&
                current != "params") {
                fail(origin, lineno, "unknown section [" + current + "]");
            }
            if (sections.count(current) || (current == "params" && !params.empty())) {
                fail(origin, lineno, "duplicate section [" + current + "]");
            }
            if (current != "params") sections[current];
            continue;
        }
        if (current.empty()) fail(origin, lineno, "content before any section header");
        if (current == "params") {
            const auto eq = t.find('=');
            if (eq == std::string::npos) fail(origin, lineno, "expected 'name = value'");
            const std::string key = trim(t.substr(0, eq));
            const std::string val = trim(t.substr(eq + 1));
            if (key != "beta" && key != "tau" && key != "hbar") {
                fail(origin, lineno, "unknown parameter '" + key + "'");
            }
            try {
                std::size_t used = 0;
                const double x = std::stod(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
                params[key] = {lineno, x};
            } catch (const std::logic_error&) {
                fail(origin, lineno, "cannot parse value '" + val + "' for '" + key + "'");
            }
        } else {
            sections[current].lines.emplace_back(lineno, t);
        }
    }

    for (const char* name : {"H_S", "H_B", "V", "H_0"}) {
        if (!sections.count(name)) {
            throw ParseError(origin + ": missing section [" + std::string(name) + "]");
        }
    }
    for (const char* name : {"beta", "tau", "hbar"}) {
        if (!params.count(name)) {
            throw ParseError(origin + ": missing parameter '" + std::string(name) +
                             "' in [params]");
        }
    }

    const HermitianOperator h_s =
        hermitian_or_fail(parse_matrix(sections["H_S"], origin, "H_S"), origin, "H_S");
    const HermitianOperator h_b =
        hermitian_or_fail(parse_matrix(sections["H_B"], origin, "H_B"), origin, "H_B");
    const HermitianOperator v =
        hermitian_or_fail(parse_matrix(sections["V"], origin, "V"), origin, "V");
    const HermitianOperator h_0 =
        hermitian_or_fail(parse_matrix(sections["H_0"], origin, "H_0"), origin, "H_0");

    if (v.dim() != h_s.dim() * h_b.dim()) {
        throw ParseError(origin + ": [V] has dim " + std::to_string(v.dim()) +
                         ", expected dim(H_S)*dim(H_B) = " +
                         std::to_string(h_s.dim() * h_b.dim()));
    }
    if (h_0.dim() != h_s.dim()) {
        throw ParseError(origin + ": [H_0] has dim " + std::to_string(h_0.dim()) +
                         ", expected dim(H_S) = " + std::to_string(h_s.dim()));
    }

    CollisionSpec spec(h_s, h_b, v, params["tau"].second, params["hbar"].second,
                       params["beta"].second);
    EquilibriumStructure es = validate_equilibrium(spec, h_0);
    return Model{std::move(spec), std::move(es)};
}

Model load_custom_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_custom_model: cannot open '" + path + "'");
    return load_custom_model(in, path);
}

}  // namespace qbatt
