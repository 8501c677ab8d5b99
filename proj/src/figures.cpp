#include "qbatt/figures.hpp"

#include "qbatt/csv.hpp"
#include "qbatt/models.hpp"
#include "qbatt/trajectory.hpp"

#include <stdexcept>
#include <string>

namespace qbatt {

namespace {

void check_grid(const SweepGrid& g) {
    if (g.points < 1) throw std::invalid_argument("SweepGrid: need at least one point");
    if (g.points > 1 && !(g.to > g.from)) {
        throw std::invalid_argument("SweepGrid: need to > from");
    }
}

std::vector<std::pair<std::string, std::string>> grid_meta(const char* var,
                                                           const SweepGrid& g) {
    return {{"sweep", var},
            {"from", format_number(g.from)},
            {"to", format_number(g.to)},
            {"points", std::to_string(g.points)}};
}

// The stationary table depends on the map only through βh; unit h with
// β = βh keeps the emitters free of redundant parameters.
TrajectoryTable stationary_1q(double beta_h) {
    const Model m = build_1q({.h = 1.0, .a = 1.0, .tau = 1.0, .hbar = 1.0, .beta = beta_h});
    return stationary_table(m.es, beta_h);
}

TrajectoryTable stationary_2q(double beta_h) {
    const Model m = build_2q({.h = 0.6, .j = 1.0, .jp = 1.0, .tau = 1.0, .hbar = 1.0,
                              .beta = beta_h / 0.6});
    return stationary_table(m.es, beta_h / 0.6);
}

}  // namespace

double SweepGrid::at(int k) const {
    if (points == 1) return from;
    return from + (to - from) * static_cast<double>(k) / (points - 1);
}

void write_fig1a_csv(std::ostream& out, const SweepGrid& grid) {
    check_grid(grid);
    write_csv_metadata(out, grid_meta("beta_h", grid));
    out << "beta_h,p_inf,p_half\n";
    for (int k = 0; k < grid.points; ++k) {
        const double bh = grid.at(k);
        const EfficiencyProbs1Q p = efficiency_probs_1q(bh);
        write_csv_row(out, {bh, p.p_inf, p.p_half});
    }
}

void write_fig1b_csv(std::ostream& out, const SweepGrid& grid) {
    check_grid(grid);
    write_csv_metadata(out, grid_meta("beta_h", grid));
    out << "beta_h,p_1_1,p_1_2,p_2_1,p_2_2\n";
    for (int k = 0; k < grid.points; ++k) {
        const double bh = grid.at(k);
        const TrajectoryTable t = stationary_1q(bh);
        write_csv_row(out, {bh, t(0, 0), t(0, 1), t(1, 0), t(1, 1)});
    }
}

void write_fig2a_csv(std::ostream& out, const SweepGrid& grid) {
    check_grid(grid);
    write_csv_metadata(out, grid_meta("beta_h", grid));
    out << "beta_h,p_inf,p_eta,p_minus_eta,p_half_eta\n";
    for (int k = 0; k < grid.points; ++k) {
        const double bh = grid.at(k);
        const EfficiencyProbs2Q p = efficiency_probs_2q(bh);
        write_csv_row(out, {bh, p.p_inf, p.p_eta, p.p_minus_eta, p.p_half_eta});
    }
}

void write_fig2b_csv(std::ostream& out, const SweepGrid& grid) {
    check_grid(grid);
    write_csv_metadata(out, grid_meta("beta_h", grid));
    out << "beta_h";
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) out << ",p_" << n << "_" << m;
    out << "\n";
    for (int k = 0; k < grid.points; ++k) {
        const double bh = grid.at(k);
        const TrajectoryTable t = stationary_2q(bh);
        std::vector<double> row{bh};
        for (int n = 0; n < 4; ++n)
            for (int m = 0; m < 4; ++m) row.push_back(t(n, m));
        write_csv_row(out, row);
    }
}

void write_fig3_csv(std::ostream& out, const SweepGrid& grid, int steps) {
    check_grid(grid);
    if (steps < 0) throw std::invalid_argument("write_fig3_csv: steps must be >= 0");
    auto meta = grid_meta("x", grid);
    meta.emplace_back("L", std::to_string(steps));
    meta.emplace_back("family", "beta = tau = hbar = 1, J = Jp = x, h = 0.6x");
    write_csv_metadata(out, meta);

    out << "x";
    for (int i = 0; i < 5; ++i) out << ",A" << i;
    for (int i = 0; i < 5; ++i) out << ",B" << i;
    for (int i = 0; i < 5; ++i) out << ",A" << i << "_inf";
    out << "\n";

    for (int k = 0; k < grid.points; ++k) {
        const double x = grid.at(k);
        const ModelParams2Q p{.h = 0.6 * x, .j = x, .jp = x, .tau = 1.0, .hbar = 1.0,
                              .beta = 1.0};
        const Model m = build_2q(p);
        const StochasticMatrix t = transition_matrix(m.spec, m.es);
        const TrajectoryTable finite =
            trajectory_table(t, m.es.passive_populations(p.beta), steps);
        const WorkHeatCoefficients2Q c = heat_work_coefficients_2q(finite);
        const WorkHeatCoefficients2Q c_inf =
            heat_work_coefficients_2q(stationary_table(m.es, p.beta));

        std::vector<double> row{x};
        for (double v : c.a) row.push_back(v);
        for (double v : c.b) row.push_back(v);
        for (double v : c_inf.a) row.push_back(v);
        write_csv_row(out, row);
    }
}

}  // namespace qbatt
