#include "qbatt/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbatt {

StochasticMatrix::StochasticMatrix(RealMatrix t) : t_(std::move(t)) {
    if (t_.rows() != t_.cols() || t_.rows() == 0) {
        throw std::invalid_argument("StochasticMatrix: matrix must be square and nonempty");
    }
    for (Eigen::Index m = 0; m < t_.rows(); ++m)
        for (Eigen::Index n = 0; n < t_.cols(); ++n) {
            double& x = t_(m, n);
            if (x < -tol().prob_bound || x > 1.0 + tol().prob_bound) {
                throw std::invalid_argument("StochasticMatrix: entry (" + std::to_string(m) +
                                            "," + std::to_string(n) + ") = " +
                                            std::to_string(x) + " outside [0,1]");
            }
            x = std::clamp(x, 0.0, 1.0);
        }
    for (Eigen::Index n = 0; n < t_.cols(); ++n) {
        const double s = t_.col(n).sum();
        if (std::abs(s - 1.0) > tol().column_sum) {
            throw std::invalid_argument("StochasticMatrix: column " + std::to_string(n) +
                                        " sums to " + std::to_string(s));
        }
    }
}

TrajectoryTable::TrajectoryTable(RealMatrix p, RealVector p_ini)
    : p_(std::move(p)), p_ini_(std::move(p_ini)) {
    if (p_.rows() != p_.cols() || p_.rows() != p_ini_.size()) {
        throw std::invalid_argument("TrajectoryTable: inconsistent dimensions");
    }
    if (std::abs(p_.sum() - 1.0) > tol().column_sum) {
        throw std::invalid_argument("TrajectoryTable: total probability " +
                                    std::to_string(p_.sum()));
    }
    for (Eigen::Index n = 0; n < p_.rows(); ++n) {
        if (std::abs(p_.row(n).sum() - p_ini_(n)) > tol().column_sum) {
            throw std::invalid_argument("TrajectoryTable: row " + std::to_string(n) +
                                        " marginal deviates from p_ini");
        }
    }
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> raw, double inf_prob)
    : inf_prob_(inf_prob) {
    if (inf_prob_ < -tol().prob_bound) {
        throw std::invalid_argument("DiscreteDistribution: negative infinite-atom mass");
    }
    inf_prob_ = std::max(inf_prob_, 0.0);

    for (const Atom& a : raw) {
        if (!std::isfinite(a.value)) {
            throw std::invalid_argument("DiscreteDistribution: non-finite atom value");
        }
        if (a.prob < -tol().prob_bound) {
            throw std::invalid_argument("DiscreteDistribution: negative atom probability");
        }
        scale_ = std::max(scale_, std::abs(a.value));
    }

    std::sort(raw.begin(), raw.end(),
              [](const Atom& x, const Atom& y) { return x.value < y.value; });
    const double merge = tol().atom_merge * std::max(scale_, 1e-300);
    for (const Atom& a : raw) {
        if (!atoms_.empty() && a.value - atoms_.back().value <= merge) {
            // Merge into the existing atom at the probability-weighted value.
            Atom& last = atoms_.back();
            const double p = last.prob + std::max(a.prob, 0.0);
            if (p > 0.0) {
                last.value = (last.value * last.prob + a.value * std::max(a.prob, 0.0)) / p;
            }
            last.prob = p;
        } else {
            atoms_.push_back({a.value, std::max(a.prob, 0.0)});
        }
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.prob < 1e-15; });

    const double t = total();
    if (std::abs(t - 1.0) > tol().column_sum) {
        throw std::invalid_argument("DiscreteDistribution: probabilities sum to " +
                                    std::to_string(t));
    }
}

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.value * a.prob;
    return m;
}

double DiscreteDistribution::total() const {
    double t = inf_prob_;
    for (const Atom& a : atoms_) t += a.prob;
    return t;
}

double DiscreteDistribution::prob_at(double value) const {
    const double merge = tol().atom_merge * std::max(scale_, 1e-300);
    double p = 0.0;
    for (const Atom& a : atoms_) {
        if (std::abs(a.value - value) <= merge) p += a.prob;
    }
    return p;
}

StochasticMatrix transition_matrix(const CollisionSpec& spec, const EquilibriumStructure& es) {
    const int n = es.dim();
    if (spec.system_dim() != n) {
        throw std::invalid_argument("transition_matrix: spec/structure dimension mismatch");
    }
    RealMatrix t(n, n);
    for (int col = 0; col < n; ++col) {
        const DensityMatrix projector = projector_state(es.basis.col(col));
        const CollisionResult step = collision_step(spec, projector);
        for (int row = 0; row < n; ++row) {
            const Vector m = es.basis.col(row);
            t(row, col) = (m.adjoint() * step.rho_s.matrix() * m)(0, 0).real();
        }
    }
    return StochasticMatrix(t);
}

TrajectoryTable trajectory_table(const StochasticMatrix& t, const RealVector& p_ini, int steps) {
    if (steps < 0) throw std::invalid_argument("trajectory_table: step count must be >= 0");
    if (p_ini.size() != t.dim()) {
        throw std::invalid_argument("trajectory_table: p_ini dimension mismatch");
    }
    if (std::abs(p_ini.sum() - 1.0) > tol().column_sum) {
        throw std::invalid_argument("trajectory_table: p_ini sums to " +
                                    std::to_string(p_ini.sum()));
    }
    RealMatrix power = RealMatrix::Identity(t.dim(), t.dim());
    for (int k = 0; k < steps; ++k) power = t.matrix() * power;

    RealMatrix joint(t.dim(), t.dim());
    for (int n = 0; n < t.dim(); ++n)
        for (int m = 0; m < t.dim(); ++m) joint(n, m) = power(m, n) * p_ini(n);
    return TrajectoryTable(joint, p_ini);
}

TrajectoryTable stationary_table(const EquilibriumStructure& es, double beta) {
    const RealVector p_pass = es.passive_populations(beta);
    const RealVector p_eq = es.equilibrium_populations(beta);
    const int n = es.dim();
    RealMatrix joint(n, n);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) joint(row, col) = p_pass(row) * p_eq(col);
    return TrajectoryTable(joint, p_pass);
}

FluctuationDistributions energy_work_heat_distributions(const TrajectoryTable& table,
                                                        const EquilibriumStructure& es) {
    if (table.dim() != es.dim()) {
        throw std::invalid_argument(
            "energy_work_heat_distributions: table/structure dimension mismatch");
    }
    std::vector<DiscreteDistribution::Atom> de, dw, dq;
    for (int n = 0; n < es.dim(); ++n)
        for (int m = 0; m < es.dim(); ++m) {
            const double p = table(n, m);
            const double delta_e = es.e(m) - es.e(n);
            const double q = es.e0(m) - es.e0(n);
            // w as Δe - q keeps the per-trajectory first law exact.
            de.push_back({delta_e, p});
            dq.push_back({q, p});
            dw.push_back({delta_e - q, p});
        }
    return FluctuationDistributions{DiscreteDistribution(std::move(de), 0.0),
                                    DiscreteDistribution(std::move(dw), 0.0),
                                    DiscreteDistribution(std::move(dq), 0.0)};
}

WorkHeatCoefficients2Q heat_work_coefficients_2q(const TrajectoryTable& table) {
    if (table.dim() != 4) {
        throw std::invalid_argument("heat_work_coefficients_2q: table dimension " +
                                    std::to_string(table.dim()) + ", expected 4");
    }
    // accept 1-based level labels
    auto p = [&](int n, int m) { return table(n - 1, m - 1); };
    const double diag = p(1, 1) + p(2, 2) + p(3, 3) + p(4, 4);

    WorkHeatCoefficients2Q c{};
    c.a[0] = diag + p(2, 3) + p(3, 2);
    c.a[1] = p(1, 4);
    c.a[2] = p(4, 1);
    c.a[3] = p(1, 2) + p(1, 3) + p(2, 4) + p(3, 4);
    c.a[4] = p(2, 1) + p(3, 1) + p(4, 2) + p(4, 3);

    c.b[0] = diag + p(1, 4) + p(4, 1);
    c.b[1] = p(3, 2);
    c.b[2] = p(2, 3);
    c.b[3] = p(1, 2) + p(3, 1) + p(4, 2) + p(3, 4);
    c.b[4] = p(2, 1) + p(1, 3) + p(2, 4) + p(4, 3);
    return c;
}

DiscreteDistribution efficiency_distribution(const EquilibriumStructure& es, double beta) {
    const TrajectoryTable table = stationary_table(es, beta);
    const double scale = es.e.cwiseAbs().maxCoeff() + es.e0.cwiseAbs().maxCoeff();
    const double zero_work = 1e-12 * std::max(scale, 1e-300);

    std::vector<DiscreteDistribution::Atom> atoms;
    double p_inf = 0.0;
    for (int n = 0; n < es.dim(); ++n) {
        const double extracted = es.e(es.pi[n]) - es.e(n);
        for (int m = 0; m < es.dim(); ++m) {
            const double w = (es.e(m) - es.e0(m)) - (es.e(n) - es.e0(n));
            if (std::abs(w) < zero_work) {
                p_inf += table(n, m);
            } else {
                atoms.push_back({extracted / w, table(n, m)});
            }
        }
    }
    return DiscreteDistribution(std::move(atoms), p_inf);
}

DiscreteDistribution extraction_statistics(const EquilibriumStructure& es, double beta) {
    const RealVector p = es.passive_populations(beta);
    std::vector<DiscreteDistribution::Atom> atoms;
    for (int n = 0; n < es.dim(); ++n) {
        atoms.push_back({es.e(es.pi[n]) - es.e(n), p(n)});
    }
    return DiscreteDistribution(std::move(atoms), 0.0);
}

double check_detailed_balance(const StochasticMatrix& t, const EquilibriumStructure& es,
                              double beta) {
    if (t.dim() != es.dim()) {
        throw std::invalid_argument("check_detailed_balance: dimension mismatch");
    }
    double worst = 0.0;
    for (int n = 0; n < t.dim(); ++n)
        for (int m = 0; m < t.dim(); ++m) {
            const double lhs = t(m, n) * std::exp(-beta * es.e0(n));
            const double rhs = t(n, m) * std::exp(-beta * es.e0(m));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

RegularityReport is_regular(const StochasticMatrix& t) {
    const int n = t.dim();
    RealMatrix power = RealMatrix::Identity(n, n);
    for (int k = 0; k < n * n; ++k) power = t.matrix() * power;
    const bool regular = (power.array() > tol().regularity).all();

    Eigen::EigenSolver<RealMatrix> solver(t.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("is_regular: eigensolver failed");
    }
    std::vector<double> moduli(n);
    for (int k = 0; k < n; ++k) moduli[k] = std::abs(solver.eigenvalues()(k));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    return RegularityReport{regular, n > 1 ? moduli[1] : 0.0};
}

}  // namespace qbatt
