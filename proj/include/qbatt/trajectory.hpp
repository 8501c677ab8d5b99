// trajectory.hpp — classical reduction of an equilibrium map: transition
// stochastic matrix, finite-L and stationary trajectory tables, exact discrete
// distributions of energy/work/heat, extraction statistics, the
// fluctuating-efficiency distribution, and detailed-balance/regularity
// diagnostics.

#pragma once

#include "qbatt/collision.hpp"
#include "qbatt/operator_core.hpp"

#include <array>
#include <vector>

namespace qbatt {

// Column-stochastic transition matrix, entry (m, n) = T_{m|n}. Entries are
// clamped to [0, 1]; excursions beyond the probability tolerance or column
// sums off 1 are rejected.
class StochasticMatrix {
public:
    explicit StochasticMatrix(RealMatrix t);

    int dim() const { return static_cast<int>(t_.rows()); }
    const RealMatrix& matrix() const { return t_; }
    double operator()(int m, int n) const { return t_(m, n); }

private:
    RealMatrix t_;
};

// Joint probabilities P(n, m) of the trajectory n → m after L steps, with the
// initial distribution p_ini(n) as the row marginal.
class TrajectoryTable {
public:
    TrajectoryTable(RealMatrix p, RealVector p_ini);

    int dim() const { return static_cast<int>(p_.rows()); }
    const RealMatrix& joint() const { return p_; }
    const RealVector& initial() const { return p_ini_; }
    double operator()(int n, int m) const { return p_(n, m); }

private:
    RealMatrix p_;
    RealVector p_ini_;
};

// Exact discrete distribution: finite atoms sorted by value plus one
// distinguished atom at infinity. Construction merges values closer than the
// relative merge tolerance and drops numerically empty atoms.
class DiscreteDistribution {
public:
    struct Atom {
        double value;
        double prob;
    };

    DiscreteDistribution(std::vector<Atom> raw, double inf_prob);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double inf_prob() const { return inf_prob_; }

    double mean() const;  // over the finite atoms
    double total() const;

    // Probability carried by atoms within the merge tolerance of `value`.
    double prob_at(double value) const;

private:
    std::vector<Atom> atoms_;
    double inf_prob_ = 0.0;
    double scale_ = 0.0;
};

// T_{m|n} = ⟨m|𝓔(|n⟩⟨n|)|m⟩, one collision per basis projector.
StochasticMatrix transition_matrix(const CollisionSpec& spec, const EquilibriumStructure& es);

// P(n, m) = (T^L)_{m|n} p_ini(n).
TrajectoryTable trajectory_table(const StochasticMatrix& t, const RealVector& p_ini, int steps);

// Closed form of the L → ∞ table for the recharging process:
// P(n, m) = e^{-β(E0_{π_n} + E0_m)} / Z0², p_ini = passive populations.
TrajectoryTable stationary_table(const EquilibriumStructure& es, double beta);

struct FluctuationDistributions {
    DiscreteDistribution energy;  // Δe = E_m - E_n
    DiscreteDistribution work;    // w = Δe - q
    DiscreteDistribution heat;    // q = E0_m - E0_n
};

FluctuationDistributions energy_work_heat_distributions(const TrajectoryTable& table,
                                                        const EquilibriumStructure& es);

// The two-qubit battery's work/heat weights A_i, B_i (level labels 1..4 in
// ascending energy order). A_0/B_0 carry the zero-valued atoms including the
// diagonal trajectories, so each family sums to 1. The work and heat averages
// are 2J(A3 - A4) + 4J(A1 - A2) and h(B4 - B3) + 2h(B2 - B1).
struct WorkHeatCoefficients2Q {
    std::array<double, 5> a;
    std::array<double, 5> b;
};

WorkHeatCoefficients2Q heat_work_coefficients_2q(const TrajectoryTable& table);

// Distribution of η_{nm} = (E_{π_n} - E_n) / w_{nm} over the stationary table;
// trajectories with w = 0 feed the infinite atom.
DiscreteDistribution efficiency_distribution(const EquilibriumStructure& es, double beta);

// Extraction statistics: ϖ = E_{π_n} - E_n weighted by e^{-βE0_{π_n}}/Z0.
DiscreteDistribution extraction_statistics(const EquilibriumStructure& es, double beta);

// max |T_{m|n} e^{-βE0_n} - T_{n|m} e^{-βE0_m}|.
double check_detailed_balance(const StochasticMatrix& t, const EquilibriumStructure& es,
                              double beta);

struct RegularityReport {
    bool regular = false;
    double second_eigenvalue_modulus = 0.0;
};

// Regular iff every entry of T^(N²) is strictly positive; the second
// eigenvalue modulus sets the convergence rate of T^L.
RegularityReport is_regular(const StochasticMatrix& t);

}  // namespace qbatt
