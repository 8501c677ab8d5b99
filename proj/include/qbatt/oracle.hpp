// oracle.hpp — composite-space ground truth: enumerate full two-point
// measurement trajectories of the system plus L ancillas, with probabilities
// from the sequentially applied collision unitaries. Deliberately independent
// of the stochastic-matrix reduction it is used to verify.

#pragma once

#include "qbatt/collision.hpp"
#include "qbatt/trajectory.hpp"

#include <vector>

namespace qbatt {

struct CompositeTrajectory {
    int n = 0;              // initial system level (ascending-energy label)
    int m = 0;              // final system level
    std::vector<int> in;    // ancilla levels before, collision order
    std::vector<int> out;   // ancilla levels after
    double prob = 0.0;
    double delta_e = 0.0;   // E_m - E_n
    double q = 0.0;         // Σ_k (ε_in[k] - ε_out[k])
    double w = 0.0;         // Δe - q
};

// All trajectories with probability above the amplitude-pruning threshold.
// The composite dimension N·d^L is capped at 256.
std::vector<CompositeTrajectory> enumerate_trajectories(const CollisionSpec& spec,
                                                        const RealVector& p_ini, int steps);

FluctuationDistributions oracle_distributions(const std::vector<CompositeTrajectory>& trajs);

struct ReductionReport {
    double max_q_violation = 0.0;      // |q_γ - (E0_m - E0_n)| over the support
    double max_prob_discrepancy = 0.0; // marginal vs (T^L)_{m|n} p_ini(n)
    int worst_n = -1;                  // trajectory endpoints of the worst q violation
    int worst_m = -1;

    double max() const {
        return max_q_violation > max_prob_discrepancy ? max_q_violation
                                                      : max_prob_discrepancy;
    }
};

// Checks the equilibrium-map reduction against the enumeration, starting from
// the passive state: (i) q_γ = E0_m - E0_n on every support trajectory,
// (ii) ancilla-marginalized probabilities equal the stochastic-matrix table.
ReductionReport verify_reduction(const CollisionSpec& spec, const EquilibriumStructure& es,
                                 int steps);

}  // namespace qbatt
