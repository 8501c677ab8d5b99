// collision.hpp — one repeated-interaction step and its thermodynamic
// bookkeeping: reduced map, energy/heat/work/entropy balance in the general
// and the equilibrium-simplified form, equilibrium-structure validation, and
// map iteration.

#pragma once

#include "qbatt/operator_core.hpp"

#include <vector>

namespace qbatt {

// Physical definition of one collision: system and bath Hamiltonians, the
// interaction V on the joint space, the contact time, ħ, and the bath inverse
// temperature. The joint unitary and the bath Gibbs state are derived once at
// construction.
class CollisionSpec {
public:
    CollisionSpec(HermitianOperator h_s, HermitianOperator h_b, HermitianOperator v,
                  double tau, double hbar, double beta);

    int system_dim() const { return h_s_.dim(); }
    int bath_dim() const { return h_b_.dim(); }
    double tau() const { return tau_; }
    double hbar() const { return hbar_; }
    double beta() const { return beta_; }

    const HermitianOperator& h_s() const { return h_s_; }
    const HermitianOperator& h_b() const { return h_b_; }
    const HermitianOperator& v() const { return v_; }
    const UnitaryOperator& unitary() const { return u_; }
    const DensityMatrix& bath_state() const { return omega_b_; }

private:
    HermitianOperator h_s_;
    HermitianOperator h_b_;
    HermitianOperator v_;
    double tau_;
    double hbar_;
    double beta_;
    UnitaryOperator u_;
    DensityMatrix omega_b_;
};

// Energy balance of one step (or a concatenation): ΔE = W + Q, Σ = ΔS_vN - βQ.
struct ThermoReport {
    double delta_e = 0.0;
    double heat = 0.0;
    double work = 0.0;
    double delta_s_vn = 0.0;
    double entropy_production = 0.0;
};

// Shared eigendata of a commuting pair (H_S, H_0): the ascending H_S spectrum
// E, the H_0 spectrum E0 in the same basis order, the shared eigenbasis, and
// the permutation pi ordering E0 ascending (ties broken by ascending E).
struct EquilibriumStructure {
    HermitianOperator h_0;
    RealVector e;         // H_S eigenvalues, ascending
    RealVector e0;        // H_0 eigenvalues in the same level order
    Matrix basis;         // columns |n⟩, shared eigenvectors
    std::vector<int> pi;  // 0-based: pi[k] = level carrying the k-th smallest E0

    int dim() const { return static_cast<int>(e.size()); }

    RealVector equilibrium_populations(double beta) const;  // e^{-βE0_n}/Z0
    RealVector passive_populations(double beta) const;      // e^{-βE0_{π_n}}/Z0
    DensityMatrix equilibrium_state(double beta) const;     // ω_β(H_0)
    DensityMatrix state_from_populations(const RealVector& p) const;
};

struct CollisionResult {
    DensityMatrix rho_s;    // 𝓔(ρ_S)
    DensityMatrix rho_tot;  // U (ρ_S ⊗ ω_β(H_B)) U†
    ThermoReport report;
};

// One collision with full bookkeeping. Σ comes from the relative entropy of
// the post-collision joint state; the report is checked against the first law
// and Σ = ΔS_vN - βQ before returning.
CollisionResult collision_step(const CollisionSpec& spec, const DensityMatrix& rho_s);

// Accepts H_0 iff [H_0, H_S] and [H_0 ⊗ I + I ⊗ H_B, V] both vanish within
// tolerance. H_S must be non-degenerate; the shared basis is its eigenbasis.
EquilibriumStructure validate_equilibrium(const CollisionSpec& spec,
                                          const HermitianOperator& h_0);

// Same, but with a caller-supplied shared eigenbasis (columns must diagonalize
// H_S with ascending eigenvalues and diagonalize H_0). Lets model constructors
// pin level labels with exact analytic eigenvectors.
EquilibriumStructure validate_equilibrium(const CollisionSpec& spec,
                                          const HermitianOperator& h_0, const Matrix& basis);

// Equilibrium-simplified bookkeeping from the system states alone:
// Q = Tr[H_0 Δρ], W = Tr[(H_S - H_0) Δρ], Σ = D(ρ‖ω) - D(ρ'‖ω).
ThermoReport equilibrium_thermo(const EquilibriumStructure& es, const CollisionSpec& spec,
                                const DensityMatrix& rho_s, const DensityMatrix& rho_s_next);

struct IterationResult {
    DensityMatrix rho_l;
    ThermoReport cumulative;  // W, Q summed per step; ΔE, ΔS_vN endpoint-to-endpoint
};

IterationResult iterate_map(const CollisionSpec& spec, const DensityMatrix& rho_s, int steps);

}  // namespace qbatt
