// models.hpp — the bundled collision models (single-qubit battery, thermal
// single-qubit map, two-qubit battery) together with their closed-form
// transition matrices and efficiency probabilities, used as analytic ground
// truth for the numerically constructed objects.

#pragma once

#include "qbatt/collision.hpp"
#include "qbatt/trajectory.hpp"

namespace qbatt {

struct ModelParams1Q {
    double h = 1.0;  // level splitting, > 0
    double a = 1.0;  // coupling strength
    double tau = 1.0;
    double hbar = 1.0;
    double beta = 1.0;
};

struct ModelParams2Q {
    double h = 0.6;   // splitting; requires 2J > h > 0
    double j = 1.0;   // intra-battery exchange
    double jp = 1.0;  // battery-ancilla exchange
    double tau = 1.0;
    double hbar = 1.0;
    double beta = 1.0;
};

// A constructed collision model with its validated equilibrium structure.
struct Model {
    CollisionSpec spec;
    EquilibriumStructure es;
};

// Charging qubit battery: H_S = H_B = (h/2)σᶻ, V = a(σ⁺σ⁺ + σ⁻σ⁻), H_0 = -H_S.
Model build_1q(const ModelParams1Q& p);

// Thermal qubit map: V = a(σ⁺σ⁻ + σ⁻σ⁺), H_0 = H_S.
Model build_thermal_1q(const ModelParams1Q& p);

// Two-qubit battery coupled to a qubit ancilla through qubit 1;
// H_0 = (h/2)(σᶻ₁ + σᶻ₂). Factor order of the joint space: (qubit 1, qubit 2,
// ancilla); level labels use the analytic singlet/triplet eigenbasis.
Model build_2q(const ModelParams2Q& p);

// g(a, h) = a² sin²(τ√(h² + a²)/ħ) / (h² + a²).
double g_factor(double a, double h, double tau, double hbar);

StochasticMatrix t1q_closed_form(const ModelParams1Q& p);
StochasticMatrix t_thermal_closed_form(const ModelParams1Q& p);

struct PhiPsi {
    double phi;  // J² + J'² cos²(τ√(J² + J'²)/ħ)
    double psi;  // J'² sin²(τ√(J² + J'²)/ħ)
};

PhiPsi phi_psi_2q(const ModelParams2Q& p);

StochasticMatrix t2q_closed_form(const ModelParams2Q& p);

// Fluctuating-efficiency probabilities of the full-recharge cycle; functions
// of βh alone whenever the transition matrix is regular.
struct EfficiencyProbs1Q {
    double p_inf;   // η = ∞
    double p_half;  // η = 1/2
};

struct EfficiencyProbs2Q {
    double p_inf;        // η = ∞
    double p_eta;        // η = 1 - h/2J
    double p_minus_eta;  // η = -(1 - h/2J)
    double p_half_eta;   // η = (1/2)(1 - h/2J)
};

EfficiencyProbs1Q efficiency_probs_1q(double beta_h);
EfficiencyProbs2Q efficiency_probs_2q(double beta_h);

}  // namespace qbatt
