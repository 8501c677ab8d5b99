// battery.hpp — ergotropy, passive state, extraction unitary, and the
// charge/extract cycle efficiency.

#pragma once

#include "qbatt/collision.hpp"
#include "qbatt/operator_core.hpp"

#include <optional>

namespace qbatt {

struct CycleReport {
    double ergotropy = 0.0;
    double recharging_work = 0.0;
    std::optional<double> eta_th;  // empty when the equilibrium is inactive (𝒲 = 0)
};

// 𝒲 = Σ_n (E_{π_n} - E_n) e^{-βE0_{π_n}} / Z0.
double ergotropy_closed_form(const EquilibriumStructure& es, double beta);

// Maximum of Tr[H_S (ρ - uρu†)] over all permutation unitaries. ρ must be
// diagonal in the H_S eigenbasis; dimensions above 8 are rejected.
double ergotropy_brute_force(const DensityMatrix& rho, const HermitianOperator& h_s);

// σ = Σ_n e^{-βE0_{π_n}} / Z0 |n⟩⟨n|, populations non-increasing in energy.
DensityMatrix passive_state(const EquilibriumStructure& es, double beta);

// Permutation unitary u with ⟨i|u|j⟩ = δ_{π_i, j}; maps ω_β(H_0) to σ.
UnitaryOperator extraction_unitary(const EquilibriumStructure& es);

CycleReport cycle_report(const EquilibriumStructure& es, double beta);

}  // namespace qbatt
