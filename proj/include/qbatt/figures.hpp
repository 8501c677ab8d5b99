// figures.hpp — CSV emitters for the bundled figure data: efficiency
// probabilities and stationary trajectory probabilities versus βh for both
// batteries, and the finite-L work/heat coefficients along the x = J = J'
// family.

#pragma once

#include <ostream>

namespace qbatt {

struct SweepGrid {
    double from;
    double to;
    int points;

    double at(int k) const;
};

// (βh, P_∞, P_{1/2}) for the single-qubit battery.
void write_fig1a_csv(std::ostream& out, const SweepGrid& beta_h);

// (βh, P_{1→1}, P_{1→2}, P_{2→1}, P_{2→2}) stationary probabilities, 1Q.
void write_fig1b_csv(std::ostream& out, const SweepGrid& beta_h);

// (βh, P_∞, P_{1-h/2J}, P_{-(1-h/2J)}, P_{(1/2)(1-h/2J)}) for the two-qubit
// battery.
void write_fig2a_csv(std::ostream& out, const SweepGrid& beta_h);

// (βh, all sixteen P_{n→m}) stationary probabilities, 2Q.
void write_fig2b_csv(std::ostream& out, const SweepGrid& beta_h);

// (x, A_i^(L), B_i^(L), A_i^(∞)) for i = 0..4 at β = τ = ħ = 1, J = J' = x,
// h = 0.6x; the finite-L table starts from the passive state.
void write_fig3_csv(std::ostream& out, const SweepGrid& x, int steps);

}  // namespace qbatt
