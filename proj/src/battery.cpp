#include "qbatt/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qbatt {

double ergotropy_closed_form(const EquilibriumStructure& es, double beta) {
    const RealVector p = es.passive_populations(beta);
    double w = 0.0;
    for (int n = 0; n < es.dim(); ++n) w += (es.e(es.pi[n]) - es.e(n)) * p(n);
    return w;
}

double ergotropy_brute_force(const DensityMatrix& rho, const HermitianOperator& h_s) {
    if (rho.dim() != h_s.dim()) {
        throw std::invalid_argument("ergotropy_brute_force: dimension mismatch");
    }
    const int n = rho.dim();
    if (n > 8) {
        throw std::invalid_argument("ergotropy_brute_force: dim " + std::to_string(n) +
                                    " exceeds the factorial cap of 8");
    }

    const EigenSystem es = herm_eig(h_s);
    const Matrix rho_d = es.vectors.adjoint() * rho.matrix() * es.vectors;
    Matrix off = rho_d;
    off.diagonal().setZero();
    if (max_abs(off) > tol().orthonormal) {
        throw std::invalid_argument(
            "ergotropy_brute_force: state is not diagonal in the H_S eigenbasis, max "
            "off-diagonal " +
            std::to_string(max_abs(off)));
    }
    const RealVector pop = rho_d.diagonal().real();

    const double e_in = es.values.dot(pop);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        // uρu† with u_{ij} = δ_{π_i, j} carries population π_i to level i.
        double e_out = 0.0;
        for (int i = 0; i < n; ++i) e_out += es.values(i) * pop(perm[i]);
        best = std::max(best, e_in - e_out);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

DensityMatrix passive_state(const EquilibriumStructure& es, double beta) {
    return es.state_from_populations(es.passive_populations(beta));
}

UnitaryOperator extraction_unitary(const EquilibriumStructure& es) {
    const int n = es.dim();
    Matrix perm = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) perm(i, es.pi[i]) = 1.0;
    return UnitaryOperator(es.basis * perm * es.basis.adjoint());
}

CycleReport cycle_report(const EquilibriumStructure& es, double beta) {
    CycleReport r;
    r.ergotropy = ergotropy_closed_form(es, beta);

    const RealVector p_eq = es.equilibrium_populations(beta);
    const RealVector p_pass = es.passive_populations(beta);
    for (int n = 0; n < es.dim(); ++n) {
        r.recharging_work += (es.e(n) - es.e0(n)) * (p_eq(n) - p_pass(n));
    }

    if (r.ergotropy > 0.0) {
        if (r.recharging_work < r.ergotropy - 1e-12) {
            throw std::runtime_error("cycle_report: W_R " + std::to_string(r.recharging_work) +
                                     " below the ergotropy " + std::to_string(r.ergotropy));
        }
        r.eta_th = r.ergotropy / r.recharging_work;
    }
    return r;
}

}  // namespace qbatt
