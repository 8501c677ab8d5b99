#include "qbatt/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbatt {

namespace {

Matrix total_hamiltonian(const HermitianOperator& h_s, const HermitianOperator& h_b,
                         const HermitianOperator& v) {
    if (v.dim() != h_s.dim() * h_b.dim()) {
        throw std::invalid_argument(
            "CollisionSpec: V must act on the joint space, expected dim " +
            std::to_string(h_s.dim() * h_b.dim()) + ", got " + std::to_string(v.dim()));
    }
    return tensor(h_s.matrix(), identity(h_b.dim())) +
           tensor(identity(h_s.dim()), h_b.matrix()) + v.matrix();
}

void check_report(const ThermoReport& r, const char* who) {
    if (std::abs(r.delta_e - r.work - r.heat) > tol().first_law) {
        throw std::runtime_error(std::string(who) + ": first law violated, |ΔE - W - Q| = " +
                                 std::to_string(std::abs(r.delta_e - r.work - r.heat)));
    }
}

void check_entropy_identity(const ThermoReport& r, double beta, const char* who) {
    const double dev = std::abs(r.entropy_production - (r.delta_s_vn - beta * r.heat));
    if (dev > tol().first_law) {
        throw std::runtime_error(std::string(who) + ": Σ ≠ ΔS_vN - βQ, deviation " +
                                 std::to_string(dev));
    }
}

RealVector shifted_boltzmann(const RealVector& e0, double beta) {
    RealVector x = -beta * e0;
    const double shift = x.maxCoeff();
    RealVector p = (x.array() - shift).exp();
    p /= p.sum();
    return p;
}

}  // namespace

CollisionSpec::CollisionSpec(HermitianOperator h_s, HermitianOperator h_b, HermitianOperator v,
                             double tau, double hbar, double beta)
    : h_s_(std::move(h_s)),
      h_b_(std::move(h_b)),
      v_(std::move(v)),
      tau_(tau),
      hbar_(hbar),
      beta_(beta),
      u_(unitary_from_hamiltonian(HermitianOperator(total_hamiltonian(h_s_, h_b_, v_)), tau,
                                  hbar)),
      omega_b_(gibbs_state(h_b_, beta)) {}

RealVector EquilibriumStructure::equilibrium_populations(double beta) const {
    return shifted_boltzmann(e0, beta);
}

RealVector EquilibriumStructure::passive_populations(double beta) const {
    const RealVector p = equilibrium_populations(beta);
    RealVector out(dim());
    for (int n = 0; n < dim(); ++n) out(n) = p(pi[n]);
    return out;
}

DensityMatrix EquilibriumStructure::state_from_populations(const RealVector& p) const {
    if (p.size() != e.size()) {
        throw std::invalid_argument("state_from_populations: population size mismatch");
    }
    return DensityMatrix(basis * p.cast<Complex>().asDiagonal() * basis.adjoint());
}

DensityMatrix EquilibriumStructure::equilibrium_state(double beta) const {
    return state_from_populations(equilibrium_populations(beta));
}

CollisionResult collision_step(const CollisionSpec& spec, const DensityMatrix& rho_s) {
    if (rho_s.dim() != spec.system_dim()) {
        throw std::invalid_argument("collision_step: state dim " + std::to_string(rho_s.dim()) +
                                    " does not match system dim " +
                                    std::to_string(spec.system_dim()));
    }
    const int n = spec.system_dim();
    const int d = spec.bath_dim();
    const Matrix& u = spec.unitary().matrix();

    const DensityMatrix rho_tot_in = tensor(rho_s, spec.bath_state());
    const DensityMatrix rho_tot(u * rho_tot_in.matrix() * u.adjoint());
    const DensityMatrix rho_s_next = partial_trace(rho_tot, {n, d}, {0});
    const DensityMatrix rho_b_next = partial_trace(rho_tot, {n, d}, {1});

    ThermoReport r;
    r.delta_e = expectation(spec.h_s().matrix(), rho_s_next.matrix() - rho_s.matrix());
    r.heat = expectation(spec.h_b().matrix(),
                         spec.bath_state().matrix() - rho_b_next.matrix());
    const Matrix h_free = tensor(spec.h_s().matrix(), identity(d)) +
                          tensor(identity(n), spec.h_b().matrix());
    r.work = expectation(h_free, rho_tot.matrix() - rho_tot_in.matrix());
    r.delta_s_vn = von_neumann_entropy(rho_s_next) - von_neumann_entropy(rho_s);
    r.entropy_production = relative_entropy(rho_tot, tensor(rho_s_next, spec.bath_state()));

    check_report(r, "collision_step");
    check_entropy_identity(r, spec.beta(), "collision_step");
    if (r.entropy_production < tol().entropy_floor) {
        throw std::runtime_error("collision_step: entropy production " +
                                 std::to_string(r.entropy_production) + " below floor");
    }
    return CollisionResult{rho_s_next, rho_tot, r};
}

EquilibriumStructure validate_equilibrium(const CollisionSpec& spec,
                                          const HermitianOperator& h_0) {
    const EigenSystem es = herm_eig(spec.h_s());
    return validate_equilibrium(spec, h_0, es.vectors);
}

EquilibriumStructure validate_equilibrium(const CollisionSpec& spec,
                                          const HermitianOperator& h_0, const Matrix& basis) {
    const int n = spec.system_dim();
    if (h_0.dim() != n) {
        throw std::invalid_argument("validate_equilibrium: H_0 dim " + std::to_string(h_0.dim()) +
                                    " does not match system dim " + std::to_string(n));
    }

    const Matrix& hs = spec.h_s().matrix();
    const Matrix& h0 = h_0.matrix();
    const double c1 = max_abs(h0 * hs - hs * h0);
    if (c1 > tol().commutator) {
        throw std::invalid_argument("validate_equilibrium: [H_0, H_S] ≠ 0, max entry " +
                                    std::to_string(c1));
    }
    const Matrix h0b = tensor(h0, identity(spec.bath_dim())) +
                       tensor(identity(n), spec.h_b().matrix());
    const Matrix& v = spec.v().matrix();
    const double c2 = max_abs(h0b * v - v * h0b);
    if (c2 > tol().commutator) {
        throw std::invalid_argument("validate_equilibrium: [H_0 + H_B, V] ≠ 0, max entry " +
                                    std::to_string(c2));
    }

    if (basis.rows() != n || basis.cols() != n) {
        throw std::invalid_argument("validate_equilibrium: basis must be " + std::to_string(n) +
                                    "x" + std::to_string(n));
    }
    if (max_abs(basis * basis.adjoint() - identity(n)) > tol().orthonormal) {
        throw std::invalid_argument("validate_equilibrium: basis is not orthonormal");
    }

    const Matrix hs_d = basis.adjoint() * hs * basis;
    const Matrix h0_d = basis.adjoint() * h0 * basis;
    for (const auto* m : {&hs_d, &h0_d}) {
        Matrix off = *m;
        off.diagonal().setZero();
        if (max_abs(off) > tol().orthonormal) {
            throw std::invalid_argument(
                "validate_equilibrium: basis does not diagonalize H_S and H_0, max "
                "off-diagonal " +
                std::to_string(max_abs(off)));
        }
    }

    EquilibriumStructure out{h_0, hs_d.diagonal().real(), h0_d.diagonal().real(), basis, {}};
    for (int k = 0; k + 1 < n; ++k) {
        const double gap = out.e(k + 1) - out.e(k);
        if (gap < -tol().orthonormal) {
            throw std::invalid_argument("validate_equilibrium: basis levels not in ascending "
                                        "H_S order");
        }
        if (gap < tol().degeneracy_gap) {
            throw std::invalid_argument(
                "validate_equilibrium: H_S spectrum is degenerate (gap " + std::to_string(gap) +
                " between levels " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                "); the two-point measurement basis would be ambiguous");
        }
    }

    // pi orders E0 ascending; stable sort breaks E0 ties by ascending E, which
    // the level indices already encode.
    out.pi.resize(n);
    std::iota(out.pi.begin(), out.pi.end(), 0);
    std::stable_sort(out.pi.begin(), out.pi.end(),
                     [&](int a, int b) { return out.e0(a) < out.e0(b); });
    return out;
}

ThermoReport equilibrium_thermo(const EquilibriumStructure& es, const CollisionSpec& spec,
                                const DensityMatrix& rho_s, const DensityMatrix& rho_s_next) {
    if (rho_s.dim() != es.dim() || rho_s_next.dim() != es.dim()) {
        throw std::invalid_argument("equilibrium_thermo: state dimension mismatch");
    }
    const Matrix delta = rho_s_next.matrix() - rho_s.matrix();
    const Matrix& hs = spec.h_s().matrix();
    const Matrix& h0 = es.h_0.matrix();
    const DensityMatrix omega = es.equilibrium_state(spec.beta());

    ThermoReport r;
    r.delta_e = expectation(hs, delta);
    r.heat = expectation(h0, delta);
    r.work = expectation(hs - h0, delta);
    r.delta_s_vn = von_neumann_entropy(rho_s_next) - von_neumann_entropy(rho_s);
    r.entropy_production = relative_entropy(rho_s, omega) - relative_entropy(rho_s_next, omega);

    check_report(r, "equilibrium_thermo");
    check_entropy_identity(r, spec.beta(), "equilibrium_thermo");
    return r;
}

IterationResult iterate_map(const CollisionSpec& spec, const DensityMatrix& rho_s, int steps) {
    if (steps < 0) throw std::invalid_argument("iterate_map: step count must be >= 0");

    DensityMatrix rho = rho_s;
    ThermoReport total;
    for (int k = 0; k < steps; ++k) {
        const CollisionResult step = collision_step(spec, rho);
        total.work += step.report.work;
        total.heat += step.report.heat;
        rho = step.rho_s;
    }
    total.delta_e = expectation(spec.h_s().matrix(), rho.matrix() - rho_s.matrix());
    total.delta_s_vn = von_neumann_entropy(rho) - von_neumann_entropy(rho_s);
    total.entropy_production = total.delta_s_vn - spec.beta() * total.heat;
    check_report(total, "iterate_map");
    return IterationResult{rho, total};
}

}  // namespace qbatt
