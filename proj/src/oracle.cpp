#include "qbatt/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbatt {

namespace {

constexpr long long kCompositeCap = 256;

// Energy-ordered eigenbasis; the oracle keeps its own copy of the
// diagonalization instead of reusing an EquilibriumStructure.
struct LocalBasis {
    RealVector energies;
    Matrix vectors;
};

LocalBasis energy_basis(const HermitianOperator& h) {
    const EigenSystem es = herm_eig(h);
    return LocalBasis{es.values, es.vectors};
}

RealVector boltzmann_weights(const RealVector& e, double beta) {
    RealVector x = -beta * e;
    const double shift = x.maxCoeff();
    RealVector p = (x.array() - shift).exp();
    p /= p.sum();
    return p;
}

}  // namespace

std::vector<CompositeTrajectory> enumerate_trajectories(const CollisionSpec& spec,
                                                        const RealVector& p_ini, int steps) {
    const int n_sys = spec.system_dim();
    const int d = spec.bath_dim();
    if (steps < 0) throw std::invalid_argument("enumerate_trajectories: steps must be >= 0");
    if (p_ini.size() != n_sys) {
        throw std::invalid_argument("enumerate_trajectories: p_ini dimension mismatch");
    }
    if (std::abs(p_ini.sum() - 1.0) > tol().column_sum) {
        throw std::invalid_argument("enumerate_trajectories: p_ini sums to " +
                                    std::to_string(p_ini.sum()));
    }

    long long dim = n_sys;
    for (int k = 0; k < steps; ++k) {
        dim *= d;
        if (dim > kCompositeCap) {
            throw std::invalid_argument("enumerate_trajectories: composite dimension " +
                                        std::to_string(n_sys) + "*" + std::to_string(d) + "^" +
                                        std::to_string(steps) + " exceeds the cap of " +
                                        std::to_string(kCompositeCap));
        }
    }

    const LocalBasis sys = energy_basis(spec.h_s());
    const LocalBasis bath = energy_basis(spec.h_b());
    const RealVector bath_w = boltzmann_weights(bath.energies, spec.beta());

    // Collision unitary in the (system ⊗ ancilla) energy product basis.
    const Matrix pair_basis = tensor(sys.vectors, bath.vectors);
    const Matrix u_pair = pair_basis.adjoint() * spec.unitary().matrix() * pair_basis;

    // Composite index (factor order S, B_1, ..., B_L):
    //   x = n d^L + Σ_k i_k d^{L-k}.
    std::vector<long long> ancilla_stride(steps);
    long long s = 1;
    for (int k = steps - 1; k >= 0; --k) {
        ancilla_stride[k] = s;
        s *= d;
    }
    const long long sys_stride = s;

    Matrix total = Matrix::Identity(dim, dim);
    for (int k = 0; k < steps; ++k) {
        Matrix u_k = Matrix::Zero(dim, dim);
        for (long long x = 0; x < dim; ++x) {
            const int n_in = static_cast<int>(x / sys_stride);
            const int i_in = static_cast<int>((x / ancilla_stride[k]) % d);
            const long long rest = x - n_in * sys_stride - i_in * ancilla_stride[k];
            for (int n_out = 0; n_out < n_sys; ++n_out)
                for (int i_out = 0; i_out < d; ++i_out) {
                    const long long y = rest + n_out * sys_stride + i_out * ancilla_stride[k];
                    u_k(y, x) = u_pair(n_out * d + i_out, n_in * d + i_in);
                }
        }
        total = u_k * total;
    }

    std::vector<CompositeTrajectory> out;
    std::vector<int> in_levels(steps), out_levels(steps);
    for (long long x = 0; x < dim; ++x) {
        const int n = static_cast<int>(x / sys_stride);
        double weight = p_ini(n);
        double e_in_bath = 0.0;
        for (int k = 0; k < steps; ++k) {
            in_levels[k] = static_cast<int>((x / ancilla_stride[k]) % d);
            weight *= bath_w(in_levels[k]);
            e_in_bath += bath.energies(in_levels[k]);
        }
        if (weight == 0.0) continue;
        for (long long y = 0; y < dim; ++y) {
            const Complex amp = total(y, x);
            if (std::abs(amp) <= tol().amplitude_prune) continue;
            CompositeTrajectory traj;
            traj.n = n;
            traj.m = static_cast<int>(y / sys_stride);
            traj.in = in_levels;
            traj.out.resize(steps);
            double e_out_bath = 0.0;
            for (int k = 0; k < steps; ++k) {
                traj.out[k] = static_cast<int>((y / ancilla_stride[k]) % d);
                e_out_bath += bath.energies(traj.out[k]);
            }
            traj.prob = std::norm(amp) * weight;
            traj.delta_e = sys.energies(traj.m) - sys.energies(traj.n);
            traj.q = e_in_bath - e_out_bath;
            traj.w = traj.delta_e - traj.q;
            out.push_back(std::move(traj));
        }
    }
    return out;
}

FluctuationDistributions oracle_distributions(const std::vector<CompositeTrajectory>& trajs) {
    std::vector<DiscreteDistribution::Atom> de, dw, dq;
    de.reserve(trajs.size());
    dw.reserve(trajs.size());
    dq.reserve(trajs.size());
    for (const CompositeTrajectory& t : trajs) {
        de.push_back({t.delta_e, t.prob});
        dw.push_back({t.w, t.prob});
        dq.push_back({t.q, t.prob});
    }
    return FluctuationDistributions{DiscreteDistribution(std::move(de), 0.0),
                                    DiscreteDistribution(std::move(dw), 0.0),
                                    DiscreteDistribution(std::move(dq), 0.0)};
}

ReductionReport verify_reduction(const CollisionSpec& spec, const EquilibriumStructure& es,
                                 int steps) {
    const RealVector p_ini = es.passive_populations(spec.beta());
    const auto trajs = enumerate_trajectories(spec, p_ini, steps);

    ReductionReport report;
    RealMatrix marginal = RealMatrix::Zero(es.dim(), es.dim());
    for (const CompositeTrajectory& t : trajs) {
        marginal(t.n, t.m) += t.prob;
        if (t.prob > 1e-12) {
            const double violation = std::abs(t.q - (es.e0(t.m) - es.e0(t.n)));
            if (violation > report.max_q_violation) {
                report.max_q_violation = violation;
                report.worst_n = t.n;
                report.worst_m = t.m;
            }
        }
    }

    const StochasticMatrix t = transition_matrix(spec, es);
    const TrajectoryTable reduced = trajectory_table(t, p_ini, steps);
    report.max_prob_discrepancy = (marginal - reduced.joint()).cwiseAbs().maxCoeff();
    return report;
}

}  // namespace qbatt
