// Shared generators and independent mini-oracles for the unit tests. The
// oracles here (naive Kronecker, index-loop partial trace, diagonal
// structures built through a zero-coupling spec) never call the code paths
// they are used to check.

#pragma once

#include "qbatt/collision.hpp"
#include "qbatt/operator_core.hpp"
#include "qbatt/trajectory.hpp"

#include <cmath>
#include <random>

namespace qbatt::testing {

inline bool near(double a, double b, double atol) { return std::abs(a - b) <= atol; }

// Worst probability mismatch between two distributions, atom values matched
// through the merge tolerance.
inline double distribution_distance(const DiscreteDistribution& a,
                                    const DiscreteDistribution& b) {
    double d = std::abs(a.inf_prob() - b.inf_prob());
    for (const auto& atom : a.atoms()) d = std::max(d, std::abs(atom.prob - b.prob_at(atom.value)));
    for (const auto& atom : b.atoms()) d = std::max(d, std::abs(atom.prob - a.prob_at(atom.value)));
    return d;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(987654321u);
    return gen;
}

inline Matrix random_matrix(int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng()), dist(rng()));
    return m;
}

inline HermitianOperator random_hermitian(int n, double scale = 1.0) {
    const Matrix g = random_matrix(n);
    return HermitianOperator(0.5 * scale * (g + g.adjoint()));
}

// Full-rank random state: Wishart normalized plus a white floor.
inline DensityMatrix random_density(int n) {
    const Matrix g = random_matrix(n);
    Matrix w = g * g.adjoint();
    w += 0.05 * Matrix::Identity(n, n);
    w /= w.trace().real();
    return DensityMatrix(0.5 * (w + w.adjoint()));
}

inline CollisionSpec random_spec(int n, int d) {
    std::uniform_real_distribution<double> tau_dist(0.2, 2.0);
    std::uniform_real_distribution<double> beta_dist(0.1, 2.0);
    return CollisionSpec(random_hermitian(n), random_hermitian(d), random_hermitian(n * d),
                         tau_dist(rng()), 1.0, beta_dist(rng()));
}

inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Tr over the second factor by explicit index contraction.
inline Matrix naive_trace_out_second(const Matrix& rho, int n, int d) {
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k) out(i, j) += rho(i * d + k, j * d + k);
    return out;
}

// Tr over the first factor.
inline Matrix naive_trace_out_first(const Matrix& rho, int n, int d) {
    Matrix out = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            for (int i = 0; i < n; ++i) out(k, l) += rho(i * d + k, i * d + l);
    return out;
}

// Equilibrium structure with prescribed commuting spectra, built through a
// zero-coupling collision spec (V = 0 commutes with everything).
struct DiagModel {
    CollisionSpec spec;
    EquilibriumStructure es;
};

inline DiagModel make_diag_structure(const RealVector& e, const RealVector& e0, double beta) {
    const int n = static_cast<int>(e.size());
    Matrix hs = Matrix::Zero(n, n);
    Matrix h0 = Matrix::Zero(n, n);
    hs.diagonal() = e.cast<Complex>();
    h0.diagonal() = e0.cast<Complex>();
    CollisionSpec spec(HermitianOperator(hs), HermitianOperator(Matrix::Zero(1, 1)),
                       HermitianOperator(Matrix::Zero(n, n)), 1.0, 1.0, beta);
    EquilibriumStructure es =
        validate_equilibrium(spec, HermitianOperator(h0), Matrix::Identity(n, n));
    return DiagModel{std::move(spec), std::move(es)};
}

// Strictly ascending random spectrum with gaps bounded away from degeneracy.
inline RealVector random_ascending_spectrum(int n, double span = 2.0) {
    std::uniform_real_distribution<double> gap(0.05, span / n);
    std::uniform_real_distribution<double> start(-1.0, 0.0);
    RealVector e(n);
    double x = start(rng());
    for (int k = 0; k < n; ++k) {
        e(k) = x;
        x += gap(rng());
    }
    return e;
}

inline RealVector random_levels(int n, double lo = -1.5, double hi = 1.5) {
    std::uniform_real_distribution<double> dist(lo, hi);
    RealVector e(n);
    for (int k = 0; k < n; ++k) e(k) = dist(rng());
    return e;
}

}  // namespace qbatt::testing
