#include "qbatt/models.hpp"

#include <cmath>
#include <stdexcept>

namespace qbatt {

namespace {

void check_1q(const ModelParams1Q& p) {
    if (!(p.h > 0.0)) throw std::invalid_argument("1q model: h must be > 0");
    if (!(p.hbar > 0.0)) throw std::invalid_argument("1q model: hbar must be > 0");
    if (p.tau < 0.0) throw std::invalid_argument("1q model: tau must be >= 0");
}

void check_2q(const ModelParams2Q& p) {
    if (!(2.0 * p.j > p.h && p.h > 0.0)) {
        throw std::invalid_argument("2q model: 2J > h > 0 required, got J = " +
                                    std::to_string(p.j) + ", h = " + std::to_string(p.h));
    }
    if (!(p.hbar > 0.0)) throw std::invalid_argument("2q model: hbar must be > 0");
    if (p.tau < 0.0) throw std::invalid_argument("2q model: tau must be >= 0");
}

Model build_qubit_pair(double h, const Matrix& v_m, const Matrix& h0_m, double tau, double hbar,
                       double beta) {
    const HermitianOperator h_sb(0.5 * h * pauli_z());
    CollisionSpec spec(h_sb, h_sb, HermitianOperator(v_m), tau, hbar, beta);
    EquilibriumStructure es = validate_equilibrium(spec, HermitianOperator(h0_m));
    return Model{std::move(spec), std::move(es)};
}

}  // namespace

Model build_1q(const ModelParams1Q& p) {
    check_1q(p);
    const Matrix v = p.a * (tensor(pauli_plus(), pauli_plus()) +
                            tensor(pauli_minus(), pauli_minus()));
    return build_qubit_pair(p.h, v, -0.5 * p.h * pauli_z(), p.tau, p.hbar, p.beta);
}

Model build_thermal_1q(const ModelParams1Q& p) {
    check_1q(p);
    const Matrix v = p.a * (tensor(pauli_plus(), pauli_minus()) +
                            tensor(pauli_minus(), pauli_plus()));
    return build_qubit_pair(p.h, v, 0.5 * p.h * pauli_z(), p.tau, p.hbar, p.beta);
}

Model build_2q(const ModelParams2Q& p) {
    check_2q(p);
    const Matrix i2 = identity(2);
    const Matrix sz1 = tensor(pauli_z(), i2);
    const Matrix sz2 = tensor(i2, pauli_z());
    const Matrix hs = 0.5 * p.h * (sz1 + sz2) +
                      p.j * (tensor(pauli_x(), pauli_x()) + tensor(pauli_y(), pauli_y()));
    const Matrix h0 = 0.5 * p.h * (sz1 + sz2);

    // Joint factor order (qubit 1, qubit 2, ancilla); V couples qubit 1 and
    // the ancilla.
    const Matrix v = p.jp * (tensor(pauli_x(), tensor(i2, pauli_x())) +
                             tensor(pauli_y(), tensor(i2, pauli_y())));

    CollisionSpec spec(HermitianOperator(hs), HermitianOperator(0.5 * p.h * pauli_z()),
                       HermitianOperator(v), p.tau, p.hbar, p.beta);

    // Analytic eigenbasis pins the level labels: computational order is
    // (↑↑, ↑↓, ↓↑, ↓↓); levels ascend as singlet, ↓↓, ↑↑, triplet.
    const double s = 1.0 / std::sqrt(2.0);
    Matrix basis = Matrix::Zero(4, 4);
    basis(1, 0) = s;
    basis(2, 0) = -s;  // |1⟩ = (|↑↓⟩ - |↓↑⟩)/√2, E = -2J
    basis(3, 1) = 1.0;  // |2⟩ = |↓↓⟩, E = -h
    basis(0, 2) = 1.0;  // |3⟩ = |↑↑⟩, E = h
    basis(1, 3) = s;
    basis(2, 3) = s;  // |4⟩ = (|↑↓⟩ + |↓↑⟩)/√2, E = 2J
    EquilibriumStructure es = validate_equilibrium(spec, HermitianOperator(h0), basis);
    return Model{std::move(spec), std::move(es)};
}

double g_factor(double a, double h, double tau, double hbar) {
    const double s2 = h * h + a * a;
    if (s2 == 0.0) return 0.0;
    const double sn = std::sin(tau * std::sqrt(s2) / hbar);
    return a * a * sn * sn / s2;
}

StochasticMatrix t1q_closed_form(const ModelParams1Q& p) {
    check_1q(p);
    const double g = g_factor(p.a, p.h, p.tau, p.hbar);
    const double ep = std::exp(0.5 * p.beta * p.h);
    const double em = std::exp(-0.5 * p.beta * p.h);
    const double z = ep + em;
    RealMatrix t(2, 2);
    t << 1.0 - ep * g / z, em * g / z,
         ep * g / z, 1.0 - em * g / z;
    return StochasticMatrix(t);
}

StochasticMatrix t_thermal_closed_form(const ModelParams1Q& p) {
    check_1q(p);
    const double sn = std::sin(p.tau * p.a / p.hbar);
    const double g = sn * sn;
    const double ep = std::exp(0.5 * p.beta * p.h);
    const double em = std::exp(-0.5 * p.beta * p.h);
    const double z = ep + em;
    RealMatrix t(2, 2);
    t << 1.0 - em * g / z, ep * g / z,
         em * g / z, 1.0 - ep * g / z;
    return StochasticMatrix(t);
}

PhiPsi phi_psi_2q(const ModelParams2Q& p) {
    const double j2 = p.j * p.j + p.jp * p.jp;
    const double angle = p.tau * std::sqrt(j2) / p.hbar;
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    return PhiPsi{p.j * p.j + p.jp * p.jp * c * c, p.jp * p.jp * sn * sn};
}

StochasticMatrix t2q_closed_form(const ModelParams2Q& p) {
    check_2q(p);
    const auto [phi, psi] = phi_psi_2q(p);
    const double j2 = p.j * p.j + p.jp * p.jp;
    const double norm = j2 * j2;
    const double delta = (phi - psi) * (phi - psi);
    const double e = std::exp(p.beta * p.h);
    const double mix = 2.0 * phi * psi / (1.0 + e);

    RealMatrix t(4, 4);
    t << phi * phi, mix, e * mix, psi * psi,
         e * mix, (e * norm + delta) / (1.0 + e), 0.0, e * mix,
         mix, 0.0, (norm + e * delta) / (1.0 + e), mix,
         psi * psi, mix, e * mix, phi * phi;
    return StochasticMatrix(t / norm);
}

EfficiencyProbs1Q efficiency_probs_1q(double beta_h) {
    const double z2 = std::pow(2.0 * std::cosh(0.5 * beta_h), 2);
    return EfficiencyProbs1Q{2.0 / z2, (std::exp(beta_h) + std::exp(-beta_h)) / z2};
}

EfficiencyProbs2Q efficiency_probs_2q(double beta_h) {
    const double u = std::exp(beta_h) + std::exp(-beta_h);
    const double z0 = 2.0 + 2.0 * std::cosh(beta_h);
    const double z2 = z0 * z0;
    return EfficiencyProbs2Q{3.0 * u / z2, (2.0 + u * u) / z2, 2.0 / z2, u / z2};
}

}  // namespace qbatt
