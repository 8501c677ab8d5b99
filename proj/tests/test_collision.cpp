#include "qbatt/collision.hpp"

#include "doctest.h"
#include "qbatt/battery.hpp"
#include "qbatt/models.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace qbatt;
using namespace qbatt::testing;

TEST_SUITE("collision") {

TEST_CASE("uncoupled collision is free evolution with no heat or work") {
    const int n = 2, d = 2;
    const HermitianOperator hs = random_hermitian(n);
    const HermitianOperator hb = random_hermitian(d);
    CollisionSpec spec(hs, hb, HermitianOperator(Matrix::Zero(n * d, n * d)), 0.9, 1.0, 1.1);

    const DensityMatrix rho = random_density(n);
    const CollisionResult step = collision_step(spec, rho);

    const Matrix u_s = unitary_from_hamiltonian(hs, 0.9, 1.0).matrix();
    CHECK(max_abs(step.rho_s.matrix() - u_s * rho.matrix() * u_s.adjoint()) < 1e-12);
    CHECK(near(step.report.heat, 0.0, 1e-12));
    CHECK(near(step.report.work, 0.0, 1e-12));
    CHECK(near(step.report.entropy_production, 0.0, 1e-10));
}

TEST_CASE("collision on the equilibrium state produces an all-zero report") {
    const Model m1 = build_1q({.h = 1, .a = 1, .tau = 1, .hbar = 1, .beta = 1});
    const Model m2 = build_2q({.h = 0.6, .j = 1, .jp = 1, .tau = 1, .hbar = 1, .beta = 0.7});
    for (const Model* m : {&m1, &m2}) {
        const CollisionResult step =
            collision_step(m->spec, m->es.equilibrium_state(m->spec.beta()));
        CHECK(near(step.report.delta_e, 0.0, 1e-10));
        CHECK(near(step.report.heat, 0.0, 1e-10));
        CHECK(near(step.report.work, 0.0, 1e-10));
        CHECK(near(step.report.delta_s_vn, 0.0, 1e-10));
        CHECK(near(step.report.entropy_production, 0.0, 1e-10));
    }
}

TEST_CASE("joint state invariance at equilibrium") {
    const Model m = build_1q({.h = 1, .a = 1.3, .tau = 0.8, .hbar = 1, .beta = 1.4});
    const DensityMatrix joint =
        tensor(m.es.equilibrium_state(m.spec.beta()), m.spec.bath_state());
    const CollisionResult step =
        collision_step(m.spec, m.es.equilibrium_state(m.spec.beta()));
    CHECK(max_abs(step.rho_tot.matrix() - joint.matrix()) < 1e-10);
}

TEST_CASE("switching work cross-checked against the stochastic reduction") {
    // ρ_S = ω_β(H_S) through one collision; W must equal Σ w_{nm} T_{m|n} p_n
    // with T from the closed form.
    const ModelParams1Q p{.h = 1, .a = 1, .tau = 1, .hbar = 1, .beta = 1};
    const Model m = build_1q(p);
    const DensityMatrix rho = gibbs_state(m.spec.h_s(), p.beta);
    const CollisionResult step = collision_step(m.spec, rho);

    const StochasticMatrix t = t1q_closed_form(p);
    const double z = 2.0 * std::cosh(0.5 * p.beta * p.h);
    const double p1 = std::exp(0.5 * p.beta * p.h) / z;   // level 1 = |↓⟩
    const double p2 = std::exp(-0.5 * p.beta * p.h) / z;
    // w_{nm} = (E_m - E0_m) - (E_n - E0_n) with E - E0 = (-h, +h)
    const double w_12 = 2.0 * p.h, w_21 = -2.0 * p.h;
    const double w_avg = w_12 * t(1, 0) * p1 + w_21 * t(0, 1) * p2;
    CHECK(near(step.report.work, w_avg, 1e-12));
}

TEST_CASE("validate_equilibrium accepts the bundled models") {
    const Model m1 = build_1q({});
    REQUIRE(m1.es.pi.size() == 2);
    CHECK(m1.es.pi[0] == 1);  // 1-based: π = (2, 1)
    CHECK(m1.es.pi[1] == 0);
    CHECK(near(m1.es.e(0), -0.5, 1e-14));
    CHECK(near(m1.es.e0(0), 0.5, 1e-14));

    const Model m2 = build_2q({});
    REQUIRE(m2.es.pi.size() == 4);  // π = (2, 1, 4, 3)
    CHECK(m2.es.pi[0] == 1);
    CHECK(m2.es.pi[1] == 0);
    CHECK(m2.es.pi[2] == 3);
    CHECK(m2.es.pi[3] == 2);
}

TEST_CASE("validate_equilibrium rejects a non-commuting H_0") {
    // battery coupling with H_0 = +H_S: [H_0 + H_B, V] ≠ 0
    const ModelParams1Q p{};
    const Matrix v = tensor(pauli_plus(), pauli_plus()) + tensor(pauli_minus(), pauli_minus());
    CollisionSpec spec(HermitianOperator(0.5 * pauli_z()), HermitianOperator(0.5 * pauli_z()),
                       HermitianOperator(v), p.tau, p.hbar, p.beta);
    CHECK_THROWS_WITH_AS(validate_equilibrium(spec, HermitianOperator(0.5 * pauli_z())),
                         doctest::Contains("[H_0 + H_B, V]"), std::invalid_argument);

    // H_0 not commuting with H_S
    CHECK_THROWS_WITH_AS(validate_equilibrium(spec, HermitianOperator(pauli_x())),
                         doctest::Contains("[H_0, H_S]"), std::invalid_argument);
}

TEST_CASE("validate_equilibrium rejects degenerate system spectra") {
    const int n = 2, d = 2;
    CollisionSpec spec(HermitianOperator(Matrix::Zero(n, n)), random_hermitian(d),
                       HermitianOperator(Matrix::Zero(n * d, n * d)), 1.0, 1.0, 1.0);
    CHECK_THROWS_WITH_AS(validate_equilibrium(spec, HermitianOperator(Matrix::Zero(n, n))),
                         doctest::Contains("degenerate"), std::invalid_argument);
}

TEST_CASE("first and second law hold on random collisions") {
    for (int rep = 0; rep < 40; ++rep) {
        const CollisionSpec spec = random_spec(2, 2);
        const CollisionResult step = collision_step(spec, random_density(2));
        CHECK(near(step.report.delta_e, step.report.work + step.report.heat, 1e-10));
        CHECK(step.report.entropy_production >= -1e-10);
        CHECK(near(step.report.entropy_production,
                   step.report.delta_s_vn - spec.beta() * step.report.heat, 1e-10));
    }
}

TEST_CASE("thermal maps do no work on any state") {
    const Model m = build_thermal_1q({.h = 1.2, .a = 0.9, .tau = 1.1, .hbar = 1, .beta = 0.8});
    for (int rep = 0; rep < 10; ++rep) {
        const CollisionResult step = collision_step(m.spec, random_density(2));
        CHECK(near(step.report.work, 0.0, 1e-12));
    }
}

TEST_CASE("equilibrium_thermo matches the full bookkeeping") {
    const Model m = build_1q({.h = 1, .a = 0.8, .tau = 1.2, .hbar = 1, .beta = 0.9});

    const DensityMatrix rho = m.es.equilibrium_state(0.3);  // diagonal non-equilibrium state
    const CollisionResult step = collision_step(m.spec, rho);
    const ThermoReport eq = equilibrium_thermo(m.es, m.spec, rho, step.rho_s);

    CHECK(near(eq.delta_e, step.report.delta_e, 1e-9));
    CHECK(near(eq.heat, step.report.heat, 1e-9));
    CHECK(near(eq.work, step.report.work, 1e-9));
    CHECK(near(eq.delta_s_vn, step.report.delta_s_vn, 1e-9));
    CHECK(near(eq.entropy_production, step.report.entropy_production, 1e-9));

    const ThermoReport still = equilibrium_thermo(m.es, m.spec, rho, rho);
    CHECK(near(still.delta_e, 0.0, 1e-14));
    CHECK(near(still.work, 0.0, 1e-14));
    CHECK(near(still.entropy_production, 0.0, 1e-12));
}

TEST_CASE("equilibrium_thermo reproduces the 1Q recharging work") {
    // full recharge ω_β(H_S) → ω_β(-H_S): W = 2h tanh(βh/2)
    const double h = 1.0, beta = 1.0;
    const Model m = build_1q({.h = h, .a = 1, .tau = 1, .hbar = 1, .beta = beta});
    const DensityMatrix passive = gibbs_state(m.spec.h_s(), beta);
    const DensityMatrix charged = m.es.equilibrium_state(beta);
    const ThermoReport r = equilibrium_thermo(m.es, m.spec, passive, charged);
    CHECK(near(r.work, 0.92423431452001952, 1e-14));  // 2 tanh(1/2)
    CHECK(near(r.work, cycle_report(m.es, beta).recharging_work, 1e-14));
}

TEST_CASE("equilibrium_thermo agrees with collision_step on random diagonal states") {
    const Model m = build_2q({.h = 0.5, .j = 0.9, .jp = 1.1, .tau = 0.7, .hbar = 1, .beta = 1.2});
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        RealVector p(4);
        for (int k = 0; k < 4; ++k) p(k) = dist(rng());
        p /= p.sum();
        const DensityMatrix rho = m.es.state_from_populations(p);
        const CollisionResult step = collision_step(m.spec, rho);
        const ThermoReport eq = equilibrium_thermo(m.es, m.spec, rho, step.rho_s);
        CHECK(near(eq.work, step.report.work, 1e-9));
        CHECK(near(eq.heat, step.report.heat, 1e-9));
        CHECK(near(eq.entropy_production, step.report.entropy_production, 1e-9));
    }
}

TEST_CASE("iterate_map converges to the charged state") {
    const Model m = build_1q({.h = 1, .a = 1, .tau = 1, .hbar = 1, .beta = 1});
    const DensityMatrix passive = gibbs_state(m.spec.h_s(), 1.0);

    const IterationResult none = iterate_map(m.spec, passive, 0);
    CHECK(max_abs(none.rho_l.matrix() - passive.matrix()) == 0.0);
    CHECK(near(none.cumulative.work, 0.0, 1e-15));

    // λ₂ = 1 - g ≈ 0.512, so 60 steps push the distance below 1e-8
    const IterationResult run = iterate_map(m.spec, passive, 60);
    CHECK(trace_distance(run.rho_l, m.es.equilibrium_state(1.0)) < 1e-8);
    CHECK(near(run.cumulative.delta_e, run.cumulative.work + run.cumulative.heat, 1e-10));

    // cumulative switching work of the full recharge equals W_R
    CHECK(near(run.cumulative.work, cycle_report(m.es, 1.0).recharging_work, 1e-8));
}

TEST_CASE("relative entropy to equilibrium contracts along the iteration") {
    const Model m = build_1q({.h = 1, .a = 0.7, .tau = 0.9, .hbar = 1, .beta = 1.1});
    const DensityMatrix omega = m.es.equilibrium_state(m.spec.beta());
    DensityMatrix rho = random_density(2);
    double previous = relative_entropy(rho, omega);
    for (int l = 0; l < 10; ++l) {
        rho = collision_step(m.spec, rho).rho_s;
        const double current = relative_entropy(rho, omega);
        CHECK(current <= previous + 1e-12);
        previous = current;
    }
}

}  // TEST_SUITE
