#include "qbatt/models.hpp"

#include "doctest.h"
#include "qbatt/figures.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace qbatt;
using namespace qbatt::testing;

TEST_SUITE("models") {

TEST_CASE("1Q spectra and charged state") {
    const double h = 1.3, beta = 0.9;
    const Model m = build_1q({.h = h, .a = 1, .tau = 1, .hbar = 1, .beta = beta});
    CHECK(near(m.es.e(0), -0.5 * h, 1e-14));
    CHECK(near(m.es.e(1), 0.5 * h, 1e-14));
    CHECK(near(m.es.e0(0), 0.5 * h, 1e-14));
    CHECK(near(m.es.e0(1), -0.5 * h, 1e-14));

    // charged populations (e^{βh/2}, e^{-βh/2})/Z on (|↑⟩, |↓⟩) = levels (2, 1)
    const double z = 2.0 * std::cosh(0.5 * beta * h);
    const RealVector p = m.es.equilibrium_populations(beta);
    CHECK(near(p(1), std::exp(0.5 * beta * h) / z, 1e-14));
    CHECK(near(p(0), std::exp(-0.5 * beta * h) / z, 1e-14));

    CHECK_THROWS_AS(build_1q({.h = -1.0, .a = 1, .tau = 1, .hbar = 1, .beta = 1}),
                    std::invalid_argument);
}

TEST_CASE("zero coupling freezes the 1Q map") {
    const ModelParams1Q p{.h = 1, .a = 0.0, .tau = 1, .hbar = 1, .beta = 1};
    const Model m = build_1q(p);
    CHECK((transition_matrix(m.spec, m.es).matrix() - RealMatrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK(g_factor(p.a, p.h, p.tau, p.hbar) == 0.0);
}

TEST_CASE("g factor values") {
    CHECK(near(g_factor(1, 1, 1, 1), 0.48784078203146186, 1e-16));

    // sine zero: τ√(h² + a²)/ħ = π
    const double h = 1.0, a = 0.7;
    const double tau = std::numbers::pi / std::sqrt(h * h + a * a);
    CHECK(near(g_factor(a, h, tau, 1.0), 0.0, 1e-30));
    const ModelParams1Q p{.h = h, .a = a, .tau = tau, .hbar = 1, .beta = 1.2};
    CHECK((t1q_closed_form(p).matrix() - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("infinite-temperature 1Q matrix") {
    const ModelParams1Q p{.h = 1, .a = 1, .tau = 1, .hbar = 1, .beta = 0.0};
    const double g = g_factor(1, 1, 1, 1);
    const StochasticMatrix t = t1q_closed_form(p);
    CHECK(near(t(0, 0), 1.0 - 0.5 * g, 1e-15));
    CHECK(near(t(1, 0), 0.5 * g, 1e-15));
    CHECK(near(t(0, 1), 0.5 * g, 1e-15));
    CHECK(near(t(1, 1), 1.0 - 0.5 * g, 1e-15));
}

TEST_CASE("thermal 1Q map") {
    // τa/ħ = π/2 maximizes the swap
    const double a = 0.8;
    const ModelParams1Q p{.h = 1, .a = a, .tau = 0.5 * std::numbers::pi / a, .hbar = 1,
                          .beta = 1.0};
    const StochasticMatrix t = t_thermal_closed_form(p);
    const double z = 2.0 * std::cosh(0.5);
    CHECK(near(t(1, 0), std::exp(-0.5) / z, 1e-14));  // g = 1
    CHECK(near(t(0, 1), std::exp(0.5) / z, 1e-14));

    const Model m = build_thermal_1q(p);
    CHECK((transition_matrix(m.spec, m.es).matrix() - t.matrix()).cwiseAbs().maxCoeff() <
          1e-10);
    // Gibbs state is invariant
    const CollisionResult step = collision_step(m.spec, gibbs_state(m.spec.h_s(), p.beta));
    CHECK(max_abs(step.rho_s.matrix() - gibbs_state(m.spec.h_s(), p.beta).matrix()) < 1e-12);
}

TEST_CASE("2Q spectra, partition function, and constraints") {
    const double h = 0.6, j = 1.0, beta = 1.1;
    const Model m = build_2q({.h = h, .j = j, .jp = 1, .tau = 1, .hbar = 1, .beta = beta});
    CHECK(near(m.es.e(0), -2 * j, 1e-14));
    CHECK(near(m.es.e(1), -h, 1e-14));
    CHECK(near(m.es.e(2), h, 1e-14));
    CHECK(near(m.es.e(3), 2 * j, 1e-14));
    CHECK(near(m.es.e0(0), 0.0, 1e-14));
    CHECK(near(m.es.e0(1), -h, 1e-14));
    CHECK(near(m.es.e0(2), h, 1e-14));
    CHECK(near(m.es.e0(3), 0.0, 1e-14));

    // Z0 = 2 + 2cosh(βh)
    const RealVector p = m.es.equilibrium_populations(beta);
    CHECK(near(1.0 / p(0), 2.0 + 2.0 * std::cosh(beta * h), 1e-12));

    CHECK_THROWS_WITH_AS(build_2q({.h = 2.0, .j = 0.5, .jp = 1, .tau = 1, .hbar = 1, .beta = 1}),
                         doctest::Contains("2J > h > 0"), std::invalid_argument);
}

TEST_CASE("zero ancilla coupling freezes the 2Q map") {
    const Model m = build_2q({.h = 0.6, .j = 1, .jp = 0.0, .tau = 1, .hbar = 1, .beta = 1});
    CHECK((transition_matrix(m.spec, m.es).matrix() - RealMatrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("phi psi identities") {
    for (double jp : {0.4, 1.0, 2.3}) {
        for (double tau : {0.3, 1.0, 2.9}) {
            const ModelParams2Q p{.h = 0.6, .j = 1.0, .jp = jp, .tau = tau, .hbar = 1.0,
                                  .beta = 1.0};
            const auto [phi, psi] = phi_psi_2q(p);
            CHECK(phi >= 0.0);
            CHECK(psi >= 0.0);
            CHECK(near(phi + psi, p.j * p.j + jp * jp, 1e-12));

            // column sums of Eq-form entries reduce to (Φ + Ψ)² = (J² + J'²)²
            const RealMatrix t = t2q_closed_form(p).matrix();
            for (int c = 0; c < 4; ++c) CHECK(near(t.col(c).sum(), 1.0, 1e-12));
        }
    }
}

TEST_CASE("2Q map loses regularity exactly at the Psi zeros") {
    const double j = 1.0, jp = 1.3;
    const double tau = std::numbers::pi / std::sqrt(j * j + jp * jp);
    const ModelParams2Q p{.h = 0.6, .j = j, .jp = jp, .tau = tau, .hbar = 1, .beta = 1};
    const StochasticMatrix t = t2q_closed_form(p);
    CHECK(near(t(0, 3), 0.0, 1e-25));  // Ψ² block vanishes
    CHECK(near(t(1, 0), 0.0, 1e-14));
    CHECK_FALSE(is_regular(t).regular);
}

TEST_CASE("closed-form efficiency probabilities") {
    const EfficiencyProbs1Q flat = efficiency_probs_1q(0.0);
    CHECK(near(flat.p_inf, 0.5, 1e-15));
    CHECK(near(flat.p_half, 0.5, 1e-15));

    for (double bh : {0.3, 1.0, 2.7}) {
        const EfficiencyProbs1Q p1 = efficiency_probs_1q(bh);
        CHECK(near(p1.p_inf + p1.p_half, 1.0, 1e-15));

        const EfficiencyProbs2Q p2 = efficiency_probs_2q(bh);
        CHECK(near(p2.p_inf + p2.p_eta + p2.p_minus_eta + p2.p_half_eta, 1.0, 1e-15));
        const double z2 = std::pow(2.0 + 2.0 * std::cosh(bh), 2);
        CHECK(near(p2.p_inf, 3.0 * (std::exp(bh) + std::exp(-bh)) / z2, 1e-15));
    }

    const EfficiencyProbs2Q flat2 = efficiency_probs_2q(0.0);
    CHECK(near(flat2.p_inf, 6.0 / 16.0, 1e-15));
    CHECK(near(flat2.p_eta, 6.0 / 16.0, 1e-15));
    CHECK(near(flat2.p_minus_eta, 2.0 / 16.0, 1e-15));
    CHECK(near(flat2.p_half_eta, 2.0 / 16.0, 1e-15));
}

TEST_CASE("closed-form efficiency probabilities match the generic pipeline") {
    for (double bh : {0.4, 1.0, 3.1}) {
        const Model m1 = build_1q({.h = 1.0, .a = 1, .tau = 1, .hbar = 1, .beta = bh});
        const DiscreteDistribution d1 = efficiency_distribution(m1.es, bh);
        const EfficiencyProbs1Q p1 = efficiency_probs_1q(bh);
        CHECK(near(d1.prob_at(0.5), p1.p_half, 1e-12));
        CHECK(near(d1.inf_prob(), p1.p_inf, 1e-12));

        const double h = 0.6;
        const Model m2 = build_2q({.h = h, .j = 1, .jp = 1, .tau = 1, .hbar = 1, .beta = bh / h});
        const DiscreteDistribution d2 = efficiency_distribution(m2.es, bh / h);
        const EfficiencyProbs2Q p2 = efficiency_probs_2q(bh);
        CHECK(near(d2.prob_at(0.7), p2.p_eta, 1e-12));
        CHECK(near(d2.prob_at(-0.7), p2.p_minus_eta, 1e-12));
        CHECK(near(d2.prob_at(0.35), p2.p_half_eta, 1e-12));
        CHECK(near(d2.inf_prob(), p2.p_inf, 1e-12));
    }
}

TEST_CASE("figure emitters produce the documented columns") {
    std::ostringstream fig1a;
    write_fig1a_csv(fig1a, {0.1, 2.0, 5});
    const std::string s1 = fig1a.str();
    CHECK(s1.find("beta_h,p_inf,p_half") != std::string::npos);
    CHECK(s1.find("# qbatt") != std::string::npos);

    std::ostringstream fig2b;
    write_fig2b_csv(fig2b, {0.1, 1.0, 3});
    CHECK(fig2b.str().find("p_4_4") != std::string::npos);

    std::ostringstream fig3;
    write_fig3_csv(fig3, {0.5, 1.5, 4}, 2);
    const std::string s3 = fig3.str();
    CHECK(s3.find("x,A0,A1,A2,A3,A4,B0,B1,B2,B3,B4,A0_inf") != std::string::npos);
    // header + metadata + 4 rows
    CHECK(std::count(s3.begin(), s3.end(), '\n') >= 9);

    CHECK_THROWS_AS(write_fig1a_csv(fig1a, {1.0, 0.5, 3}), std::invalid_argument);
}

TEST_CASE("figure output is deterministic") {
    std::ostringstream one, two;
    write_fig1b_csv(one, {0.2, 3.0, 7});
    write_fig1b_csv(two, {0.2, 3.0, 7});
    CHECK(one.str() == two.str());
}

}  // TEST_SUITE
