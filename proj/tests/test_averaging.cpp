#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "trajlab/averaging.hpp"
#include "trajlab/scenarios.hpp"

using namespace trajlab;

TEST_CASE("time independent nonlinearity gives a strictly zero gap") {
    ProblemSpec p = scenario("avg_autonomous");
    State s0 = zero_state(p);
    s0.u(0) = 0.5;
    CHECK(averaging_error(p, s0, 0.25, 1.0, 64) == 0.0);
}

TEST_CASE("single mode oscillatory forcing matches the scalar closed form") {
    // c' = -c + sin(2 pi t / lambda), averaged: c' = -c; same initial value
    Nonlinearity nl;
    nl.period = 1.0;
    nl.scalar_rule = [](double t, double x, double) {
        return std::sin(2.0 * M_PI * t) * std::sqrt(2.0 / M_PI) * std::sin(x);
    };
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 1);
    p.nonlinearity = nl;
    const double lambda = 0.125, c0 = 0.7;
    State s0 = State::first_order(Vec::Constant(1, c0));
    const double measured = averaging_error(p, s0, lambda, lambda, 65536);

    // exact gap at t = lambda (one stroboscopic step): particular response of
    // c' = -c + sin(w t) with w = 2 pi / lambda, zero at t = 0
    const double w = 2.0 * M_PI / lambda;
    const std::complex<double> gamma = 1.0 / std::complex<double>(1.0, w);  // response to e^{iwt}
    auto particular = [&](double t) {
        return (gamma * std::exp(std::complex<double>(0.0, w * t))).imag();
    };
    const double exact = std::abs(particular(lambda) - particular(0.0) * std::exp(-lambda));
    CHECK(measured == doctest::Approx(exact).epsilon(1e-6));
    CHECK(measured > 1e-5);  // sine phase: the gap is genuinely first order
}

TEST_CASE("gap is first order in lambda for a sine phase") {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.scalar_rule = [](double t, double, double s) {
        return (1.0 + std::sin(2.0 * M_PI * t)) * 0.4 * std::sin(s);
    };
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 4);
    p.nonlinearity = nl;
    State s0 = zero_state(p);
    s0.u(0) = 0.5;
    const double e1 = averaging_error(p, s0, std::pow(2.0, -4), 1.0, 512);
    const double e2 = averaging_error(p, s0, std::pow(2.0, -5), 1.0, 512);
    CHECK(e2 < e1);
    CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("averaged problem flag survives and branching is trivial without forcing") {
    ProblemSpec p = scenario("avg_autonomous");
    ProblemSpec ap = averaged_problem(p);
    CHECK(ap.averaged);

    // time independent: every orbit is the equilibrium itself
    auto seeds = find_averaged_equilibria(p, Box::cube(6, 0.0, 1.5));
    REQUIRE(!seeds.empty());
    BranchPoint bp = branch_orbits(p, seeds.front(), {0.5, 0.25}, 1e-10);
    REQUIRE(bp.orbits.size() == 2);
    for (const auto& rec : bp.orbits) CHECK(rec.distance < 1e-7);
}

TEST_CASE("beam equilibria match the closed form") {
    ProblemSpec beam = scenario("beam_thm73");
    beam.forcing.reset();
    auto seeds = find_averaged_equilibria(beam, Box::cube(4, 0.0, 2.0));
    REQUIRE(seeds.size() == 3);
    int zero_count = 0, buckled_count = 0;
    for (const auto& s : seeds) {
        const double norm = flatten(s.equilibrium).norm();
        if (norm < 1e-8)
            ++zero_count;
        else if (std::abs(std::abs(s.equilibrium.u(0)) - std::sqrt(1.5)) < 1e-7)
            ++buckled_count;
    }
    CHECK(zero_count == 1);
    CHECK(buckled_count == 2);
}

TEST_CASE("branching necessity: a non-equilibrium start does not attract orbits") {
    ProblemSpec forced = scenario("beam_thm73");
    BranchPoint fake;
    fake.equilibrium = zero_state(forced);
    fake.equilibrium.u(0) = 0.6;  // not a zero of A u + F_hat(u)
    BranchPoint bp = branch_orbits(forced, fake, dyadic_schedule(1, 5), 1e-10);
    REQUIRE(!bp.orbits.empty());
    CHECK(bp.orbits.back().distance > 1e-9 * 10.0);
}

TEST_CASE("continuation reaches lambda one on the trivial problem") {
    ProblemSpec p = scenario("linear_heat");
    PeriodicOrbit seed;
    seed.initial = zero_state(p);
    seed.period = 0.5;
    ContinuationResult res = continue_to_one(p, seed, 0.5, 10.0, 1e-10);
    REQUIRE(res.orbit);
    CHECK(res.orbit->residual <= 1e-10);
    CHECK(state_norm(p, res.orbit->initial) < 1e-10);
}
