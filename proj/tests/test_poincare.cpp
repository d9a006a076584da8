#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "trajlab/poincare.hpp"
#include "trajlab/scenarios.hpp"

using namespace trajlab;

TEST_CASE("translation composes over subintervals (autonomous flow)") {
    ProblemSpec p = scenario("avg_autonomous");
    State s0 = zero_state(p);
    s0.u(0) = 0.4;
    State whole = translate(p, s0, 0.75);
    State parts = translate(p, translate(p, s0, 0.5), 0.25);
    State d = whole;
    d.u -= parts.u;
    d.v -= parts.v;
    CHECK(state_norm(p, d) < 1e-7);
}

TEST_CASE("forced linear heat orbit matches the closed form") {
    // u_t = -u + cos(2 pi t) on mode 1: periodic solution c(t) = Re(e^{2 pi i t}/(1 + 2 pi i))
    Nonlinearity nl;
    nl.period = 1.0;
    nl.scalar_rule = [](double t, double x, double) {
        return std::cos(2.0 * M_PI * t) * std::sqrt(2.0 / M_PI) * std::sin(x);
    };
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 2);
    p.nonlinearity = nl;
    p.steps_per_period = 2048;
    PeriodicOrbit orbit = solve_periodic(p, zero_state(p), 1e-12);
    const std::complex<double> c0 = 1.0 / std::complex<double>(1.0, 2.0 * M_PI);
    CHECK(orbit.initial.u(0) == doctest::Approx(c0.real()).epsilon(1e-6));
    CHECK(std::abs(orbit.initial.u(1)) < 1e-10);
}

TEST_CASE("monodromy of a linear heat problem is the diagonal semigroup") {
    ProblemSpec p = scenario("linear_heat");
    PeriodicOrbit orbit;
    orbit.initial = zero_state(p);
    orbit.period = p.period();
    Eigen::MatrixXd M = monodromy(p, orbit);
    for (int k = 1; k <= p.basis.modes; ++k) {
        const double expected = std::exp(-p.basis.eigenvalue(k));
        CHECK(M(k - 1, k - 1) == doctest::Approx(expected).epsilon(1e-6));
    }
    CHECK(index_from_monodromy(M) == 1);
}

TEST_CASE("index flips with an unstable multiplier") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2, 2);
    M(0, 0) = 1.5;  // one multiplier outside the unit circle
    M(1, 1) = 0.5;
    CHECK(index_from_monodromy(M) == -1);
}

TEST_CASE("near-unit multipliers are refused") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2, 2);
    M(1, 1) = 0.3;
    CHECK_THROWS_AS(index_from_monodromy(M), NonHyperbolic);
}

TEST_CASE("picard and newton find the same orbit on a contracting scenario") {
    ProblemSpec p = scenario("cone");
    PeriodicOrbit a = find_periodic_picard(p, zero_state(p), 1e-10);
    PeriodicOrbit b = find_periodic_newton(p, zero_state(p), 1e-10);
    CHECK((flatten(a.initial) - flatten(b.initial)).norm() < 1e-8);
    CHECK(a.residual <= 1e-10);
    CHECK(b.residual <= 1e-10);
}

TEST_CASE("solver failure carries the best residual") {
    // expanding map: heat with strong positive feedback defeats Picard
    Nonlinearity nl;
    nl.period = 1.0;
    nl.time_independent = true;
    nl.lipschitz_bound = 3.0;
    nl.scalar_rule = [](double, double, double s) { return 3.0 * s + 1.0; };
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 2);
    p.nonlinearity = nl;
    State guess = zero_state(p);
    guess.u(0) = 1.0;
    CHECK_THROWS_AS(find_periodic_picard(p, guess, 1e-10, 30), SolverFailure);
}
