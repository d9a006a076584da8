#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trajlab/problems.hpp"

using namespace trajlab;

namespace {

ProblemSpec heat_problem(int N, Nonlinearity nl) {
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, N);
    p.nonlinearity = std::move(nl);
    return p;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    Vec nodes, weights;
    gauss_legendre(5, 2.0, nodes, weights);
    // degree up to 2n-1 = 9 on [0, 2]
    for (int d = 0; d <= 9; ++d) {
        double acc = 0.0;
        for (int i = 0; i < nodes.size(); ++i) acc += weights(i) * std::pow(nodes(i), d);
        CHECK(acc == doctest::Approx(std::pow(2.0, d + 1) / (d + 1)).epsilon(1e-12));
    }
}

TEST_CASE("identity nonlinearity reproduces the coefficients") {
    Nonlinearity nl;
    nl.scalar_rule = [](double, double, double s) { return s; };
    nl.period = 1.0;
    nl.time_independent = true;
    ProblemSpec p = heat_problem(5, nl);
    Vec u(5);
    u << 0.4, -0.1, 0.2, 0.0, -0.3;
    State inc = nemytskii(p, 0.0, State::first_order(u));
    CHECK((inc.u - u).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("averaging strips an oscillatory factor") {
    // f = (1 + sin(2 pi t)) h(s) averages to h(s)
    auto h = [](double s) { return 0.4 * std::sin(s); };
    Nonlinearity osc;
    osc.period = 1.0;
    osc.scalar_rule = [h](double t, double, double s) {
        return (1.0 + std::sin(2.0 * M_PI * t)) * h(s);
    };
    Nonlinearity plain;
    plain.period = 1.0;
    plain.time_independent = true;
    plain.scalar_rule = [h](double, double, double s) { return h(s); };

    ProblemSpec posc = heat_problem(4, osc);
    ProblemSpec pplain = heat_problem(4, plain);
    Vec u(4);
    u << 0.7, -0.5, 0.3, 0.1;
    State a = averaged_nonlinearity(posc, State::first_order(u));
    State b = nemytskii(pplain, 0.0, State::first_order(u));
    CHECK((a.u - b.u).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("lambda compression evaluates the rule at fast time") {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.scalar_rule = [](double t, double, double) { return std::cos(2.0 * M_PI * t); };
    ProblemSpec p = heat_problem(3, nl);
    p.lambda = 0.25;
    State z = State::first_order(Vec::Zero(3));
    State fast = nemytskii(p, 0.1, z);  // rule sees t/lambda = 0.4
    p.lambda = 1.0;
    State slow = nemytskii(p, 0.4, z);
    CHECK((fast.u - slow.u).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("wave variants put the nonlinearity in the velocity slot with a minus sign") {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.time_independent = true;
    nl.scalar_rule = [](double, double, double) { return 1.0; };
    ProblemSpec p = heat_problem(3, nl);
    State heat_inc = nemytskii(p, 0.0, State::first_order(Vec::Zero(3)));

    p.variant = Variant::damped_wave;
    State wave_inc = nemytskii(p, 0.0, State::second_order(Vec::Zero(3), Vec::Zero(3)));
    CHECK(wave_inc.u.lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((wave_inc.v + heat_inc.u).lpNorm<Eigen::Infinity>() < 1e-14);

    p.variant = Variant::resonant_wave;
    p.kstar = 1;
    p.epsilon = 0.25;
    State res_inc = nemytskii(p, 0.0, State::second_order(Vec::Zero(3), Vec::Zero(3)));
    CHECK((res_inc.v + 0.25 * heat_inc.u).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("linear blocks carry the per-variant structure") {
    ProblemSpec p = heat_problem(3, zero_nonlinearity(1.0));
    CHECK(linear_block(p, 2).scalar == doctest::Approx(-4.0));

    p.variant = Variant::resonant_wave;
    p.kstar = 2;
    p.beta = 0.7;
    LinearBlock blk = linear_block(p, 1);
    CHECK(blk.mat(1, 0) == doctest::Approx(3.0));  // -(mu_1 - mu_2) = 3
    CHECK(blk.mat(1, 1) == doctest::Approx(-0.7));
    CHECK(linear_block(p, 2).mat(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("beam increment matches a hand-computed stiffness coefficient") {
    ProblemSpec p;
    p.variant = Variant::beam;
    p.basis = build_basis(BoundaryKind::hinged_beam, M_PI, 2);
    p.nonlinearity = zero_nonlinearity(1.0);
    p.a = 2.0;
    p.b = -1.5;
    p.sigma_coef = 0.5;
    Vec u(2), v(2);
    u << 0.6, 0.0;
    v << 0.2, 0.0;
    // lambda_1 = 1: |u|_{1/4}^2 = sqrt(1)*0.36, A^{1/2}u = u, pairing = 0.12
    const double coef = 2.0 * 0.36 - 1.5 + 0.5 * 0.12;
    State inc = nemytskii(p, 0.0, State::second_order(u, v));
    CHECK(inc.v(0) == doctest::Approx(-coef * 0.6).epsilon(1e-12));
    CHECK(inc.v(1) == doctest::Approx(0.0));
}

TEST_CASE("cone guard accepts nonnegative boundary data and flags violations") {
    Nonlinearity good;
    good.period = 1.0;
    good.scalar_rule = [](double t, double, double s) {
        return 0.5 * s + 1.0 + std::cos(2.0 * M_PI * t);
    };
    ProblemSpec p = heat_problem(3, good);
    p.variant = Variant::constrained_heat;
    Vec u(3);
    u << 0.5, 0.0, 0.0;
    ConeReport rep = cone_guard(p, State::first_order(u));
    CHECK(rep.tangency_ok);
    CHECK(rep.min_grid_value > 0.0);

    Nonlinearity bad = good;
    bad.scalar_rule = [](double, double, double) { return -1.0; };
    ProblemSpec pb = heat_problem(3, bad);
    pb.variant = Variant::constrained_heat;
    CHECK_FALSE(cone_guard(pb, State::first_order(u)).tangency_ok);
}

TEST_CASE("flatten and unflatten round trip") {
    ProblemSpec p = heat_problem(4, zero_nonlinearity(1.0));
    p.variant = Variant::damped_wave;
    Vec u(4), v(4);
    u << 1, 2, 3, 4;
    v << -1, -2, -3, -4;
    State s = State::second_order(u, v);
    State back = unflatten(p, flatten(s));
    CHECK((back.u - u).norm() == 0.0);
    CHECK((back.v - v).norm() == 0.0);
}
