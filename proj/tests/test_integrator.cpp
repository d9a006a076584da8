#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trajlab/integrator.hpp"
#include "trajlab/scenarios.hpp"

using namespace trajlab;

namespace {

// scaling-and-squaring series exponential, independent of the library's
// eigenvalue-based route
Eigen::Matrix2d expm_oracle(const Eigen::Matrix2d& B) {
    int squarings = 0;
    double norm = B.cwiseAbs().maxCoeff();
    Eigen::Matrix2d A = B;
    while (norm > 0.25) {
        A /= 2.0;
        norm /= 2.0;
        ++squarings;
    }
    Eigen::Matrix2d term = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * A / k;
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// phi1(B) = B^{-1}(e^B - I) via the series sum_k B^k/(k+1)! with squaring
// replaced by plain quadrature: phi1(B) = int_0^1 e^{sB} ds by Gauss rule
Eigen::Matrix2d phi1_oracle(const Eigen::Matrix2d& B) {
    Vec nodes, weights;
    gauss_legendre(24, 1.0, nodes, weights);
    Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
    for (int i = 0; i < nodes.size(); ++i)
        acc += weights(i) * expm_oracle((nodes(i) * B).eval());
    return acc;
}

}  // namespace

TEST_CASE("block matrix functions match series/quadrature oracles") {
    std::vector<Eigen::Matrix2d> cases;
    Eigen::Matrix2d B;
    B << 0.0, 1.0, -4.0, -1.0;  // complex pair
    cases.push_back(B);
    B << 0.0, 1.0, -0.25, -1.0;  // nearly double root
    cases.push_back(B);
    B << 0.0, 1.0, 3.0, -1.0;  // real split spectrum
    cases.push_back(B);
    B << 0.0, 1.0, -1e-6, -1e-5;  // near zero
    cases.push_back(B);
    for (const auto& M : cases) {
        Eigen::Matrix2d E, P;
        block_functions(M, E, P);
        CHECK((E - expm_oracle(M)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((P - phi1_oracle(M)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("second order convergence on a smooth nonlinear scenario") {
    ProblemSpec p = scenario("thm71");
    State s0 = zero_state(p);
    s0.u(0) = 0.3;
    s0.v(0) = 0.1;
    auto endpoint = [&](int steps) { return integrate(p, s0, 0.0, 1.0, steps, steps).back(); };
    State a = endpoint(32), b = endpoint(64), c = endpoint(128);
    State d1 = a, d2 = b;
    d1.u -= b.u;
    d1.v -= b.v;
    d2.u -= c.u;
    d2.v -= c.v;
    const double order = std::log2(state_norm(p, d1) / state_norm(p, d2));
    CHECK(order > 1.8);
    CHECK(order < 2.4);
}

TEST_CASE("time dependent damping is honored") {
    // compare against a heavily resolved run of the same problem
    ProblemSpec p;
    p.variant = Variant::damped_wave;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 2);
    p.nonlinearity = zero_nonlinearity(1.0);
    p.beta_of_t = [](double t) { return 1.0 + 0.5 * std::sin(2.0 * M_PI * t); };
    State s0 = zero_state(p);
    s0.u(0) = 1.0;
    State coarse = integrate(p, s0, 0.0, 1.0, 512, 512).back();
    State fine = integrate(p, s0, 0.0, 1.0, 8192, 8192).back();
    State d = coarse;
    d.u -= fine.u;
    d.v -= fine.v;
    CHECK(state_norm(p, d) < 1e-6);
    // and the run must differ from constant damping
    ProblemSpec pc = p;
    pc.beta_of_t.reset();
    pc.beta = 1.0;
    State cst = integrate(pc, s0, 0.0, 1.0, 8192, 8192).back();
    State dd = fine;
    dd.u -= cst.u;
    CHECK(dd.u.norm() > 1e-4);
}

TEST_CASE("blow-up raises IntegrationError with the failure time") {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.time_independent = true;
    nl.scalar_rule = [](double, double, double s) { return s * s * s; };
    ProblemSpec p;
    p.variant = Variant::heat;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 1);
    p.nonlinearity = nl;
    State s0 = State::first_order(Vec::Constant(1, 5.0));
    CHECK_THROWS_AS(integrate(p, s0, 0.0, 10.0, 2000, 2000), IntegrationError);
}

TEST_CASE("trajectory recording respects the stride") {
    ProblemSpec p = scenario("linear_heat");
    State s0 = zero_state(p);
    s0.u(0) = 1.0;
    Trajectory tr = integrate(p, s0, 0.0, 1.0, 100, 10);
    CHECK(tr.states.size() == 11);
    CHECK(tr.times.front() == doctest::Approx(0.0));
    CHECK(tr.times.back() == doctest::Approx(1.0));
}
