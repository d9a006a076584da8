#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trajlab/resonance.hpp"
#include "trajlab/scenarios.hpp"

using namespace trajlab;

TEST_CASE("kernel data counts modes below the resonant eigenvalue") {
    for (int kstar : {1, 2, 3}) {
        ProblemSpec p = scenario("resonant_arctan_k1");
        p.kstar = kstar;
        KernelData kd = kernel_data(p);
        CHECK(kd.dim_N == 1);
        CHECK(kd.kernel_modes == std::vector<int>{kstar});
        CHECK(kd.k_minus == kstar - 1);
    }
    ProblemSpec bad = scenario("linear_heat");
    CHECK_THROWS_AS(kernel_data(bad), Error);
}

TEST_CASE("reduced average: zero, oddness and the asymptotic limit") {
    ProblemSpec p = scenario("resonant_arctan_k1");
    CHECK(std::abs(reduced_average(p, Vec::Zero(1))(0)) < 1e-12);

    // the sinusoidal forcing is mean-zero, so F_bar inherits oddness of arctan
    Vec c = Vec::Constant(1, 1.7);
    Vec cm = -c;
    CHECK(reduced_average(p, c)(0) == doctest::Approx(-reduced_average(p, cm)(0)).epsilon(1e-10));

    // c -> +inf: F_bar -> (pi/2) <1, phi_1> = (pi/2) sqrt(2/pi) * 2
    const double limit = 0.5 * M_PI * std::sqrt(2.0 / M_PI) * 2.0;
    CHECK(reduced_average(p, Vec::Constant(1, 1e4))(0) == doctest::Approx(limit).epsilon(1e-2));
}

TEST_CASE("landesman-lazer verdicts and linear scaling of margins") {
    ProblemSpec plus = scenario("resonant_arctan_k1");
    LLVerdict vp = landesman_lazer(plus);
    CHECK(vp.kind == LLKind::LL_plus);
    CHECK(vp.margin > 0.0);

    LLVerdict vm = landesman_lazer(scenario("resonant_neg_arctan_k1"));
    CHECK(vm.kind == LLKind::LL_minus);
    CHECK(vm.margin == doctest::Approx(vp.margin).epsilon(1e-10));

    // scale the limit data by 3: margins scale by 3
    ProblemSpec scaled = plus;
    auto ld = *plus.nonlinearity.limit_data;
    Nonlinearity::LimitData out;
    out.liminf_plus = [ld](double t, double x) { return 3.0 * ld.liminf_plus(t, x); };
    out.limsup_plus = [ld](double t, double x) { return 3.0 * ld.limsup_plus(t, x); };
    out.liminf_minus = [ld](double t, double x) { return 3.0 * ld.liminf_minus(t, x); };
    out.limsup_minus = [ld](double t, double x) { return 3.0 * ld.limsup_minus(t, x); };
    scaled.nonlinearity.limit_data = out;
    LLVerdict vs = landesman_lazer(scaled);
    CHECK(vs.margin == doctest::Approx(3.0 * vp.margin).epsilon(1e-10));

    // mean-zero limits on both sides decide nothing
    ProblemSpec neither = plus;
    Nonlinearity::LimitData flat;
    flat.liminf_plus = flat.limsup_plus = flat.liminf_minus = flat.limsup_minus =
        [](double, double) { return 0.0; };
    neither.nonlinearity.limit_data = flat;
    CHECK(landesman_lazer(neither).kind == LLKind::neither);
}

TEST_CASE("reduced average is lipschitz on sampled pairs") {
    ProblemSpec p = scenario("resonant_arctan_k1");
    const double L = p.nonlinearity.lipschitz_bound;
    for (double a : {-2.0, 0.3, 1.1}) {
        for (double b : {-0.5, 0.8, 2.5}) {
            const double gap = std::abs(reduced_average(p, Vec::Constant(1, a))(0) -
                                        reduced_average(p, Vec::Constant(1, b))(0));
            CHECK(gap <= L * std::abs(a - b) + 1e-10);
        }
    }
}

TEST_CASE("vanishing reduced average on the boundary is rejected") {
    ProblemSpec p = scenario("resonant_arctan_k1");
    p.nonlinearity = zero_nonlinearity(1.0);
    Box U;
    U.lo = Vec::Constant(1, -5.0);
    U.hi = Vec::Constant(1, 5.0);
    CHECK_THROWS_AS(resonance_index(p, U, 10.0, 10.0, 1e-2), Error);
}

TEST_CASE("continuation precondition requires a landesman-lazer verdict") {
    ProblemSpec p = scenario("resonant_arctan_k1");
    Nonlinearity::LimitData flat;
    flat.liminf_plus = flat.limsup_plus = flat.liminf_minus = flat.limsup_minus =
        [](double, double) { return 0.0; };
    p.nonlinearity.limit_data = flat;
    CHECK_THROWS_AS(find_periodic_resonant(p, 100.0, {0.5, 1.0}), Error);
}
