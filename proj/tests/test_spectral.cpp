#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trajlab/spectral.hpp"

using namespace trajlab;

TEST_CASE("eigenvalues match the closed forms") {
    SpectralBasis sine = build_basis(BoundaryKind::dirichlet_sine, M_PI, 6);
    SpectralBasis beam = build_basis(BoundaryKind::hinged_beam, 2.0, 5);
    for (int k = 1; k <= 6; ++k)
        CHECK(sine.eigenvalue(k) == doctest::Approx(k * k).epsilon(1e-14));
    for (int j = 1; j <= 5; ++j)
        CHECK(beam.eigenvalue(j) == doctest::Approx(std::pow(j * M_PI / 2.0, 4)).epsilon(1e-13));
}

TEST_CASE("analyze is a left inverse of synth on the dealiased grid") {
    SpectralBasis basis = build_basis(BoundaryKind::dirichlet_sine, 2.5, 9);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vec c(9);
    for (int i = 0; i < 9; ++i) c(i) = unif(rng);
    for (int G : {9, 19, 41}) {
        Vec back = analyze(basis, synth(basis, c, G));
        CHECK((back - c).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("synth evaluates the sine series pointwise") {
    SpectralBasis basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 4);
    Vec c = Vec::Zero(4);
    c(2) = 1.5;  // 1.5 * phi_3
    const int G = 11;
    Vec nodes = collocation_nodes(basis, G);
    Vec g = synth(basis, c, G);
    for (int m = 0; m < G; ++m)
        CHECK(g(m) ==
              doctest::Approx(1.5 * std::sqrt(2.0 / M_PI) * std::sin(3.0 * nodes(m))).epsilon(1e-13));
}

TEST_CASE("fractional norm against a direct sum oracle") {
    SpectralBasis basis = build_basis(BoundaryKind::hinged_beam, M_PI, 5);
    Vec c(5);
    c << 0.3, -0.2, 0.5, 0.1, -0.4;
    for (double theta : {0.0, 0.25, 0.5, 1.0}) {
        double acc = 0.0;
        for (int k = 1; k <= 5; ++k)
            acc += std::pow(basis.eigenvalue(k), 2.0 * theta) * c(k - 1) * c(k - 1);
        CHECK(frac_norm(basis, c, theta) == doctest::Approx(std::sqrt(acc)).epsilon(1e-13));
    }
}

TEST_CASE("energy norm combines the half norm and the plain norm") {
    SpectralBasis basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
    Vec u(3), v(3);
    u << 1.0, 0.0, 0.0;
    v << 0.0, 2.0, 0.0;
    State s = State::second_order(u, v);
    const double expected = std::sqrt(basis.eigenvalue(1) * 1.0 + 4.0);
    CHECK(energy_norm(basis, s) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("apply_frac_power scales coefficients by eigenvalue powers") {
    SpectralBasis basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 4);
    Vec c(4);
    c << 1.0, 1.0, 1.0, 1.0;
    Vec half = apply_frac_power(basis, c, 0.5);
    for (int k = 1; k <= 4; ++k)
        CHECK(half(k - 1) == doctest::Approx(std::sqrt(basis.eigenvalue(k))).epsilon(1e-14));
}
