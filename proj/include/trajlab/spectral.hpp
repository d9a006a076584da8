#pragma once

// Sine-mode spectral bases on an interval, coefficient states and the
// fractional-power norm scale they carry.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace trajlab {

using Vec = Eigen::VectorXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Boundary-value problems whose eigenfunctions are sine modes on (0, L):
// the Dirichlet Laplacian and the hinged (simply supported) fourth-order
// beam operator.
enum class BoundaryKind { dirichlet_sine, hinged_beam };

struct SpectralBasis {
    BoundaryKind kind;
    double length = 0.0;
    int modes = 0;
    Vec eigenvalues;  // ascending, eigenvalues[k-1] for mode k

    double eigenvalue(int k) const { return eigenvalues(k - 1); }
};

SpectralBasis build_basis(BoundaryKind kind, double length, int modes);

enum class StateOrder { first, second };

// Coefficient-space point: u alone for first-order problems, the pair
// (u, v) for second-order ones.
struct State {
    StateOrder order = StateOrder::first;
    Vec u;
    Vec v;  // empty unless order == second

    int modes() const { return static_cast<int>(u.size()); }
    static State first_order(Vec u);
    static State second_order(Vec u, Vec v);
};

// Interior collocation nodes x_m = m L/(G+1), m = 1..G.
Vec collocation_nodes(const SpectralBasis& basis, int grid_size);

// Values of sum_k c_k phi_k at the collocation nodes, phi_k = sqrt(2/L) sin(k pi x / L).
Vec synth(const SpectralBasis& basis, const Vec& coeffs, int grid_size);

// Discrete sine-transform quadrature of (g, phi_k); exact inverse of synth
// for band-limited g.
Vec analyze(const SpectralBasis& basis, const Vec& grid_values);

// |u|_theta = (sum_k lambda_k^{2 theta} c_k^2)^{1/2}, summed in ascending mode order.
double frac_norm(const SpectralBasis& basis, const Vec& coeffs, double theta);
double frac_norm(const SpectralBasis& basis, const State& state, double theta);

// ||(u, v)||_E = (|u|_{1/2}^2 + |v|_0^2)^{1/2}; rejects first-order states.
double energy_norm(const SpectralBasis& basis, const State& state);

// c_k -> lambda_k^theta c_k
Vec apply_frac_power(const SpectralBasis& basis, const Vec& coeffs, double theta);

}  // namespace trajlab
