#include "trajlab/spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace trajlab {

namespace {

// phi_k(x_m) tables, cached per (L, N, G); synth/analyze are hot paths.
const Eigen::MatrixXd& synth_matrix(const SpectralBasis& basis, int grid_size) {
    using Key = std::tuple<double, int, int>;
    static std::map<Key, std::unique_ptr<Eigen::MatrixXd>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{basis.length, basis.modes, grid_size}];
    if (!slot) {
        const double L = basis.length;
        const double amp = std::sqrt(2.0 / L);
        auto M = std::make_unique<Eigen::MatrixXd>(grid_size, basis.modes);
        for (int m = 1; m <= grid_size; ++m)
            for (int k = 1; k <= basis.modes; ++k)
                (*M)(m - 1, k - 1) = amp * std::sin(k * M_PI * m / (grid_size + 1));
        slot = std::move(M);
    }
    return *slot;
}

}  // namespace

SpectralBasis build_basis(BoundaryKind kind, double length, int modes) {
    if (modes < 1) throw Error("build_basis: mode count must be >= 1");
    if (!(length > 0.0)) throw Error("build_basis: domain length must be positive");
    SpectralBasis b;
    b.kind = kind;
    b.length = length;
    b.modes = modes;
    b.eigenvalues.resize(modes);
    for (int k = 1; k <= modes; ++k) {
        const double w = k * M_PI / length;
        b.eigenvalues(k - 1) = (kind == BoundaryKind::dirichlet_sine) ? w * w : w * w * w * w;
    }
    return b;
}

State State::first_order(Vec u) {
    State s;
    s.order = StateOrder::first;
    s.u = std::move(u);
    return s;
}

State State::second_order(Vec u, Vec v) {
    if (u.size() != v.size()) throw Error("State: u and v must have equal length");
    State s;
    s.order = StateOrder::second;
    s.u = std::move(u);
    s.v = std::move(v);
    return s;
}

Vec collocation_nodes(const SpectralBasis& basis, int grid_size) {
    Vec x(grid_size);
    const double h = basis.length / (grid_size + 1);
    for (int m = 1; m <= grid_size; ++m) x(m - 1) = m * h;
    return x;
}

Vec synth(const SpectralBasis& basis, const Vec& coeffs, int grid_size) {
    if (static_cast<int>(coeffs.size()) != basis.modes)
        throw Error("synth: coefficient length does not match basis mode count");
    if (grid_size < basis.modes)
        throw Error("synth: grid_size below mode count would alias");
    return synth_matrix(basis, grid_size) * coeffs;
}

Vec analyze(const SpectralBasis& basis, const Vec& grid_values) {
    const int G = static_cast<int>(grid_values.size());
    if (G < basis.modes)
        throw Error("analyze: grid has fewer nodes than basis modes");
    const double w = basis.length / (G + 1);  // exact discrete-orthogonality weight
    return w * (synth_matrix(basis, G).transpose() * grid_values);
}

double frac_norm(const SpectralBasis& basis, const Vec& coeffs, double theta) {
    if (static_cast<int>(coeffs.size()) != basis.modes)
        throw Error("frac_norm: coefficient length does not match basis");
    double acc = 0.0;
    for (int k = 0; k < basis.modes; ++k)
        acc += std::pow(basis.eigenvalues(k), 2.0 * theta) * coeffs(k) * coeffs(k);
    return std::sqrt(acc);
}

double frac_norm(const SpectralBasis& basis, const State& state, double theta) {
    return frac_norm(basis, state.u, theta);
}

double energy_norm(const SpectralBasis& basis, const State& state) {
    if (state.order != StateOrder::second)
        throw Error("energy_norm: requires a second-order state");
    const double a = frac_norm(basis, state.u, 0.5);
    const double b = frac_norm(basis, state.v, 0.0);
    return std::sqrt(a * a + b * b);
}

Vec apply_frac_power(const SpectralBasis& basis, const Vec& coeffs, double theta) {
    if (static_cast<int>(coeffs.size()) != basis.modes)
        throw Error("apply_frac_power: coefficient length does not match basis");
    Vec out(coeffs.size());
    for (int k = 0; k < basis.modes; ++k)
        out(k) = std::pow(basis.eigenvalues(k), theta) * coeffs(k);
    return out;
}

}  // namespace trajlab
