#include "trajlab/problems.hpp"

#include <cmath>

namespace trajlab {

Nonlinearity zero_nonlinearity(double period) {
    Nonlinearity n;
    n.scalar_rule = [](double, double, double) { return 0.0; };
    n.period = period;
    n.lipschitz_bound = 0.0;
    n.time_independent = true;
    return n;
}

bool is_second_order(Variant v) {
    return v == Variant::damped_wave || v == Variant::resonant_wave || v == Variant::beam;
}

LinearBlock linear_block(const ProblemSpec& problem, int k, double t) {
    if (k < 1 || k > problem.basis.modes) throw Error("linear_block: mode index out of range");
    const double mu = problem.basis.eigenvalue(k);
    LinearBlock blk;
    switch (problem.variant) {
        case Variant::heat:
        case Variant::constrained_heat:
            blk.is_scalar = true;
            blk.scalar = -mu;
            break;
        case Variant::damped_wave:
            blk.is_scalar = false;
            blk.mat << 0.0, 1.0, -mu, -problem.damping(t);
            break;
        case Variant::resonant_wave: {
            blk.is_scalar = false;
            const double shift = problem.basis.eigenvalue(problem.kstar);
            blk.mat << 0.0, 1.0, -(mu - shift), -problem.beta;
            break;
        }
        case Variant::beam:
            blk.is_scalar = false;
            blk.mat << 0.0, 1.0, -mu, -(problem.alpha * mu + problem.beta);
            break;
    }
    return blk;
}

namespace {

// Raw increment at fast time tau (no averaging, no lambda compression).
State raw_increment(const ProblemSpec& p, double tau, const State& state) {
    const SpectralBasis& basis = p.basis;
    const int G = p.dealiased_grid();
    switch (p.variant) {
        case Variant::heat:
        case Variant::constrained_heat: {
            Vec g = synth(basis, state.u, G);
            const double h = basis.length / (G + 1);
            for (int m = 0; m < G; ++m) g(m) = p.nonlinearity.scalar_rule(tau, (m + 1) * h, g(m));
            return State::first_order(analyze(basis, g));
        }
        case Variant::damped_wave:
        case Variant::resonant_wave: {
            Vec g = synth(basis, state.u, G);
            const double h = basis.length / (G + 1);
            for (int m = 0; m < G; ++m) g(m) = p.nonlinearity.scalar_rule(tau, (m + 1) * h, g(m));
            Vec fc = analyze(basis, g);
            const double scale = (p.variant == Variant::resonant_wave) ? -p.epsilon : -1.0;
            return State::second_order(Vec::Zero(basis.modes), scale * fc);
        }
        case Variant::beam: {
            const double q14 = frac_norm(basis, state.u, 0.25);
            Vec half = apply_frac_power(basis, state.u, 0.5);
            const double pairing = half.dot(state.v);  // (A^{1/2} u, v)_0
            const double coef = p.a * q14 * q14 + p.b + p.sigma_coef * pairing;
            Vec inc = -coef * half;
            if (p.forcing) inc += (*p.forcing)(tau);
            return State::second_order(Vec::Zero(basis.modes), std::move(inc));
        }
    }
    throw Error("raw_increment: unknown variant");
}

State averaged_increment(const ProblemSpec& p, const State& state) {
    if (p.nonlinearity.time_independent && !p.forcing) return raw_increment(p, 0.0, state);
    const double T = p.nonlinearity.period;
    Vec nodes, weights;
    gauss_legendre(p.time_quadrature_nodes, T, nodes, weights);
    State acc = raw_increment(p, nodes(0), state);
    acc.u *= weights(0);
    if (acc.order == StateOrder::second) acc.v *= weights(0);
    for (int i = 1; i < nodes.size(); ++i) {
        State s = raw_increment(p, nodes(i), state);
        acc.u += weights(i) * s.u;
        if (acc.order == StateOrder::second) acc.v += weights(i) * s.v;
    }
    acc.u /= T;
    if (acc.order == StateOrder::second) acc.v /= T;
    return acc;
}

}  // namespace

State nemytskii(const ProblemSpec& problem, double t, const State& state) {
    if (state.order != problem.state_order()) throw Error("nemytskii: state order mismatch");
    if (static_cast<int>(state.u.size()) != problem.basis.modes)
        throw Error("nemytskii: state size mismatch");
    if (problem.averaged) return averaged_increment(problem, state);
    return raw_increment(problem, t / problem.lambda, state);
}

State averaged_nonlinearity(const ProblemSpec& problem, const State& state) {
    if (state.order != problem.state_order()) throw Error("averaged_nonlinearity: state order mismatch");
    return averaged_increment(problem, state);
}

ConeReport cone_guard(const ProblemSpec& problem, const State& state) {
    if (problem.variant != Variant::constrained_heat)
        throw Error("cone_guard: only defined for the constrained heat variant");
    ConeReport rep;
    const int G = problem.dealiased_grid();
    rep.min_grid_value = synth(problem.basis, state.u, G).minCoeff();
    rep.tangency_ok = true;
    const double T = problem.nonlinearity.period;
    const double h = problem.basis.length / (G + 1);
    for (int i = 0; i < 16 && rep.tangency_ok; ++i) {
        const double tau = T * i / 16.0;
        for (int m = 0; m < G; ++m) {
            if (problem.nonlinearity.scalar_rule(tau, (m + 1) * h, 0.0) < -1e-12) {
                rep.tangency_ok = false;
                break;
            }
        }
    }
    return rep;
}

double state_norm(const ProblemSpec& problem, const State& state) {
    if (state.order == StateOrder::first) return frac_norm(problem.basis, state.u, 0.0);
    return energy_norm(problem.basis, state);
}

Vec flatten(const State& state) {
    if (state.order == StateOrder::first) return state.u;
    Vec x(2 * state.u.size());
    x.head(state.u.size()) = state.u;
    x.tail(state.v.size()) = state.v;
    return x;
}

State unflatten(const ProblemSpec& problem, const Vec& x) {
    const int N = problem.basis.modes;
    if (problem.state_order() == StateOrder::first) {
        if (static_cast<int>(x.size()) != N) throw Error("unflatten: size mismatch");
        return State::first_order(x);
    }
    if (static_cast<int>(x.size()) != 2 * N) throw Error("unflatten: size mismatch");
    return State::second_order(x.head(N), x.tail(N));
}

State zero_state(const ProblemSpec& problem) {
    const int N = problem.basis.modes;
    if (problem.state_order() == StateOrder::first) return State::first_order(Vec::Zero(N));
    return State::second_order(Vec::Zero(N), Vec::Zero(N));
}

void gauss_legendre(int n, double T, Vec& nodes, Vec& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton on P_n over (-1, 1), then affine map to (0, T).
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes(i) = 0.5 * T * (1.0 - x);  // ascending in i after the cos seed ordering
        weights(i) = T / ((1.0 - x * x) * pp * pp);
    }
}

}  // namespace trajlab
