#include "trajlab/integrator.hpp"

#include <cmath>
#include <complex>
#include <ostream>

namespace trajlab {

namespace {

using Cplx = std::complex<double>;

Cplx cphi1(Cplx z) {
    if (std::abs(z) < 1e-2) {
        // phi1(z) = sum z^n / (n+1)!
        Cplx acc(1.0, 0.0), term(1.0, 0.0);
        for (int n = 1; n <= 8; ++n) {
            term *= z / static_cast<double>(n + 1);
            acc += term;
        }
        return acc;
    }
    return (std::exp(z) - 1.0) / z;
}

Cplx cphi1_deriv(Cplx z) {
    if (std::abs(z) < 1e-2) {
        // phi1'(z) = sum_{n>=1} n z^{n-1} / (n+1)!
        Cplx acc(0.5, 0.0), pow(1.0, 0.0);
        double fact = 2.0;  // (n+1)! running
        for (int n = 2; n <= 9; ++n) {
            pow *= z;
            fact *= (n + 1);
            acc += static_cast<double>(n) * pow / fact;
        }
        return acc;
    }
    return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

// f(B) = f(r1) I + f[r1,r2] (B - r1 I) for analytic f of a 2x2 matrix.
Eigen::Matrix2d apply_2x2(const Eigen::Matrix2d& B, Cplx (*f)(Cplx), Cplx (*fd)(Cplx)) {
    const double tr = B(0, 0) + B(1, 1);
    const double det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    const Cplx disc = std::sqrt(Cplx(tr * tr - 4.0 * det, 0.0));
    const Cplx r1 = 0.5 * (tr - disc), r2 = 0.5 * (tr + disc);
    Cplx dd;  // divided difference f[r1, r2]
    if (std::abs(r2 - r1) < 1e-6 * (1.0 + std::abs(r1)))
        dd = fd(0.5 * (r1 + r2));
    else
        dd = (f(r2) - f(r1)) / (r2 - r1);
    const Cplx c0 = f(r1) - r1 * dd;
    Eigen::Matrix2d out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = (c0 * (i == j ? 1.0 : 0.0) + dd * B(i, j)).real();
    return out;
}

Cplx cexp_wrap(Cplx z) { return std::exp(z); }

// Per-mode exp and phi1 of h * block, cached for one step.
struct StepTableau {
    std::vector<double> es, ps;          // scalar modes
    std::vector<Eigen::Matrix2d> E, P;   // 2x2 modes
    bool scalar = true;
};

StepTableau tableau(const ProblemSpec& problem, double t, double h) {
    StepTableau tb;
    const int N = problem.basis.modes;
    for (int k = 1; k <= N; ++k) {
        LinearBlock blk = linear_block(problem, k, t);
        tb.scalar = blk.is_scalar;
        if (blk.is_scalar) {
            const double z = h * blk.scalar;
            tb.es.push_back(std::exp(z));
            tb.ps.push_back(cphi1(Cplx(z, 0.0)).real());
        } else {
            Eigen::Matrix2d B = h * blk.mat;
            Eigen::Matrix2d E, P;
            block_functions(B, E, P);
            tb.E.push_back(E);
            tb.P.push_back(P);
        }
    }
    return tb;
}

State apply_tableau(const StepTableau& tb, const State& x, const State& fx, double w) {
    // (exp) x + w (phi1) fx, per mode
    State out = x;
    const int N = x.modes();
    if (tb.scalar) {
        for (int k = 0; k < N; ++k) out.u(k) = tb.es[k] * x.u(k) + w * tb.ps[k] * fx.u(k);
    } else {
        for (int k = 0; k < N; ++k) {
            Eigen::Vector2d xv(x.u(k), x.v(k)), fv(fx.u(k), fx.v(k));
            Eigen::Vector2d yv = tb.E[k] * xv + w * (tb.P[k] * fv);
            out.u(k) = yv(0);
            out.v(k) = yv(1);
        }
    }
    return out;
}

bool finite_state(const State& s) {
    if (!s.u.allFinite()) return false;
    if (s.order == StateOrder::second && !s.v.allFinite()) return false;
    return true;
}

}  // namespace

void block_functions(const Eigen::Matrix2d& B, Eigen::Matrix2d& expB, Eigen::Matrix2d& phi1B) {
    expB = apply_2x2(B, cexp_wrap, cexp_wrap);
    phi1B = apply_2x2(B, cphi1, cphi1_deriv);
}

State propagate_linear(const ProblemSpec& problem, const State& state, double h, double t) {
    if (!(h > 0.0)) throw Error("propagate_linear: h must be positive");
    StepTableau tb = tableau(problem, t, h);
    State zero = zero_state(problem);
    return apply_tableau(tb, state, zero, 0.0);
}

namespace {

State step_with(const ProblemSpec& problem, double t, const State& state, double h,
                const StepTableau& half, const StepTableau& full) {
    State f0 = nemytskii(problem, t, state);
    State mid = apply_tableau(half, state, f0, 0.5 * h);
    State fm = nemytskii(problem, t + 0.5 * h, mid);
    State next = apply_tableau(full, state, fm, h);
    if (!finite_state(next) || state_norm(problem, next) > 1e8)
        throw IntegrationError("step: blow-up detected", t + h);
    return next;
}

}  // namespace

State step(const ProblemSpec& problem, double t, const State& state, double h) {
    if (!(h > 0.0)) throw Error("step: h must be positive");
    const double tm = t + 0.5 * h;  // damping frozen at the step midpoint
    return step_with(problem, t, state, h, tableau(problem, tm, 0.5 * h), tableau(problem, tm, h));
}

Trajectory integrate(const ProblemSpec& problem, const State& state0, double t0, double t1,
                     int steps, int stride) {
    if (!(t1 > t0)) throw Error("integrate: t1 must exceed t0");
    if (steps < 1) throw Error("integrate: steps must be >= 1");
    if (stride < 1) stride = 1;
    Trajectory traj;
    traj.problem_tag = problem.tag;
    traj.times.push_back(t0);
    traj.states.push_back(state0);
    const double h = (t1 - t0) / steps;
    const bool constant_blocks = !problem.beta_of_t;
    StepTableau half, full;
    if (constant_blocks) {
        half = tableau(problem, t0, 0.5 * h);
        full = tableau(problem, t0, h);
    }
    State x = state0;
    for (int n = 0; n < steps; ++n) {
        const double t = t0 + n * h;
        try {
            x = constant_blocks ? step_with(problem, t, x, h, half, full) : step(problem, t, x, h);
        } catch (const IntegrationError& e) {
            throw IntegrationError(e.what(), e.time, std::move(traj));
        }
        if ((n + 1) % stride == 0 || n + 1 == steps) {
            traj.times.push_back(t0 + (n + 1) * h);
            traj.states.push_back(x);
        }
    }
    return traj;
}

void write_trajectory_csv(const ProblemSpec& problem, const Trajectory& traj, std::ostream& os) {
    const int N = problem.basis.modes;
    os << "t";
    for (int k = 1; k <= N; ++k) os << ",u" << k;
    if (problem.state_order() == StateOrder::second)
        for (int k = 1; k <= N; ++k) os << ",v" << k;
    os << ",norm\n";
    os.precision(17);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        os << traj.times[i];
        const State& s = traj.states[i];
        for (int k = 0; k < N; ++k) os << "," << s.u(k);
        if (s.order == StateOrder::second)
            for (int k = 0; k < N; ++k) os << "," << s.v(k);
        os << "," << state_norm(problem, s) << "\n";
    }
}

}  // namespace trajlab
