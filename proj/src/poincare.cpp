#include "trajlab/poincare.hpp"

#include <cmath>

namespace trajlab {

State translate(const ProblemSpec& problem, const State& state0, double t) {
    if (t < 0.0) throw Error("translate: t must be nonnegative");
    if (t == 0.0) return state0;
    const double T = problem.period();
    int steps = static_cast<int>(std::ceil(problem.steps_per_period * t / T));
    steps = std::max(steps, 1);
    Trajectory traj = integrate(problem, state0, 0.0, t, steps, steps);
    return traj.back();
}

State poincare_map(const ProblemSpec& problem, const State& state0) {
    return translate(problem, state0, problem.period());
}

namespace {

double residual_of(const ProblemSpec& problem, const State& x, const State& px) {
    State d = x;
    d.u = px.u - x.u;
    if (d.order == StateOrder::second) d.v = px.v - x.v;
    return state_norm(problem, d);
}

PeriodicOrbit make_orbit(const ProblemSpec& problem, const State& x, double residual, int iters) {
    PeriodicOrbit orb;
    orb.initial = x;
    orb.period = problem.period();
    orb.residual = residual;
    orb.iterations = iters;
    return orb;
}

}  // namespace

PeriodicOrbit find_periodic_picard(const ProblemSpec& problem, const State& guess, double tol,
                                   int max_iter) {
    if (!(tol > 0.0)) throw Error("find_periodic_picard: tol must be positive");
    State x = guess;
    double prev = -1.0, ratio = 0.0;
    int worse = 0;
    for (int it = 0; it < max_iter; ++it) {
        State px = poincare_map(problem, x);
        const double res = residual_of(problem, x, px);
        if (prev > 0.0) {
            ratio = res / prev;
            worse = (ratio >= 1.0) ? worse + 1 : 0;
        }
        if (res <= tol) {
            PeriodicOrbit orb = make_orbit(problem, x, res, it + 1);
            orb.contraction_ratio = ratio;
            return orb;
        }
        if (worse >= 3)
            throw SolverFailure("find_periodic_picard: iteration diverges", res, ratio);
        prev = res;
        x = px;
    }
    throw SolverFailure("find_periodic_picard: max iterations reached", prev, ratio);
}

PeriodicOrbit find_periodic_newton(const ProblemSpec& problem, const State& guess, double tol,
                                   int max_iter) {
    if (!(tol > 0.0)) throw Error("find_periodic_newton: tol must be positive");
    const int n = static_cast<int>(flatten(guess).size());
    Vec x = flatten(guess);

    auto G = [&](const Vec& y) -> Vec {
        State s = unflatten(problem, y);
        State ps = poincare_map(problem, s);
        return y - flatten(ps);
    };

    Vec g = G(x);
    double gn = g.norm();
    if (gn <= tol) return make_orbit(problem, unflatten(problem, x), gn, 0);

    for (int it = 1; it <= max_iter; ++it) {
        Eigen::MatrixXd J(n, n);
        for (int j = 0; j < n; ++j) {
            const double delta = 1e-6 * (1.0 + x.norm());
            Vec xp = x;
            xp(j) += delta;
            J.col(j) = (G(xp) - g) / delta;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        lu.setThreshold(1e-12);
        if (lu.rank() < n)
            throw SolverFailure("find_periodic_newton: singular shooting Jacobian "
                                "(non-hyperbolic or defective)", gn);
        Vec dx = lu.solve(g);
        double alpha = 1.0;
        Vec xn, gnext;
        double gnn = gn;
        for (int ls = 0; ls < 10; ++ls) {
            xn = x - alpha * dx;
            gnext = G(xn);
            gnn = gnext.norm();
            if (gnn < gn) break;
            alpha *= 0.5;
        }
        if (gnn >= gn)
            throw SolverFailure("find_periodic_newton: line search stalled", gn);
        x = xn;
        g = gnext;
        gn = gnn;
        if (gn <= tol) {
            State s = unflatten(problem, x);
            const double res = residual_of(problem, s, poincare_map(problem, s));
            return make_orbit(problem, s, res, it);
        }
    }
    throw SolverFailure("find_periodic_newton: max iterations reached", gn);
}

PeriodicOrbit solve_periodic(const ProblemSpec& problem, const State& guess, double tol) {
    // 3-iteration contraction probe, mirroring the condensing/general dichotomy.
    State x = guess;
    double r0 = -1.0, r1 = -1.0;
    bool contractive = false;
    try {
        State p1 = poincare_map(problem, x);
        r0 = residual_of(problem, x, p1);
        if (r0 <= tol) return make_orbit(problem, x, r0, 1);
        State p2 = poincare_map(problem, p1);
        r1 = residual_of(problem, p1, p2);
        State p3 = poincare_map(problem, p2);
        double r2 = residual_of(problem, p2, p3);
        contractive = r1 < 0.95 * r0 && r2 < 0.95 * r1;
    } catch (const IntegrationError&) {
        contractive = false;
    }
    if (contractive) {
        try {
            return find_periodic_picard(problem, guess, tol);
        } catch (const SolverFailure&) {
            // fall through to Newton
        }
    }
    return find_periodic_newton(problem, guess, tol);
}

Eigen::MatrixXd monodromy(const ProblemSpec& problem, const PeriodicOrbit& orbit) {
    if (orbit.residual > 1e-6)
        throw Error("monodromy: orbit residual too large");
    Vec x = flatten(orbit.initial);
    const int n = static_cast<int>(x.size());
    Vec base = flatten(poincare_map(problem, orbit.initial));
    Eigen::MatrixXd M(n, n);
    const double delta = 1e-6 * (1.0 + x.norm());
    for (int j = 0; j < n; ++j) {
        Vec xp = x;
        xp(j) += delta;
        Vec img = flatten(poincare_map(problem, unflatten(problem, xp)));
        M.col(j) = (img - base) / delta;
    }
    return M;
}

int index_from_monodromy(const Eigen::MatrixXd& M, double hyperbolicity_margin) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    Eigen::VectorXcd mult = es.eigenvalues();
    for (int i = 0; i < mult.size(); ++i)
        if (std::abs(std::abs(mult(i)) - 1.0) < hyperbolicity_margin)
            throw NonHyperbolic("fixed_point_index: multiplier on the unit circle", mult);
    const int n = static_cast<int>(M.rows());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - M;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    double det_sign = 1.0;
    const auto& LU = lu.matrixLU();
    for (int i = 0; i < n; ++i) det_sign *= (LU(i, i) > 0 ? 1.0 : -1.0);
    det_sign *= lu.permutationP().determinant();
    return det_sign > 0 ? 1 : -1;
}

int fixed_point_index(const ProblemSpec& problem, PeriodicOrbit& orbit) {
    if (!orbit.monodromy) orbit.monodromy = monodromy(problem, orbit);
    const int idx = index_from_monodromy(*orbit.monodromy);
    orbit.index = idx;
    return idx;
}

}  // namespace trajlab
