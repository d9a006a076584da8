#include "trajlab/averaging.hpp"

#include <cmath>

namespace trajlab {

ProblemSpec averaged_problem(const ProblemSpec& problem) {
    ProblemSpec ap = problem;
    ap.averaged = true;
    ap.lambda = 1.0;
    return ap;
}

double averaging_error(const ProblemSpec& problem, const State& initial, double lambda,
                       double horizon, int steps_per_fast_period) {
    if (lambda <= 0.0 || lambda > 1.0) throw Error("averaging_error: lambda out of (0, 1]");
    ProblemSpec fast = problem;
    fast.lambda = lambda;
    ProblemSpec avg = averaged_problem(problem);

    const double fast_period = lambda * problem.nonlinearity.period;
    const int n_periods = std::max(1, static_cast<int>(std::ceil(horizon / fast_period)));
    const double t_end = n_periods * fast_period;
    const int total_steps = n_periods * steps_per_fast_period;

    Trajectory tf = integrate(fast, initial, 0.0, t_end, total_steps, steps_per_fast_period);
    Trajectory ta = integrate(avg, initial, 0.0, t_end, total_steps, steps_per_fast_period);

    double gap = 0.0;
    for (size_t i = 0; i < tf.states.size(); ++i) {
        State diff = tf.states[i];
        diff.u -= ta.states[i].u;
        if (diff.order == StateOrder::second) diff.v -= ta.states[i].v;
        gap = std::max(gap, state_norm(problem, diff));
    }
    return gap;
}

std::vector<BranchPoint> find_averaged_equilibria(const ProblemSpec& problem, const Box& search,
                                                  DegreeOptions opts) {
    ProblemSpec ap = averaged_problem(problem);
    FieldFn field = [&](const Vec& x) { return stationary_field(ap, x); };
    DegreeReport rep = brouwer_degree(field, search, opts);

    std::vector<BranchPoint> out;
    for (const auto& z : rep.zeros) {
        if (z.residual > 1e-8) continue;
        BranchPoint bp;
        bp.equilibrium = unflatten(ap, z.point);
        bp.averaged_residual = z.residual;
        out.push_back(std::move(bp));
    }
    // isolating ball: half the distance to the nearest other equilibrium
    for (size_t i = 0; i < out.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        Vec xi = flatten(out[i].equilibrium);
        for (size_t j = 0; j < out.size(); ++j) {
            if (j == i) continue;
            nearest = std::min(nearest, (xi - flatten(out[j].equilibrium)).norm());
        }
        double radius = std::isfinite(nearest) ? 0.5 * nearest
                                               : 0.5 * (search.hi - search.lo).minCoeff();
        DegreeReport local = brouwer_degree(field, Box::centered(xi, radius), opts);
        if (local.trusted) out[i].degree = local.degree;
    }
    return out;
}

BranchPoint branch_orbits(const ProblemSpec& problem, BranchPoint seed,
                          const std::vector<double>& lambda_schedule, double tol,
                          bool with_index) {
    Vec u0 = flatten(seed.equilibrium);
    State guess = seed.equilibrium;
    for (double lambda : lambda_schedule) {
        ProblemSpec ps = problem;
        ps.lambda = lambda;
        BranchRecord rec;
        rec.lambda = lambda;
        try {
            rec.orbit = solve_periodic(ps, guess, tol);
        } catch (const SolverFailure& e) {
            seed.failure = "lambda=" + std::to_string(lambda) + ": " + e.what();
            break;
        }
        rec.distance = (flatten(rec.orbit.initial) - u0).norm();
        if (with_index) {
            try {
                rec.index = fixed_point_index(ps, rec.orbit);
            } catch (const NonHyperbolic&) {
            }
        }
        guess = rec.orbit.initial;
        seed.orbits.push_back(std::move(rec));
    }
    return seed;
}

std::vector<double> dyadic_schedule(int first_exponent, int last_exponent) {
    std::vector<double> out;
    for (int e = first_exponent; e <= last_exponent; ++e) out.push_back(std::pow(2.0, -e));
    return out;
}

ContinuationResult continue_to_one(const ProblemSpec& problem, const PeriodicOrbit& seed,
                                   double lambda0, double R0, double tol, double initial_step) {
    ContinuationResult res;
    res.last_lambda = lambda0;
    State guess = seed.initial;
    PeriodicOrbit last = seed;
    double lambda = lambda0;
    double step = initial_step;
    while (lambda < 1.0) {
        const double next = std::min(1.0, lambda + step);
        ProblemSpec ps = problem;
        ps.lambda = next;
        try {
            PeriodicOrbit orbit = solve_periodic(ps, guess, tol);
            if (state_norm(problem, orbit.initial) >= R0) {
                res.boundary_hit = true;
                res.last_lambda = lambda;
                res.message = "iterate reached the a priori boundary R0 at lambda=" +
                              std::to_string(next);
                return res;
            }
            lambda = next;
            last = orbit;
            guess = orbit.initial;
            res.log.emplace_back(lambda, orbit.residual);
            res.last_lambda = lambda;
            if (step < initial_step) step *= 2.0;
        } catch (const SolverFailure&) {
            step *= 0.5;
            if (step < 1e-4) {
                res.message = "continuation stalled at lambda=" + std::to_string(lambda);
                return res;
            }
        }
    }
    res.orbit = last;
    res.message = "reached lambda=1";
    return res;
}

}  // namespace trajlab
