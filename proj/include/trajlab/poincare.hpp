#pragma once

// Translation along trajectories, the period map, periodic-orbit solvers,
// monodromy and the fixed point index of hyperbolic orbits.

#include <optional>

#include "trajlab/integrator.hpp"

namespace trajlab {

struct PeriodicOrbit {
    State initial;
    double period = 0.0;
    double residual = 0.0;  // ||Phi_T(x) - x|| in the variant norm
    std::optional<Eigen::MatrixXd> monodromy;
    std::optional<int> index;
    std::optional<Trajectory> trajectory;

    int iterations = 0;
    double contraction_ratio = 0.0;  // Picard only
};

struct SolverFailure : Error {
    SolverFailure(const std::string& what, double best_residual, double ratio = 0.0)
        : Error(what), best_residual(best_residual), ratio(ratio) {}
    double best_residual;
    double ratio;
};

struct NonHyperbolic : Error {
    NonHyperbolic(const std::string& what, Eigen::VectorXcd multipliers)
        : Error(what), multipliers(std::move(multipliers)) {}
    Eigen::VectorXcd multipliers;
};

// Endpoint of the trajectory of length t started at state0 (t >= 0).
State translate(const ProblemSpec& problem, const State& state0, double t);

// Translation by one period of the time dependence (lambda * T).
State poincare_map(const ProblemSpec& problem, const State& state0);

// Fixed-point iteration x <- Phi_T(x); fails with the observed ratio when the
// residuals stop contracting.
PeriodicOrbit find_periodic_picard(const ProblemSpec& problem, const State& guess, double tol,
                                   int max_iter = 200);

// Damped Newton shooting on G(x) = x - Phi_T(x) with forward-difference
// Jacobian.
PeriodicOrbit find_periodic_newton(const ProblemSpec& problem, const State& guess, double tol,
                                   int max_iter = 50);

// Picard when a 3-iteration probe contracts with ratio < 0.95, Newton otherwise.
PeriodicOrbit solve_periodic(const ProblemSpec& problem, const State& guess, double tol);

// Forward-difference derivative of Phi_T around orbit.initial.
Eigen::MatrixXd monodromy(const ProblemSpec& problem, const PeriodicOrbit& orbit);

// sign det(I - M); refuses when a multiplier sits within 1e-6 of the unit circle.
int fixed_point_index(const ProblemSpec& problem, PeriodicOrbit& orbit);

int index_from_monodromy(const Eigen::MatrixXd& M, double hyperbolicity_margin = 1e-6);

}  // namespace trajlab
