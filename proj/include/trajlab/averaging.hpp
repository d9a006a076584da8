// Averaged problems, the convergence experiment e(lambda), branching of
// lambda*T-periodic orbits from averaged equilibria, and continuation of the
// branch up to lambda = 1.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajlab/degree.hpp"
#include "trajlab/poincare.hpp"

namespace trajlab {

// Same linear part, nonlinearity replaced by its time average.
ProblemSpec averaged_problem(const ProblemSpec& problem);

struct BranchRecord {
    double lambda = 0.0;
    PeriodicOrbit orbit;
    double distance = 0.0;  // ||orbit.initial - equilibrium||
    std::optional<int> index;
};

struct BranchPoint {
    State equilibrium;
    double averaged_residual = 0.0;
    std::optional<int> degree;
    std::vector<BranchRecord> orbits;
    std::string failure;  // set when the branch was truncated
};

// Max over stroboscopic times n*lambda*T in [0, horizon] of the gap between
// the (Z_lambda) solution and the averaged one started from the same state.
// Both runs use identical step sizes so a time-independent nonlinearity gives
// an exactly zero gap.
double averaging_error(const ProblemSpec& problem, const State& initial, double lambda,
                       double horizon, int steps_per_fast_period = 32);

// Zeros of the truncated stationary equation A u + F_hat(u) = 0 inside the
// search box, each with an isolating-ball degree when computable.
std::vector<BranchPoint> find_averaged_equilibria(const ProblemSpec& problem, const Box& search,
                                                  DegreeOptions opts = {});

// For each lambda in the (decreasing) schedule solve for a lambda*T-periodic
// orbit of (Z_lambda), seeding with the previous solution.
BranchPoint branch_orbits(const ProblemSpec& problem, BranchPoint seed,
                          const std::vector<double>& lambda_schedule, double tol = 1e-9,
                          bool with_index = false);

std::vector<double> dyadic_schedule(int first_exponent = 1, int last_exponent = 7);

struct ContinuationResult {
    std::optional<PeriodicOrbit> orbit;  // the lambda = 1 orbit on success
    bool boundary_hit = false;
    double last_lambda = 0.0;
    std::vector<std::pair<double, double>> log;  // (lambda, residual)
    std::string message;
};

// Simple continuation in lambda with step halving; aborts when an iterate's
// initial state norm reaches R0.
ContinuationResult continue_to_one(const ProblemSpec& problem, const PeriodicOrbit& seed,
                                   double lambda0, double R0, double tol = 1e-9,
                                   double initial_step = 0.05);

}  // namespace trajlab
