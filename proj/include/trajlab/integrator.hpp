#pragma once

// Mild-solution time stepping: exact per-mode propagation of the linear
// blocks composed with an exponential (ETD) midpoint treatment of the
// nonlinearity.

#include <string>
#include <vector>

#include "trajlab/problems.hpp"

namespace trajlab {

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::string problem_tag;

    const State& back() const { return states.back(); }
};

struct IntegrationError : Error {
    IntegrationError(const std::string& what, double time, Trajectory partial = {})
        : Error(what), time(time), partial(std::move(partial)) {}
    double time;
    Trajectory partial;
};

// exp(B) and phi1(B) = (exp(B)-I) B^{-1} of a 2x2 block, by eigenvalue
// divided differences with a Taylor branch near the defective case.
void block_functions(const Eigen::Matrix2d& B, Eigen::Matrix2d& expB, Eigen::Matrix2d& phi1B);

// S_A(h): every mode multiplied by the exact exponential of its linear block.
State propagate_linear(const ProblemSpec& problem, const State& state, double h, double t = 0.0);

// One Duhamel step of length h from time t (exponential midpoint, order 2).
State step(const ProblemSpec& problem, double t, const State& state, double h);

// Uniform-step composition over [t0, t1], recording every `stride`-th sample.
Trajectory integrate(const ProblemSpec& problem, const State& state0, double t0, double t1,
                     int steps, int stride = 1);

// CSV columns: t, coefficients, then the variant norm.
void write_trajectory_csv(const ProblemSpec& problem, const Trajectory& traj, std::ostream& os);

}  // namespace trajlab
