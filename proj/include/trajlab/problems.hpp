#pragma once

// Model evolution problems reduced to per-mode linear blocks plus a
// collocation-evaluated nonlinearity.
//
// Realized equations (all on (0, L) with sine modes):
//   heat / constrained_heat :  u_t = Laplace u + f(t, x, u)
//   damped_wave             :  u_tt + beta(t) u_t - Laplace u + f(t, x, u) = 0
//   resonant_wave           :  u_tt + beta u_t - Laplace u + mu_{k*} u + eps f(t, x, u) = 0
//   beam                    :  u_tt + alpha A u_t + beta u_t + A u
//                               + (a |u|_{1/4}^2 + b + sigma (A^{1/2}u, u_t)_0) A^{1/2} u = forcing(t)
// written as first-order systems in coefficient space.  The nonlinearity
// callback always stores the f appearing above; the variant supplies the
// sign with which it enters the system.

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "trajlab/spectral.hpp"

namespace trajlab {

struct Nonlinearity {
    // f(t, x, s); must be T-periodic in t and Lipschitz in s.
    std::function<double(double, double, double)> scalar_rule;
    double period = 1.0;
    double lipschitz_bound = 1.0;
    bool time_independent = false;

    // f_inf(t) = lim_{s->inf} f(t,x,s)/s when it exists.
    std::optional<std::function<double(double)>> asymptotic_slope;

    // Asymptotic limit data for Landesman-Lazer checks, supplied by the
    // scenario author: liminf/limsup of f(t,x,s) as s -> +-inf.
    struct LimitData {
        std::function<double(double, double)> liminf_plus;   // s -> +inf
        std::function<double(double, double)> limsup_plus;   // s -> +inf
        std::function<double(double, double)> liminf_minus;  // s -> -inf
        std::function<double(double, double)> limsup_minus;  // s -> -inf
    };
    std::optional<LimitData> limit_data;
};

Nonlinearity zero_nonlinearity(double period);

enum class Variant { heat, constrained_heat, damped_wave, resonant_wave, beam };

bool is_second_order(Variant v);

struct ProblemSpec {
    Variant variant = Variant::heat;
    SpectralBasis basis;
    Nonlinearity nonlinearity;

    double beta = 0.0;  // damping coefficient
    std::optional<std::function<double(double)>> beta_of_t;  // damped_wave only

    double alpha = 0.0;      // strong damping (beam)
    double sigma_coef = 0.0; // beam
    double a = 1.0;          // beam
    double b = 0.0;          // beam
    int kstar = 0;           // resonant_wave kernel mode
    double epsilon = 1.0;    // nonlinearity scale (resonant_wave)

    std::optional<std::function<Vec(double)>> forcing;  // beam, coefficients of f(t)
    double omega = 1.0;  // beam forcing frequency (used via lambda = 1/omega)

    // Time compression of the (Z_lambda) family: the right hand side is
    // evaluated at fast time t/lambda and the natural period is lambda*T.
    double lambda = 1.0;

    // When set, the nonlinearity is replaced by its time average.
    bool averaged = false;

    int grid_size = 0;         // 0 -> 2N+1
    int steps_per_period = 1024;
    int time_quadrature_nodes = 64;

    std::string tag;

    StateOrder state_order() const {
        return is_second_order(variant) ? StateOrder::second : StateOrder::first;
    }
    double period() const { return lambda * nonlinearity.period; }
    int dealiased_grid() const { return grid_size > 0 ? grid_size : 2 * basis.modes + 1; }
    double damping(double t) const { return beta_of_t ? (*beta_of_t)(t) : beta; }
};

// Per-mode generator block: scalar for first-order variants, 2x2 otherwise.
struct LinearBlock {
    bool is_scalar = true;
    double scalar = 0.0;
    Eigen::Matrix2d mat = Eigen::Matrix2d::Zero();
};

// Block of mode k (1-based) at time t (t only matters for time-dependent damping).
LinearBlock linear_block(const ProblemSpec& problem, int k, double t = 0.0);

// Nonlinear part of the first-order system at time t: the full state-space
// increment G with  d/dt x = (blocks) x + G(t, x).  Honors `lambda`,
// `epsilon` and `averaged`.
State nemytskii(const ProblemSpec& problem, double t, const State& state);

// Time average of nemytskii over one period (Gauss-Legendre in time).
State averaged_nonlinearity(const ProblemSpec& problem, const State& state);

struct ConeReport {
    double min_grid_value = 0.0;
    bool tangency_ok = false;
};

// Nonnegativity data for the constrained heat variant: min of synth(u) on the
// grid and whether f(t,x,0) >= 0 on sampled (t, x).
ConeReport cone_guard(const ProblemSpec& problem, const State& state);

// Norm in which residuals are measured: |.|_0 for first-order states,
// the energy norm for second-order ones.
double state_norm(const ProblemSpec& problem, const State& state);

// Flat coordinate vector (u then v) and its inverse.
Vec flatten(const State& state);
State unflatten(const ProblemSpec& problem, const Vec& x);

State zero_state(const ProblemSpec& problem);

// Gauss-Legendre nodes/weights on [0, T].
void gauss_legendre(int n, double T, Vec& nodes, Vec& weights);

}  // namespace trajlab
