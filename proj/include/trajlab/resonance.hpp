// Kernel reduction at resonance: the projection P, the reduced average F_bar,
// Landesman-Lazer verdicts, the index formula (-1)^{k_minus} deg_B(F_bar, U)
// against the directly computed fixed-point index, and continuation in the
// nonlinearity scale epsilon.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trajlab/degree.hpp"
#include "trajlab/poincare.hpp"

namespace trajlab {

struct KernelData {
    std::vector<int> kernel_modes;  // 1-based mode indices spanning Ker A
    int dim_N = 0;
    int k_minus = 0;  // negative shifted eigenvalues, with multiplicity
};

KernelData kernel_data(const ProblemSpec& problem);

// Embed kernel coordinates, average P f(t, ., u) over one period.
Vec reduced_average(const ProblemSpec& problem, const Vec& c);

enum class LLKind { LL_plus, LL_minus, neither };

struct LLVerdict {
    LLKind kind = LLKind::neither;
    double margin = 0.0;  // worst-case value of the deciding integral
    double plus_min = 0.0;   // min over sampled phi of the LL+ integral
    double minus_max = 0.0;  // max over sampled phi of the LL- integral
};

LLVerdict landesman_lazer(const ProblemSpec& problem, int sphere_samples = 64);

struct ResonanceIndexReport {
    KernelData kernel;
    int deg_Fbar = 0;
    std::optional<int> formula_index;
    std::optional<int> direct_index;
    double kernel_boundary_margin = 0.0;
    double product_boundary_margin = 0.0;
    std::vector<DegreeZero> fixed_points;
    double epsilon = 0.0;
    std::string note;
    bool agree() const {
        return formula_index && direct_index && *formula_index == *direct_index;
    }
};

// U: box in kernel coordinates; r: |.|_{1/2} radius for the non-kernel
// displacement block; R: |.|_0 radius for velocities.
ResonanceIndexReport resonance_index(const ProblemSpec& problem, const Box& U, double r, double R,
                                     double epsilon, DegreeOptions opts = {});

struct ResonantContinuation {
    std::optional<PeriodicOrbit> orbit;  // the epsilon = 1 orbit on success
    bool boundary_hit = false;
    double last_epsilon = 0.0;
    std::vector<std::pair<double, double>> log;  // (epsilon, residual)
    std::string message;
};

ResonantContinuation find_periodic_resonant(const ProblemSpec& problem, double R0,
                                            const std::vector<double>& epsilon_schedule,
                                            double tol = 1e-9);

}  // namespace trajlab
