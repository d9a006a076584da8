#pragma once

// Brouwer degree on boxes in low dimension, semilinear degree of the pair
// (A, F) via the resolvent formula, and the Krasnosel'skii small-time check.

#include <functional>
#include <vector>

#include "trajlab/problems.hpp"

namespace trajlab {

using FieldFn = std::function<Vec(const Vec&)>;

struct Box {
    Vec lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    static Box cube(int n, double center, double radius);
    static Box centered(const Vec& center, double radius);
    bool contains(const Vec& x, double slack = 1e-9) const;
};

enum class DegreeMethod { regular_sum, winding_1d, winding_2d, linear_spectral };

struct DegreeZero {
    Vec point;
    int jacobian_sign = 0;
    double residual = 0.0;
};

struct DegreeReport {
    int degree = 0;
    std::vector<DegreeZero> zeros;
    double boundary_margin = 0.0;  // min sampled ||field|| on the boundary
    DegreeMethod method = DegreeMethod::regular_sum;
    bool trusted = false;
    std::string note;
};

struct DegreeOptions {
    int starts_per_dim = 4;
    int boundary_density = 12;   // samples per face dimension
    double newton_tol = 1e-11;
    double dedupe_distance = 1e-6;
    double jacobian_step = 1e-7;
    double hyperbolic_tol = 1e-8;  // |det J| below this counts as non-hyperbolic
    std::uint64_t seed = 12345;
    int max_dim = 6;
};

DegreeReport brouwer_degree(const FieldFn& field, const Box& box, DegreeOptions opts = {});

// Winding number of a planar field over the box boundary (independent route,
// also used as the 2D fallback).
int winding_number_2d(const FieldFn& field, const Box& box, bool& ok);

struct SemilinearDegreeReport {
    DegreeReport report;
    double lambda_res = 1.0;
    bool truncation_checked = false;
    bool truncation_stable = false;
};

// Degree of x -> x - (lambda I - A)^{-1} (lambda x + F_hat(x)) on the box of
// given radius around `center` (default 0) in the truncated coordinates.
// The nonlinearity is averaged in time if it is not already autonomous.
SemilinearDegreeReport semilinear_degree(const ProblemSpec& problem, double radius,
                                         double lambda_res = 1.0, DegreeOptions opts = {},
                                         const Vec* center = nullptr);

// The stationary field x -> A x + F_hat(x) in flat coordinates.
Vec stationary_field(const ProblemSpec& problem, const Vec& x);

// The resolvent-composed field of semilinear_degree in flat coordinates.
Vec semilinear_field(const ProblemSpec& problem, double lambda_res, const Vec& x);

struct KrasnoselskiiEntry {
    double t = 0.0;
    int index = 0;
    bool computable = false;
    bool agrees = false;
};

struct KrasnoselskiiReport {
    SemilinearDegreeReport degree;
    std::vector<KrasnoselskiiEntry> entries;
    double largest_agreeing_t = 0.0;
    double stationary_margin = 0.0;
    bool all_agree = false;
};

// Compares ind(Phi_t, U) with the semilinear degree for each t in t_list
// (autonomous problems; U the box of given radius around `center`).
KrasnoselskiiReport krasnoselskii_check(const ProblemSpec& problem, double radius,
                                        const std::vector<double>& t_list,
                                        DegreeOptions opts = {}, const Vec* center = nullptr);

}  // namespace trajlab
