#include "trajlab/resonance.hpp"

#include <cmath>
#include <random>

namespace trajlab {

KernelData kernel_data(const ProblemSpec& problem) {
    if (problem.variant != Variant::resonant_wave)
        throw Error("kernel_data: resonant_wave variant required");
    const int N = problem.basis.modes;
    if (problem.kstar < 1 || problem.kstar > N) throw Error("kernel_data: kstar out of range");
    const double mu_star = problem.basis.eigenvalue(problem.kstar);
    const double tol = 1e-12 * (1.0 + mu_star);
    KernelData kd;
    for (int k = 1; k <= N; ++k) {
        const double mu = problem.basis.eigenvalue(k);
        if (std::abs(mu - mu_star) < tol)
            kd.kernel_modes.push_back(k);
        else if (mu < mu_star)
            ++kd.k_minus;
    }
    kd.dim_N = static_cast<int>(kd.kernel_modes.size());
    return kd;
}

Vec reduced_average(const ProblemSpec& problem, const Vec& c) {
    KernelData kd = kernel_data(problem);
    if (c.size() != kd.dim_N) throw Error("reduced_average: kernel coordinate size mismatch");
    Vec u = Vec::Zero(problem.basis.modes);
    for (int i = 0; i < kd.dim_N; ++i) u(kd.kernel_modes[i] - 1) = c(i);

    const int G = problem.dealiased_grid();
    Vec nodes = collocation_nodes(problem.basis, G);
    Vec grid = synth(problem.basis, u, G);

    Vec tn, tw;
    const double T = problem.nonlinearity.period;
    gauss_legendre(problem.time_quadrature_nodes, T, tn, tw);

    Vec acc = Vec::Zero(kd.dim_N);
    Vec fgrid(G);
    for (int q = 0; q < tn.size(); ++q) {
        for (int m = 0; m < G; ++m)
            fgrid(m) = problem.nonlinearity.scalar_rule(tn(q), nodes(m), grid(m));
        Vec coeffs = analyze(problem.basis, fgrid);
        for (int i = 0; i < kd.dim_N; ++i) acc(i) += tw(q) * coeffs(kd.kernel_modes[i] - 1);
    }
    return acc / T;
}

namespace {

std::vector<Vec> kernel_sphere(int dim, int samples, unsigned seed) {
    std::vector<Vec> out;
    if (dim == 1) {
        out.push_back(Vec::Constant(1, 1.0));
        out.push_back(Vec::Constant(1, -1.0));
        return out;
    }
    if (dim == 2) {
        for (int i = 0; i < samples; ++i) {
            const double a = 2.0 * M_PI * i / samples;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            out.push_back(v);
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int i = 0; i < samples; ++i) {
        Vec v(dim);
        for (int j = 0; j < dim; ++j) v(j) = g(rng);
        out.push_back(v.normalized());
    }
    return out;
}

}  // namespace

LLVerdict landesman_lazer(const ProblemSpec& problem, int sphere_samples) {
    if (!problem.nonlinearity.limit_data)
        throw Error("landesman_lazer: nonlinearity has no limit data");
    const auto& ld = *problem.nonlinearity.limit_data;
    KernelData kd = kernel_data(problem);

    const int G = 256;
    Vec nodes = collocation_nodes(problem.basis, G);
    const double w = problem.basis.length / (G + 1);
    Vec tn, tw;
    const double T = problem.nonlinearity.period;
    gauss_legendre(problem.time_quadrature_nodes, T, tn, tw);

    LLVerdict v;
    v.plus_min = std::numeric_limits<double>::infinity();
    v.minus_max = -std::numeric_limits<double>::infinity();
    for (const Vec& psi : kernel_sphere(kd.dim_N, sphere_samples, 20240527)) {
        Vec u = Vec::Zero(problem.basis.modes);
        for (int i = 0; i < kd.dim_N; ++i) u(kd.kernel_modes[i] - 1) = psi(i);
        Vec phi = synth(problem.basis, u, G);
        double iplus = 0.0, iminus = 0.0;
        for (int q = 0; q < tn.size(); ++q) {
            double sp = 0.0, sm = 0.0;
            for (int m = 0; m < G; ++m) {
                const double p = phi(m);
                if (p > 0.0) {
                    sp += ld.liminf_plus(tn(q), nodes(m)) * p;
                    sm += ld.limsup_plus(tn(q), nodes(m)) * p;
                } else if (p < 0.0) {
                    sp += ld.limsup_minus(tn(q), nodes(m)) * p;
                    sm += ld.liminf_minus(tn(q), nodes(m)) * p;
                }
            }
            iplus += tw(q) * w * sp;
            iminus += tw(q) * w * sm;
        }
        v.plus_min = std::min(v.plus_min, iplus);
        v.minus_max = std::max(v.minus_max, iminus);
    }
    if (v.plus_min > 0.0) {
        v.kind = LLKind::LL_plus;
        v.margin = v.plus_min;
    } else if (v.minus_max < 0.0) {
        v.kind = LLKind::LL_minus;
        v.margin = -v.minus_max;
    }
    return v;
}

namespace {

// coordinate bounds for the product region U + B_r x B_R
Box product_box(const ProblemSpec& problem, const KernelData& kd, const Box& U, double r,
                double R) {
    const int N = problem.basis.modes;
    Box box;
    box.lo = Vec::Zero(2 * N);
    box.hi = Vec::Zero(2 * N);
    int ki = 0;
    for (int k = 1; k <= N; ++k) {
        const bool in_kernel =
            std::find(kd.kernel_modes.begin(), kd.kernel_modes.end(), k) != kd.kernel_modes.end();
        if (in_kernel) {
            box.lo(k - 1) = U.lo(ki);
            box.hi(k - 1) = U.hi(ki);
            ++ki;
        } else {
            const double bound = r / std::pow(problem.basis.eigenvalue(k), 0.25);
            box.lo(k - 1) = -bound;
            box.hi(k - 1) = bound;
        }
        box.lo(N + k - 1) = -R;
        box.hi(N + k - 1) = R;
    }
    return box;
}

bool in_product_region(const ProblemSpec& problem, const KernelData& kd, const Box& U, double r,
                       double R, const Vec& x) {
    const int N = problem.basis.modes;
    Vec rest = x.head(N);
    int ki = 0;
    for (int k : kd.kernel_modes) {
        const double c = x(k - 1);
        if (c < U.lo(ki) || c > U.hi(ki)) return false;
        rest(k - 1) = 0.0;
        ++ki;
    }
    if (frac_norm(problem.basis, rest, 0.5) > r) return false;
    return x.tail(N).norm() <= R;
}

}  // namespace

ResonanceIndexReport resonance_index(const ProblemSpec& problem, const Box& U, double r, double R,
                                     double epsilon, DegreeOptions opts) {
    ResonanceIndexReport rep;
    rep.kernel = kernel_data(problem);
    rep.epsilon = epsilon;
    if (U.dim() != rep.kernel.dim_N) throw Error("resonance_index: U dimension mismatch");

    FieldFn fbar = [&](const Vec& c) { return reduced_average(problem, c); };
    DegreeOptions kopts = opts;
    kopts.starts_per_dim = 8;
    DegreeReport kr = brouwer_degree(fbar, U, kopts);
    rep.kernel_boundary_margin = kr.boundary_margin;
    if (kr.boundary_margin <= 0.0)
        throw Error("resonance_index: reduced average vanishes on the kernel boundary");
    rep.deg_Fbar = kr.degree;
    if (kr.trusted) {
        const int parity = rep.kernel.k_minus % 2 == 0 ? 1 : -1;
        rep.formula_index = parity * kr.degree;
    } else {
        rep.note += "kernel degree untrusted; ";
    }

    ProblemSpec ps = problem;
    ps.epsilon = epsilon;
    FieldFn field = [&](const Vec& x) {
        State s = unflatten(ps, x);
        return Vec(x - flatten(poincare_map(ps, s)));
    };
    Box box = product_box(ps, rep.kernel, U, r, R);
    DegreeReport dr = brouwer_degree(field, box, opts);
    rep.fixed_points = dr.zeros;

    // boundary of the product region itself, by seeded random sampling
    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int N = ps.basis.modes;
    double margin = std::numeric_limits<double>::infinity();
    for (int part = 0; part < 3; ++part) {
        for (int s = 0; s < 160; ++s) {
            Vec x(2 * N);
            for (int i = 0; i < 2 * N; ++i)
                x(i) = box.lo(i) + (box.hi(i) - box.lo(i)) * unif(rng);
            Vec rest = x.head(N);
            for (int k : rep.kernel.kernel_modes) rest(k - 1) = 0.0;
            // shrink the free factors strictly inside, then push one to its boundary
            const double nr = frac_norm(ps.basis, rest, 0.5);
            double shrink = nr > 0.0 ? std::min(1.0, 0.9 * r / nr) : 1.0;
            if (part != 1) {
                for (int k = 1; k <= N; ++k)
                    if (std::find(rep.kernel.kernel_modes.begin(), rep.kernel.kernel_modes.end(),
                                  k) == rep.kernel.kernel_modes.end())
                        x(k - 1) *= shrink;
            }
            if (x.tail(N).norm() > 0.0 && part != 2)
                x.tail(N) *= std::min(1.0, 0.9 * R / x.tail(N).norm());
            switch (part) {
                case 0: {  // kernel face
                    const int ki = static_cast<int>(rng() % rep.kernel.kernel_modes.size());
                    const int k = rep.kernel.kernel_modes[ki];
                    x(k - 1) = rng() % 2 == 0 ? U.lo(ki) : U.hi(ki);
                    break;
                }
                case 1: {  // |.|_{1/2} sphere of the complement
                    if (nr > 0.0)
                        for (int k = 1; k <= N; ++k)
                            if (std::find(rep.kernel.kernel_modes.begin(),
                                          rep.kernel.kernel_modes.end(),
                                          k) == rep.kernel.kernel_modes.end())
                                x(k - 1) *= r / nr;
                    break;
                }
                case 2:  // velocity sphere
                    if (x.tail(N).norm() > 0.0) x.tail(N) *= R / x.tail(N).norm();
                    break;
            }
            margin = std::min(margin, field(x).norm());
        }
    }
    rep.product_boundary_margin = margin;

    bool all_inside = true;
    for (const auto& z : rep.fixed_points)
        if (!in_product_region(ps, rep.kernel, U, r, R, z.point)) all_inside = false;
    if (dr.trusted && margin > 0.0 && all_inside) {
        rep.direct_index = dr.degree;
    } else {
        rep.note += "direct index uncertified";
        if (!all_inside) rep.note += " (fixed point outside the product region)";
        rep.note += "; ";
    }
    return rep;
}

ResonantContinuation find_periodic_resonant(const ProblemSpec& problem, double R0,
                                            const std::vector<double>& epsilon_schedule,
                                            double tol) {
    LLVerdict ll = landesman_lazer(problem);
    if (ll.kind == LLKind::neither)
        throw Error("find_periodic_resonant: Landesman-Lazer condition fails on both sides");

    ResonantContinuation res;
    State guess = zero_state(problem);
    double prev = 0.0;
    PeriodicOrbit last;
    bool have_last = false;
    for (size_t i = 0; i < epsilon_schedule.size();) {
        double target = epsilon_schedule[i];
        ProblemSpec ps = problem;
        ps.epsilon = target;
        try {
            PeriodicOrbit orbit = solve_periodic(ps, guess, tol);
            if (state_norm(problem, orbit.initial) >= R0) {
                res.boundary_hit = true;
                res.last_epsilon = prev;
                res.message =
                    "iterate reached the a priori bound R0 at epsilon=" + std::to_string(target);
                return res;
            }
            prev = target;
            last = orbit;
            have_last = true;
            guess = orbit.initial;
            res.log.emplace_back(target, orbit.residual);
            res.last_epsilon = target;
            ++i;
        } catch (const SolverFailure&) {
            const double mid = 0.5 * (prev + target);
            if (target - prev < 1e-4) {
                res.message = "continuation stalled at epsilon=" + std::to_string(prev);
                return res;
            }
            // retry through an inserted midpoint
            ProblemSpec pm = problem;
            pm.epsilon = mid;
            try {
                PeriodicOrbit orbit = solve_periodic(pm, guess, tol);
                prev = mid;
                guess = orbit.initial;
                res.log.emplace_back(mid, orbit.residual);
            } catch (const SolverFailure&) {
                res.message = "continuation stalled at epsilon=" + std::to_string(prev);
                return res;
            }
        }
    }
    if (have_last && std::abs(prev - 1.0) < 1e-12) res.orbit = last;
    res.message = res.orbit ? "reached epsilon=1" : "schedule exhausted before epsilon=1";
    return res;
}

}  // namespace trajlab
