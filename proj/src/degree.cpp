#include "trajlab/degree.hpp"

#include <cmath>
#include <random>

#include "trajlab/integrator.hpp"

namespace trajlab {

Box Box::cube(int n, double center, double radius) {
    Box b;
    b.lo = Vec::Constant(n, center - radius);
    b.hi = Vec::Constant(n, center + radius);
    return b;
}

Box Box::centered(const Vec& center, double radius) {
    Box b;
    b.lo = center.array() - radius;
    b.hi = center.array() + radius;
    return b;
}

bool Box::contains(const Vec& x, double slack) const {
    for (int i = 0; i < dim(); ++i)
        if (x(i) < lo(i) - slack || x(i) > hi(i) + slack) return false;
    return true;
}

namespace {

Eigen::MatrixXd fd_jacobian(const FieldFn& field, const Vec& x, double step) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
        const double h = step * (1.0 + std::abs(x(j)));
        Vec xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        J.col(j) = (field(xp) - field(xm)) / (2.0 * h);
    }
    return J;
}

// Determinant sign with a relative smallness verdict (Hadamard-normalized).
struct DetSign {
    int sign = 0;
    bool hyperbolic = false;
};

DetSign det_sign(const Eigen::MatrixXd& J, double rel_tol) {
    DetSign out;
    const int n = static_cast<int>(J.rows());
    double colnorm_prod = 1.0;
    for (int j = 0; j < n; ++j) colnorm_prod *= J.col(j).norm();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    double det = lu.determinant();
    out.sign = det > 0 ? 1 : (det < 0 ? -1 : 0);
    out.hyperbolic = colnorm_prod > 0.0 && std::abs(det) > rel_tol * colnorm_prod;
    return out;
}

bool newton_zero(const FieldFn& raw_field, const Box& box, Vec& x, double tol, double jac_step) {
    // a wild iterate can make the field itself blow up (e.g. time-t maps of
    // stiff problems); treat that as an abandoned run, not a fatal error
    bool bad = false;
    const FieldFn field = [&](const Vec& p) -> Vec {
        try {
            return raw_field(p);
        } catch (const std::exception&) {
            bad = true;
            return Vec::Constant(box.dim(), std::numeric_limits<double>::infinity());
        }
    };
    Vec f = field(x);
    if (bad) return false;
    for (int it = 0; it < 60; ++it) {
        if (f.norm() <= tol) return true;
        Eigen::MatrixXd J = fd_jacobian(field, x, jac_step);
        if (bad) return false;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        lu.setThreshold(1e-13);
        if (lu.rank() < box.dim()) return false;
        Vec dx = lu.solve(f);
        double alpha = 1.0;
        for (int ls = 0; ls < 8; ++ls) {
            Vec xn = x - alpha * dx;
            Vec fn = field(xn);
            if (bad) return false;
            if (fn.norm() < f.norm()) {
                x = xn;
                f = fn;
                break;
            }
            alpha *= 0.5;
            if (ls == 7) return false;
        }
        // abandon runs that leave the doubled box
        for (int i = 0; i < box.dim(); ++i) {
            const double w = box.hi(i) - box.lo(i);
            if (x(i) < box.lo(i) - w || x(i) > box.hi(i) + w) return false;
        }
    }
    return field(x).norm() <= tol;
}

double boundary_margin_sample(const FieldFn& field, const Box& box, int density) {
    const int n = box.dim();
    double margin = std::numeric_limits<double>::infinity();
    if (n == 1) {
        margin = std::min(field(box.lo).norm(), field(box.hi).norm());
        return margin;
    }
    // cap total samples per face
    int d = density;
    while (std::pow(d, n - 1) > 4096 && d > 2) --d;
    const int per_face = static_cast<int>(std::pow(d, n - 1));
    for (int j = 0; j < n; ++j) {
        for (int side = 0; side < 2; ++side) {
            for (int idx = 0; idx < per_face; ++idx) {
                Vec x(n);
                int rem = idx;
                for (int i = 0, slot = 0; i < n; ++i) {
                    if (i == j) {
                        x(i) = side == 0 ? box.lo(i) : box.hi(i);
                    } else {
                        const int gi = rem % d;
                        rem /= d;
                        x(i) = box.lo(i) + (box.hi(i) - box.lo(i)) * (gi + 0.5) / d;
                        (void)slot;
                    }
                }
                margin = std::min(margin, field(x).norm());
            }
        }
    }
    return margin;
}

double angle_delta(double a0, double a1) {
    double d = a1 - a0;
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    return d;
}

// Accumulated turn of the field along the segment p0 -> p1, refined until
// consecutive angle increments are small.
bool winding_segment(const FieldFn& field, const Vec& p0, const Vec& p1, double a0, double a1,
                     int depth, double& total) {
    const double d = angle_delta(a0, a1);
    if (std::abs(d) < 0.5) {
        total += d;
        return true;
    }
    if (depth > 40 || (p1 - p0).norm() < 1e-13) return false;
    Vec pm = 0.5 * (p0 + p1);
    Vec fm = field(pm);
    if (fm.norm() == 0.0) return false;
    const double am = std::atan2(fm(1), fm(0));
    return winding_segment(field, p0, pm, a0, am, depth + 1, total) &&
           winding_segment(field, pm, p1, am, a1, depth + 1, total);
}

}  // namespace

int winding_number_2d(const FieldFn& field, const Box& box, bool& ok) {
    ok = false;
    std::vector<Vec> corners;
    Vec c(2);
    c << box.lo(0), box.lo(1);
    corners.push_back(c);
    c << box.hi(0), box.lo(1);
    corners.push_back(c);
    c << box.hi(0), box.hi(1);
    corners.push_back(c);
    c << box.lo(0), box.hi(1);
    corners.push_back(c);
    corners.push_back(corners.front());

    const int base = 16;  // initial samples per edge
    std::vector<Vec> pts;
    for (int e = 0; e < 4; ++e)
        for (int i = 0; i < base; ++i) {
            const double s = static_cast<double>(i) / base;
            pts.push_back(corners[e] + s * (corners[e + 1] - corners[e]));
        }
    pts.push_back(corners.front());

    double total = 0.0;
    Vec f0 = field(pts[0]);
    if (f0.norm() == 0.0) return 0;
    double a0 = std::atan2(f0(1), f0(0));
    for (size_t i = 1; i < pts.size(); ++i) {
        Vec f1 = field(pts[i]);
        if (f1.norm() == 0.0) return 0;
        const double a1 = std::atan2(f1(1), f1(0));
        if (!winding_segment(field, pts[i - 1], pts[i], a0, a1, 0, total)) return 0;
        a0 = a1;
    }
    const double w = total / (2.0 * M_PI);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 1e-3) return 0;
    ok = true;
    return static_cast<int>(rounded);
}

DegreeReport brouwer_degree(const FieldFn& field, const Box& box, DegreeOptions opts) {
    const int n = box.dim();
    if (n < 1 || n > opts.max_dim) throw Error("brouwer_degree: dimension out of range");
    DegreeReport rep;
    rep.boundary_margin = boundary_margin_sample(field, box, opts.boundary_density);

    if (n == 1) {
        // dense scan + bisection: complete for isolated zeros, and the
        // endpoint signs certify the degree on their own
        const int M = 1024;
        const double fa = field(box.lo)(0), fb = field(box.hi)(0);
        double prev_x = box.lo(0), prev_f = fa;
        for (int i = 1; i <= M; ++i) {
            const double x = box.lo(0) + (box.hi(0) - box.lo(0)) * i / M;
            const double fx = field(Vec::Constant(1, x))(0);
            if ((prev_f < 0.0) != (fx < 0.0)) {
                double a = prev_x, b = x, va = prev_f;
                for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
                    const double m = 0.5 * (a + b);
                    const double vm = field(Vec::Constant(1, m))(0);
                    if ((va < 0.0) != (vm < 0.0))
                        b = m;
                    else {
                        a = m;
                        va = vm;
                    }
                }
                DegreeZero z;
                z.point = Vec::Constant(1, 0.5 * (a + b));
                z.residual = std::abs(field(z.point)(0));
                const double h = 1e-7 * (1.0 + std::abs(z.point(0)));
                const double d = (field(Vec::Constant(1, z.point(0) + h))(0) -
                                  field(Vec::Constant(1, z.point(0) - h))(0)) /
                                 (2.0 * h);
                z.jacobian_sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
                rep.zeros.push_back(std::move(z));
            }
            prev_x = x;
            prev_f = fx;
        }
        rep.degree = ((fb > 0) - (fb < 0) - ((fa > 0) - (fa < 0))) / 2;
        int sum = 0;
        for (const auto& z : rep.zeros) sum += z.jacobian_sign;
        rep.method = sum == rep.degree ? DegreeMethod::regular_sum : DegreeMethod::winding_1d;
        rep.trusted = rep.boundary_margin > 0.0;
        return rep;
    }

    // multistart Newton zero enumeration
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(-0.45, 0.45);
    int spd = opts.starts_per_dim;
    while (std::pow(spd, n) > 4096 && spd > 2) --spd;
    const int total_starts = static_cast<int>(std::pow(spd, n));
    std::vector<DegreeZero> zeros;
    bool all_hyperbolic = true;
    for (int s = 0; s < total_starts; ++s) {
        Vec x(n);
        int rem = s;
        for (int i = 0; i < n; ++i) {
            const int gi = rem % spd;
            rem /= spd;
            const double cell = (box.hi(i) - box.lo(i)) / spd;
            x(i) = box.lo(i) + cell * (gi + 0.5 + jitter(rng));
        }
        if (!newton_zero(field, box, x, opts.newton_tol, opts.jacobian_step)) continue;
        if (!box.contains(x)) continue;
        bool dup = false;
        for (const auto& z : zeros)
            if ((z.point - x).norm() < opts.dedupe_distance) {
                dup = true;
                break;
            }
        if (dup) continue;
        DegreeZero z;
        z.point = x;
        z.residual = field(x).norm();
        DetSign ds = det_sign(fd_jacobian(field, x, opts.jacobian_step), opts.hyperbolic_tol);
        z.jacobian_sign = ds.sign;
        if (!ds.hyperbolic) all_hyperbolic = false;
        zeros.push_back(std::move(z));
    }
    rep.zeros = zeros;

    if (all_hyperbolic) {
        rep.method = DegreeMethod::regular_sum;
        rep.degree = 0;
        for (const auto& z : zeros) rep.degree += z.jacobian_sign;
        rep.trusted = rep.boundary_margin > 0.0;
        if (n == 2 && rep.trusted) {
            // winding is certified by the boundary alone; prefer it when the
            // enumeration missed a zero or mistook a degenerate one
            bool ok = false;
            const int w = winding_number_2d(field, box, ok);
            if (ok && w != rep.degree) {
                rep.degree = w;
                rep.method = DegreeMethod::winding_2d;
                rep.note = "regular sum disagreed with the boundary winding";
            }
        }
        return rep;
    }

    if (n == 1) {
        rep.method = DegreeMethod::winding_1d;
        const double fa = field(box.lo)(0), fb = field(box.hi)(0);
        rep.degree = ((fb > 0) - (fb < 0) - ((fa > 0) - (fa < 0))) / 2;
        rep.trusted = rep.boundary_margin > 0.0;
        return rep;
    }
    if (n == 2) {
        rep.method = DegreeMethod::winding_2d;
        bool ok = false;
        rep.degree = winding_number_2d(field, box, ok);
        rep.trusted = ok && rep.boundary_margin > 0.0;
        if (!ok) rep.note = "winding refinement failed";
        return rep;
    }
    rep.method = DegreeMethod::regular_sum;
    for (const auto& z : zeros) rep.degree += z.jacobian_sign;
    rep.trusted = false;
    rep.note = "non-hyperbolic zero in dimension > 2";
    return rep;
}

namespace {

ProblemSpec autonomous_copy(const ProblemSpec& problem) {
    ProblemSpec ap = problem;
    if (!ap.nonlinearity.time_independent || ap.forcing) ap.averaged = true;
    ap.lambda = 1.0;
    return ap;
}

Vec apply_linear_blocks(const ProblemSpec& problem, const Vec& x) {
    const int N = problem.basis.modes;
    State s = unflatten(problem, x);
    State out = s;
    for (int k = 1; k <= N; ++k) {
        LinearBlock blk = linear_block(problem, k);
        if (blk.is_scalar) {
            out.u(k - 1) = blk.scalar * s.u(k - 1);
        } else {
            Eigen::Vector2d y = blk.mat * Eigen::Vector2d(s.u(k - 1), s.v(k - 1));
            out.u(k - 1) = y(0);
            out.v(k - 1) = y(1);
        }
    }
    return flatten(out);
}

}  // namespace

Vec stationary_field(const ProblemSpec& problem, const Vec& x) {
    ProblemSpec ap = autonomous_copy(problem);
    State s = unflatten(ap, x);
    return apply_linear_blocks(ap, x) + flatten(nemytskii(ap, 0.0, s));
}

Vec semilinear_field(const ProblemSpec& problem, double lambda_res, const Vec& x) {
    ProblemSpec ap = autonomous_copy(problem);
    State s = unflatten(ap, x);
    Vec y = lambda_res * x + flatten(nemytskii(ap, 0.0, s));
    State ys = unflatten(ap, y);
    State zs = ys;
    const int N = ap.basis.modes;
    for (int k = 1; k <= N; ++k) {
        LinearBlock blk = linear_block(ap, k);
        if (blk.is_scalar) {
            zs.u(k - 1) = ys.u(k - 1) / (lambda_res - blk.scalar);
        } else {
            Eigen::Matrix2d R = lambda_res * Eigen::Matrix2d::Identity() - blk.mat;
            Eigen::Vector2d z = R.partialPivLu().solve(Eigen::Vector2d(ys.u(k - 1), ys.v(k - 1)));
            zs.u(k - 1) = z(0);
            zs.v(k - 1) = z(1);
        }
    }
    return x - flatten(zs);
}

SemilinearDegreeReport semilinear_degree(const ProblemSpec& problem, double radius,
                                         double lambda_res, DegreeOptions opts, const Vec* center) {
    SemilinearDegreeReport out;
    out.lambda_res = lambda_res;
    ProblemSpec ap = autonomous_copy(problem);
    const int n = (ap.state_order() == StateOrder::first) ? ap.basis.modes : 2 * ap.basis.modes;
    Box box = center ? Box::centered(*center, radius) : Box::cube(n, 0.0, radius);

    const bool pure_linear = ap.nonlinearity.lipschitz_bound == 0.0 && !ap.forcing;
    if (pure_linear) {
        // diagonal / block-diagonal field: degree from per-mode Jacobian signs
        out.report.method = DegreeMethod::linear_spectral;
        int deg = 1;
        for (int k = 1; k <= ap.basis.modes; ++k) {
            LinearBlock blk = linear_block(ap, k);
            double det;
            if (blk.is_scalar) {
                det = 1.0 - lambda_res / (lambda_res - blk.scalar);
            } else {
                Eigen::Matrix2d R = lambda_res * Eigen::Matrix2d::Identity() - blk.mat;
                Eigen::Matrix2d J = Eigen::Matrix2d::Identity() - lambda_res * R.inverse();
                det = J.determinant();
            }
            deg *= det > 0 ? 1 : -1;
        }
        out.report.degree = deg;
        DegreeZero z;
        z.point = Vec::Zero(n);
        z.jacobian_sign = deg;
        out.report.zeros.push_back(z);
        FieldFn f = [&](const Vec& x) { return semilinear_field(ap, lambda_res, x); };
        out.report.boundary_margin = boundary_margin_sample(f, box, opts.boundary_density);
        out.report.trusted = out.report.boundary_margin > 0.0;
    } else {
        FieldFn f = [&](const Vec& x) { return semilinear_field(ap, lambda_res, x); };
        out.report = brouwer_degree(f, box, opts);
    }

    // truncation stability: recompute with doubled mode count when it fits
    const int n2 = 2 * n;
    if (n2 <= opts.max_dim && !ap.forcing) {
        ProblemSpec dp = ap;
        dp.basis = build_basis(ap.basis.kind, ap.basis.length, 2 * ap.basis.modes);
        dp.grid_size = 0;
        Vec c2 = Vec::Zero(n2);
        if (center) {
            // embed: u coefficients first, then v
            const int N = ap.basis.modes;
            if (ap.state_order() == StateOrder::first) {
                c2.head(N) = *center;
            } else {
                c2.head(N) = center->head(N);
                c2.segment(2 * N, N) = center->tail(N);
            }
        }
        FieldFn f2 = [&](const Vec& x) { return semilinear_field(dp, lambda_res, x); };
        DegreeReport r2 = brouwer_degree(f2, Box::centered(c2, radius), opts);
        out.truncation_checked = true;
        out.truncation_stable = r2.trusted && r2.degree == out.report.degree;
    }
    return out;
}

KrasnoselskiiReport krasnoselskii_check(const ProblemSpec& problem, double radius,
                                        const std::vector<double>& t_list, DegreeOptions opts,
                                        const Vec* center) {
    KrasnoselskiiReport rep;
    ProblemSpec ap = autonomous_copy(problem);
    const int n = (ap.state_order() == StateOrder::first) ? ap.basis.modes : 2 * ap.basis.modes;
    Box box = center ? Box::centered(*center, radius) : Box::cube(n, 0.0, radius);

    FieldFn stat = [&](const Vec& x) { return stationary_field(ap, x); };
    rep.stationary_margin = boundary_margin_sample(stat, box, opts.boundary_density);
    if (rep.stationary_margin <= 0.0)
        throw Error("krasnoselskii_check: stationary field vanishes on the boundary");

    rep.degree = semilinear_degree(ap, radius, 1.0, opts, center);

    for (double t : t_list) {
        KrasnoselskiiEntry e;
        e.t = t;
        FieldFn f = [&](const Vec& x) {
            State s = unflatten(ap, x);
            Trajectory traj = integrate(ap, s, 0.0, t, 16, 16);
            return Vec(x - flatten(traj.back()));
        };
        DegreeReport r = brouwer_degree(f, box, opts);
        e.computable = r.trusted;
        e.index = r.degree;
        e.agrees = r.trusted && r.degree == rep.degree.report.degree;
        rep.entries.push_back(e);
    }
    rep.all_agree = !rep.entries.empty();
    for (const auto& e : rep.entries) {
        if (e.agrees) rep.largest_agreeing_t = std::max(rep.largest_agreeing_t, e.t);
        if (!e.agrees) rep.all_agree = false;
    }
    return rep;
}

}  // namespace trajlab
