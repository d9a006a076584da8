#include "trajlab/conley.hpp"

#include <cmath>

#include "trajlab/integrator.hpp"

namespace trajlab {

namespace {

// iterate a (d-1)-dimensional sample grid on face (axis j, side s)
template <typename F>
void for_face_samples(const Box& box, int j, int side, int density, F&& visit) {
    const int n = box.dim();
    if (n == 1) {
        Vec x(1);
        x(0) = side == 0 ? box.lo(0) : box.hi(0);
        visit(x);
        return;
    }
    int d = density;
    while (std::pow(d, n - 1) > 8192 && d > 2) --d;
    const int total = static_cast<int>(std::pow(d, n - 1));
    for (int idx = 0; idx < total; ++idx) {
        Vec x(n);
        int rem = idx;
        for (int i = 0; i < n; ++i) {
            if (i == j) {
                x(i) = side == 0 ? box.lo(i) : box.hi(i);
            } else {
                const int gi = rem % d;
                rem /= d;
                x(i) = box.lo(i) + (box.hi(i) - box.lo(i)) * gi / (d - 1.0);
            }
        }
        visit(x);
    }
}

}  // namespace

BoxBlock classify_faces(const FieldFn& field, const Box& box, int sample_density) {
    const int n = box.dim();
    BoxBlock block;
    block.box = box;
    block.sample_density = sample_density;
    block.face_labels.resize(2 * n);
    for (int j = 0; j < n; ++j) {
        for (int side = 0; side < 2; ++side) {
            const double normal = side == 0 ? -1.0 : 1.0;
            bool any_out = false, any_in = false;
            Vec offender;
            for_face_samples(box, j, side, sample_density, [&](const Vec& x) {
                const double c = normal * field(x)(j);
                if (c > kTransversalityMargin)
                    any_out = true;
                else if (c < -kTransversalityMargin)
                    any_in = true;
                else if (offender.size() == 0)
                    offender = x;
                if ((any_out && any_in) && offender.size() == 0) offender = x;
            });
            const int face = 2 * j + side;
            if (offender.size() > 0 || (any_out && any_in))
                throw BlockRejection("face not uniformly transverse", face,
                                     offender.size() > 0 ? offender : Vec(box.lo));
            block.face_labels[face] = any_out ? FaceLabel::egress : FaceLabel::ingress;
        }
    }
    return block;
}

int euler_exit_set(const BoxBlock& block) {
    const int n = block.box.dim();
    // cells of the closed box: per axis one of {lo vertex, hi vertex, interval};
    // a cell lies in an egress face iff some axis is pinned at an egress side
    int chi = 0;
    const int total = static_cast<int>(std::pow(3, n));
    for (int code = 0; code < total; ++code) {
        int rem = code;
        int free_dims = 0;
        bool in_exit = false;
        for (int i = 0; i < n; ++i) {
            const int c = rem % 3;  // 0: lo, 1: hi, 2: interval
            rem /= 3;
            if (c == 2) {
                ++free_dims;
            } else if (block.face_labels[2 * i + c] == FaceLabel::egress) {
                in_exit = true;
            }
        }
        if (in_exit) chi += (free_dims % 2 == 0) ? 1 : -1;
    }
    return chi;
}

BlockReport poincare_hopf_check(const FieldFn& field, const Box& box, double t,
                                int sample_density, DegreeOptions opts) {
    BlockReport rep;
    rep.t_used = t;
    BoxBlock block = classify_faces(field, box, sample_density);
    rep.chi_Bminus = euler_exit_set(block);

    FieldFn neg = [&](const Vec& x) { return Vec(-field(x)); };
    DegreeReport dm = brouwer_degree(neg, box, opts);
    if (dm.trusted)
        rep.deg_minus_f = dm.degree;
    else
        rep.note += "deg(-f) untrusted: " + dm.note + "; ";

    // time-t flow map by classical RK4 on the field
    const int steps = std::max(32, static_cast<int>(std::ceil(t / 1e-4)));
    FieldFn displacement = [&](const Vec& x0) {
        Vec x = x0;
        const double h = t / steps;
        for (int s = 0; s < steps; ++s) {
            Vec k1 = field(x);
            Vec k2 = field(x + 0.5 * h * k1);
            Vec k3 = field(x + 0.5 * h * k2);
            Vec k4 = field(x + h * k3);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return Vec(x0 - x);
    };
    DegreeReport di = brouwer_degree(displacement, box, opts);
    if (di.trusted)
        rep.index_pi_t = di.degree;
    else
        rep.note += "ind(pi_t) untrusted: " + di.note + "; ";

    if (rep.deg_minus_f && rep.index_pi_t)
        rep.agree = (*rep.deg_minus_f == rep.chi_B - rep.chi_Bminus) &&
                    (*rep.index_pi_t == rep.chi_B - rep.chi_Bminus);
    return rep;
}

BlockReport semiflow_block_check(const ProblemSpec& problem, double radius, double t,
                                 DegreeOptions opts) {
    if (problem.variant != Variant::heat && problem.variant != Variant::constrained_heat)
        throw Error("semiflow_block_check: heat variants only");
    const int n = problem.basis.modes;
    Box box = Box::cube(n, 0.0, radius);
    FieldFn field = [&](const Vec& x) { return stationary_field(problem, x); };

    BoxBlock block = classify_faces(field, box, 8);
    for (int face = 0; face < 2 * n; ++face)
        if (block.face_labels[face] == FaceLabel::egress)
            throw BlockRejection("coefficient box is not forward-invariant", face, box.lo);

    BlockReport rep;
    rep.t_used = t;
    rep.chi_Bminus = 0;

    SemilinearDegreeReport sd = semilinear_degree(problem, radius, 1.0, opts);
    if (sd.report.trusted) rep.deg_minus_f = sd.report.degree;

    ProblemSpec ap = problem;
    if (!ap.nonlinearity.time_independent || ap.forcing) ap.averaged = true;
    FieldFn displacement = [&](const Vec& x) {
        State s = unflatten(ap, x);
        Trajectory traj = integrate(ap, s, 0.0, t, 64, 64);
        return Vec(x - flatten(traj.back()));
    };
    DegreeReport di = brouwer_degree(displacement, box, opts);
    if (di.trusted) rep.index_pi_t = di.degree;

    if (rep.deg_minus_f && rep.index_pi_t)
        rep.agree = (*rep.deg_minus_f == 1) && (*rep.index_pi_t == 1);
    return rep;
}

}  // namespace trajlab
