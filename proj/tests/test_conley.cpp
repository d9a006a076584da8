#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trajlab/conley.hpp"
#include "trajlab/scenarios.hpp"

using namespace trajlab;

namespace {

FieldFn attractor2 = [](const Vec& x) { return Vec(-x); };
FieldFn saddle2 = [](const Vec& x) {
    Vec f(2);
    f << x(0), -x(1);
    return f;
};

// chi of a union of closed box faces by inclusion-exclusion over face
// intersections: every nonempty intersection is a closed cube, chi = 1
int chi_by_inclusion_exclusion(int n, const std::vector<int>& faces) {
    const int m = static_cast<int>(faces.size());
    int chi = 0;
    for (int mask = 1; mask < (1 << m); ++mask) {
        bool empty = false;
        for (int i = 0; i < m && !empty; ++i)
            for (int j = i + 1; j < m && !empty; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) &&
                    faces[i] / 2 == faces[j] / 2 && faces[i] != faces[j])
                    empty = true;  // opposite faces of one axis are disjoint
        if (empty) continue;
        chi += __builtin_popcount(mask) % 2 == 1 ? 1 : -1;
    }
    return chi;
}

BoxBlock block_with(int n, const std::vector<int>& egress) {
    BoxBlock b;
    b.box = Box::cube(n, 0.0, 1.0);
    b.face_labels.assign(2 * n, FaceLabel::ingress);
    for (int f : egress) b.face_labels[f] = FaceLabel::egress;
    return b;
}

}  // namespace

TEST_CASE("face classification on the canonical fields") {
    BoxBlock a = classify_faces(attractor2, Box::cube(2, 0.0, 1.0));
    for (auto label : a.face_labels) CHECK(label == FaceLabel::ingress);

    BoxBlock s = classify_faces(saddle2, Box::cube(2, 0.0, 1.0));
    CHECK(s.face_labels[0] == FaceLabel::egress);
    CHECK(s.face_labels[1] == FaceLabel::egress);
    CHECK(s.face_labels[2] == FaceLabel::ingress);
    CHECK(s.face_labels[3] == FaceLabel::ingress);

    FieldFn rotation = [](const Vec& x) {
        Vec f(2);
        f << -x(1), x(0);
        return f;
    };
    CHECK_THROWS_AS(classify_faces(rotation, Box::cube(2, 0.0, 1.0)), BlockRejection);
}

TEST_CASE("exit set Euler characteristics: squares") {
    CHECK(euler_exit_set(block_with(2, {})) == 0);
    CHECK(euler_exit_set(block_with(2, {0, 1})) == 2);        // two opposite segments
    CHECK(euler_exit_set(block_with(2, {0, 1, 2, 3})) == 0);  // the whole circle
    CHECK(euler_exit_set(block_with(2, {0})) == 1);           // one segment
    CHECK(euler_exit_set(block_with(2, {0, 2})) == 1);        // an L of two segments
}

TEST_CASE("cell counting matches inclusion-exclusion on all 3D label sets") {
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<int> egress;
        for (int f = 0; f < 6; ++f)
            if (mask >> f & 1) egress.push_back(f);
        CHECK(euler_exit_set(block_with(3, egress)) ==
              chi_by_inclusion_exclusion(3, egress));
    }
}

TEST_CASE("poincare-hopf identities on canonical blocks") {
    BlockReport a = poincare_hopf_check(attractor2, Box::cube(2, 0.0, 1.0), 1e-2);
    REQUIRE(a.agree);
    CHECK(*a.agree);
    CHECK(*a.deg_minus_f == 1);
    CHECK(a.chi_Bminus == 0);

    BlockReport s = poincare_hopf_check(saddle2, Box::cube(2, 0.0, 1.0), 1e-2);
    REQUIRE(s.agree);
    CHECK(*s.agree);
    CHECK(*s.deg_minus_f == -1);
    CHECK(s.chi_Bminus == 2);

    FieldFn saddle3 = [](const Vec& x) {
        Vec f(3);
        f << x(0), x(1), -x(2);
        return f;
    };
    BlockReport t = poincare_hopf_check(saddle3, Box::cube(3, 0.0, 1.0), 1e-2);
    REQUIRE(t.agree);
    CHECK(*t.agree);
    CHECK(*t.deg_minus_f == 1);
    CHECK(t.chi_Bminus == 0);  // the lateral tube is a cylinder
}

TEST_CASE("doubling the sample density never flips labels") {
    FieldFn skew = [](const Vec& x) {
        Vec f(2);
        f << x(0) + 0.3 * x(1), -x(1) + 0.2 * std::sin(x(0));
        return f;
    };
    BoxBlock coarse = classify_faces(skew, Box::cube(2, 0.0, 1.0), 8);
    BoxBlock fine = classify_faces(skew, Box::cube(2, 0.0, 1.0), 16);
    CHECK(coarse.face_labels == fine.face_labels);
}

TEST_CASE("semiflow block check on dissipative and expanding heat") {
    BlockReport ok = semiflow_block_check(scenario("dissipative_heat"), 2.0, 1e-2);
    REQUIRE(ok.agree);
    CHECK(*ok.agree);

    // an unstable mode pushes outward: rejection path
    Nonlinearity nl;
    nl.period = 1.0;
    nl.time_independent = true;
    nl.lipschitz_bound = 3.0;
    nl.scalar_rule = [](double, double, double s) { return 3.0 * s; };
    ProblemSpec bad;
    bad.variant = Variant::heat;
    bad.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
    bad.nonlinearity = nl;
    CHECK_THROWS_AS(semiflow_block_check(bad, 0.1, 1e-2), BlockRejection);
}
