// Isolating box blocks for vector fields: face classification by the sign of
// the outward normal component, exit-set Euler characteristics on the cubical
// boundary complex, and the degree/index identities they certify.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trajlab/degree.hpp"
#include "trajlab/problems.hpp"

namespace trajlab {

enum class FaceLabel { egress, ingress };

// Face (axis j, side s) is indexed 2*j + s with s = 0 for the lower face.
struct BoxBlock {
    Box box;
    std::vector<FaceLabel> face_labels;
    int sample_density = 8;
};

// Classification failure: a face where the outward component changes sign or
// falls inside the transversality margin.
struct BlockRejection : Error {
    BlockRejection(const std::string& msg, int face_, Vec sample_)
        : Error(msg), face(face_), sample(std::move(sample_)) {}
    int face;
    Vec sample;
};

inline constexpr double kTransversalityMargin = 1e-8;

BoxBlock classify_faces(const FieldFn& field, const Box& box, int sample_density = 8);

// chi of the union of the closed egress faces, by alternating cell counts.
int euler_exit_set(const BoxBlock& block);

struct BlockReport {
    int chi_B = 1;
    int chi_Bminus = 0;
    std::optional<int> deg_minus_f;
    std::optional<int> index_pi_t;
    double t_used = 0.0;
    std::optional<bool> agree;
    std::string note;
};

BlockReport poincare_hopf_check(const FieldFn& field, const Box& box, double t,
                                int sample_density = 8, DegreeOptions opts = {});

// Dissipative semiflow version: the coefficient box of the given radius must be
// attracting (all faces ingress), so B^- is empty and every index equals 1.
BlockReport semiflow_block_check(const ProblemSpec& problem, double radius, double t,
                                 DegreeOptions opts = {});

}  // namespace trajlab
