#include "trajlab/scenarios.hpp"

#include <cmath>

namespace trajlab {

namespace {

Nonlinearity arctan_res(double forcing_amp) {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.lipschitz_bound = 1.0;
    nl.scalar_rule = [forcing_amp](double t, double, double s) {
        return std::atan(s) + forcing_amp * std::sin(2.0 * M_PI * t);
    };
    Nonlinearity::LimitData ld;
    ld.liminf_plus = ld.limsup_plus = [forcing_amp](double t, double) {
        return M_PI / 2.0 + forcing_amp * std::sin(2.0 * M_PI * t);
    };
    ld.liminf_minus = ld.limsup_minus = [forcing_amp](double t, double) {
        return -M_PI / 2.0 + forcing_amp * std::sin(2.0 * M_PI * t);
    };
    nl.limit_data = ld;
    return nl;
}

Nonlinearity negate(Nonlinearity nl) {
    auto rule = nl.scalar_rule;
    nl.scalar_rule = [rule](double t, double x, double s) { return -rule(t, x, s); };
    if (nl.limit_data) {
        auto ld = *nl.limit_data;
        Nonlinearity::LimitData out;
        out.liminf_plus = [ld](double t, double x) { return -ld.limsup_plus(t, x); };
        out.limsup_plus = [ld](double t, double x) { return -ld.liminf_plus(t, x); };
        out.liminf_minus = [ld](double t, double x) { return -ld.limsup_minus(t, x); };
        out.limsup_minus = [ld](double t, double x) { return -ld.liminf_minus(t, x); };
        nl.limit_data = out;
    }
    return nl;
}

// (1 + cos) phase: the oscillatory part has a primitive vanishing at period
// boundaries, which keeps the stroboscopic averaging gap at second order.
Nonlinearity cosine_phase() {
    Nonlinearity nl;
    nl.period = 1.0;
    nl.lipschitz_bound = 0.8;
    nl.scalar_rule = [](double t, double x, double s) {
        const double c = std::cos(2.0 * M_PI * t);
        return (1.0 + c) * 0.4 * std::sin(s) + c * std::sin(x);
    };
    return nl;
}

ProblemSpec resonant_base(int kstar, Nonlinearity nl) {
    ProblemSpec p;
    p.variant = Variant::resonant_wave;
    p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
    p.nonlinearity = std::move(nl);
    p.beta = 1.0;
    p.kstar = kstar;
    p.epsilon = 1.0;
    p.steps_per_period = 256;
    return p;
}

}  // namespace

ProblemSpec scenario(const std::string& name) {
    if (name == "thm71") {
        // telegraph-type: linear-plus-bounded f with slope 0.5 off the spectrum
        ProblemSpec p;
        p.variant = Variant::damped_wave;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 8);
        p.beta = 1.0;
        p.nonlinearity.period = 1.0;
        p.nonlinearity.lipschitz_bound = 1.5;
        p.nonlinearity.scalar_rule = [](double t, double x, double s) {
            return 0.5 * s + std::atan(s) + std::cos(2.0 * M_PI * t) * std::sin(x);
        };
        p.nonlinearity.asymptotic_slope = [](double) { return 0.5; };
        p.steps_per_period = 256;
        p.tag = name;
        return p;
    }
    if (name == "avg_heat" || name == "avg_wave") {
        ProblemSpec p;
        p.variant = name == "avg_heat" ? Variant::heat : Variant::damped_wave;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 6);
        p.beta = 1.0;
        p.nonlinearity = cosine_phase();
        p.tag = name;
        return p;
    }
    if (name == "avg_autonomous") {
        ProblemSpec p;
        p.variant = Variant::heat;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 6);
        p.nonlinearity.period = 1.0;
        p.nonlinearity.lipschitz_bound = 0.4;
        p.nonlinearity.time_independent = true;
        p.nonlinearity.scalar_rule = [](double, double x, double s) {
            return 0.4 * std::sin(s) + 0.3 * std::sin(x);
        };
        p.tag = name;
        return p;
    }
    if (name == "dissipative_heat") {
        ProblemSpec p;
        p.variant = Variant::heat;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
        p.nonlinearity.period = 1.0;
        p.nonlinearity.lipschitz_bound = 12.0;
        p.nonlinearity.time_independent = true;
        p.nonlinearity.scalar_rule = [](double, double, double s) { return -s * s * s; };
        p.tag = name;
        return p;
    }
    if (name == "linear_heat") {
        ProblemSpec p;
        p.variant = Variant::heat;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
        p.nonlinearity = zero_nonlinearity(1.0);
        p.tag = name;
        return p;
    }
    if (name == "crossing_heat") {
        // slope 3 sits between the first two eigenvalues 1 and 4
        ProblemSpec p;
        p.variant = Variant::heat;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 3);
        p.nonlinearity.period = 1.0;
        p.nonlinearity.lipschitz_bound = 3.5;
        p.nonlinearity.time_independent = true;
        p.nonlinearity.scalar_rule = [](double, double, double s) {
            return 3.0 * s + 0.5 * std::atan(s);
        };
        p.nonlinearity.asymptotic_slope = [](double) { return 3.0; };
        p.tag = name;
        return p;
    }
    if (name == "cone") {
        ProblemSpec p;
        p.variant = Variant::constrained_heat;
        p.basis = build_basis(BoundaryKind::dirichlet_sine, M_PI, 4);
        p.nonlinearity.period = 1.0;
        p.nonlinearity.lipschitz_bound = 0.5;
        p.nonlinearity.scalar_rule = [](double t, double, double s) {
            return 0.5 * std::sin(2.0 * M_PI * t) * s + 1.0 + std::cos(2.0 * M_PI * t);
        };
        p.nonlinearity.asymptotic_slope = [](double t) {
            return 0.5 * std::sin(2.0 * M_PI * t);
        };
        p.steps_per_period = 512;
        p.tag = name;
        return p;
    }
    if (name == "resonant_arctan_k1") {
        ProblemSpec p = resonant_base(1, arctan_res(0.3));
        p.tag = name;
        return p;
    }
    if (name == "resonant_arctan_k2") {
        ProblemSpec p = resonant_base(2, arctan_res(0.3));
        p.tag = name;
        return p;
    }
    if (name == "resonant_neg_arctan_k1") {
        ProblemSpec p = resonant_base(1, negate(arctan_res(0.3)));
        p.tag = name;
        return p;
    }
    if (name == "beam_thm73") {
        ProblemSpec p;
        p.variant = Variant::beam;
        p.basis = build_basis(BoundaryKind::hinged_beam, M_PI, 2);
        p.nonlinearity = zero_nonlinearity(1.0);
        p.alpha = 0.05;
        p.beta = 1.0;
        p.sigma_coef = 0.5;
        p.a = 1.0;
        p.b = -2.5;
        p.forcing = [](double tau) {
            Vec f = Vec::Zero(2);
            f(0) = 0.3 * std::cos(2.0 * M_PI * tau);  // mean zero over the period
            return f;
        };
        p.steps_per_period = 256;
        p.tag = name;
        return p;
    }
    throw Error("unknown scenario: " + name);
}

std::vector<std::string> scenario_names() {
    return {"thm71",           "avg_heat",          "avg_wave",
            "avg_autonomous",  "dissipative_heat",  "linear_heat",
            "crossing_heat",   "cone",              "resonant_arctan_k1",
            "resonant_arctan_k2", "resonant_neg_arctan_k1", "beam_thm73"};
}

namespace {

Nonlinearity nonlinearity_from_json(const nlohmann::json& j) {
    const std::string name = j.value("name", "zero");
    const double period = j.value("period", 1.0);
    if (name == "zero") return zero_nonlinearity(period);
    Nonlinearity nl;
    nl.period = period;
    if (name == "arctan") {
        const double amp = j.value("amplitude", 1.0);
        const double forcing = j.value("forcing", 0.0);
        nl = arctan_res(forcing);
        if (amp != 1.0) {
            auto base = nl.scalar_rule;
            nl.scalar_rule = [base, amp, forcing](double t, double x, double s) {
                return amp * std::atan(s) + forcing * std::sin(2.0 * M_PI * t);
            };
        }
        nl.period = period;
        return nl;
    }
    if (name == "cubic") {
        const double c = j.value("coefficient", -1.0);
        nl.lipschitz_bound = j.value("lipschitz_bound", 12.0);
        nl.time_independent = true;
        nl.scalar_rule = [c](double, double, double s) { return c * s * s * s; };
        return nl;
    }
    if (name == "linear_plus_bounded") {
        const double slope = j.value("slope", 0.5);
        const double forcing = j.value("forcing", 1.0);
        nl.lipschitz_bound = slope + 1.0;
        nl.scalar_rule = [slope, forcing, period](double t, double x, double s) {
            return slope * s + std::atan(s) +
                   forcing * std::cos(2.0 * M_PI * t / period) * std::sin(x);
        };
        nl.asymptotic_slope = [slope](double) { return slope; };
        return nl;
    }
    if (name == "polynomial") {
        // coefficient table in s, constant term first
        std::vector<double> coeffs = j.at("coefficients").get<std::vector<double>>();
        nl.time_independent = true;
        nl.lipschitz_bound = j.value("lipschitz_bound", 1.0);
        nl.scalar_rule = [coeffs](double, double, double s) {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
            return acc;
        };
        return nl;
    }
    throw Error("unknown nonlinearity: " + name);
}

}  // namespace

ProblemSpec scenario_from_json(const nlohmann::json& j) {
    if (j.contains("scenario")) {
        ProblemSpec p = scenario(j.at("scenario").get<std::string>());
        if (j.contains("modes"))
            p.basis = build_basis(p.basis.kind, p.basis.length, j.at("modes").get<int>());
        if (j.contains("steps_per_period")) p.steps_per_period = j.at("steps_per_period");
        if (j.contains("epsilon")) p.epsilon = j.at("epsilon");
        if (j.contains("lambda")) p.lambda = j.at("lambda");
        return p;
    }
    ProblemSpec p;
    const std::string variant = j.value("variant", "heat");
    if (variant == "heat")
        p.variant = Variant::heat;
    else if (variant == "constrained_heat")
        p.variant = Variant::constrained_heat;
    else if (variant == "damped_wave")
        p.variant = Variant::damped_wave;
    else if (variant == "resonant_wave")
        p.variant = Variant::resonant_wave;
    else if (variant == "beam")
        p.variant = Variant::beam;
    else
        throw Error("unknown variant: " + variant);

    const double length = j.value("length", M_PI);
    const int modes = j.value("modes", 8);
    p.basis = build_basis(
        p.variant == Variant::beam ? BoundaryKind::hinged_beam : BoundaryKind::dirichlet_sine,
        length, modes);
    p.nonlinearity =
        j.contains("nonlinearity") ? nonlinearity_from_json(j.at("nonlinearity"))
                                   : zero_nonlinearity(1.0);
    p.beta = j.value("beta", 0.0);
    p.alpha = j.value("alpha", 0.0);
    p.sigma_coef = j.value("sigma", 0.0);
    p.a = j.value("a", 1.0);
    p.b = j.value("b", 0.0);
    p.kstar = j.value("kstar", p.variant == Variant::resonant_wave ? 1 : 0);
    p.epsilon = j.value("epsilon", 1.0);
    p.lambda = j.value("lambda", 1.0);
    p.steps_per_period = j.value("steps_per_period", 1024);
    p.time_quadrature_nodes = j.value("time_quadrature_nodes", 64);
    p.grid_size = j.value("grid_size", 0);
    p.tag = j.value("tag", std::string{});
    if (j.contains("forcing_modes")) {
        std::vector<double> amps = j.at("forcing_modes").get<std::vector<double>>();
        const double period = p.nonlinearity.period;
        const int N = p.basis.modes;
        p.forcing = [amps, period, N](double tau) {
            Vec f = Vec::Zero(N);
            for (int i = 0; i < N && i < static_cast<int>(amps.size()); ++i)
                f(i) = amps[i] * std::cos(2.0 * M_PI * tau / period);
            return f;
        };
    }
    return p;
}

}  // namespace trajlab
