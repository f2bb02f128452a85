#include "stklein/regime.hpp"

#include <cmath>

namespace stklein {

std::string_view to_string(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::SubcriticalPlus: return "subcritical_plus";
        case RegimeLabel::AboveUpMinPlus: return "above_up_min_plus";
        case RegimeLabel::KleinGap: return "klein_gap";
        case RegimeLabel::BelowLowMaxMinus: return "below_low_max_minus";
        case RegimeLabel::MinusOnly: return "minus_only";
        case RegimeLabel::NoCatchUp: return "no_catch_up";
        case RegimeLabel::InvalidGapCondition: return "invalid_gap_condition";
    }
    return "unknown";
}

std::string_view to_string(Branch branch) {
    switch (branch) {
        case Branch::Plus: return "plus";
        case Branch::Minus: return "minus";
        case Branch::Reflected: return "reflected";
    }
    return "unknown";
}

bool CriticalVelocities::upward_step_ordering() const {
    if (!v_up_min || !v_low_max || !v_up_tan || !v_low_tan) return false;
    return *v_up_min <= *v_up_tan && *v_up_tan <= *v_low_tan && *v_low_tan <= *v_low_max;
}

std::pair<double, double> simple_critical_velocities(const IncidentState& incident,
                                                     Region region2) {
    const double a = incident.energy() - region2.qV;
    const double b = incident.momentum() - region2.qA;
    if (b == 0.0) {
        throw DomainError("p_i - qA_2 = 0: transition line to the branch extrema is vertical");
    }
    return {(a - 1.0) / b, (a + 1.0) / b};
}

std::pair<double, double> tangent_velocities(const IncidentState& incident, Region region2) {
    const double a = incident.energy() - region2.qV;
    const double b = incident.momentum() - region2.qA;
    const double disc = b * b - a * a + 1.0;
    if (disc < 0.0) {
        throw DomainError("no real tangent from the incident point to the medium-2 hyperbola");
    }
    const double root = std::sqrt(disc);
    const double denom = b * b + 1.0;
    // Roots of (b^2 + 1) v^2 - 2ab v + (a^2 - 1) = 0. The product form
    // (a^2 - 1) / (denom * v_other) avoids cancellation in the smaller root.
    const double ab = a * b;
    const double big = (ab + std::copysign(root, ab)) / denom;
    double v_plus = 0.0;   // ab - root
    double v_minus = 0.0;  // ab + root
    if (big == 0.0) {
        v_plus = v_minus = 0.0;
    } else if (ab >= 0.0) {
        v_minus = big;
        v_plus = (a * a - 1.0) / (denom * big);
    } else {
        v_plus = big;
        v_minus = (a * a - 1.0) / (denom * big);
    }
    return {v_plus, v_minus};
}

CriticalVelocities critical_velocities(const IncidentState& incident, Region region2) {
    CriticalVelocities cv;
    try {
        auto [up_min, low_max] = simple_critical_velocities(incident, region2);
        cv.v_up_min = up_min;
        cv.v_low_max = low_max;
    } catch (const DomainError&) {
    }
    try {
        auto [up_tan, low_tan] = tangent_velocities(incident, region2);
        cv.v_up_tan = up_tan;
        cv.v_low_tan = low_tan;
    } catch (const DomainError&) {
    }
    return cv;
}

Regime classify(const StepProblem& problem) {
    const auto& in = problem.incident();
    const double v = problem.v_m();

    // Equality is assigned to no-catch-up: the incident flux through the
    // front vanishes there.
    if (v >= group_velocity(in)) {
        return {RegimeLabel::NoCatchUp, std::nullopt};
    }

    const TransmittedChannels tc = transmitted_channels(problem);
    if (!tc.plus.propagating()) {
        return {RegimeLabel::KleinGap, std::nullopt};
    }

    const Region& r2 = problem.region2();
    const double vg_plus = group_velocity(tc.plus.E.real(), tc.plus.p.real(), r2);
    const double vg_minus = group_velocity(tc.minus.E.real(), tc.minus.p.real(), r2);
    const bool tangent =
        classify_radicand(tc.geometry.radicand, tc.geometry.W2) == RadicandClass::Tangent;

    Branch selected = Branch::Plus;
    if (tangent) {
        // Grazing channel: both roots coincide and move with the front. It
        // sits on the upper hyperbola when the comoving kinetic energy
        // gamma_m * W2 is positive.
        selected = tc.geometry.W2 > 0.0 ? Branch::Plus : Branch::Minus;
    } else {
        const bool plus_ok = vg_plus > v;
        const bool minus_ok = vg_minus > v;
        if (plus_ok == minus_ok) {
            throw InternalConsistencyError(
                "expected exactly one transmitted branch to outrun the front");
        }
        selected = plus_ok ? Branch::Plus : Branch::Minus;
    }

    const double dV = problem.step_scalar();
    const double dA = problem.step_vector();
    if (dV > 0.0 && dA >= dV) {
        return {RegimeLabel::InvalidGapCondition, selected};
    }

    // The interval labels differ by whether the rejected branch still has
    // positive lab group velocity (both roots on the same side of the
    // hyperbola extremum).
    const double other_vg = selected == Branch::Plus ? vg_minus : vg_plus;
    RegimeLabel label;
    if (selected == Branch::Plus) {
        label = other_vg > 0.0 ? RegimeLabel::AboveUpMinPlus : RegimeLabel::SubcriticalPlus;
    } else {
        label = other_vg > 0.0 ? RegimeLabel::BelowLowMaxMinus : RegimeLabel::MinusOnly;
    }
    return {label, selected};
}

}  // namespace stklein
