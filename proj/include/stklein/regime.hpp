#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "stklein/kinematics.hpp"

namespace stklein {

/// Slopes of the four characteristic transition lines from the incident
/// point to the medium-2 hyperbola. Entries are empty when the line does
/// not exist for this configuration (vertical line, no real tangent).
struct CriticalVelocities {
    std::optional<double> v_up_min;
    std::optional<double> v_low_max;
    std::optional<double> v_up_tan;
    std::optional<double> v_low_tan;

    /// up_min <= up_tan <= low_tan <= low_max, the ordering of an upward
    /// scalar step with r_A/V < 1. Advisory only; false when any is missing.
    bool upward_step_ordering() const;
};

enum class RegimeLabel {
    SubcriticalPlus,
    AboveUpMinPlus,
    KleinGap,
    BelowLowMaxMinus,
    MinusOnly,
    NoCatchUp,
    InvalidGapCondition,
};

struct Regime {
    RegimeLabel label = RegimeLabel::SubcriticalPlus;
    std::optional<Branch> selected_branch;
};

std::string_view to_string(RegimeLabel label);
std::string_view to_string(Branch branch);

/// (v_up_min, v_low_max) = ((E_i - qV_2 -+ 1) / (p_i - qA_2)).
std::pair<double, double> simple_critical_velocities(const IncidentState& incident,
                                                     Region region2);

/// (v_up_tan, v_low_tan): slopes of the two tangents from the incident point
/// to the medium-2 hyperbola. Throws DomainError when none is real.
std::pair<double, double> tangent_velocities(const IncidentState& incident, Region region2);

/// All four critical velocities, leaving undefined ones empty.
CriticalVelocities critical_velocities(const IncidentState& incident, Region region2);

/// Regime of a step problem. The transmitted branch is chosen by requiring
/// the transmitted group velocity to outrun the front, not from interval
/// arithmetic on the critical velocities.
Regime classify(const StepProblem& problem);

}  // namespace stklein
