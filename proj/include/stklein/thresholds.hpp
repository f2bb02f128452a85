#pragma once

#include "stklein/kinematics.hpp"

namespace stklein {

/// Klein-gap edges in the scalar offset qdV = qV_2 - qV_1, with the vector
/// offset tied to it by qdA = r_AV * qdV. The gap is (qdV_plus, qdV_minus).
struct GapSpec {
    double qdV_plus = 0.0;
    double qdV_minus = 0.0;
    double width = 0.0;
    double r_AV = 0.0;
    double v_m = 0.0;
};

/// Threshold located on the velocity-matching side of the E_i axis.
struct ThresholdPoint {
    double qdV_th = 0.0;
    /// E_i - qV_1
    double E_i = 0.0;
    double v_m = 0.0;
    double omega_g = 0.0;
    double omega_m = 0.0;
};

struct WidthExtremum {
    double v_at_max = 0.0;
    double width_max = 0.0;
};

/// (E_i - qV_1) - v_m (p_i - qA_1) evaluated as cosh(w_g - w_m) / cosh(w_m),
/// which keeps full relative precision when v_m and v_g are both near 1.
double comoving_kinetic_offset(const IncidentState& incident, Rapidity modulation);

/// Edges qdV^{+-} = (offset -+ 1/gamma_m) / (1 - v_m r_AV). Region-1
/// potentials are shifted out. Throws InvalidGapCondition for r_AV >= 1.
GapSpec gap_edges(const IncidentState& incident, Rapidity modulation, double r_AV);
GapSpec gap_edges(const IncidentState& incident, double v_m, double r_AV);

/// (2 / gamma_m) / (1 - v_m r_AV)
double gap_width(double v_m, double r_AV);

/// Maximum of the gap width over v_m in [0, 1) at fixed r_AV < 1:
/// (r_AV, 2 / sqrt(1 - r_AV^2)) for 0 < r_AV, (0, 2) otherwise.
WidthExtremum gap_width_extrema(double r_AV);

/// 2 e^{-omega_g} = 2 sqrt((1 - v_g) / (1 + v_g)), the lower edge at v_m = v_g
/// with r_AV = -1.
double velocity_matching_threshold(double v_g);
double velocity_matching_threshold(Rapidity omega_g);

/// Infimum over E_i of the lower gap edge at fixed (v_m, r_AV), subject to
/// the electron outrunning the front (v_g > v_m).
ThresholdPoint min_threshold_over_energy(double v_m, double r_AV);

/// E / E_c = 2 e^{-omega_g} / (L / lambda_C) for a step realized over L.
double field_ratio(double v_g, double L_over_lambdaC);
double field_ratio(Rapidity omega_g, double L_over_lambdaC);

}  // namespace stklein
