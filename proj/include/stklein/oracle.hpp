#pragma once

#include <functional>
#include <vector>

#include "stklein/kinematics.hpp"

namespace stklein::oracle {

/// Line E = E_a + slope (p - p_a) against the unit hyperbola
/// (E - qV)^2 - (p - qA)^2 = 1 centered at (qA, qV).
struct LineHyperbolaProblem {
    double anchor_p = 0.0;
    double anchor_E = 0.0;
    double slope = 0.0;
    Region hyperbola;
};

struct PlanePoint {
    double p = 0.0;
    double E = 0.0;
};

/// Real intersections sorted by increasing p: 0, 1 (tangency) or 2 points.
/// Uses the cancellation-free quadratic root pair; tangency when the
/// discriminant is below 1e-12 B^2.
std::vector<PlanePoint> intersect_line_hyperbola(const LineHyperbolaProblem& problem);

using ScalarFunction = std::function<double(double)>;

/// Every root of f in [lo, hi] found by a 1024-sample pre-scan followed by
/// bisection of each sign-change cell to 1e-12 in the parameter.
std::vector<double> radicand_roots_scan(const ScalarFunction& f, double lo, double hi);

/// First root in [lo, hi]. Throws NoRoot when f never changes sign.
double radicand_root_scan(const ScalarFunction& f, double lo, double hi);

/// Transmitted radicand as a function of v_m, evaluated straight from
/// (E_i, p_i) and the medium-2 potentials.
ScalarFunction radicand_in_velocity(const IncidentState& incident, Region region2);

/// Transmitted radicand as a function of the scalar offset qdV with
/// qdA = r_AV * qdV at fixed v_m.
ScalarFunction radicand_in_step(const IncidentState& incident, double v_m, double r_AV);

struct StaticSolution {
    Complex r;
    Complex t;
    double R = 0.0;
    double T = 0.0;
};

/// Static (v_m = 0) step solved by direct spinor matching and j^z ratios.
/// Supercritical transmission goes to the lower branch with p - qA < 0 so
/// its group velocity points to +z. Throws EvanescentStatic inside the gap.
StaticSolution static_matching_solve(double E_i, Region region1, Region region2);

}  // namespace stklein::oracle
