#include "stklein/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace stklein::oracle {

std::vector<PlanePoint> intersect_line_hyperbola(const LineHyperbolaProblem& problem) {
    // y = n x + c against (y - k)^2 - (x - h)^2 = 1 (a = b = m = 1).
    const double n = problem.slope;
    const double h = problem.hyperbola.qA;
    const double k = problem.hyperbola.qV;
    const double c = problem.anchor_E - n * problem.anchor_p;

    // Shift x by h and y by k so the coefficients stay O(offsets) and do not
    // mix in the absolute potentials.
    const double d = c - k + n * h;  // line intercept in shifted coordinates
    const double A = n * n - 1.0;
    const double B = 2.0 * n * d;
    const double C = d * d - 1.0;

    const double disc = B * B - 4.0 * A * C;
    std::vector<PlanePoint> out;
    auto push = [&](double xs) { out.push_back({xs + h, n * xs + d + k}); };

    if (std::abs(disc) <= 1e-12 * B * B || disc == 0.0) {
        push(-B / (2.0 * A));
        return out;
    }
    if (disc < 0.0) return out;

    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    const double x1 = q / A;
    const double x2 = C / q;
    push(std::min(x1, x2));
    push(std::max(x1, x2));
    return out;
}

std::vector<double> radicand_roots_scan(const ScalarFunction& f, double lo, double hi) {
    constexpr int kSamples = 1024;
    constexpr double kTol = 1e-12;

    std::vector<double> roots;
    double x_prev = lo;
    double f_prev = f(lo);
    if (f_prev == 0.0) roots.push_back(lo);
    for (int i = 1; i < kSamples; ++i) {
        const double x = i == kSamples - 1 ? hi : lo + (hi - lo) * i / (kSamples - 1);
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
            double a = x_prev;
            double b = x;
            double fa = f_prev;
            while (b - a > kTol) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

double radicand_root_scan(const ScalarFunction& f, double lo, double hi) {
    const auto roots = radicand_roots_scan(f, lo, hi);
    if (roots.empty()) {
        throw NoRoot("no sign change found in the scanned bracket");
    }
    return roots.front();
}

ScalarFunction radicand_in_velocity(const IncidentState& incident, Region region2) {
    const double a = incident.energy() - region2.qV;
    const double b = incident.momentum() - region2.qA;
    return [a, b](double v) {
        const double w = a - v * b;
        return w * w - (1.0 - v * v);
    };
}

ScalarFunction radicand_in_step(const IncidentState& incident, double v_m, double r_AV) {
    const double eps = incident.kinetic_energy();
    const double pi = incident.kinetic_momentum();
    return [eps, pi, v_m, r_AV](double dV) {
        const double w = (eps - dV) - v_m * (pi - r_AV * dV);
        return w * w - (1.0 - v_m * v_m);
    };
}

StaticSolution static_matching_solve(double E_i, Region region1, Region region2) {
    const double eps1 = E_i - region1.qV;
    const double eps2 = E_i - region2.qV;
    if (eps1 < 1.0) {
        throw DomainError("incident energy below the positive branch");
    }
    if (std::abs(eps2) < 1.0) {
        throw EvanescentStatic("static step inside the Klein gap");
    }
    const double k1 = std::sqrt(eps1 * eps1 - 1.0);
    if (!(k1 > 0.0)) {
        throw DomainError("incident electron at rest");
    }
    const double k2 = std::sqrt(eps2 * eps2 - 1.0);
    // Forward group velocity: kinetic momentum carries the sign of eps2.
    const double kt = eps2 > 0.0 ? k2 : -k2;

    // Lower components u2 = (E - qV - m) / (p - qA); in region 1 the reflected
    // wave has kinetic momentum -k1.
    auto lower = [](double eps, double k) { return k != 0.0 ? (eps - 1.0) / k : 0.0; };
    const double u_i = lower(eps1, k1);
    const double u_r = lower(eps1, -k1);
    const double u_t = kt != 0.0 ? lower(eps2, kt) : 0.0;

    // Continuity at the step: (1, u_i) + r (1, u_r) = t (1, u_t).
    //   r - t = -1
    //   u_r r - u_t t = -u_i
    const double det = -u_t + u_r;
    if (det == 0.0) {
        throw DegenerateChannels("static matching system is singular");
    }
    const double r = (u_t - u_i) / det;
    const double t = (u_r - u_i) / det;

    // j^z = psi^dagger sigma_x psi = 2 u1 u2 for real spinors.
    const double jz_i = 2.0 * u_i;
    const double jz_r = 2.0 * r * r * u_r;
    const double jz_t = 2.0 * t * t * u_t;

    StaticSolution s;
    s.r = r;
    s.t = t;
    s.R = -jz_r / jz_i;
    s.T = jz_t / jz_i;
    return s;
}

}  // namespace stklein::oracle
