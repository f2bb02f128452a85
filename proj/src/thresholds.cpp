#include "stklein/thresholds.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace stklein {

namespace {

void require_gap_ratio(double r_AV) {
    if (!(r_AV < 1.0)) {
        throw InvalidGapCondition("Klein gap requires r_A/V < 1");
    }
}

void require_unit_interval(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string(what) + " must lie in (0, 1)");
    }
}

}  // namespace

double comoving_kinetic_offset(const IncidentState& incident, Rapidity modulation) {
    const double w_g = std::asinh(incident.kinetic_momentum());
    const double w_m = modulation.value();
    return std::cosh(w_g - w_m) / std::cosh(w_m);
}

GapSpec gap_edges(const IncidentState& incident, Rapidity modulation, double r_AV) {
    require_gap_ratio(r_AV);
    if (modulation.value() < 0.0) {
        throw DomainError("gap edges require 0 <= v_m < 1");
    }
    const double v = modulation.velocity();
    const double inv_gamma = 1.0 / modulation.gamma();
    const double offset = comoving_kinetic_offset(incident, modulation);
    const double denom = 1.0 - v * r_AV;

    GapSpec g;
    g.qdV_plus = (offset - inv_gamma) / denom;
    g.qdV_minus = (offset + inv_gamma) / denom;
    g.width = 2.0 * inv_gamma / denom;
    g.r_AV = r_AV;
    g.v_m = v;
    return g;
}

GapSpec gap_edges(const IncidentState& incident, double v_m, double r_AV) {
    if (!(v_m >= 0.0 && v_m < 1.0)) {
        throw DomainError("gap edges require 0 <= v_m < 1");
    }
    return gap_edges(incident, Rapidity::from_velocity(v_m), r_AV);
}

double gap_width(double v_m, double r_AV) {
    require_gap_ratio(r_AV);
    if (!(v_m >= 0.0 && v_m < 1.0)) {
        throw DomainError("gap width requires 0 <= v_m < 1");
    }
    return 2.0 * std::sqrt((1.0 - v_m) * (1.0 + v_m)) / (1.0 - v_m * r_AV);
}

WidthExtremum gap_width_extrema(double r_AV) {
    require_gap_ratio(r_AV);
    if (r_AV <= 0.0) {
        return {0.0, 2.0};
    }
    return {r_AV, 2.0 / std::sqrt((1.0 - r_AV) * (1.0 + r_AV))};
}

double velocity_matching_threshold(double v_g) {
    require_unit_interval(v_g, "group velocity");
    return velocity_matching_threshold(Rapidity::from_velocity(v_g));
}

double velocity_matching_threshold(Rapidity omega_g) {
    if (!(omega_g.value() > 0.0)) {
        throw DomainError("group velocity must lie in (0, 1)");
    }
    return 2.0 * std::exp(-omega_g.value());
}

ThresholdPoint min_threshold_over_energy(double v_m, double r_AV) {
    require_unit_interval(v_m, "modulation velocity");
    require_gap_ratio(r_AV);
    const Rapidity w_m = Rapidity::from_velocity(v_m);

    // The lower edge grows with E_i wherever v_g > v_m, so the infimum sits at
    // the open boundary E_i = gamma_m. Search log(E_i) from just inside that
    // boundary up to the energy where v_g = 1 - 1e-15.
    const double gamma_m = w_m.gamma();
    const double e_lo = gamma_m * (1.0 + 1e-12);
    const double e_cap = Rapidity::from_velocity(1.0 - 1e-15).gamma();
    const double e_hi = std::max(e_cap, 1e3 * gamma_m);

    auto edge = [&](double log_e) {
        const double eps = std::exp(log_e);
        const double pi = std::sqrt((eps - 1.0) * (eps + 1.0));
        const IncidentState in = IncidentState::make(eps, pi, Region{});
        return gap_edges(in, w_m, r_AV).qdV_minus;
    };

    std::uintmax_t max_iter = 500;
    const auto [log_e, value] = boost::math::tools::brent_find_minima(
        edge, std::log(e_lo), std::log(e_hi), std::numeric_limits<double>::digits / 2,
        max_iter);

    ThresholdPoint tp;
    tp.qdV_th = value;
    tp.E_i = std::exp(log_e);
    tp.v_m = v_m;
    tp.omega_m = w_m.value();
    tp.omega_g = std::acosh(tp.E_i);
    return tp;
}

double field_ratio(double v_g, double L_over_lambdaC) {
    require_unit_interval(v_g, "group velocity");
    return field_ratio(Rapidity::from_velocity(v_g), L_over_lambdaC);
}

double field_ratio(Rapidity omega_g, double L_over_lambdaC) {
    if (!(L_over_lambdaC > 0.0)) {
        throw DomainError("step thickness must be positive");
    }
    return velocity_matching_threshold(omega_g) / L_over_lambdaC;
}

}  // namespace stklein
