#include "stklein/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace stklein {

namespace {

constexpr double kRemovableSingularity = 1e-12;
constexpr double kGapUnitarityTol = 1e-9;

}  // namespace

Complex gamma_ratio(Complex E, Complex p, Region region) {
    const Complex eps = E - region.qV;
    const Complex pi = p - region.qA;
    // On shell the two forms (eps - 1) / pi and pi / (eps + 1) coincide. The
    // second one has no cancellation on the upper branch and no pole at
    // pi = 0 there, so it is used on that side; the first on the lower one.
    const bool use_alt = std::abs(pi) < kRemovableSingularity || eps.real() > 0.0;
    if (use_alt) {
        const Complex denom = eps + 1.0;
        if (std::abs(denom) == 0.0) {
            if (std::abs(pi) == 0.0) {
                throw DomainError("spinor ratio undefined: E - qV = -m and p = qA");
            }
            return (eps - 1.0) / pi;
        }
        return pi / denom;
    }
    return (eps - 1.0) / pi;
}

Spinor channel_spinor(Complex E, Complex p, Region region) {
    const Complex eps = E - region.qV;
    const Complex pi = p - region.qA;
    if (std::abs(pi) == 0.0 && std::abs(eps + 1.0) == 0.0) {
        return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    }
    return {Complex(1.0, 0.0), gamma_ratio(E, p, region)};
}

Amplitudes amplitudes(Complex gamma_i, Complex gamma_r, Complex gamma_t) {
    const Complex denom = gamma_t - gamma_r;
    const double scale = std::max({1.0, std::abs(gamma_t), std::abs(gamma_r)});
    if (std::abs(denom) <= 1e-15 * scale) {
        throw DegenerateChannels("transmitted and reflected spinors coincide");
    }
    return {(gamma_i - gamma_t) / denom, (gamma_i - gamma_r) / denom};
}

Amplitudes amplitudes(Complex gamma_i, Complex gamma_r, const Spinor& transmitted) {
    if (transmitted.upper == Complex(1.0, 0.0)) {
        return amplitudes(gamma_i, gamma_r, transmitted.lower);
    }
    const Complex denom = transmitted.lower - gamma_r * transmitted.upper;
    const double scale = std::max({1.0, std::abs(transmitted.lower), std::abs(gamma_r)});
    if (std::abs(denom) <= 1e-15 * scale) {
        throw DegenerateChannels("transmitted and reflected spinors coincide");
    }
    return {(gamma_i * transmitted.upper - transmitted.lower) / denom,
            (gamma_i - gamma_r) / denom};
}

double channel_flux(Complex gamma, Complex amp, double v_m) {
    return std::norm(amp) * (2.0 * gamma.real() - v_m * (1.0 + std::norm(gamma)));
}

double channel_flux(const Spinor& spinor, Complex amp, double v_m) {
    const double current = 2.0 * (std::conj(spinor.upper) * spinor.lower).real();
    const double density = std::norm(spinor.upper) + std::norm(spinor.lower);
    return std::norm(amp) * (current - v_m * density);
}

ScatterResult scatter(const StepProblem& problem) {
    ScatterResult res;
    res.regime = classify(problem);
    if (res.regime.label == RegimeLabel::NoCatchUp) {
        throw NoScattering("modulation front outruns the incident electron (v_m >= v_g)");
    }

    const auto& in = problem.incident();
    const double v = problem.v_m();

    res.reflected = reflected_channel(problem);
    const TransmittedChannels tc = transmitted_channels(problem);
    // Inside the gap the plus root is the one decaying ahead of the front.
    const bool minus = res.regime.selected_branch == Branch::Minus;
    res.transmitted = minus ? tc.minus : tc.plus;

    res.gamma_i = gamma_ratio(in.energy(), in.momentum(), problem.region1());
    res.gamma_r = gamma_ratio(res.reflected.E, res.reflected.p, problem.region1());
    res.transmitted_spinor =
        channel_spinor(res.transmitted.E, res.transmitted.p, problem.region2());
    res.gamma_t = res.transmitted_spinor.upper == Complex(1.0, 0.0)
                      ? res.transmitted_spinor.lower
                      : Complex(INFINITY, 0.0);

    const Amplitudes amp = amplitudes(res.gamma_i, res.gamma_r, res.transmitted_spinor);
    res.r_amp = amp.r;
    res.t_amp = amp.t;

    res.j_i = channel_flux(res.gamma_i, 1.0, v);
    res.j_r = channel_flux(res.gamma_r, res.r_amp, v);
    res.j_t = channel_flux(res.transmitted_spinor, res.t_amp, v);
    if (!(res.j_i > 0.0)) {
        throw NoScattering("incident flux through the front is not positive");
    }
    res.R = -res.j_r / res.j_i;
    res.T = res.j_t / res.j_i;

    if (res.regime.label == RegimeLabel::KleinGap) {
        if (std::abs(res.R - 1.0) > kGapUnitarityTol || std::abs(res.T) > kGapUnitarityTol) {
            throw InternalConsistencyError("Klein gap did not give total reflection");
        }
    }
    return res;
}

double continuity_system_residual(const ScatterResult& result) {
    const Spinor& t = result.transmitted_spinor;
    const Complex first = 1.0 + result.r_amp - result.t_amp * t.upper;
    const Complex second =
        result.gamma_i + result.r_amp * result.gamma_r - result.t_amp * t.lower;
    return std::max(std::abs(first), std::abs(second));
}

}  // namespace stklein
