#include "stklein/lorentz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

namespace stklein {

BoostZ BoostZ::from_rapidity(Rapidity omega) {
    BoostZ b;
    b.omega = omega.value();
    b.gamma = omega.gamma();
    b.beta = omega.velocity();
    // Half-rapidity exponentials directly; cosh/sinh of omega/2 from
    // sqrt((gamma +- 1) / 2) loses c2 for small omega and overflows early.
    const double up = std::exp(0.5 * b.omega);
    const double down = std::exp(-0.5 * b.omega);
    b.c1 = 0.5 * (up + down);
    b.c2 = std::abs(b.omega) < 1e-4 ? std::sinh(0.5 * b.omega) : 0.5 * (up - down);
    b.lightcone_minus = down;
    b.lightcone_plus = up;
    return b;
}

BoostZ BoostZ::from_velocity(double v) { return from_rapidity(Rapidity::from_velocity(v)); }

std::pair<double, double> boost_energy_momentum(double E, double p, double v) {
    const BoostZ b = BoostZ::from_velocity(v);
    return {b.gamma * (E - b.beta * p), b.gamma * (p - b.beta * E)};
}

std::pair<Complex, Complex> boost_energy_momentum(Complex E, Complex p, const BoostZ& boost) {
    return {boost.gamma * (E - boost.beta * p), boost.gamma * (p - boost.beta * E)};
}

Region boost_region(Region region, const BoostZ& boost) {
    return {boost.gamma * (region.qV - boost.beta * region.qA),
            boost.gamma * (region.qA - boost.beta * region.qV)};
}

BoostedSpinor boost_spinor(Complex gamma_ratio, const BoostZ& boost) {
    return {boost.c1 - boost.c2 * gamma_ratio, -boost.c2 + boost.c1 * gamma_ratio};
}

BoostedSpinor boost_spinor(const Spinor& spinor, const BoostZ& boost) {
    return {boost.c1 * spinor.upper - boost.c2 * spinor.lower,
            -boost.c2 * spinor.upper + boost.c1 * spinor.lower};
}

BoostedSpinor boost_spinor(Complex gamma_ratio, double v) {
    return boost_spinor(gamma_ratio, BoostZ::from_velocity(v));
}

BoostedChannel boost_channel(const ChannelSolution& channel, Region region,
                             const BoostZ& boost) {
    BoostedChannel out;
    out.spinor = boost_spinor(channel_spinor(channel.E, channel.p, region), boost);
    std::tie(out.E_prime, out.p_prime) = boost_energy_momentum(channel.E, channel.p, boost);
    return out;
}

namespace {

struct ComovingSpinors {
    BoostedSpinor incident;
    BoostedSpinor reflected;
    BoostedSpinor transmitted;
};

ComovingSpinors comoving_spinors(const StepProblem& problem, const ScatterResult& result) {
    const BoostZ b = BoostZ::from_velocity(problem.v_m());
    const auto& in = problem.incident();
    ChannelSolution incident{in.energy(), in.momentum(), Branch::Plus,
                             ChannelStatus::Propagating};
    return {boost_channel(incident, problem.region1(), b).spinor,
            boost_channel(result.reflected, problem.region1(), b).spinor,
            boost_channel(result.transmitted, problem.region2(), b).spinor};
}

}  // namespace

Amplitudes comoving_amplitudes(const StepProblem& problem) {
    const ScatterResult channels = scatter(problem);
    const ComovingSpinors s = comoving_spinors(problem, channels);
    // [ psi_r  -psi_t ] [r t]^T = -psi_i, solved by Cramer's rule.
    const Complex a11 = s.reflected.upper;
    const Complex a12 = -s.transmitted.upper;
    const Complex a21 = s.reflected.lower;
    const Complex a22 = -s.transmitted.lower;
    const Complex b1 = -s.incident.upper;
    const Complex b2 = -s.incident.lower;
    const Complex det = a11 * a22 - a12 * a21;
    if (std::abs(det) == 0.0) {
        throw DegenerateChannels("comoving continuity system is singular");
    }
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

double verify_continuity(const StepProblem& problem, const ScatterResult& result) {
    const ComovingSpinors s = comoving_spinors(problem, result);
    const std::array<Complex, 2> inc{s.incident.upper, s.incident.lower};
    const std::array<Complex, 2> ref{result.r_amp * s.reflected.upper,
                                     result.r_amp * s.reflected.lower};
    const std::array<Complex, 2> tra{result.t_amp * s.transmitted.upper,
                                     result.t_amp * s.transmitted.lower};
    double scale = 1.0;
    double mismatch = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        scale = std::max({scale, std::abs(inc[k]), std::abs(ref[k]), std::abs(tra[k])});
        mismatch = std::max(mismatch, std::abs(inc[k] + ref[k] - tra[k]));
    }
    return mismatch / scale;
}

double comoving_energy_mismatch(const StepProblem& problem, const ScatterResult& result) {
    const double v = problem.v_m();
    const auto& in = problem.incident();
    const Complex e_i = comoving_energy(in.energy(), in.momentum(), v);
    const Complex e_r = comoving_energy(result.reflected.E, result.reflected.p, v);
    const Complex e_t = comoving_energy(result.transmitted.E, result.transmitted.p, v);
    const double scale = std::max(1.0, std::abs(e_i));
    return std::max(std::abs(e_r - e_i), std::abs(e_t - e_i)) / scale;
}

}  // namespace stklein
