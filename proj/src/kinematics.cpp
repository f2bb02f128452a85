#include "stklein/kinematics.hpp"

#include <algorithm>
#include <string>

namespace stklein {

namespace {

constexpr double kOnShellTol = 1e-12;

}  // namespace

IncidentState IncidentState::make(double E, double p, Region region) {
    if (!std::isfinite(E) || !std::isfinite(p) || !std::isfinite(region.qV) ||
        !std::isfinite(region.qA)) {
        throw DomainError("incident state must be finite");
    }
    const double eps = E - region.qV;
    const double pi = p - region.qA;
    if (eps < 1.0) {
        throw DomainError("incident energy below the positive branch: E - qV_1 = " +
                          std::to_string(eps));
    }
    if (std::abs(eps * eps - pi * pi - 1.0) > kOnShellTol * std::max(1.0, eps * eps)) {
        throw DomainError("incident state is off-shell");
    }
    if (!(pi > 0.0)) {
        throw DomainError("incident state must move forward: p - qA_1 must be > 0");
    }
    return IncidentState(E, p, region);
}

StepProblem StepProblem::make(const IncidentState& incident, Region region2, double v_m) {
    if (!std::isfinite(region2.qV) || !std::isfinite(region2.qA)) {
        throw DomainError("region 2 potentials must be finite");
    }
    if (!(v_m >= 0.0 && v_m < 1.0)) {
        throw DomainError("modulation velocity must satisfy 0 <= v_m < 1 (subluminal, "
                          "codirectional)");
    }
    return StepProblem(incident, region2, v_m);
}

double evanescence_tolerance(double W2) { return 1e-9 * std::max(1.0, W2 * W2); }

RadicandClass classify_radicand(double radicand, double W2) {
    const double tol = evanescence_tolerance(W2);
    if (radicand < -tol) return RadicandClass::Negative;
    if (radicand > tol) return RadicandClass::Positive;
    return RadicandClass::Tangent;
}

double dispersion_momentum(double E, Region region, Sign sign) {
    const double eps = E - region.qV;
    const double k2 = (eps - 1.0) * (eps + 1.0);
    if (k2 < 0.0) {
        throw DomainError("(E - qV)^2 < m^2: momentum is imaginary");
    }
    return static_cast<int>(sign) * std::sqrt(k2) + region.qA;
}

Complex on_shell_residual(Complex E, Complex p, Region region) {
    const Complex eps = E - region.qV;
    const Complex pi = p - region.qA;
    return eps * eps - pi * pi - 1.0;
}

IncidentState incident_from_energy(double E_i, Region region1) {
    return IncidentState::make(E_i, dispersion_momentum(E_i, region1, Sign::Plus), region1);
}

IncidentState incident_from_rapidity(Rapidity omega_g, Region region1) {
    return IncidentState::make(region1.qV + omega_g.gamma(),
                               region1.qA + omega_g.gamma_velocity(), region1);
}

double group_velocity(double E, double p, Region region) {
    const double eps = E - region.qV;
    if (eps == 0.0) {
        throw DomainError("group velocity undefined at E - qV = 0");
    }
    return (p - region.qA) / eps;
}

double group_velocity(const IncidentState& incident) {
    return group_velocity(incident.energy(), incident.momentum(), incident.region());
}

Complex comoving_energy(Complex E, Complex p, double v) {
    const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
    return gamma * (E - v * p);
}

TransitionGeometry transition_geometry(const StepProblem& problem) {
    const auto& in = problem.incident();
    const double v = problem.v_m();
    const Region& r2 = problem.region2();

    TransitionGeometry g;
    g.W1 = v * in.kinetic_energy() - in.kinetic_momentum();
    g.W2 = (in.energy() - r2.qV) - v * (in.momentum() - r2.qA);
    // (m / gamma_m)^2 = 1 - v^2
    g.radicand = g.W2 * g.W2 - (1.0 - v) * (1.0 + v);
    return g;
}

ChannelSolution reflected_channel(const StepProblem& problem) {
    const auto& in = problem.incident();
    const double v = problem.v_m();
    const double g2 = problem.gamma_sq();
    const double W1 = transition_geometry(problem).W1;

    ChannelSolution ch;
    ch.E = in.energy() + 2.0 * g2 * v * W1;
    ch.p = in.momentum() + 2.0 * g2 * W1;
    ch.branch = Branch::Reflected;
    ch.status = ChannelStatus::Propagating;
    return ch;
}

TransmittedChannels transmitted_channels(const StepProblem& problem) {
    const auto& in = problem.incident();
    const double v = problem.v_m();
    const double g2 = problem.gamma_sq();
    const Region& r2 = problem.region2();

    TransmittedChannels out;
    out.geometry = transition_geometry(problem);
    const double W2 = out.geometry.W2;
    const double rad = out.geometry.radicand;

    // Square root of the radicand for the plus branch. Inside the gap the
    // plus root is +i sqrt(|rad|): the comoving momentum then has Im p' > 0
    // and the wave decays ahead of the front.
    Complex root{0.0, 0.0};
    ChannelStatus status = ChannelStatus::Propagating;
    switch (classify_radicand(rad, W2)) {
        case RadicandClass::Negative:
            root = Complex(0.0, std::sqrt(-rad));
            status = ChannelStatus::Evanescent;
            break;
        case RadicandClass::Tangent:
            break;
        case RadicandClass::Positive:
            root = Complex(std::sqrt(rad), 0.0);
            break;
    }

    const double a = in.energy() - r2.qV;
    const double b = in.momentum() - r2.qA;
    // Energy written relative to E_i so that v_m = 0 returns E_i bit-exactly.
    const double energy_shift = g2 * v * (v * a - b);
    const double momentum_center = g2 * v * W2 + r2.qA;

    auto make = [&](double sign, Branch branch) {
        ChannelSolution ch;
        ch.E = in.energy() + energy_shift + sign * g2 * v * root;
        ch.p = momentum_center + sign * g2 * root;
        ch.branch = branch;
        ch.status = status;
        return ch;
    };
    out.plus = make(+1.0, Branch::Plus);
    out.minus = make(-1.0, Branch::Minus);
    return out;
}

}  // namespace stklein
