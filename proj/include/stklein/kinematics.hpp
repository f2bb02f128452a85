#pragma once

#include "stklein/types.hpp"

namespace stklein {

enum class Sign { Plus = +1, Minus = -1 };

enum class Branch { Plus, Minus, Reflected };

enum class ChannelStatus { Propagating, Evanescent };

/// Incident energy-momentum on the positive-energy, forward-moving branch of
/// medium 1. Only constructible through the validating factories.
class IncidentState {
public:
    /// Validates on-shell (1e-12 relative), E - qV >= 1 and p - qA > 0.
    static IncidentState make(double E, double p, Region region);

    double energy() const { return E_; }
    double momentum() const { return p_; }
    const Region& region() const { return region_; }

    /// E - qV_1
    double kinetic_energy() const { return E_ - region_.qV; }
    /// p - qA_1
    double kinetic_momentum() const { return p_ - region_.qA; }

private:
    IncidentState(double E, double p, Region region) : E_(E), p_(p), region_(region) {}

    double E_;
    double p_;
    Region region_;
};

/// Two regions separated by a front moving at v_m (0 <= v_m < 1), plus the
/// incident state in region 1.
class StepProblem {
public:
    static StepProblem make(const IncidentState& incident, Region region2, double v_m);

    const IncidentState& incident() const { return incident_; }
    const Region& region1() const { return incident_.region(); }
    const Region& region2() const { return region2_; }
    double v_m() const { return v_m_; }
    /// gamma_m^2 = 1 / (1 - v_m^2)
    double gamma_sq() const { return 1.0 / ((1.0 - v_m_) * (1.0 + v_m_)); }
    double gamma() const { return std::sqrt(gamma_sq()); }

    /// qV_2 - qV_1
    double step_scalar() const { return region2_.qV - region1().qV; }
    /// qA_2 - qA_1
    double step_vector() const { return region2_.qA - region1().qA; }

private:
    StepProblem(IncidentState incident, Region region2, double v_m)
        : incident_(incident), region2_(region2), v_m_(v_m) {}

    IncidentState incident_;
    Region region2_;
    double v_m_;
};

/// W1, W2 and the transmitted radicand W2^2 - (m/gamma_m)^2.
struct TransitionGeometry {
    double W1 = 0.0;
    double W2 = 0.0;
    double radicand = 0.0;
};

/// One outgoing channel. Energy and momentum are complex so that evanescent
/// channels carry their analytic continuation; for propagating channels both
/// imaginary parts are exactly zero. For an evanescent channel at v_m > 0 the
/// lab energy picks up an imaginary part; the comoving energy stays real.
struct ChannelSolution {
    Complex E;
    Complex p;
    Branch branch = Branch::Plus;
    ChannelStatus status = ChannelStatus::Propagating;

    bool propagating() const { return status == ChannelStatus::Propagating; }
};

struct TransmittedChannels {
    ChannelSolution plus;
    ChannelSolution minus;
    TransitionGeometry geometry;
};

enum class RadicandClass { Negative, Tangent, Positive };

/// |radicand| < 1e-9 * max(1, W2^2) counts as tangency.
double evanescence_tolerance(double W2);
RadicandClass classify_radicand(double radicand, double W2);

/// p = sign * sqrt((E - qV)^2 - 1) + qA. Throws DomainError below the branch.
double dispersion_momentum(double E, Region region, Sign sign);

/// (E - qV)^2 - (p - qA)^2 - 1, complex so evanescent channels can be checked.
Complex on_shell_residual(Complex E, Complex p, Region region);

IncidentState incident_from_energy(double E_i, Region region1);
/// E - qV = cosh(omega), p - qA = sinh(omega).
IncidentState incident_from_rapidity(Rapidity omega_g, Region region1);

/// (p - qA) / (E - qV); throws DomainError when E - qV = 0.
double group_velocity(double E, double p, Region region);
double group_velocity(const IncidentState& incident);

/// gamma (E - v p), the energy seen in the frame comoving with the front.
Complex comoving_energy(Complex E, Complex p, double v);

TransitionGeometry transition_geometry(const StepProblem& problem);
ChannelSolution reflected_channel(const StepProblem& problem);
TransmittedChannels transmitted_channels(const StepProblem& problem);

}  // namespace stklein
