#pragma once

#include "stklein/kinematics.hpp"
#include "stklein/regime.hpp"

namespace stklein {

/// Lower-to-upper spinor component ratio Gamma = (E - qV - m) / (p - qA) of a
/// plane wave. Complex for evanescent channels.
/// Throws DomainError at the lower-branch apex E - qV = -m, p = qA, where the
/// spinor is (0, 1) and the ratio is infinite.
Complex gamma_ratio(Complex E, Complex p, Region region);

/// Two-component spinor up to normalization.
struct Spinor {
    Complex upper{1.0, 0.0};
    Complex lower;

    Complex ratio() const { return lower / upper; }
};

/// (1, Gamma), or (0, 1) at the lower-branch apex.
Spinor channel_spinor(Complex E, Complex p, Region region);

struct Amplitudes {
    Complex r;
    Complex t;
};

/// r = (Gi - Gt) / (Gt - Gr), t = (Gi - Gr) / (Gt - Gr): the solution of
/// 1 + r = t and Gi + r Gr = t Gt. Throws DegenerateChannels when Gt == Gr.
Amplitudes amplitudes(Complex gamma_i, Complex gamma_r, Complex gamma_t);
/// Same system with a general transmitted spinor: 1 + r = t u1, Gi + r Gr = t u2.
Amplitudes amplitudes(Complex gamma_i, Complex gamma_r, const Spinor& transmitted);

/// Flux of |amp|^2 (1, Gamma) through the front worldline z - v_m t = const:
/// |amp|^2 (2 Re Gamma - v_m (1 + |Gamma|^2)).
double channel_flux(Complex gamma, Complex amp, double v_m);
/// |amp|^2 (2 Re(u1* u2) - v_m (|u1|^2 + |u2|^2)).
double channel_flux(const Spinor& spinor, Complex amp, double v_m);

struct ScatterResult {
    Complex r_amp;
    Complex t_amp;
    double j_i = 0.0;
    double j_r = 0.0;
    double j_t = 0.0;
    double R = 0.0;
    double T = 0.0;
    Regime regime;

    ChannelSolution reflected;
    ChannelSolution transmitted;
    Complex gamma_i;
    Complex gamma_r;
    /// Infinite when the transmitted channel sits at the lower-branch apex;
    /// transmitted_spinor is always finite.
    Complex gamma_t;
    Spinor transmitted_spinor;
};

/// Full single-front scattering. R = -j_r / j_i (the reflected flux points
/// away from the front) and T = j_t / j_i. Throws NoScattering when the
/// electron cannot reach the front.
ScatterResult scatter(const StepProblem& problem);

/// max(|1 + r - t u1|, |Gi + r Gr - t u2|) with (u1, u2) the transmitted spinor.
double continuity_system_residual(const ScatterResult& result);

}  // namespace stklein
