#pragma once

#include <utility>

#include "stklein/kinematics.hpp"
#include "stklein/scattering.hpp"

namespace stklein {

/// Boost along z into a frame moving with velocity beta.
///
/// The 4x4 Dirac-Pauli spinor boost S_z = c1 - c2 alpha^3 acts on the pairs
/// of components that alpha^3 couples; after the 1+1D reduction each pair is
/// the 2-spinor (u1, u2) of H = sigma_x (p - qA) + sigma_z m + qV, on which
/// alpha^3 becomes sigma_x. Only that 2x2 block, c1 - c2 sigma_x, is kept.
struct BoostZ {
    double omega = 0.0;
    double gamma = 1.0;
    double beta = 0.0;
    /// cosh(omega / 2)
    double c1 = 1.0;
    /// sinh(omega / 2)
    double c2 = 0.0;
    /// Eigenvalues of c1 - c2 sigma_x: c1 - c2 = e^{-omega/2}, c1 + c2 = e^{omega/2}.
    double lightcone_minus = 1.0;
    double lightcone_plus = 1.0;

    /// det(c1 - c2 sigma_x) = c1^2 - c2^2, evaluated as the eigenvalue product
    /// because the difference of squares cancels once c1^2 >> 1.
    double determinant() const { return lightcone_minus * lightcone_plus; }

    static BoostZ from_rapidity(Rapidity omega);
    static BoostZ from_velocity(double v);
};

using BoostedSpinor = Spinor;

struct BoostedChannel {
    BoostedSpinor spinor;
    Complex E_prime;
    Complex p_prime;
};

/// (E', p') = (gamma (E - v p), gamma (p - v E)). Complex inputs carry
/// evanescent channels.
std::pair<double, double> boost_energy_momentum(double E, double p, double v);
std::pair<Complex, Complex> boost_energy_momentum(Complex E, Complex p, const BoostZ& boost);

/// Four-potential (qV, qA) seen from the boosted frame.
Region boost_region(Region region, const BoostZ& boost);

/// S_z (1, Gamma) = (c1 - c2 Gamma, -c2 + c1 Gamma).
BoostedSpinor boost_spinor(Complex gamma_ratio, const BoostZ& boost);
BoostedSpinor boost_spinor(Complex gamma_ratio, double v);
BoostedSpinor boost_spinor(const Spinor& spinor, const BoostZ& boost);

/// Channel spinor (unit upper lab component) and phase variables in the
/// boosted frame.
BoostedChannel boost_channel(const ChannelSolution& channel, Region region,
                             const BoostZ& boost);

/// Solves the 2x2 continuity system psi'_i + r psi'_r = t psi'_t directly on
/// the boosted spinors at the static interface of the comoving frame.
Amplitudes comoving_amplitudes(const StepProblem& problem);

/// Largest componentwise mismatch of psi'_i + r psi'_r - t psi'_t in the
/// comoving frame, relative to the largest boosted term (floored at 1).
double verify_continuity(const StepProblem& problem, const ScatterResult& result);

/// Largest |E'_a - E'_i| over the reflected and transmitted channels,
/// relative to max(1, |E'_i|).
double comoving_energy_mismatch(const StepProblem& problem, const ScatterResult& result);

}  // namespace stklein
