#pragma once

#include <cmath>
#include <complex>

#include "stklein/errors.hpp"

// Natural units throughout: hbar = c = 1 and the electron mass m = 1.
// Energies and momenta are in units of m, velocities in units of c.

namespace stklein {

using Complex = std::complex<double>;

/// Constant charge-times-potential pair (qV, qA) on one side of the front.
/// The electron charge is already absorbed, so the user never supplies q.
struct Region {
    double qV = 0.0;
    double qA = 0.0;

    friend bool operator==(const Region&, const Region&) = default;
};

/// Collinear boost parameter. Stored as rapidity so that velocities within
/// 1e-16 of light speed (gamma up to ~1e17) stay representable; a plain
/// double velocity rounds to 1.0 long before that.
class Rapidity {
public:
    constexpr Rapidity() = default;
    constexpr explicit Rapidity(double omega) : omega_(omega) {}

    static Rapidity from_velocity(double v) {
        if (!(std::abs(v) < 1.0)) {
            throw DomainError("velocity must satisfy |v| < 1");
        }
        return Rapidity(std::atanh(v));
    }

    static Rapidity from_gamma(double gamma) {
        if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
            throw DomainError("Lorentz factor must be finite and >= 1");
        }
        return Rapidity(std::acosh(gamma));
    }

    constexpr double value() const { return omega_; }
    double velocity() const { return std::tanh(omega_); }
    double gamma() const { return std::cosh(omega_); }
    /// gamma * v
    double gamma_velocity() const { return std::sinh(omega_); }
    /// 1 - v without cancellation: 2 / (1 + e^{2 omega}).
    double one_minus_velocity() const { return 2.0 / (1.0 + std::exp(2.0 * omega_)); }

    friend constexpr Rapidity operator+(Rapidity a, Rapidity b) {
        return Rapidity(a.omega_ + b.omega_);
    }
    friend constexpr Rapidity operator-(Rapidity a) { return Rapidity(-a.omega_); }

private:
    double omega_ = 0.0;
};

}  // namespace stklein
