#pragma once

#include <cmath>
#include <stdexcept>

namespace hdc {

// The Levy measure nu(dx) = e^{-x}/(1-e^{-x}) dx on (0, infinity): infinite
// total mass (infinite jump activity), mean Int x nu(dx) = zeta(2).

/// Density e^{-x}/(1-e^{-x}) = 1/(e^x - 1), stable down to x -> 0 where it
/// behaves like 1/x - 1/2.
inline double nu_density(double x) {
    if (!(x > 0.0)) throw std::domain_error("nu_density: x must be > 0");
    return 1.0 / std::expm1(x);
}

/// Tail nu((x, infinity)) = -log(1 - e^{-x}). The map is an involution:
/// nu_tail(nu_tail(x)) = x, which also makes it its own quantile transform.
inline double nu_tail(double x) {
    if (!(x > 0.0)) throw std::domain_error("nu_tail: x must be > 0");
    if (x < 0.7) return -std::log(-std::expm1(-x));
    return -std::log1p(-std::exp(-x));
}

/// Mass of jumps above the truncation level, nu((epsilon, infinity)).
inline double nu_truncated_mass(double epsilon) { return nu_tail(epsilon); }

/// The measure as a value type (fully determined, no parameters).
struct harmonic_levy_measure {
    static double density(double x) { return nu_density(x); }
    static double tail(double x) { return nu_tail(x); }
    static double truncated_mass(double epsilon) { return nu_truncated_mass(epsilon); }
};

} // namespace hdc
