#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hdc/composition.hpp"
#include "hdc/levy.hpp"
#include "hdc/numerics.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// The limiting overshoot law chi: P{chi > y} = (1/zeta(2)) Int_y^inf
// nu((x, inf)) dx. Termwise integration of the geometric series gives the
// closed form Li2(e^{-y})/zeta(2); every closed form here is cross-checked
// against direct quadrature of the defining integral in the test and verify
// suites.

struct moment_pair {
    double quadrature;
    double closed_form;
};

/// Int_0^inf x^r nu(dx) two ways: adaptive quadrature of the defining
/// integral and the closed form r! * zeta(r+1). Supported for r in {1, 2, 3}.
inline moment_pair hurwitz_moment(int r, const quadrature_spec& spec = {}) {
    if (r < 1 || r > 3) throw std::domain_error("hurwitz_moment: r must lie in {1, 2, 3}");
    const double rd = static_cast<double>(r);
    auto integrand = [rd](double x) { return std::pow(x, rd) * nu_density(x); };
    const double quad = integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), spec);
    const double factorial[4] = {1.0, 1.0, 2.0, 6.0};
    const double closed = factorial[r] * zeta_int(r + 1);
    return {quad, closed};
}

/// P{chi > y} = Li2(e^{-y}) / zeta(2).
inline double chi_tail(double y) {
    if (!(y >= 0.0)) throw std::domain_error("chi_tail: y must be >= 0");
    return dilog(std::exp(-y)) / zeta_cache().zeta2;
}

/// Density of chi: nu((y, inf)) / zeta(2).
inline double chi_density(double y) {
    if (!(y > 0.0)) throw std::domain_error("chi_density: y must be > 0");
    return nu_tail(y) / zeta_cache().zeta2;
}

/// E[e^{-i chi}] two ways: quadrature of (1/zeta(2)) Int_0^inf e^{-iy}
/// nu((y, inf)) dy and the closed form h_i / (zeta(2) i).
inline moment_pair chi_laplace(std::int64_t i, const quadrature_spec& spec = {}) {
    if (i < 1) throw std::domain_error("chi_laplace: i must be >= 1");
    const double id = static_cast<double>(i);
    auto integrand = [id](double y) { return std::exp(-id * y) * nu_tail(y); };
    const double quad =
        integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), spec) /
        zeta_cache().zeta2;
    const double closed = harmonic(i) / (zeta_cache().zeta2 * id);
    return {quad, closed};
}

/// Inverse of chi_tail: the y >= 0 with P{chi > y} = u, for u in (0, 1].
/// Newton iteration on the smooth strictly decreasing tail, safeguarded by
/// bisection, to 1e-10 in y.
inline double chi_tail_inverse(double u) {
    if (!(u > 0.0 && u <= 1.0)) throw std::domain_error("chi_tail_inverse: u must lie in (0, 1]");
    if (u == 1.0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (chi_tail(hi) > u) {
        lo = hi;
        hi *= 2.0;
    }

    double y = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = chi_tail(y) - u;
        if (f > 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        const double dy = f / chi_density(y); // tail' = -density
        double next = y + dy;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 1e-10) return next;
        y = next;
    }
    return y;
}

/// Exact inverse-transform sample of chi.
inline double chi_sample(rng_stream& rng) { return chi_tail_inverse(rng.uniform_open()); }

/// The limiting overshoot law as a value type.
struct chi_distribution {
    double zeta2 = zeta_cache().zeta2;

    double tail(double y) const { return chi_tail(y); }
    double density(double y) const { return chi_density(y); }
    double laplace_closed(std::int64_t i) const {
        return harmonic(i) / (zeta2 * static_cast<double>(i));
    }
    double sample(rng_stream& rng) const { return chi_sample(rng); }
};

struct overshoot_estimate {
    double level = 0.0;
    double epsilon = 0.0;
    std::vector<double> samples; // S(S^<-(t)) - t per replicate, all >= 0
};

/// First-passage overshoots of the truncated subordinator over level t,
/// one per replicate; replicate r draws from stream rng.stream_index() + r.
inline overshoot_estimate overshoot_mc(double t, double epsilon, std::int64_t reps,
                                       const rng_stream& rng) {
    if (!(t > 0.0)) throw std::domain_error("overshoot_mc: t must be > 0");
    if (reps < 1) throw std::domain_error("overshoot_mc: reps must be >= 1");
    overshoot_estimate est;
    est.level = t;
    est.epsilon = epsilon;
    est.samples.resize(static_cast<std::size_t>(reps));
    for (std::int64_t r = 0; r < reps; ++r) {
        rng_stream stream = rng.substream(r);
        est.samples[static_cast<std::size_t>(r)] = subordinator_first_passage(t, epsilon, stream);
    }
    return est;
}

/// Monte Carlo estimate of P{X_k(n) = i for some k} through the proof
/// mechanism: the occupancy chain visits i exactly when the subordinator
/// range meets (E_{n-i,n}, E_{n-i+1,n}), i.e. when the overshoot over
/// E_{n-i,n} is smaller than the next spacing.
inline mc_estimate hitting_via_overshoot(std::int64_t n, std::int64_t i, double epsilon,
                                         std::int64_t reps, const rng_stream& rng) {
    if (i < 1 || i >= n) throw std::domain_error("hitting_via_overshoot: need 1 <= i < n");
    if (reps < 1) throw std::domain_error("hitting_via_overshoot: reps must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        rng_stream stream = rng.substream(r);
        const std::vector<double> pts = sorted_exponential_sample(n, stream);
        const double level = pts[static_cast<std::size_t>(n - i - 1)]; // E_{n-i,n}
        const double next = pts[static_cast<std::size_t>(n - i)];      // E_{n-i+1,n}
        const double overshoot = subordinator_first_passage(level, epsilon, stream);
        hits += (overshoot < next - level) ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(reps);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    return {p, se};
}

} // namespace hdc
