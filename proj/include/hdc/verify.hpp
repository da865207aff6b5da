#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hdc/chain.hpp"
#include "hdc/composition.hpp"
#include "hdc/renewal.hpp"

namespace hdc {

// Deterministic invariant suites behind the verify-* CLI commands. Each check
// reports the measured error against its tolerance; statistical (Monte Carlo)
// claims are exercised by the test suites instead.

struct check_result {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
};

inline check_result make_check(std::string name, double measured, double tolerance) {
    return {std::move(name), measured, tolerance, measured <= tolerance};
}

inline bool all_passed(const std::vector<check_result>& checks) {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

/// Descent-kernel suite: normalization, closed-form entries, DP spot values,
/// the limit formula.
inline std::vector<check_result> verify_kernel() {
    std::vector<check_result> out;
    const std::int64_t jmax = 10000;
    harmonic_table table(jmax);

    double worst_norm = 0.0;
    for (std::int64_t j = 2; j <= jmax; ++j) {
        detail::kahan_sum sum;
        const double hjm1 = table.h(j - 1);
        for (std::int64_t i = 1; i < j; ++i) sum.add(1.0 / (static_cast<double>(i) * hjm1));
        worst_norm = std::max(worst_norm, std::abs(sum.value() - 1.0));
    }
    out.push_back(make_check("kernel normalization, max |sum p(j,.) - 1| over j <= 1e4",
                             worst_norm, 1e-12));

    double worst_entry = 0.0;
    for (std::int64_t j : {2, 3, 5, 17, 100, 1000, 10000}) {
        const auto pmf = decrement_pmf(j, table);
        for (std::int64_t i = 1; i < j; ++i) {
            const double expect = 1.0 / (static_cast<double>(i) * table.h(j - 1));
            const double got = pmf[static_cast<std::size_t>(i - 1)];
            worst_entry = std::max(worst_entry, std::abs(got - expect) / expect);
        }
    }
    out.push_back(make_check("kernel entries vs 1/(i h_{j-1}), max relative", worst_entry, 1e-14));

    out.push_back(make_check("DP hit(3 -> 2) vs 2/3",
                             std::abs(hit_probability_exact({3, 2}, table) - 2.0 / 3.0), 1e-15));
    out.push_back(make_check("DP hit(4 -> 2) vs 7/11",
                             std::abs(hit_probability_exact({4, 2}, table) - 7.0 / 11.0), 1e-15));
    out.push_back(make_check("DP hit(start = target) vs 1",
                             std::abs(hit_probability_exact({7, 7}, table) - 1.0), 0.0));

    const double pi = 3.14159265358979323846;
    out.push_back(make_check("limit formula at i = 1 vs 6/pi^2",
                             std::abs(limit_formula(1) - 6.0 / (pi * pi)), 1e-15));

    const auto t1 = simulate(50, table, rng_stream(7));
    const auto t2 = simulate(50, table, rng_stream(7));
    out.push_back(make_check("trajectory determinism, simulate(50, seed 7)",
                             t1.states == t2.states ? 0.0 : 1.0, 0.0));
    return out;
}

/// Renewal suite: Hurwitz moments, the Laplace/limit identity chain, and the
/// closed tails against direct quadrature.
inline std::vector<check_result> verify_renewal() {
    std::vector<check_result> out;
    const double zeta2 = zeta_cache().zeta2;

    for (int r = 1; r <= 3; ++r) {
        const auto m = hurwitz_moment(r);
        out.push_back(make_check("hurwitz moment r=" + std::to_string(r) +
                                     " quadrature vs r! zeta(r+1), relative",
                                 std::abs(m.quadrature - m.closed_form) / m.closed_form, 1e-8));
    }
    out.push_back(make_check("hurwitz r=1 closed form vs zeta(2)",
                             std::abs(hurwitz_moment(1).closed_form - zeta2), 1e-14));

    double worst_laplace = 0.0;
    double worst_identity = 0.0;
    for (std::int64_t i = 1; i <= 20; ++i) {
        const auto lp = chi_laplace(i);
        worst_laplace = std::max(worst_laplace, std::abs(lp.quadrature - lp.closed_form));
        worst_identity = std::max(worst_identity, std::abs(lp.closed_form - limit_formula(i)));
    }
    out.push_back(make_check("chi Laplace quadrature vs h_i/(zeta(2) i), i <= 20, max abs",
                             worst_laplace, 1e-8));
    out.push_back(make_check("chi Laplace closed form vs limit formula, i <= 20, max abs",
                             worst_identity, 1e-12));

    double worst_nu_tail = 0.0;
    for (double x : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double quad =
            integrate([](double t) { return nu_density(t); }, x,
                      std::numeric_limits<double>::infinity());
        worst_nu_tail = std::max(worst_nu_tail, std::abs(nu_tail(x) - quad));
    }
    out.push_back(make_check("nu tail closed form vs quadrature of the density, max abs",
                             worst_nu_tail, 1e-10));

    double worst_chi_tail = 0.0;
    for (double y : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double quad = integrate([](double x) { return nu_tail(x); }, y,
                                      std::numeric_limits<double>::infinity()) /
                            zeta2;
        worst_chi_tail = std::max(worst_chi_tail, std::abs(chi_tail(y) - quad));
    }
    out.push_back(make_check("chi tail closed form vs quadrature of the nu tail, max abs",
                             worst_chi_tail, 1e-10));

    out.push_back(make_check("chi tail at 0 vs 1", std::abs(chi_tail(0.0) - 1.0), 1e-14));
    out.push_back(make_check("nu density at log 2 vs 1",
                             std::abs(nu_density(std::log(2.0)) - 1.0), 1e-14));
    return out;
}

/// Composition suite: the Gnedin-Pitman kernel against its closed form, the
/// beta-integral reduction, and the tail-transform involution.
inline std::vector<check_result> verify_composition() {
    std::vector<check_result> out;
    const std::int64_t jmax = 50;
    harmonic_table table(jmax);

    double worst_gp = 0.0;
    double worst_row_sum = 0.0;
    for (std::int64_t j = 1; j <= jmax; ++j) {
        const auto row = gp_decrement_row(j);
        detail::kahan_sum sum;
        for (std::int64_t i = 1; i <= j; ++i) {
            const double expect = 1.0 / (static_cast<double>(i) * table.h(j));
            worst_gp = std::max(worst_gp,
                                std::abs(row[static_cast<std::size_t>(i - 1)] - expect));
            sum.add(row[static_cast<std::size_t>(i - 1)]);
        }
        worst_row_sum = std::max(worst_row_sum, std::abs(sum.value() - 1.0));
    }
    out.push_back(make_check("GP kernel quadrature vs 1/(i h_j), j <= 50, max abs",
                             worst_gp, 1e-8));
    out.push_back(make_check("GP kernel row sums vs 1, j <= 50, max abs", worst_row_sum, 1e-10));

    double worst_beta = 0.0;
    for (std::int64_t j = 1; j <= jmax; ++j) {
        for (std::int64_t i = 1; i <= j; ++i) {
            const double expect = 1.0 / static_cast<double>(i);
            worst_beta = std::max(worst_beta, std::abs(gp_decrement_weight(j, i) - expect));
        }
    }
    out.push_back(make_check("beta reduction C(j,i) Int x^{i-1}(1-x)^{j-i} vs 1/i, max abs",
                             worst_beta, 1e-10));

    double worst_involution = 0.0;
    for (double x = 1e-6; x <= 20.0; x *= 1.5) {
        worst_involution = std::max(worst_involution, std::abs(nu_tail(nu_tail(x)) - x));
    }
    out.push_back(make_check("tail transform involution on [1e-6, 20], max abs",
                             worst_involution, 1e-12));

    double rate_err = std::abs(nu_truncated_mass(std::log(2.0)) - std::log(2.0));
    out.push_back(make_check("truncated mass at eps = log 2 vs log 2", rate_err, 1e-14));

    bool conserved = true;
    rng_stream rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform() * 40.0);
        const auto c = sample_composition(n, table, rng);
        std::int64_t total = 0;
        for (std::int64_t b : c.blocks) {
            if (b < 1) conserved = false;
            total += b;
        }
        if (total != n) conserved = false;
    }
    out.push_back(make_check("sampled compositions conserve n (200 seeded draws)",
                             conserved ? 0.0 : 1.0, 0.0));
    return out;
}

} // namespace hdc
