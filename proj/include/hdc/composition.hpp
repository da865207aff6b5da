#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdc/chain.hpp"
#include "hdc/levy.hpp"
#include "hdc/numerics.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// Occupancy side of the picture: n exponential points thrown into the gaps of
// the range of a zero-drift subordinator with Levy density e^{-x}/(1-e^{-x}).
// Reading off the occupied-gap counts left to right yields a composition of n
// whose remainder process is itself a decreasing Markov chain with decrement
// law 1/(i h_j) from state j (absorption of the whole remainder is allowed).

struct composition {
    std::int64_t n = 0;
    std::vector<std::int64_t> blocks; // positive, sum to n, left-to-right gap order
};

struct occupancy_trajectory {
    std::vector<std::int64_t> counts; // n > n - b_1 > ... > 0
};

/// Unnormalized Gnedin-Pitman decrement weight as an integral:
/// C(j,i) * Int (1-e^{-x})^i e^{-x(j-i)} nu(dx), evaluated after u = e^{-x}
/// as C(j,i) * Int_0^1 (1-u)^{i-1} u^{j-i} du. Equals 1/i exactly. The
/// binomial factor is kept inside the integrand so the quadrature tolerances
/// act on the O(1)-scaled weight rather than on a ~1e-16 raw integral.
inline double gp_decrement_weight(std::int64_t j, std::int64_t i,
                                  const quadrature_spec& spec = {}) {
    if (j < 1) throw std::domain_error("gp_decrement_weight: j must be >= 1");
    if (i < 1 || i > j) throw std::domain_error("gp_decrement_weight: i must lie in [1, j]");
    double binom = 1.0;
    for (std::int64_t k = 1; k <= i; ++k) {
        binom *= static_cast<double>(j - i + k) / static_cast<double>(k);
    }
    const double ie = static_cast<double>(i - 1);
    const double je = static_cast<double>(j - i);
    auto integrand = [binom, ie, je](double u) {
        return binom * std::pow(1.0 - u, ie) * std::pow(u, je);
    };
    return integrate(integrand, 0.0, 1.0, spec);
}

/// Full decrement row from state j, normalized over i = 1..j.
inline std::vector<double> gp_decrement_row(std::int64_t j, const quadrature_spec& spec = {}) {
    if (j < 1) throw std::domain_error("gp_decrement_row: j must be >= 1");
    std::vector<double> w(static_cast<std::size_t>(j));
    detail::kahan_sum total;
    for (std::int64_t i = 1; i <= j; ++i) {
        w[static_cast<std::size_t>(i - 1)] = gp_decrement_weight(j, i, spec);
        total.add(w[static_cast<std::size_t>(i - 1)]);
    }
    const double norm = total.value();
    for (double& x : w) x /= norm;
    return w;
}

/// Probability that the occupancy chain goes from j to j - i; equals 1/(i h_j).
inline double gp_decrement_prob(std::int64_t j, std::int64_t i,
                                const quadrature_spec& spec = {}) {
    if (j < 1) throw std::domain_error("gp_decrement_prob: j must be >= 1");
    if (i < 1 || i > j) throw std::domain_error("gp_decrement_prob: i must lie in [1, j]");
    return gp_decrement_row(j, spec)[static_cast<std::size_t>(i - 1)];
}

/// Sample a composition of n by running the occupancy remainder chain with
/// decrement law 1/(i h_j) from state j (inverse CDF over the harmonic table).
inline composition sample_composition(std::int64_t n, const harmonic_table& table,
                                      rng_stream& rng) {
    if (n < 1) throw std::domain_error("sample_composition: n must be >= 1");
    if (table.max_n() < n) {
        throw std::invalid_argument("sample_composition: harmonic table smaller than n");
    }
    composition c;
    c.n = n;
    std::int64_t j = n;
    while (j > 0) {
        const double target = rng.uniform() * table.h(j);
        const std::int64_t i = table.inverse_cdf_index(target, j);
        c.blocks.push_back(i);
        j -= i;
    }
    return c;
}

/// Partial remainders n, n - b_1, n - b_1 - b_2, ..., 0.
inline occupancy_trajectory occupancy_chain(const composition& c) {
    occupancy_trajectory t;
    t.counts.reserve(c.blocks.size() + 1);
    std::int64_t remaining = c.n;
    t.counts.push_back(remaining);
    for (std::int64_t b : c.blocks) {
        remaining -= b;
        t.counts.push_back(remaining);
    }
    if (remaining != 0) throw std::invalid_argument("occupancy_chain: blocks do not sum to n");
    return t;
}

struct truncated_subordinator_path {
    double epsilon = 0.0;
    double horizon = 0.0;
    std::vector<double> jump_times; // increasing Poisson arrivals, rate nu((eps, inf))
    std::vector<double> jump_sizes; // all > epsilon

    /// Path values after each jump (zero drift, so the running jump sum).
    std::vector<double> levels() const {
        std::vector<double> out;
        out.reserve(jump_sizes.size());
        detail::kahan_sum acc;
        for (double j : jump_sizes) {
            acc.add(j);
            out.push_back(acc.value());
        }
        return out;
    }
};

namespace detail {

/// One jump above the truncation level: inverse transform of the conditional
/// tail nu((y, inf))/nu((eps, inf)), using that the tail transform T is its
/// own inverse: y = T(u * T(eps)).
inline double sample_truncated_jump(double tail_mass_eps, rng_stream& rng) {
    return nu_tail(rng.uniform_open() * tail_mass_eps);
}

} // namespace detail

/// Compound-Poisson approximation of the subordinator keeping jumps > epsilon,
/// extended until the path value exceeds `horizon`.
inline truncated_subordinator_path simulate_subordinator(double epsilon, double horizon,
                                                         rng_stream& rng) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("simulate_subordinator: epsilon must lie in (0, 1)");
    }
    if (!(horizon > 0.0)) throw std::domain_error("simulate_subordinator: horizon must be > 0");
    const double rate = nu_truncated_mass(epsilon);
    truncated_subordinator_path path;
    path.epsilon = epsilon;
    path.horizon = horizon;
    double t = 0.0;
    double value = 0.0;
    while (value <= horizon) {
        t += rng.exponential() / rate;
        const double jump = detail::sample_truncated_jump(rate, rng);
        value += jump;
        path.jump_times.push_back(t);
        path.jump_sizes.push_back(jump);
    }
    return path;
}

/// Overshoot of the truncated path over `level`: run the jump sum until it
/// first exceeds level and return the excess. Jump arrival times do not affect
/// the value at first passage, so none are drawn.
inline double subordinator_first_passage(double level, double epsilon, rng_stream& rng) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("subordinator_first_passage: epsilon must lie in (0, 1)");
    }
    const double rate = nu_truncated_mass(epsilon);
    double value = 0.0;
    while (value <= level) value += detail::sample_truncated_jump(rate, rng);
    return value - level;
}

/// n unit-mean exponential order statistics, by sorting.
inline std::vector<double> sorted_exponential_sample(std::int64_t n, rng_stream& rng) {
    if (n < 1) throw std::domain_error("sorted_exponential_sample: n must be >= 1");
    std::vector<double> points(static_cast<std::size_t>(n));
    for (double& p : points) p = rng.exponential();
    std::sort(points.begin(), points.end());
    return points;
}

/// Direct balls-in-boxes sample: throw n exponential points, simulate the
/// truncated subordinator past the largest point, and count points per gap
/// between consecutive path levels (the interval below the first level
/// included). Occupied-gap counts are returned left to right.
inline composition balls_in_boxes(std::int64_t n, double epsilon, rng_stream& rng) {
    if (n < 1) throw std::domain_error("balls_in_boxes: n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("balls_in_boxes: epsilon must lie in (0, 1)");
    }
    const std::vector<double> points = sorted_exponential_sample(n, rng);

    // Walking levels until every point is assigned is the same as simulating
    // the path until it exceeds max(points).
    const double rate = nu_truncated_mass(epsilon);
    composition c;
    c.n = n;
    double level = 0.0;
    std::size_t assigned = 0;
    while (assigned < points.size()) {
        level += detail::sample_truncated_jump(rate, rng);
        std::int64_t in_gap = 0;
        while (assigned < points.size() && points[assigned] < level) {
            ++in_gap;
            ++assigned;
        }
        if (in_gap > 0) c.blocks.push_back(in_gap);
    }
    return c;
}

struct equivalence_result {
    double chain_exact;   // DP value P{X_k = i+1 for some k | X_0 = n+1}
    double occupancy_mc;  // MC frequency that the occupancy chain visits i
    double std_error;
};

/// The state-shift equivalence: the chain started at n+1 visits i+1 with the
/// same probability that the occupancy chain of a composition of n visits i.
inline equivalence_result chain_equivalence_check(std::int64_t n, std::int64_t i,
                                                  std::int64_t reps,
                                                  const harmonic_table& table,
                                                  const rng_stream& rng) {
    if (i < 1 || i >= n) throw std::domain_error("chain_equivalence_check: need 1 <= i < n");
    if (reps < 1) throw std::domain_error("chain_equivalence_check: reps must be >= 1");
    const double lhs = hit_probability_exact({n + 1, i + 1}, table);

    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        rng_stream stream = rng.substream(r);
        std::int64_t j = n;
        while (j > i) {
            const double target = stream.uniform() * table.h(j);
            j -= table.inverse_cdf_index(target, j);
        }
        hits += (j == i) ? 1 : 0;
    }
    const double rhs = static_cast<double>(hits) / static_cast<double>(reps);
    const double se = std::sqrt(rhs * (1.0 - rhs) / static_cast<double>(reps));
    return {lhs, rhs, se};
}

} // namespace hdc
