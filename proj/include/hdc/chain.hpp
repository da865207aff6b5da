#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hdc/numerics.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// The harmonic descent chain lives on the positive integers: from state j >= 2
// it drops to j - i with probability 1/(i * h_{j-1}), 1 <= i < j, and state 1
// is absorbing.

/// One-step decrement law from state j: entry i-1 is p(j, j-i) = 1/(i h_{j-1}).
inline std::vector<double> decrement_pmf(std::int64_t j, const harmonic_table& table) {
    if (j < 2) throw std::domain_error("decrement_pmf: state must be >= 2");
    const double hjm1 = table.h(j - 1);
    std::vector<double> probs(static_cast<std::size_t>(j - 1));
    for (std::int64_t i = 1; i < j; ++i) {
        probs[static_cast<std::size_t>(i - 1)] = 1.0 / (static_cast<double>(i) * hjm1);
    }
    return probs;
}

/// One transition. The decrement i is sampled by inverse CDF: the cumulative
/// law is h_i / h_{j-1}, so i is the smallest index with h_i >= u * h_{j-1}.
inline std::int64_t step(std::int64_t state, const harmonic_table& table, rng_stream& rng) {
    if (state < 1) throw std::domain_error("step: state must be >= 1");
    if (state == 1) return 1;
    const double target = rng.uniform() * table.h(state - 1);
    const std::int64_t i = table.inverse_cdf_index(target, state - 1);
    return state - i;
}

struct trajectory {
    std::vector<std::int64_t> states; // strictly decreasing, ends at 1
    std::uint64_t seed = 0;
    std::int64_t stream_index = 0;
};

/// Run the chain from `start` to absorption at 1.
inline trajectory simulate(std::int64_t start, const harmonic_table& table, rng_stream rng) {
    if (start < 1) throw std::domain_error("simulate: start must be >= 1");
    trajectory t;
    t.seed = rng.seed();
    t.stream_index = rng.stream_index();
    t.states.push_back(start);
    std::int64_t state = start;
    while (state > 1) {
        state = step(state, table, rng);
        t.states.push_back(state);
    }
    return t;
}

/// Hitting question "does the chain started at `start` ever visit `target`".
/// start == target counts as an immediate hit (the visit at step 0).
struct hitting_query {
    std::int64_t start;  // n + 1
    std::int64_t target; // i + 1, at least 2
};

inline void validate(const hitting_query& q) {
    if (q.target < 2) throw std::domain_error("hitting_query: target must be >= 2");
    if (q.start < q.target) throw std::domain_error("hitting_query: start must be >= target");
}

/// Exact hitting probability by dynamic programming over f(m) = P{visit target
/// from m}: f(target) = 1 and f(m) = (1/h_{m-1}) sum_{l=target}^{m-1} f(l)/(m-l).
/// O(start^2) time, O(start) memory.
inline double hit_probability_exact(const hitting_query& q, const harmonic_table& table) {
    validate(q);
    if (q.start == q.target) return 1.0;
    if (table.max_n() < q.start - 1) {
        throw std::invalid_argument("hit_probability_exact: harmonic table smaller than start - 1");
    }
    const std::size_t start = static_cast<std::size_t>(q.start);
    const std::size_t target = static_cast<std::size_t>(q.target);

    std::vector<double> recip(start + 1, 0.0);
    for (std::size_t d = 1; d <= start; ++d) recip[d] = 1.0 / static_cast<double>(d);

    std::vector<double> f(start + 1, 0.0);
    f[target] = 1.0;
    for (std::size_t m = target + 1; m <= start; ++m) {
        detail::kahan_sum acc;
        for (std::size_t l = target; l < m; ++l) acc.add(f[l] * recip[m - l]);
        f[m] = acc.value() / table.h(static_cast<std::int64_t>(m) - 1);
    }
    return f[start];
}

struct mc_estimate {
    double estimate;
    double std_error;
};

/// Monte Carlo hitting frequency over `reps` trajectories; replicate r draws
/// from stream rng.stream_index() + r, so the result is independent of any
/// parallel execution order.
inline mc_estimate hit_probability_mc(const hitting_query& q, std::int64_t reps,
                                      const harmonic_table& table, const rng_stream& rng) {
    validate(q);
    if (reps < 1) throw std::domain_error("hit_probability_mc: reps must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        rng_stream stream = rng.substream(r);
        std::int64_t state = q.start;
        while (state > q.target) state = step(state, table, stream);
        hits += (state == q.target) ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(reps);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    return {p, se};
}

/// The limiting hitting probability h_i / (zeta(2) i).
inline double limit_formula(std::int64_t i) {
    if (i < 1) throw std::domain_error("limit_formula: i must be >= 1");
    return harmonic(i) / (zeta_cache().zeta2 * static_cast<double>(i));
}

struct convergence_row {
    std::int64_t n;
    double q_exact; // P{visit i+1 from n+1}
    double limit;   // h_i / (zeta(2) i)
    double gap;     // q_exact - limit
};

/// Finite-n hitting probabilities against the limit, one row per start.
inline std::vector<convergence_row> convergence_table(std::int64_t i,
                                                      const std::vector<std::int64_t>& starts,
                                                      const harmonic_table& table) {
    if (i < 1) throw std::domain_error("convergence_table: i must be >= 1");
    const double limit = limit_formula(i);
    std::vector<convergence_row> rows;
    rows.reserve(starts.size());
    for (std::int64_t n : starts) {
        const double q = hit_probability_exact({n + 1, i + 1}, table);
        rows.push_back({n, q, limit, q - limit});
    }
    return rows;
}

} // namespace hdc
