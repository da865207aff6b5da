#pragma once

// Test-only oracles and statistics helpers. Everything here is deliberately
// independent of the library's own evaluation paths: plain series summation,
// exact rational arithmetic, and textbook statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

/// Harmonic number as an exact rational accumulated in __int128; usable while
/// the reduced denominator fits (n up to ~80).
inline double harmonic_rational(int n) {
    __int128 num = 0;
    __int128 den = 1;
    for (int k = 1; k <= n; ++k) {
        // num/den + 1/k
        __int128 new_num = num * k + den;
        __int128 new_den = den * k;
        __int128 a = new_num < 0 ? -new_num : new_num;
        __int128 b = new_den;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        num = new_num / a;
        den = new_den / a;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

/// Harmonic number by compensated long double summation (80-bit on x86-64),
/// good to ~1e-16 relative at n = 1e4.
inline double harmonic_longdouble(std::int64_t n) {
    long double sum = 0.0L;
    long double comp = 0.0L;
    for (std::int64_t k = 1; k <= n; ++k) {
        long double x = 1.0L / static_cast<long double>(k);
        long double t = sum + x;
        comp += (sum - t) + x;
        sum = t;
    }
    return static_cast<double>(sum + comp);
}

/// Li2 by direct series, any z in [0, 1); slow near 1 but exact protocol.
inline double dilog_series(double z, int max_terms = 200000) {
    double sum = 0.0;
    double comp = 0.0;
    double zk = 1.0;
    for (int k = 1; k <= max_terms; ++k) {
        zk *= z;
        double term = zk / (static_cast<double>(k) * static_cast<double>(k));
        double t = sum + term;
        comp += (sum - t) + term;
        sum = t;
        if (term < 1e-18) break;
    }
    return sum + comp;
}

/// zeta(s) by direct series with the integral tail added, independent of the
/// library's Euler-Maclaurin path.
inline double zeta_series(int s, std::int64_t terms = 2000000) {
    long double sum = 0.0L;
    for (std::int64_t k = terms; k >= 1; --k) {
        sum += 1.0L / std::pow(static_cast<long double>(k), static_cast<long double>(s));
    }
    long double nd = static_cast<long double>(terms);
    sum += std::pow(nd, static_cast<long double>(1 - s)) / static_cast<long double>(s - 1);
    sum -= 0.5L * std::pow(nd, static_cast<long double>(-s));
    return static_cast<double>(sum);
}

} // namespace oracle

namespace stats {

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and the
/// distribution with tail function `tail` (CDF = 1 - tail). Samples may be
/// passed unsorted.
template <typename TailFn>
double ks_distance(std::vector<double> samples, TailFn&& tail) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double cdf = 1.0 - tail(samples[k]);
        const double lo = static_cast<double>(k) / n;
        const double hi = static_cast<double>(k + 1) / n;
        d = std::max(d, std::max(std::abs(cdf - lo), std::abs(hi - cdf)));
    }
    return d;
}

/// Two-sample chi-square statistic over categories 1..k (equal sample sizes).
inline double chi_square_two_sample(const std::vector<std::int64_t>& counts_a,
                                    const std::vector<std::int64_t>& counts_b) {
    double stat = 0.0;
    for (std::size_t c = 0; c < counts_a.size(); ++c) {
        const double a = static_cast<double>(counts_a[c]);
        const double b = static_cast<double>(counts_b[c]);
        if (a + b == 0.0) continue;
        const double diff = a - b;
        stat += diff * diff / (a + b);
    }
    return stat;
}

/// Total variation distance between two empirical category distributions.
inline double total_variation(const std::vector<std::int64_t>& counts_a,
                              const std::vector<std::int64_t>& counts_b) {
    const double na = static_cast<double>(
        std::accumulate(counts_a.begin(), counts_a.end(), std::int64_t{0}));
    const double nb = static_cast<double>(
        std::accumulate(counts_b.begin(), counts_b.end(), std::int64_t{0}));
    double tv = 0.0;
    for (std::size_t c = 0; c < counts_a.size(); ++c) {
        tv += std::abs(static_cast<double>(counts_a[c]) / na -
                       static_cast<double>(counts_b[c]) / nb);
    }
    return 0.5 * tv;
}

inline double sample_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_stddev(const std::vector<double>& xs) {
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

} // namespace stats
