#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdc {

namespace detail {

// Neumaier-compensated accumulator; error stays O(eps) independent of the
// number of terms.
struct kahan_sum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) noexcept {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const noexcept { return sum + comp; }
};

} // namespace detail

/// Harmonic number h_n = sum_{k=1}^n 1/k by forward Kahan summation. The
/// running sum itself is returned, so consecutive values differ by 1/n up to
/// one rounding.
inline double harmonic(std::int64_t n) {
    if (n < 1) throw std::domain_error("harmonic: n must be >= 1");
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const double y = 1.0 / static_cast<double>(k) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// Cached table of h_1..h_max_n. Doubles as the shared inverse-CDF support for
// the descent kernels: the cumulative law of the decrement from state j is
// P{decrement <= i} = h_i / h_{j-1}, so sampling reduces to a binary search
// over this table.
class harmonic_table {
public:
    explicit harmonic_table(std::int64_t max_n) {
        if (max_n < 1) throw std::domain_error("harmonic_table: max_n must be >= 1");
        values_.reserve(static_cast<std::size_t>(max_n));
        double sum = 0.0;
        double comp = 0.0;
        for (std::int64_t k = 1; k <= max_n; ++k) {
            const double y = 1.0 / static_cast<double>(k) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            values_.push_back(sum);
        }
    }

    std::int64_t max_n() const noexcept { return static_cast<std::int64_t>(values_.size()); }

    double h(std::int64_t n) const {
        if (n < 1 || n > max_n()) throw std::out_of_range("harmonic_table: n out of range");
        return values_[static_cast<std::size_t>(n - 1)];
    }

    /// Smallest m in [1, limit] with h_m >= target (clamped to limit).
    std::int64_t inverse_cdf_index(double target, std::int64_t limit) const {
        if (limit < 1 || limit > max_n()) throw std::out_of_range("harmonic_table: limit out of range");
        auto first = values_.begin();
        auto last = first + static_cast<std::ptrdiff_t>(limit);
        auto it = std::lower_bound(first, last, target);
        if (it == last) return limit;
        return static_cast<std::int64_t>(it - first) + 1;
    }

    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

/// Riemann zeta at integer s >= 2: partial series plus Euler-Maclaurin tail,
/// extended until the rigorous bound on the dropped remainder is below 1e-16
/// relative.
inline double zeta_int(int s) {
    if (s < 2) throw std::domain_error("zeta_int: s must be >= 2");
    const double sd = static_cast<double>(s);
    std::int64_t n = 16;
    double tail_bound = std::numeric_limits<double>::infinity();
    detail::kahan_sum acc;
    std::int64_t k = 1;
    for (;;) {
        for (; k <= n; ++k) acc.add(std::pow(static_cast<double>(k), -sd));
        // remainder after adding the tail terms below is bounded by the next
        // Euler-Maclaurin term ~ s(s+1)(s+2) N^{-s-3}/720
        tail_bound = sd * (sd + 1.0) * (sd + 2.0) / (720.0 * std::pow(static_cast<double>(n), sd + 3.0));
        if (tail_bound < 1e-16 * acc.value()) break;
        n *= 2;
    }
    const double nd = static_cast<double>(n);
    double tail = std::pow(nd, 1.0 - sd) / (sd - 1.0)   // integral from n to infinity
                  - 0.5 * std::pow(nd, -sd)             // trapezoid correction
                  + sd * std::pow(nd, -sd - 1.0) / 12.0; // B_2 term
    return acc.value() + tail;
}

/// zeta(2), zeta(3), zeta(4), computed once and shared.
struct zeta_constants {
    double zeta2;
    double zeta3;
    double zeta4;
};

inline const zeta_constants& zeta_cache() {
    static const zeta_constants z{zeta_int(2), zeta_int(3), zeta_int(4)};
    return z;
}

namespace detail {

inline double dilog_series(double z) {
    // converges geometrically for z <= 1/2; also used by tests at larger z
    kahan_sum acc;
    double zk = 1.0;
    for (int k = 1; k < 10000; ++k) {
        zk *= z;
        double term = zk / (static_cast<double>(k) * static_cast<double>(k));
        acc.add(term);
        if (term < 1e-18) break;
    }
    return acc.value();
}

} // namespace detail

/// Dilogarithm Li2(z) = sum_{k>=1} z^k/k^2 on [0, 1]. Uses the reflection
/// Li2(z) + Li2(1-z) = zeta(2) - log(z) log(1-z) above 1/2 so the series
/// argument never exceeds 1/2.
inline double dilog(double z) {
    if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("dilog: z must lie in [0, 1]");
    if (z == 0.0) return 0.0;
    if (z == 1.0) return zeta_cache().zeta2;
    if (z <= 0.5) return detail::dilog_series(z);
    return zeta_cache().zeta2 - std::log(z) * std::log1p(-z) - detail::dilog_series(1.0 - z);
}

/// Tolerances and budget for adaptive quadrature.
struct quadrature_spec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
};

/// Thrown when the subdivision budget is exhausted; carries the best estimate.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double estimate, double error)
        : std::runtime_error(what), best_estimate(estimate), error_bound(error) {}

    double best_estimate;
    double error_bound;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct gk_result {
    double value;
    double error;
};

// One G7/K15 panel with the QUADPACK-style scaled error estimate.
template <typename F>
gk_result gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk15_nodes[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
    }

    double resg = gk15_wg[3] * fc;
    double resk = gk15_wk[7] * fc;
    double resabs = gk15_wk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double fsum = fv1[j] + fv2[j];
        resk += gk15_wk[j] * fsum;
        resabs += gk15_wk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += gk15_wg[j / 2] * fsum;
    }

    const double reskh = resk * 0.5;
    double resasc = gk15_wk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += gk15_wk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    resasc *= std::abs(h);
    resabs *= std::abs(h);

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50) {
        err = std::max(eps50 * resabs, err);
    }
    return {resk * h, err};
}

struct segment {
    double a, b, value, error;
    bool operator<(const segment& other) const noexcept { return error < other.error; }
};

template <typename F>
double integrate_finite(F&& f, double a, double b, const quadrature_spec& spec) {
    std::vector<segment> heap;
    std::vector<segment> final_segments; // too narrow to split further
    {
        auto r = gk15(f, a, b);
        heap.push_back({a, b, r.value, r.error});
    }

    auto totals = [&] {
        kahan_sum val, err;
        for (const auto& s : heap) {
            val.add(s.value);
            err.add(s.error);
        }
        for (const auto& s : final_segments) {
            val.add(s.value);
            err.add(s.error);
        }
        return std::pair<double, double>{val.value(), err.value()};
    };

    int subdivisions = 0;
    for (;;) {
        auto [total, err_total] = totals();
        if (err_total <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
        if (heap.empty() || subdivisions >= spec.max_subdivisions) {
            throw quadrature_error("integrate: failed to converge within max_subdivisions",
                                   total, err_total);
        }

        std::pop_heap(heap.begin(), heap.end());
        segment worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            final_segments.push_back(worst);
            continue;
        }
        ++subdivisions;
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        heap.push_back({worst.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end());
        heap.push_back({mid, worst.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end());
    }
}

} // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over (a, b) to within
/// max(abs_tol, rel_tol * |result|). b may be +infinity, in which case the
/// exponential substitution x = a - log(u) maps the range onto (0, 1];
/// endpoint singularities up to logarithmic strength are handled by
/// subdivision (the rule never evaluates at interval endpoints).
template <typename F>
double integrate(F&& f, double a, double b, const quadrature_spec& spec = {}) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw std::domain_error("integrate: tolerances must be positive");
    }
    if (spec.max_subdivisions < 1) {
        throw std::domain_error("integrate: max_subdivisions must be >= 1");
    }
    if (std::isinf(b)) {
        auto g = [&f, a](double u) { return f(a - std::log(u)) / u; };
        return detail::integrate_finite(g, 0.0, 1.0, spec);
    }
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");
    return detail::integrate_finite(f, a, b, spec);
}

} // namespace hdc
