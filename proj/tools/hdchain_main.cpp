// hdchain — command-line front end emitting deterministic CSV tables for the
// harmonic descent chain, its occupancy representation, and the overshoot law.
//
// Exit codes: 0 success, 1 verification/runtime failure, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdc/chain.hpp"
#include "hdc/composition.hpp"
#include "hdc/renewal.hpp"
#include "hdc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Output sink: stdout by default, --out file otherwise.
class output_sink {
public:
    explicit output_sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::int64_t> parse_n_list(const std::string& text) {
    std::vector<std::int64_t> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--n", "not an integer: '" + item + "'");
        }
        if (pos != item.size() || v < 1) {
            throw CLI::ValidationError("--n", "entries must be positive integers: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

int cmd_limit_table(std::int64_t i_max, const std::vector<std::int64_t>& n_list,
                    const std::string& out_path) {
    output_sink sink(out_path);
    auto& os = sink.stream();
    os << "i,n,q_n_exact,limit,gap\n";
    if (n_list.empty()) return kExitOk;

    const std::int64_t max_n = *std::max_element(n_list.begin(), n_list.end());
    hdc::harmonic_table table(max_n);
    for (std::int64_t i = 1; i <= i_max; ++i) {
        std::vector<std::int64_t> starts;
        for (std::int64_t n : n_list) {
            if (n > i) starts.push_back(n);
        }
        for (const auto& row : hdc::convergence_table(i, starts, table)) {
            os << i << ',' << row.n << ',' << fmt12(row.q_exact) << ',' << fmt12(row.limit)
               << ',' << fmt12(row.gap) << '\n';
        }
    }
    return kExitOk;
}

int cmd_hit(std::int64_t start, std::int64_t target, std::int64_t reps, std::uint64_t seed,
            const std::string& out_path) {
    hdc::harmonic_table table(start);
    const double exact = hdc::hit_probability_exact({start, target}, table);
    const auto mc = hdc::hit_probability_mc({start, target}, reps, table, hdc::rng_stream(seed));

    output_sink sink(out_path);
    auto& os = sink.stream();
    os << "start,target,exact,mc_estimate,mc_stderr\n";
    os << start << ',' << target << ',' << fmt12(exact) << ',' << fmt12(mc.estimate) << ','
       << fmt12(mc.std_error) << '\n';
    return kExitOk;
}

int cmd_simulate(std::int64_t start, std::uint64_t seed, const std::string& out_path) {
    hdc::harmonic_table table(start);
    const auto traj = hdc::simulate(start, table, hdc::rng_stream(seed));
    output_sink sink(out_path);
    auto& os = sink.stream();
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        if (k > 0) os << ' ';
        os << traj.states[k];
    }
    os << '\n';
    return kExitOk;
}

int cmd_balls_in_boxes(std::int64_t n, double eps, std::int64_t reps, std::uint64_t seed,
                       const std::string& out_path) {
    output_sink sink(out_path);
    auto& os = sink.stream();
    os << "sample,block_index,block_size\n";
    for (std::int64_t s = 0; s < reps; ++s) {
        hdc::rng_stream rng(seed, s);
        const auto c = hdc::balls_in_boxes(n, eps, rng);
        for (std::size_t k = 0; k < c.blocks.size(); ++k) {
            os << s << ',' << (k + 1) << ',' << c.blocks[k] << '\n';
        }
    }
    return kExitOk;
}

int cmd_overshoot(double t, double eps, std::int64_t reps, std::uint64_t seed,
                  const std::string& out_path) {
    auto est = hdc::overshoot_mc(t, eps, reps, hdc::rng_stream(seed));
    std::sort(est.samples.begin(), est.samples.end());
    const double total = static_cast<double>(est.samples.size());

    output_sink sink(out_path);
    auto& os = sink.stream();
    os << "y,empirical_tail,chi_tail\n";
    for (int k = 0; k <= 24; ++k) {
        const double y = 0.25 * static_cast<double>(k);
        const auto above = est.samples.end() -
                           std::upper_bound(est.samples.begin(), est.samples.end(), y);
        os << fmt12(y) << ',' << fmt12(static_cast<double>(above) / total) << ','
           << fmt12(hdc::chi_tail(y)) << '\n';
    }
    return kExitOk;
}

int run_verify(const std::vector<hdc::check_result>& checks, const std::string& suite) {
    std::printf("verify %s: %zu checks\n", suite.c_str(), checks.size());
    for (const auto& c : checks) {
        std::printf("  [%s] %-62s measured=%.3e tol=%.3e\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.measured, c.tolerance);
    }
    const bool ok = hdc::all_passed(checks);
    std::printf("verify %s: %s\n", suite.c_str(), ok ? "all checks passed" : "FAILED");
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic descent chain toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::int64_t reps = 100000;
    double eps = 1e-6;
    double level_t = 30.0;
    std::int64_t start = 1;
    std::int64_t target = 2;
    std::int64_t i_max = 1;
    std::int64_t bb_n = 20;
    std::string n_text;
    std::string out_path;

    auto* lt = app.add_subcommand("limit-table",
                                  "exact hitting probabilities against the limit h_i/(zeta(2) i)");
    lt->add_option("--i-max", i_max, "largest target offset i")->check(CLI::PositiveNumber);
    lt->add_option("--n", n_text, "comma-separated list of starts n");
    lt->add_option("--seed", seed, "RNG seed (unused; the table is exact)");
    lt->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* hit = app.add_subcommand("hit", "exact and Monte Carlo hitting probability");
    hit->add_option("--start", start, "start state")->required()->check(CLI::PositiveNumber);
    hit->add_option("--target", target, "target state (>= 2)")->required();
    hit->add_option("--reps", reps, "Monte Carlo replicates")->check(CLI::PositiveNumber);
    hit->add_option("--seed", seed, "RNG seed");
    hit->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* sim = app.add_subcommand("simulate", "one seeded trajectory to absorption");
    sim->add_option("--start", start, "start state")->required()->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--out", out_path, "write here instead of stdout");

    auto* vk = app.add_subcommand("verify-kernel", "descent-kernel invariant suite");
    auto* vr = app.add_subcommand("verify-renewal", "renewal/overshoot invariant suite");
    auto* vc = app.add_subcommand("verify-composition", "composition/GP-kernel invariant suite");

    auto* bb = app.add_subcommand("balls-in-boxes", "occupancy compositions from the subordinator");
    bb->add_option("--n", bb_n, "number of exponential points")->check(CLI::PositiveNumber);
    bb->add_option("--eps", eps, "jump truncation level")->check(CLI::PositiveNumber);
    bb->add_option("--reps", reps, "number of samples")->check(CLI::PositiveNumber);
    bb->add_option("--seed", seed, "RNG seed");
    bb->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* ov = app.add_subcommand("overshoot", "first-passage overshoots vs the chi tail");
    ov->add_option("--t", level_t, "passage level")->check(CLI::PositiveNumber);
    ov->add_option("--eps", eps, "jump truncation level")->check(CLI::PositiveNumber);
    ov->add_option("--reps", reps, "number of replicates")->check(CLI::PositiveNumber);
    ov->add_option("--seed", seed, "RNG seed");
    ov->add_option("--out", out_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (lt->parsed()) return cmd_limit_table(i_max, parse_n_list(n_text), out_path);
        if (hit->parsed()) return cmd_hit(start, target, reps, seed, out_path);
        if (sim->parsed()) return cmd_simulate(start, seed, out_path);
        if (vk->parsed()) return run_verify(hdc::verify_kernel(), "kernel");
        if (vr->parsed()) return run_verify(hdc::verify_renewal(), "renewal");
        if (vc->parsed()) return run_verify(hdc::verify_composition(), "composition");
        if (bb->parsed()) return cmd_balls_in_boxes(bb_n, eps, reps, seed, out_path);
        if (ov->parsed()) return cmd_overshoot(level_t, eps, reps, seed, out_path);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
