#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>
#include <sstream>
#include <string>

// End-to-end tests of the hdchain binary: CSV determinism, content spot
// checks, and the 0/1/2 exit-code contract. The binary path arrives in the
// HDC_CLI environment variable (set by ctest).

namespace {

const char* cli_path() { return std::getenv("HDC_CLI"); }

struct run_result {
    int exit_code;
    std::string output; // stdout only
};

run_result run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#define REQUIRE_CLI()                                                          \
    if (!cli_path() || !*cli_path()) {                                         \
        MESSAGE("[ SKIP ] HDC_CLI not set");                                   \
        return;                                                                \
    }

} // namespace

TEST_CASE("limit-table: header, hand values, determinism") {
    REQUIRE_CLI();

    const auto r = run_cli("limit-table --i-max 1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("i,n,q_n_exact,limit,gap\n") == 0);
    CHECK(r.output.find("0.666666666667") != std::string::npos);
    CHECK(r.output.find("0.607927101854") != std::string::npos);

    const auto again = run_cli("limit-table --i-max 1 --n 2");
    CHECK(again.output == r.output);

    const auto multi = run_cli("limit-table --i-max 2 --n 2,10,100 --seed 5");
    const auto multi2 = run_cli("limit-table --i-max 2 --n 2,10,100 --seed 5");
    CHECK(multi.exit_code == 0);
    CHECK(multi.output == multi2.output);
}

TEST_CASE("limit-table: empty list emits only the header") {
    REQUIRE_CLI();
    const auto r = run_cli("limit-table --i-max 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "i,n,q_n_exact,limit,gap\n");
}

TEST_CASE("limit-table: rows with n <= i are not emitted") {
    REQUIRE_CLI();
    const auto r = run_cli("limit-table --i-max 3 --n 2");
    CHECK(r.exit_code == 0);
    // only i = 1 qualifies for n = 2
    int lines = 0;
    for (char c : r.output) lines += (c == '\n') ? 1 : 0;
    CHECK(lines == 2);
}

TEST_CASE("limit-table: malformed n list is a usage error") {
    REQUIRE_CLI();
    CHECK(run_cli("limit-table --i-max 1 --n abc").exit_code == 2);
    CHECK(run_cli("limit-table --i-max 1 --n 0").exit_code == 2);
    CHECK(run_cli("limit-table --i-max 1 --n 10,,20").exit_code == 2);
    CHECK(run_cli("limit-table --i-max -3 --n 10").exit_code == 2);
}

TEST_CASE("hit: exact column matches the DP hand value") {
    REQUIRE_CLI();
    const auto r = run_cli("hit --start 4 --target 2 --reps 1000 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("start,target,exact,mc_estimate,mc_stderr\n") == 0);
    CHECK(r.output.find("4,2,0.636363636364,") != std::string::npos);

    const auto again = run_cli("hit --start 4 --target 2 --reps 1000 --seed 3");
    CHECK(again.output == r.output);

    // degenerate query: estimate 1, stderr 0
    const auto triv = run_cli("hit --start 2 --target 2 --reps 10 --seed 0");
    CHECK(triv.exit_code == 0);
    CHECK(triv.output.find("2,2,1,1,0") != std::string::npos);

    CHECK(run_cli("hit --start 3 --target 1").exit_code == 2);
    CHECK(run_cli("hit --start 3 --target 5").exit_code == 2);
    CHECK(run_cli("hit --start 0 --target 2").exit_code == 2);
}

TEST_CASE("simulate: degenerate outputs and seeded determinism") {
    REQUIRE_CLI();

    const auto one = run_cli("simulate --start 1");
    CHECK(one.exit_code == 0);
    CHECK(one.output == "1\n");

    const auto two = run_cli("simulate --start 2");
    CHECK(two.exit_code == 0);
    CHECK(two.output == "2 1\n");

    const auto a = run_cli("simulate --start 50 --seed 7");
    const auto b = run_cli("simulate --start 50 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("50") == 0);

    CHECK(run_cli("simulate --start 0").exit_code == 2);
}

TEST_CASE("verify suites: exit 0 on a correct build, report lines present") {
    REQUIRE_CLI();

    const auto k = run_cli("verify-kernel");
    CHECK(k.exit_code == 0);
    CHECK(k.output.find("PASS") != std::string::npos);
    CHECK(k.output.find("FAIL") == std::string::npos);

    const auto r = run_cli("verify-renewal");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("hurwitz") != std::string::npos);

    const auto c = run_cli("verify-composition");
    CHECK(c.exit_code == 0);
    CHECK(c.output.find("GP kernel") != std::string::npos);
}

TEST_CASE("balls-in-boxes: blocks CSV, conservation, determinism") {
    REQUIRE_CLI();

    const auto r = run_cli("balls-in-boxes --n 1 --reps 2 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "sample,block_index,block_size\n0,1,1\n1,1,1\n");

    const auto a = run_cli("balls-in-boxes --n 20 --reps 5 --seed 9");
    const auto b = run_cli("balls-in-boxes --n 20 --reps 5 --seed 9");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    CHECK(run_cli("balls-in-boxes --n 20 --eps 0").exit_code == 2);
}

TEST_CASE("overshoot: tail table shape and determinism") {
    REQUIRE_CLI();

    const auto r = run_cli("overshoot --t 5 --reps 2000 --seed 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("y,empirical_tail,chi_tail\n") == 0);
    int lines = 0;
    for (char c : r.output) lines += (c == '\n') ? 1 : 0;
    CHECK(lines == 26); // header + 25 grid rows

    // tail at y = 0 is 1 for both columns
    CHECK(r.output.find("0,1,1\n") != std::string::npos);

    const auto again = run_cli("overshoot --t 5 --reps 2000 --seed 4");
    CHECK(again.output == r.output);
}

TEST_CASE("--out: file contents equal stdout; unwritable path exits 1") {
    REQUIRE_CLI();

    const std::string path = "/tmp/hdc_cli_test_out.csv";
    std::remove(path.c_str());
    const auto to_file = run_cli("limit-table --i-max 1 --n 2,10 --out " + path);
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output.empty());
    const auto direct = run_cli("limit-table --i-max 1 --n 2,10");
    CHECK(read_file(path) == direct.output);
    std::remove(path.c_str());

    const auto bad = run_cli("limit-table --i-max 1 --n 2 --out /nonexistent_dir_hdc/x.csv");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("usage errors: unknown command or missing subcommand") {
    REQUIRE_CLI();
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("hit --start 5").exit_code == 2); // missing required --target
}
