#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WPSTAT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("volume subcommand prints the exact polynomial") {
    auto r = run_cli("volume --g 1 --n 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1/6*pi^2") != std::string::npos);
    CHECK(r.output.find("1/24*pi^0") != std::string::npos);

    auto r03 = run_cli("volume --g 0 --n 3");
    CHECK(r03.exit_code == 0);
    CHECK(r03.output.find("1/1*pi^0") != std::string::npos);

    auto rx = run_cli("volume --g 1 --n 1 --x 2");
    CHECK(rx.exit_code == 0);
    CHECK(rx.output.find("value at x") != std::string::npos);
    // (4 + 4 pi^2)/24 = 1.81...
    CHECK(rx.output.find("1.8116") != std::string::npos);
}

TEST_CASE("exit codes: 0 ok, 2 domain, 3 budget") {
    CHECK(run_cli("volume --g 1 --n 1").exit_code == 0);
    CHECK(run_cli("volume --g 0 --n 2").exit_code == 2);
    CHECK(run_cli("volume --g 9 --n 5").exit_code == 3);
    CHECK(run_cli("verify no-such-lemma").exit_code == 2);
    CHECK(run_cli("thresholds --g 100 --eps 0").exit_code == 2);
    CHECK(run_cli("volume --g 1 --n 1 --precision 4").exit_code == 2);
}

TEST_CASE("expect subcommand in both modes") {
    auto r = run_cli("expect --g 4 --g0 1 --k 1 --L 5 --mode exact");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("g,L,mode,value,leading,ratio") != std::string::npos);
    auto ra = run_cli("expect --g 100000 --g0 0 --k 3 --L 12 --mode asymptotic --format json");
    CHECK(ra.exit_code == 0);
    auto doc = nlohmann::json::parse(ra.output);
    CHECK(doc["mode"] == "asymptotic");
    CHECK(doc.contains("value"));
    CHECK(doc.contains("leading"));
}

TEST_CASE("verifier reports: pass taxonomy and determinism") {
    auto r1 = run_cli("verify collar-identity --grid 200");
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("# summary,pass") != std::string::npos);
    auto r2 = run_cli("verify collar-identity --grid 200");
    CHECK(r1.output == r2.output);  // identical RunConfig => byte-identical CSV

    auto rm = run_cli("verify maskit");
    CHECK(rm.exit_code == 0);
    CHECK(rm.output.find("trend") != std::string::npos);

    auto rj = run_cli("verify chi-union --format json");
    CHECK(rj.exit_code == 0);
    auto doc = nlohmann::json::parse(rj.output);
    CHECK(doc["summary"] == "pass");
}

TEST_CASE("verify honors sweeps that need budget-free asymptotics") {
    auto r = run_cli("verify E[N] --g-sweep 1000:100000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("split=(1,1) g=1000") != std::string::npos);
    CHECK(r.output.find("trend") != std::string::npos);
}

TEST_CASE("thresholds table emits all windows and round-trips as JSON") {
    auto r = run_cli("thresholds --g 1000000 --eps 0.1 --format json");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    for (const char* key : {"separating_systole_threshold", "extremal_systole", "cheeger_h1",
                            "lambda1_over_L1", "half_collar_width", "sup_L1"})
        CHECK(doc.contains(key));
}

TEST_CASE("volume cache write and reuse through the CLI") {
    const std::string cache = "/tmp/wpstat_cli_cache_test.txt";
    std::remove(cache.c_str());
    auto r1 = run_cli("volume --g 2 --n 1 --cache " + cache);
    CHECK(r1.exit_code == 0);
    auto r2 = run_cli("volume --g 2 --n 1 --cache " + cache);
    CHECK(r2.exit_code == 0);
    CHECK(r1.output == r2.output);
    std::remove(cache.c_str());
}
