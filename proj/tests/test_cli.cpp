#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* p = std::getenv("FLEXMAP_CLI");
    REQUIRE_MESSAGE(p != nullptr, "FLEXMAP_CLI must point at the CLI binary");
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) {
        res.output.append(buf, got);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("realize: end to end with full verification") {
    const auto res = run("realize --a 0.4 --b 1.0 --tol 1e-10 --verify 2 --seed 7");
    CHECK(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["schema_version"] == "1");
    CHECK(j["targets"]["a"] == 0.4);
    CHECK(j["targets"]["b"] == 1.0);
    CHECK(j["residuals"]["lambda_abs"].get<double>() <= 1e-10);
    CHECK(j["residuals"]["lambda_max"].get<double>() <= 1e-10);
    CHECK(j["within_tolerances"] == true);
    CHECK(j["verification"].contains("ulam"));
    CHECK(j["verification"].contains("cylinders"));
    CHECK(j["verification"].contains("birkhoff"));
    CHECK(j["verification"]["birkhoff"]["seed"] == 7);
    CHECK(j["params"].contains("one_minus_u"));
    CHECK(!j.contains("timing"));
}

TEST_CASE("realize: reports are byte-identical for identical inputs") {
    const std::string args = "realize --a 0.3 --b 1.5 --tol 1e-10 --verify 2 --seed 99";
    const auto r1 = run(args);
    const auto r2 = run(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
    CHECK(!r1.output.empty());
}

TEST_CASE("realize: invalid targets exit 2 and cite the constraint") {
    const auto res = run("realize --a 0.8 --b 1.0");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("log 2") != std::string::npos);

    CHECK(run("realize --a 0.4 --b 0.5").exit_code == 2);
}

TEST_CASE("realize: verify 2 without seed exits 2") {
    const auto res = run("realize --a 0.4 --b 1.0 --verify 2");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("seed") != std::string::npos);
}

TEST_CASE("realize: an oracle missing its tolerance exits 3, report still written") {
    // forcing a cylinder level too coarse to resolve the kinks makes the
    // cylinder estimate miss its recorded tolerance
    const std::string out = "/tmp/flexmap_exit3_report.json";
    const auto res =
        run("realize --a 0.1 --b 2.0 --verify 1 --level 1 --out " + out);
    CHECK(res.exit_code == 3);
    std::FILE* f = std::fopen(out.c_str(), "rb");
    REQUIRE(f != nullptr);
    char buf[1 << 16];
    const std::size_t got = std::fread(buf, 1, sizeof(buf), f);
    std::fclose(f);
    std::remove(out.c_str());
    const json j = json::parse(std::string(buf, got));
    CHECK(j["within_tolerances"] == false);
    CHECK(j["verification"]["cylinders"]["level"] == 1);
}

TEST_CASE("realize: verify 0 omits oracle blocks") {
    const auto res = run("realize --a 0.4 --b 1.0 --verify 0");
    CHECK(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(!j.contains("verification"));
}

TEST_CASE("realize: --timing adds the only nondeterministic block") {
    const auto res = run("realize --a 0.4 --b 1.0 --verify 0 --timing");
    CHECK(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j.contains("timing"));
}

TEST_CASE("exponents: doubling point and worked example") {
    auto res = run("exponents --n 2 --u 0.5 --k 2 --v 0.5");
    CHECK(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(std::abs(j["lambda_abs"].get<double>() - 0.6931471805599453) <= 1e-14);
    CHECK(std::abs(j["lambda_max"].get<double>() - 0.6931471805599453) <= 1e-14);

    res = run("exponents --n 2 --u 0.75 --k 2 --v 0.75");
    CHECK(res.exit_code == 0);
    j = json::parse(res.output);
    CHECK(std::abs(j["lambda_abs"].get<double>() - 0.62179516095568879) <= 1e-12);
    CHECK(std::abs(j["lambda_max"].get<double>() - 0.76506769867289054) <= 1e-12);

    CHECK(run("exponents --n 2 --u 1.0 --k 2 --v 0.5").exit_code == 2);
}

TEST_CASE("density: plateaus as CSV and JSON") {
    auto res = run("density --n 2 --u 0.75 --k 2 --v 0.75 --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("left,right,value\n", 0) == 0);
    CHECK(count_lines(res.output) == 4);  // header + three plateaus

    res = run("density --n 2 --u 0.5 --k 3 --v 0.5 --format json");
    CHECK(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["plateaus"].size() == 1);
    CHECK(j["plateaus"][0]["value"] == 1.0);
    CHECK(j["integral"] == 1.0);
}

TEST_CASE("sweep: constant rows at the doubling point, exit 2 on overlap") {
    auto res = run("sweep --n 2 --u 0.5 --k 2 --v 0.5 --alphas 1e-2,1e-3 --bins 1024 --level 10");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("alpha,lambda_abs_est,lambda_max_est,lambda_abs_exact,lambda_max_exact\n",
                           0) == 0);
    CHECK(count_lines(res.output) == 4);  // header + alpha=0 + two alphas

    res = run("sweep --n 2 --u 0.75 --k 2 --v 0.75 --alphas 0.2 --bins 1024 --level 8");
    CHECK(res.exit_code == 2);
}

TEST_CASE("plot-data: row counts and density step locations") {
    auto res = run("plot-data --what map --n 2 --u 0.75 --k 2 --v 0.75 --samples 500");
    CHECK(res.exit_code == 0);
    CHECK(count_lines(res.output) == 501);

    res = run("plot-data --what density --n 3 --u 0.8 --k 2 --v 0.9 --samples 1000");
    CHECK(res.exit_code == 0);
    // density steps only at 2^-n = 0.125 and 1 - 2^-k = 0.75
    std::string body = res.output.substr(res.output.find('\n') + 1);
    double prev = -1.0;
    int changes = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::size_t eol = body.find('\n', pos);
        const double val = std::stod(body.substr(comma + 1, eol - comma - 1));
        if (prev >= 0.0 && val != prev) ++changes;
        prev = val;
        pos = eol + 1;
    }
    CHECK(changes == 2);
}
