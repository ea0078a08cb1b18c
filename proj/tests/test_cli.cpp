#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef HARMONIC_CLI_PATH
#error "HARMONIC_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = (env.empty() ? "" : "env " + env + " ") +
                            std::string(HARMONIC_CLI_PATH) + " " + args +
                            " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        res.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

using Json = nlohmann::ordered_json;

}  // namespace

TEST_CASE("decompose 1/2: closed form and residual") {
    const RunResult r = run_cli("decompose 1/2");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("index") == "1/2");
    const auto& terms = doc.at("value").at("terms");
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].at("atom") == "Unit");
    CHECK(terms[0].at("coeff").at("coeffs")[0][0] == "2");
    CHECK(terms[1].at("atom") == "Log2");
    CHECK(terms[1].at("coeff").at("coeffs")[0][0] == "-2");
    // residual below 1e-90 at the default 100 digits
    const std::string residual = doc.at("residual");
    const double rv = std::stod(residual);
    CHECK(rv < 1e-90);
}

TEST_CASE("decompose exit codes") {
    CHECK(run_cli("decompose 1/6").exit_code == 2);   // unsupported modulus
    CHECK(run_cli("decompose 5/5").exit_code == 1);   // integer in disguise
    CHECK(run_cli("decompose 1x2").exit_code == 1);
    CHECK(run_cli("decompose").exit_code == 1);
    CHECK(run_cli("decompose 7/1").exit_code == 0);   // integer written n/1
}

TEST_CASE("dim --primes 5") {
    const RunResult r = run_cli("dim --primes 5");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("dim") == 4);
    CHECK(doc.at("formula") == 4);
    CHECK(doc.at("match") == true);
    CHECK(doc.at("relations").size() == 1);
}

TEST_CASE("dim --primes 5,7") {
    const RunResult r = run_cli("dim --primes 5,7");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("dim") == 7);
    CHECK(doc.at("formula") == 7);
    CHECK(doc.at("match") == true);
}

TEST_CASE("dim --primes 2 reports n/a formula") {
    const RunResult r = run_cli("dim --primes 2");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("dim") == 2);
    CHECK(doc.at("formula").is_null());
    CHECK(doc.at("match") == "n/a");
}

TEST_CASE("dim --indices and error paths") {
    const RunResult r = run_cli("dim --indices 1/5,2/5,1/1");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("dim") == 3);
    CHECK(run_cli("dim --primes 6").exit_code == 1);
    CHECK(run_cli("dim --indices 1/6").exit_code == 2);
    CHECK(run_cli("dim").exit_code == 1);
    CHECK(run_cli("dim --primes 5 --indices 1/5").exit_code == 1);
}

TEST_CASE("deterministic output: identical invocations byte-identical") {
    const RunResult a = run_cli("decompose 3/7");
    const RunResult b = run_cli("decompose 3/7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const RunResult c = run_cli("dim --primes 5");
    const RunResult d = run_cli("dim --primes 5");
    CHECK(c.output == d.output);
}

TEST_CASE("check subcommand: radical suite") {
    const RunResult r = run_cli("check 3.3 --digits 60");
    CHECK(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc.at("failed") == 0);
    CHECK(doc.at("cases").size() == 5);  // n = 2..6
}

TEST_CASE("check subcommand: text format") {
    const RunResult r = run_cli("check 3.7 --format text --digits 60");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("check rejects unknown selectors") {
    CHECK(run_cli("check nonsense").exit_code == 1);
}

TEST_CASE("flags: digits validation and conductor cap") {
    CHECK(run_cli("decompose 1/2 --digits 5").exit_code == 1);
    CHECK(run_cli("--conductor-cap 3 decompose 1/2").exit_code == 1);
    CHECK(run_cli("decompose 1/5 --conductor-cap 8").exit_code == 2);
}

TEST_CASE("environment default for digits, overridden by the flag") {
    const RunResult env_only =
        run_cli("decompose 1/2", "HARMONIC_DIGITS=40");
    CHECK(env_only.exit_code == 0);
    CHECK(Json::parse(env_only.output).at("digits") == 40);
    const RunResult overridden =
        run_cli("decompose 1/2 --digits 60", "HARMONIC_DIGITS=40");
    CHECK(Json::parse(overridden.output).at("digits") == 60);
    // garbage in the environment falls back to the default
    const RunResult garbage =
        run_cli("decompose 1/2", "HARMONIC_DIGITS=banana");
    CHECK(Json::parse(garbage.output).at("digits") == 100);
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "/tmp/harmonic_cli_out_test.json";
    std::remove(path.c_str());
    const RunResult r = run_cli("decompose 1/2 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const Json doc = Json::parse(in);
    CHECK(doc.at("index") == "1/2");
    std::remove(path.c_str());
}
