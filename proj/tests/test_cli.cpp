#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // captured stdout
};

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "quantropy_cli_tests";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string command = std::string(QUANTROPY_CLI_PATH) + " " + args +
                                " > " + out.string() + " 2> " +
                                (scratch_dir() / "stderr.txt").string();
    const int raw = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_two_state_model() {
    const fs::path path = scratch_dir() / "two_state.json";
    std::ofstream out(path);
    out << R"({"histories":[
        {"id":"h0","weight":1.0,"action":0.0},
        {"id":"h1","weight":1.0,"action":1.0}]})";
    return path;
}

}  // namespace

TEST_CASE("report on the default free particle") {
    const RunResult run = run_cli("report --hbar 1");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["log_Z"]["re"].get<double>() ==
          doctest::Approx(0.9189385332046727).epsilon(1e-9));
    CHECK(doc["log_Z"]["im"].get<double>() ==
          doctest::Approx(0.7853981633974483).epsilon(1e-9));
    CHECK(doc["expected_action"]["im"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("report on a history space at real lambda includes thermal") {
    const fs::path model = write_two_state_model();
    const RunResult run =
        run_cli("report --model " + model.string() + " --beta 1");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["log_Z"]["re"].get<double>() ==
          doctest::Approx(0.31326168751822286).epsilon(1e-12));
    CHECK(doc["quantropy"]["re"].get<double>() ==
          doctest::Approx(0.582203108888218).epsilon(1e-12));
    REQUIRE(doc.contains("thermal"));
    CHECK(doc["thermal"]["entropy"].get<double>() ==
          doctest::Approx(0.582203108888218).epsilon(1e-12));
}

TEST_CASE("quadrature method agrees with the closed form") {
    const RunResult closed = run_cli("report --hbar 1 --format csv");
    const RunResult quad =
        run_cli("report --hbar 1 --format csv --method quadrature");
    REQUIRE(closed.exit_code == 0);
    REQUIRE(quad.exit_code == 0);
    // Compare the lnZ_re cells of the single CSV row.
    const auto cell = [](const std::string& csv, int index) {
        std::stringstream body(csv.substr(csv.find('\n') + 1));
        std::string item;
        for (int i = 0; i <= index; ++i) std::getline(body, item, ',');
        return std::stod(item);
    };
    CHECK(cell(quad.output, 4) ==
          doctest::Approx(cell(closed.output, 4)).epsilon(1e-3));
}

TEST_CASE("malformed model JSON exits 2 and writes nothing") {
    const fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{this is not json";
    const fs::path out = scratch_dir() / "never_written.json";
    fs::remove(out);
    const RunResult run = run_cli("report --model " + bad.string() +
                                  " --beta 1 --out " + out.string());
    CHECK(run.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("missing lambda spec for a space model exits 2") {
    const fs::path model = write_two_state_model();
    const RunResult run = run_cli("report --model " + model.string());
    CHECK(run.exit_code == 2);
}

TEST_CASE("destructive interference exits 3") {
    const fs::path path = scratch_dir() / "interference.json";
    std::ofstream(path) << R"({"histories":[
        {"id":"h0","weight":1.0,"action":0.0},
        {"id":"h1","weight":1.0,"action":3.141592653589793}]})";
    const RunResult run =
        run_cli("report --model " + path.string() + " --hbar 1");
    CHECK(run.exit_code == 3);
}

TEST_CASE("verify passes at the default seed and is deterministic") {
    const fs::path out1 = scratch_dir() / "verify1.json";
    const fs::path out2 = scratch_dir() / "verify2.json";
    const RunResult run1 = run_cli("verify --out " + out1.string());
    const RunResult run2 = run_cli("verify --out " + out2.string());
    REQUIRE(run1.exit_code == 0);
    REQUIRE(run2.exit_code == 0);
    const std::string text1 = read_file(out1);
    CHECK(text1 == read_file(out2));
    const auto doc = nlohmann::json::parse(text1);
    CHECK(doc["all_passed"].get<bool>());
    CHECK(doc["suites"].size() == 5);
}

TEST_CASE("verify with the negative control names stationarity") {
    const RunResult run = run_cli("verify --negative-control");
    CHECK(run.exit_code == 1);
    const auto doc = nlohmann::json::parse(run.output);
    bool stationarity_failed = false;
    for (const auto& suite : doc["suites"]) {
        if (suite["name"] == "stationarity") {
            stationarity_failed = !suite["passed"].get<bool>();
        }
    }
    CHECK(stationarity_failed);
}

TEST_CASE("verify with an unreachable tolerance fails") {
    const RunResult run = run_cli("verify --tol residual=1e-30");
    CHECK(run.exit_code == 1);
}

TEST_CASE("hbar sweep drives the free action to zero") {
    const RunResult run =
        run_cli("sweep --grid hbar=1,0.1,0.01 --model '{\"n\":2}'");
    REQUIRE(run.exit_code == 0);
    std::stringstream lines(run.output);
    std::string line;
    std::getline(lines, line);  // header
    CHECK(line.rfind("n,hbar,", 0) == 0);
    double previous = 1e300;
    int rows = 0;
    while (std::getline(lines, line)) {
        std::stringstream cells(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(cells, cell, ',')) row.push_back(cell);
        REQUIRE(row.size() >= 12);
        const double phi_re = std::stod(row[10]);
        const double phi_im = std::stod(row[11]);
        const double magnitude = std::hypot(phi_re, phi_im);
        CHECK(magnitude < previous);
        previous = magnitude;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("n sweep shows the linear expected-action law") {
    const RunResult run = run_cli("sweep --grid n=1:16 --hbar 1");
    REQUIRE(run.exit_code == 0);
    std::stringstream lines(run.output);
    std::string line;
    std::getline(lines, line);
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        std::stringstream cells(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(cells, cell, ',')) row.push_back(cell);
        CHECK(std::stod(row[0]) == n);
        CHECK(std::stod(row[7]) == doctest::Approx(n / 2.0).epsilon(1e-14));
    }
    CHECK(n == 16);
}

TEST_CASE("empty and non-monotone grids exit 2") {
    CHECK(run_cli("sweep --grid hbar=").exit_code == 2);
    CHECK(run_cli("sweep --grid hbar=1,1,2").exit_code == 2);
    CHECK(run_cli("sweep --grid hbar=1,3,2").exit_code == 2);
    CHECK(run_cli("sweep --grid junk=1,2").exit_code == 2);
}

TEST_CASE("limit emits a per-level convergence CSV") {
    const RunResult run =
        run_cli("limit --alpha 0,1 --reg damping --epsilon 1e-2 --levels 4");
    REQUIRE(run.exit_code == 0);
    std::stringstream lines(run.output);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "level,regulator_value,estimate_re,estimate_im,"
          "abs_error_vs_closed_form");
    int rows = 0;
    double previous_eps = 1e300;
    while (std::getline(lines, line)) {
        std::stringstream cells(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(cells, cell, ',')) row.push_back(cell);
        REQUIRE(row.size() == 5);
        const double eps = std::stod(row[1]);
        CHECK(eps < previous_eps);
        previous_eps = eps;
        ++rows;
    }
    CHECK(rows == 4);

    // A divergent alpha is a numerical failure.
    CHECK(run_cli("limit --alpha -1,0").exit_code == 3);
}

TEST_CASE("analogy reports agreement for a two-state space") {
    const fs::path model = write_two_state_model();
    const RunResult run =
        run_cli("analogy --model " + model.string() + " --beta 1");
    REQUIRE(run.exit_code == 0);
    const auto doc = nlohmann::json::parse(run.output);
    CHECK(doc["match"].get<bool>());
    CHECK(doc["quantum"]["quantropy"]["re"].get<double>() ==
          doctest::Approx(doc["thermal"]["entropy"].get<double>())
              .epsilon(1e-12));
}

TEST_CASE("the history cap from the environment forces factorization") {
    // 64^2 grid histories exceed a cap of 100, so the quadrature method
    // falls back to the exact per-axis factorization and still succeeds.
    const std::string env = "QUANTROPY_MAX_HISTORIES=100 ";
    const fs::path out = scratch_dir() / "env_quad.json";
    const std::string command =
        env + std::string(QUANTROPY_CLI_PATH) +
        " report --hbar 1 --model '{\"n\":2}' --method quadrature"
        " --grid-points 64 --grid-epsilon 0.3 --out " +
        out.string() + " > /dev/null 2>&1";
    const int raw = std::system(command.c_str());
    CHECK(WEXITSTATUS(raw) == 0);
    const auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc["expected_action"]["im"].get<double>() ==
          doctest::Approx(1.0).epsilon(0.05));

    const std::string bad =
        "QUANTROPY_MAX_HISTORIES=bogus " + std::string(QUANTROPY_CLI_PATH) +
        " report --hbar 1 --method quadrature > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}

TEST_CASE("sweep output is byte-identical across runs") {
    const fs::path out1 = scratch_dir() / "sweep1.csv";
    const fs::path out2 = scratch_dir() / "sweep2.csv";
    REQUIRE(run_cli("sweep --grid n=1:8 --hbar 0.5 --out " + out1.string())
                .exit_code == 0);
    REQUIRE(run_cli("sweep --grid n=1:8 --hbar 0.5 --out " + out2.string())
                .exit_code == 0);
    CHECK(read_file(out1) == read_file(out2));
}
