#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

struct CliHarness {
    fs::path dir;
    fs::path cache_file;

    CliHarness() {
        dir = fs::temp_directory_path() /
              ("rderange-cli-" + std::to_string(::getpid()) + "-" +
               std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(dir);
        cache_file = dir / "table.cache";
    }
    ~CliHarness() { fs::remove_all(dir); }

    RunResult run(const std::string& args, bool with_cache = true) const {
        fs::path out_file = dir / "stdout.txt";
        fs::path err_file = dir / "stderr.txt";
        std::string cache_value = with_cache ? cache_file.string() : "";
        std::string cmd = "RDERANGE_CACHE='" + cache_value + "' " + RDERANGE_CLI_PATH + " " +
                          args + " >'" + out_file.string() + "' 2>'" + err_file.string() + "'";
        int status = std::system(cmd.c_str());
        RunResult r;
        r.exit_code = WEXITSTATUS(status);
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            return std::string((std::istreambuf_iterator<char>(in)), {});
        };
        r.out = slurp(out_file);
        r.err = slurp(err_file);
        return r;
    }
};

}  // namespace

TEST_CASE("compute") {
    CliHarness cli;
    CHECK(cli.run("compute 2 6").out == "5430\n");
    CHECK(cli.run("compute 2 6").exit_code == 0);
    CHECK(cli.run("compute 2 4 --reduced").out == "7\n");
    CHECK(cli.run("compute 5 4").out == "0\n");
    CHECK(cli.run("compute 2 4 --formula closed").out == "84\n");
    CHECK(cli.run("compute 2 4 --formula convolution:1").out == "84\n");
    CHECK(cli.run("compute 2 4 --formula convolution:2").out == "84\n");
    CHECK(cli.run("compute 2 4 --formula lift").out == "84\n");
}

TEST_CASE("usage errors exit with code 2") {
    CliHarness cli;
    CHECK(cli.run("compute 2 1 --reduced").exit_code == 2);
    CHECK(cli.run("compute 2 4 --formula bogus").exit_code == 2);
    CHECK(cli.run("compute 2 4 --formula convolution:7").exit_code == 2);
    CHECK(cli.run("").exit_code == 2);
    CHECK(cli.run("nosuchcommand").exit_code == 2);
    CHECK(cli.run("verify --suite bogus").exit_code == 2);
    CHECK(cli.run("period D 2 5 1").exit_code == 2);
    CHECK(cli.run("density 2 1").exit_code == 2);
}

TEST_CASE("table output round-trips") {
    CliHarness cli;
    RunResult csv = cli.run("table 2 6 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("r,n,value\n", 0) == 0);
    CHECK(csv.out.find("2,4,84\n") != std::string::npos);
    CHECK(csv.out.find("2,6,5430\n") != std::string::npos);

    RunResult js = cli.run("table 2 6 --format json");
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["r"] == 2);
    REQUIRE(j["values"].size() == 7);
    CHECK(j["values"][4]["value"] == "84");
    CHECK(j["values"][0]["value"] == "0");
}

TEST_CASE("verify suites pass and report") {
    CliHarness cli;
    RunResult r = cli.run("verify --suite lah");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["suite"] == "lah");
    CHECK(j[0]["failures"].empty());
    CHECK(r.err.find("suite lah") != std::string::npos);

    CHECK(cli.run("verify --suite mod2").exit_code == 0);
    CHECK(cli.run("verify --suite expectation").exit_code == 0);

    RunResult all = cli.run("verify --suite all");
    CHECK(all.exit_code == 0);
    CHECK(nlohmann::json::parse(all.out).size() == 6);
}

TEST_CASE("period certificates") {
    CliHarness cli;
    RunResult r = cli.run("period D 2 5 10");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["claimed_period"] == 10);
    CHECK(j["verified_up_to"] == 50);
    CHECK(j["residues"].size() == 10);

    auto even = nlohmann::json::parse(cli.run("period D 2 4 10").out);
    CHECK(even["claimed_period"] == 4);
    auto c = nlohmann::json::parse(cli.run("period C 1 3 10").out);
    CHECK(c["claimed_period"] == 6);
    CHECK(c["first_index"] == 1);
}

TEST_CASE("valuation trees") {
    CliHarness cli;
    RunResult r = cli.run("valuation 2 2 3 200");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["nodes"].size() == 3);
    CHECK(j["nodes"][2]["class"] == "5");
    CHECK(j["nodes"][2]["modulus"] == "8");

    RunResult dot = cli.run("valuation 2 2 3 200 --dot");
    CHECK(dot.out.find("digraph") != std::string::npos);
    CHECK(dot.out.find("n = 5 mod 8") != std::string::npos);

    RunResult empty = cli.run("valuation 3 2 1 50");
    CHECK(nlohmann::json::parse(empty.out)["nodes"].empty());
}

TEST_CASE("solvers") {
    CliHarness cli;
    RunResult fact = cli.run("solve --factorial 2 1");
    CHECK(fact.exit_code == 0);
    auto j = nlohmann::json::parse(fact.out);
    REQUIRE(j["solutions"].size() == 1);
    CHECK(j["solutions"][0]["n"] == 2);
    CHECK(j["solutions"][0]["m"] == 2);
    CHECK(j["certifying_prime"] == 3);

    auto half = nlohmann::json::parse(cli.run("solve --factorial 2 1/2").out);
    REQUIRE(half["solutions"].size() == 1);
    CHECK(half["solutions"][0]["n"] == 3);
    CHECK(half["solutions"][0]["m"] == 4);

    auto pp = nlohmann::json::parse(cli.run("solve --prime-power-r2 100").out);
    REQUIRE(pp["solutions"].size() == 1);
    CHECK(pp["solutions"][0]["p"] == 2);
    CHECK(pp["solutions"][0]["n"] == 2);
    CHECK(pp["solutions"][0]["k"] == 1);

    CHECK(cli.run("solve").exit_code == 2);
    CHECK(cli.run("solve --factorial 1 1").exit_code == 2);
}

TEST_CASE("asymptotics command") {
    CliHarness cli;
    RunResult r = cli.run("asympt 4 8 12");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    std::string est = j["estimate_over_n_plus_r_factorial"];
    std::string exact = j["exact_over_n_plus_r_factorial"];
    CHECK(est.rfind("0.00351080232", 0) == 0);
    CHECK(exact.rfind("0.00351080246", 0) == 0);

    auto checked = nlohmann::json::parse(cli.run("asympt 2 10 5 --check-bound").out);
    CHECK(checked["t2_bound_holds"] == true);

    CHECK(cli.run("--max-digits 1 asympt 2 10 5 --check-bound").exit_code == 3);
}

TEST_CASE("density report") {
    CliHarness cli;
    RunResult r = cli.run("density 2 3");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["density"] == "1/2");
    CHECK(j["primes"] == 2);
    std::string dec = j["density_decimal"];
    CHECK(dec == "0.500000");
}

TEST_CASE("cache behaviour") {
    CliHarness cli;

    RunResult cold = cli.run("compute 2 6");
    REQUIRE(cold.exit_code == 0);
    CHECK(fs::exists(cli.cache_file));
    RunResult warm = cli.run("compute 2 6");
    CHECK(warm.exit_code == 0);
    CHECK(warm.out == cold.out);

    SUBCASE("identical bytes after a pure reload") {
        auto slurp = [&] {
            std::ifstream in(cli.cache_file, std::ios::binary);
            return std::string((std::istreambuf_iterator<char>(in)), {});
        };
        std::string before = slurp();
        RunResult again = cli.run("compute 2 6");
        CHECK(again.exit_code == 0);
        CHECK(slurp() == before);
    }

    SUBCASE("corrupt cache is ignored with a warning and rewritten") {
        std::ofstream(cli.cache_file, std::ios::trunc) << "garbage\n";
        RunResult r = cli.run("compute 2 6");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "5430\n");
        CHECK(r.err.find("warning") != std::string::npos);
        std::string warning;
        std::ifstream in(cli.cache_file);
        std::string first_line;
        std::getline(in, first_line);
        CHECK(first_line == "rderange-cache v1");
    }

    SUBCASE("empty RDERANGE_CACHE disables caching") {
        RunResult r = cli.run("compute 2 6", /*with_cache=*/false);
        CHECK(r.exit_code == 0);
        CHECK(r.out == "5430\n");
    }
}
