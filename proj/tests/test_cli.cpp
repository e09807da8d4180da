#include "bootperc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using bootperc::run_cli;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("bootperc_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("classify prints the class and stable set") {
    const auto r = run({"classify", "--family", "N[1,2,4]r=6"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "critical, stable set S1_2 ∪ S1_3");
}

TEST_CASE("alpha reproduces the table") {
    const auto r = run({"alpha", "--max-s", "14"});
    CHECK(r.code == 0);
    CHECK(r.out.find("6    2     15/4") != std::string::npos);
    CHECK(r.out.find("11   3     38/5") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"classify", "--family", "N[1,2"}).code == 1);
    CHECK(run({"no-such-command"}).code == 1);
    CHECK(run({"prob", "--family", "N[1,1]r=2", "--L", "4", "--p", "0", "--seed", "1"}).code == 2);
    CHECK(run({"lc", "--family", "N[1,1]r=3", "--p", "0.1", "--seed", "1"}).code == 2);
    CHECK(run({"prob", "--family", "N[1,1]r=2", "--L", "100", "--p", "0.1", "--seed", "1", "--max-cells", "1000"})
              .code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("the environment sets the default cell cap") {
    setenv("BOOTPERC_MAX_CELLS", "50", 1);
    const auto r = run({"prob", "--family", "N[1,1]r=2", "--L", "8", "--p", "0.1", "--seed", "1"});
    const auto flag = run({"prob", "--family", "N[1,1]r=2", "--L", "8", "--p", "0.1", "--seed", "1",
                           "--max-cells", "100"});
    unsetenv("BOOTPERC_MAX_CELLS");
    CHECK(r.code == 3);
    CHECK(flag.code == 0);
}

TEST_CASE("a generated seed is printed and recorded") {
    const auto r = run({"prob", "--family", "N[1,1]r=2", "--L", "5", "--p", "0.3", "--trials", "50"});
    REQUIRE(r.code == 0);
    CHECK(r.err.rfind("seed: ", 0) == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["version"] == bootperc::version());
    const auto argv = doc["config"]["argv"].get<std::vector<std::string>>();
    CHECK(std::find(argv.begin(), argv.end(), "--seed") != argv.end());
}

TEST_CASE("json results replay to identical output") {
    const auto path = temp_path("prob.json");
    const auto first = run({"prob", "--family", "N[1,1]r=2", "--L", "6", "--p", "0.2", "--trials", "200", "--out", path});
    REQUIRE(first.code == 0);
    const std::string original = slurp(path);
    const auto again = run({"replay", path});
    REQUIRE(again.code == 0);
    CHECK(again.out == original);
    std::filesystem::remove(path);
}

TEST_CASE("csv results replay to identical output") {
    const auto path = temp_path("grow.csv");
    const auto first = run({"grow", "--family", "N[1,2,3]r=5", "--base", "4,6,3", "--dir", "e3", "--p", "0.1,0.2",
                            "--trials", "100", "--seed", "4", "--out", path});
    REQUIRE(first.code == 0);
    const std::string original = slurp(path);
    CHECK(original.rfind("# bootperc ", 0) == 0);
    CHECK(original.find("\nl,h,w,dir,succ,trials,ci_lo,ci_hi,p,layer_bound\n") != std::string::npos);
    const auto again = run({"replay", path});
    REQUIRE(again.code == 0);
    CHECK(again.out == original);
    std::filesystem::remove(path);
}

TEST_CASE("output does not depend on the worker count") {
    auto estimate = [](const char* workers) {
        const auto r = run({"prob", "--family", "N[1,1]r=2", "--L", "6", "--p", "0.2", "--trials", "300", "--seed",
                            "8", "--workers", workers});
        return json::parse(r.out)["estimate"];
    };
    CHECK(estimate("1") == estimate("3"));
}

TEST_CASE("lc json schema") {
    const auto r = run({"lc", "--family", "N[1,1]r=2", "--p", "0.3", "--trials", "100", "--seed", "2"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["bracket"].size() == 2);
    CHECK(doc["trace"][0].contains("succ"));
    CHECK(doc["trace"][0]["ci"].size() == 2);
    CHECK(doc["warnings"].is_array());
}

TEST_CASE("other commands run") {
    CHECK(run({"stable-set", "--family", "N[1,1,2]r=3"}).code == 0);
    CHECK(run({"pattern", "--s", "3", "--k", "6", "--p", "1/2"}).code == 0);
    CHECK(run({"enum-beams", "--h-max", "2", "--k-max", "2", "--window", "4,4,4"}).code == 0);
    CHECK(run({"beams", "--family", "N[1,1,2]r=4", "--L", "8", "--p", "0.1", "--seed", "1"}).code == 0);
    CHECK(run({"al-check", "--family", "N[1,1,2]r=4", "--L", "8", "--p", "0.1", "--seed", "1", "--rule",
               "strong-connectivity"})
              .code == 0);
    CHECK(run({"decay", "--family2d", "N[1,2]r=4", "--eps", "0.05", "--window", "31", "--n", "1:5", "--trials",
               "100", "--seed", "1"})
              .code == 0);
    CHECK(run({"droplet", "--family", "N[1,1]r=2", "--droplet", "2,2", "--L", "6", "--p", "0.2", "--seed", "1",
               "--trials", "20"})
              .code == 0);
    CHECK(run({"scale", "--family", "N[1,1]r=2", "--p", "0.3,0.25", "--trials", "50", "--seed", "1"}).code == 0);
    CHECK(run({"closure", "--family", "N[1,1]r=2", "--L", "6", "--p", "0.3", "--seed", "1"}).code == 0);
}
