#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args)
{
    const std::string out_path = "cli_test_stdout.txt";
    const std::string cmd = std::string(LHVLAB_CLI) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

}  // namespace

TEST_CASE("sweep subcommand writes a one-row CSV for a single grid point")
{
    const Result r = run("sweep --model erased-circle --grid 0 --trials 20000");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.rfind("theta", 0) != 0) {
            ++rows;
            last = line;
        }
    }
    CHECK(rows == 1);
    CHECK(last.rfind("0,-1,0,", 0) == 0);
}

TEST_CASE("rates subcommand JSON")
{
    const Result r = run("rates --model linear --trials 1000");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["f_cc"] == 1.0);
    CHECK(j["config"]["model"] == "linear");
}

TEST_CASE("flags override config file values")
{
    {
        std::ofstream cfg("cli_test_config.json");
        cfg << R"({"model":"linear","trials":500,"seed":9})";
    }
    const Result r = run("rates --config cli_test_config.json --seed 11");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["seed"] == 11);
    CHECK(j["config"]["trials"] == 500);
    CHECK(j["config"]["model"] == "linear");
}

TEST_CASE("output is byte-stable and can go to a file")
{
    const Result a = run("chsh --model sphere --trials 20000 --out cli_test_chsh.json");
    CHECK(a.code == 0);
    std::ifstream in("cli_test_chsh.json");
    std::stringstream first;
    first << in.rdbuf();
    const Result b = run("chsh --model sphere --trials 20000 --threads 1");
    CHECK(b.out == first.str());
}

TEST_CASE("configuration errors exit with 1")
{
    CHECK(run("sweep --model nonsense").code == 1);
    CHECK(run("rates --null-injection 3").code == 1);
    CHECK(run("franson --model sphere").code == 1);
    CHECK(run("rates --config /nonexistent.json").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("sweep --grid x").code == 1);
}

TEST_CASE("verify negative control exits with 2")
{
    const Result r = run("verify --json --corrupt-erasure-weight");
    CHECK(r.code == 2);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_passed"] == false);
    CHECK(j["criteria"].size() == 12);
    CHECK(j["criteria"][0]["passed"] == false);
}
