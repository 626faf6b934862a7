#include "cli.hpp"

#include "polyflow/corpus.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using polyflow::corpus_dir;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = polyflow::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string model(const char* file) { return (corpus_dir() / file).string(); }
}  // namespace

TEST_CASE("usage errors") {
    CHECK(run({}).code == polyflow::cli::kUsage);
    CHECK(run({"nonsense"}).code == polyflow::cli::kUsage);
    CHECK(run({"darboux"}).code == polyflow::cli::kUsage);
    CHECK(run({"darboux", model("three_wave.model"), "--degree", "0", "-p", "gamma=0", "-p", "delta=1"}).code ==
          polyflow::cli::kUsage);
    const auto missing = run({"darboux", model("three_wave.model")});
    CHECK(missing.code == polyflow::cli::kUsage);
    CHECK(missing.err.find("gamma") != std::string::npos);
    CHECK(run({"darboux", "/no/such/file.model"}).code == polyflow::cli::kUsage);
}

TEST_CASE("darboux json output") {
    const auto r = run({"darboux", model("three_wave.model"), "--degree", "2", "--method", "exact-const", "-p",
                        "gamma=0", "-p", "delta=1", "--json"});
    REQUIRE(r.code == polyflow::cli::kOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("method") == "exact-const");
    REQUIRE(j.at("pairs").size() == 1);
    CHECK(j.at("pairs")[0].at("g") == "y*z - 1/2*z");
    CHECK(j.at("pairs")[0].at("lambda") == "-2");
}

TEST_CASE("json is identical across thread counts") {
    auto args = [](const char* threads) {
        return std::vector<std::string>{"integrals", model("three_wave.model"), "-p", "gamma=-1", "-p", "delta=0",
                                        "--starts", "48", "--threads", threads, "--json"};
    };
    const auto a = run(args("1"));
    const auto b = run(args("3"));
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("integrals").size() == 2);
}

TEST_CASE("verify exit codes") {
    CHECK(run({"verify", model("three_wave.model"), "--claim", "case1-darboux", "-p", "delta=1"}).code ==
          polyflow::cli::kOk);
    const auto bad = run({"verify", model("three_wave.model"), "--claim", "damped-metriplectic", "-p", "gamma=-1", "-p", "delta=1",
                          "--json"});
    CHECK(bad.code == polyflow::cli::kClaimFailed);
    const auto j = nlohmann::json::parse(bad.out);
    CHECK(j.at("status") == "fail");
    CHECK(j.at("reports")[0].contains("residual"));
    CHECK(j.at("reports")[0].contains("witness"));
    CHECK(run({"verify", model("three_wave.model"), "-p", "delta=1"}).code == polyflow::cli::kUsage);
    CHECK(run({"verify", model("euler.model"), "--all"}).code == polyflow::cli::kOk);
}

TEST_CASE("scan over a grid") {
    const auto r = run({"scan", model("three_wave.model"), "--grid", "gamma=0,-1", "-p", "delta=0", "--degree", "1",
                        "--starts", "16"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("gamma=0") != std::string::npos);
    CHECK(r.out.find("gamma=-1") != std::string::npos);
    const auto none = run({"scan", model("euler.model"), "--degree", "1", "--method", "exact-const", "--grid",
                           "unused=0:1:1"});
    CHECK(none.code != 0);
}

TEST_CASE("simulate writes csv and a drift report") {
    const auto csv = std::filesystem::temp_directory_path() / "polyflow_cli_sim.csv";
    const auto r = run({"simulate", model("three_wave.model"), "-p", "gamma=0", "-p", "delta=1", "--x0", "0.1,0.2,0.3",
                        "--t1", "1", "--dt", "1e-3", "--integral", "case1", "--csv", csv.string(), "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("steps") == 1000);
    CHECK(j.at("integral").at("max_relative_drift").get<double>() < 1e-6);
    std::ifstream f(csv);
    std::string header;
    std::getline(f, header);
    CHECK(header == "t,x,y,z");
    std::size_t rows = 0;
    for (std::string l; std::getline(f, l);) ++rows;
    CHECK(rows == 1001);
    std::filesystem::remove(csv);
}

TEST_CASE("cases listing and run") {
    const auto list = run({"cases", "--json"});
    REQUIRE(list.code == 0);
    CHECK(nlohmann::json::parse(list.out).at("cases").size() >= 15);
    CHECK(run({"cases", "--run"}).code == 0);
}
