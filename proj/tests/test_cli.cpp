#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cdelta/cli.hpp"
#include "fixtures.hpp"

using namespace cdelta;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("info")
{
    const Run e8 = run({"info", "ade:E8", "--format", "json"});
    REQUIRE(e8.code == exit_ok);
    const auto j = nlohmann::json::parse(e8.out);
    CHECK(j["summary"]["order"] == 1);
    CHECK(j["summary"]["rational"] == true);
    CHECK(j["summary"]["Z_K"]["coeffs"] == nlohmann::json::array({"0", "0", "0", "0", "0", "0", "0", "0"}));

    CHECK(nlohmann::json::parse(run({"--format", "json", "info", "cqs:15/11"}).out)["summary"]["order"] == 15);
    const auto exc = nlohmann::json::parse(run({"info", fixtures::kExc1, "--format=json"}).out);
    CHECK(exc["summary"]["order"] == 13);
    CHECK(exc["summary"]["seifert"] == fixtures::kExc1);
    CHECK(exc["minus_inverse"][0][0] == "30/13");
}

TEST_CASE("delta")
{
    const Run all = run({"delta", fixtures::kExc1, "--all", "--format", "json"});
    REQUIRE(all.code == exit_ok);
    CHECK(nlohmann::json::parse(all.out)["rows"].size() == 12);

    const Run one = run({"delta", fixtures::kExc2, "--class", "4", "--format", "json"});
    REQUIRE(one.code == exit_ok);
    const auto rows = nlohmann::json::parse(one.out)["rows"];
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["delta"] == "1");

    const Run zero = run({"delta", fixtures::kExc2, "--class", "0"});
    CHECK(zero.code == exit_ok);
    CHECK(zero.err.find("EmptyCurve") != std::string::npos);

    const Run nq = run({"delta", fixtures::kNonQuotient, "--class", "(0,0,2)", "--format", "csv"});
    CHECK(nq.out.find("\"(3,0,0,0,0)\",3/2,3,4") != std::string::npos);
}

TEST_CASE("parallel output is byte-identical")
{
    const Run a = run({"delta", fixtures::kExc1, "--format", "json", "--jobs", "1"});
    const Run b = run({"delta", fixtures::kExc1, "--format", "json", "--jobs", "3"});
    CHECK(a.out == b.out);
}

TEST_CASE("tables")
{
    const Run cqs = run({"cqs-table", "15/11", "--format", "csv"});
    REQUIRE(cqs.code == exit_ok);
    CHECK(std::count(cqs.out.begin(), cqs.out.end(), '\n') == 16);
    CHECK(cqs.out.find("6,\"(0,0,2,0,0)\",2,1") != std::string::npos);
    const auto j = nlohmann::json::parse(run({"cqs-table", "15/11", "--format", "json"}).out);
    CHECK(j["chain"] == nlohmann::json::array({"2", "2", "3", "2", "2"}));

    CHECK(run({"classes", "cqs:5/2"}).out.find("2/5") != std::string::npos);
    CHECK(run({"mincycles", fixtures::kExc1, "--format", "csv"}).code == exit_ok);

    const auto ser = nlohmann::json::parse(run({"series", "cqs:3/1", "--bound", "Z_K+E", "--format", "json"}).out);
    REQUIRE(ser["region"].size() == 4);
    CHECK(ser["region"][3]["z"] == 4);
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == exit_usage);
    CHECK(run({"frobnicate"}).code == exit_usage);
    CHECK(run({"info"}).code == exit_usage);
    CHECK(run({"info", "cqs:5/2", "--format", "xml"}).code == exit_usage);
    CHECK(run({"--help"}).code == exit_ok);
    CHECK(run({"info", "bogus"}).code == exit_validation);
    CHECK(run({"info", "sf:-1;(2,1),(2,1),(2,1)"}).code == exit_validation);
    CHECK(run({"delta", fixtures::kBrieskorn237}).code == exit_validation);
    CHECK(run({"delta", "cqs:5/2", "--class", "9/2"}).code == exit_validation);
    CHECK(run({"series", "cqs:5/2", "--bound", "Q_K"}).code == exit_validation);
    CHECK(run({"delta", "cqs:5/2", "--budget", "0"}).code == exit_usage);
}

TEST_CASE("budget from the environment")
{
    ::setenv("CDELTA_BUDGET", "2", 1);
    const Run tight = run({"delta", fixtures::kExc1});
    const Run flag = run({"delta", fixtures::kExc1, "--budget", "10000000"});
    ::unsetenv("CDELTA_BUDGET");
    CHECK(tight.code == exit_validation);
    CHECK(tight.err.find("RegionTooLarge") != std::string::npos);
    CHECK(flag.code == exit_ok);
}

TEST_CASE("golden files and the negative control")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cdelta_cli_test";
    fs::create_directories(dir);
    const fs::path good = dir / "exc2.json";
    const fs::path bad = dir / "exc2_perturbed.json";

    const Run g = run({"delta", fixtures::kExc2, "--all", "--golden"});
    REQUIRE(g.code == exit_ok);
    std::ofstream(good) << g.out;
    CHECK(run({"verify", "golden:" + good.string()}).code == exit_ok);

    auto j = nlohmann::ordered_json::parse(g.out);
    j["report"]["rows"][0]["s_h"]["coeffs"][3] = "2";
    std::ofstream(bad) << j.dump(2);
    const Run v = run({"verify", "golden:" + bad.string()});
    CHECK(v.code == exit_inconsistency);
    CHECK(v.out.find("FAIL") != std::string::npos);

    CHECK(run({"verify", "golden:" + (dir / "missing.json").string()}).code == exit_validation);
    CHECK(run({"delta", fixtures::kExc2, "--class", "1", "--golden"}).code == exit_usage);
    fs::remove_all(dir);
}

TEST_CASE("verify entry points")
{
    CHECK(run({"verify", "cyclic:dmax=8"}).code == exit_ok);
    CHECK(run({"verify", fixtures::kExc2}).code == exit_ok);
    CHECK(run({"verify", "quotient:dmax=3,kmax=2"}).code == exit_ok);
    CHECK(run({"verify", "cyclic:dmin=3"}).code == exit_validation);
    CHECK(run({"info", fixtures::kExc2, "--verify", "exhaustive"}).code == exit_ok);
}

TEST_CASE("cycle expressions")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    CHECK(parse_cycle(lat, "Z_K") == lat.canonical_cycle());
    CHECK(parse_cycle(lat, "Z_K + 2E*_0 - E_3") == lat.canonical_cycle() + Rat(2) * lat.estar(0) - lat.e(3));
    CHECK(parse_cycle(lat, "1/2E") == make_rat(1, 2) * lat.e_total());
    CHECK(parse_cycle(lat, "[1,0,0,0,0,1/3]") == Cycle({1, 0, 0, 0, 0, make_rat(1, 3)}));
    CHECK_THROWS(parse_cycle(lat, "E*_9"));
    CHECK_THROWS(parse_cycle(lat, "[1,2]"));
}
