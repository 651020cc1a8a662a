#include <doctest.h>

#include "cdelta/error.hpp"
#include "cdelta/report.hpp"
#include "fixtures.hpp"

using namespace cdelta;
using fixtures::cls;

namespace {

const char* kTwoNodes =
    R"({"vertices":[{"e":-3},{"e":-2},{"e":-2},{"e":-3},{"e":-2},{"e":-2}],"edges":[[0,1],[0,2],[0,3],[3,4],[3,5]]})";

} // namespace

TEST_CASE("first exceptional graph, all classes")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    const DeltaReport rep = full_report(lat);
    REQUIRE(rep.rows.size() == 12);
    const std::vector<int> delta{1, 1, 0, 1, 1, 2, 0, 0, 0, 2, 1, 1};
    const std::vector<int> r{1, 2, 1, 2, 1, 2, 1, 1, 1, 2, 2, 2};
    for (std::size_t i = 0; i < 12; ++i) {
        const DeltaRow& row = rep.rows[i];
        CHECK(row.class_id == std::to_string(i + 1));
        CHECK(row.delta_chi == delta[i]);
        CHECK(row.delta_count == delta[i]);
        CHECK(row.delta_struct == delta[i]);
        CHECK(row.r == r[i]);
        CHECK(row.route == "star");
        CHECK(row.epsilon == static_cast<int>(delta[i] - (r[i] - 1)));
    }
    CHECK(rep.summary.order == 13);
    CHECK(rep.summary.quotient);
}

TEST_CASE("second exceptional graph")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc2);
    CHECK(full_report(lat).rows.size() == 6);
    const DeltaRow row = delta_row(lat, cls(4));
    CHECK(row.delta_struct == 1);
    CHECK(row.n_values == std::vector<std::pair<Int, Int>>{{-2, 1}, {-1, 0}});
    CHECK(delta_row(lat, cls(3)).delta_struct == 0);
    CHECK_THROWS_AS(delta_row(lat, cls(0)), EmptyCurve);
}

TEST_CASE("cyclic report")
{
    const DeltaReport rep = full_report(fixtures::lattice("cqs:15/11"));
    REQUIRE(rep.rows.size() == 14);
    for (const auto& row : rep.rows) {
        CHECK(row.route == "cyclic");
        CHECK(row.delta_struct == row.r - 1);
        CHECK(row.curve_type == "R^" + row.r.get_str() + "_" + row.r.get_str());
    }
}

TEST_CASE("surgery route")
{
    const Lattice exc1 = fixtures::lattice(fixtures::kExc1);
    const SurgeryDelta s5 = delta_surgery(exc1, cls(5));
    CHECK(s5.node_part == 1);
    CHECK(s5.string_part == 0);
    CHECK(s5.delta == 1);
    for (const auto& h : exc1.group().elements()) {
        if (!exc1.group().is_zero(h)) {
            CHECK(delta_surgery(exc1, h).delta == delta_chi(exc1, h));
        }
    }
    CHECK_THROWS_AS(delta_surgery(fixtures::lattice("cqs:5/2"), cls(1)), NoNodes);

    const Lattice two = fixtures::lattice(kTwoNodes);
    REQUIRE(two.graph().nodes().size() == 2);
    const DeltaReport rep = full_report(two);
    CHECK(rep.rows.size() == static_cast<std::size_t>(two.group().order() - 1));
    for (const auto& row : rep.rows) {
        CHECK(row.route == "surgery");
    }
}

TEST_CASE("report refuses non-rational graphs")
{
    CHECK_THROWS_AS(full_report(fixtures::lattice(fixtures::kBrieskorn237)), NotRational);
}

TEST_CASE("output is independent of the thread count")
{
    const Lattice lat = fixtures::lattice(fixtures::kNonQuotient);
    const std::string one = to_json(full_report(lat, ReportOptions{kDefaultBudget, 1})).dump();
    const std::string four = to_json(full_report(lat, ReportOptions{kDefaultBudget, 4})).dump();
    CHECK(one == four);
}

TEST_CASE("emitters")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc2);
    const DeltaReport rep = full_report(lat);
    const auto j = to_json(rep);
    CHECK(j["summary"]["order"] == 7);
    CHECK(j["summary"]["Z_K"]["coeffs"][0] == "6/7");
    CHECK(j["rows"][3]["class"] == "4");
    CHECK(j["rows"][3]["delta"] == "1");
    CHECK(j["rows"][3]["s_h"]["basis"] == "E*");

    const std::string table = render_table(rep);
    CHECK(table.rfind("class", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 7);
    const std::string csv = render_csv(rep);
    CHECK(csv.find("4,\"(0,1,0,0,0,0)\",15/7,1,1") != std::string::npos);
    CHECK(render_csv({{"a b", "x\"y"}}) == "\"a b\",\"x\"\"y\"\n");
    CHECK(tuple_string({1, 0, 2}) == "(1,0,2)");
}
