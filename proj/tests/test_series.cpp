#include <doctest.h>

#include "cdelta/error.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/series.hpp"
#include "fixtures.hpp"

using namespace cdelta;
using fixtures::cls;

TEST_CASE("single vertex series")
{
    const Lattice lat = fixtures::lattice("cqs:4/1");
    const SeriesRegion reg = z_coefficients(lat, Cycle({Rat(3)}));
    REQUIRE(reg.entries.size() == 12);
    for (const auto& e : reg.entries) {
        CHECK(e.z == e.exponents[0] + 1);
    }
    for (std::int64_t a = 1; a < 4; ++a) {
        const Cycle x = lat.canonical_cycle() + Rat(a) * lat.estar(0);
        CHECK(counting_Q(lat, lat.class_of(x), x) == a - 1);
    }
}

TEST_CASE("string series is supported on the ends")
{
    const Lattice lat = fixtures::lattice("cqs:15/11");
    const SeriesRegion reg = z_coefficients(lat, lat.canonical_cycle() + Rat(2) * lat.e_total());
    CHECK_FALSE(reg.entries.empty());
    for (const auto& e : reg.entries) {
        CHECK(e.z == 1);
        CHECK(e.exponents[1] == 0);
        CHECK(e.exponents[2] == 0);
        CHECK(e.exponents[3] == 0);
    }
}

TEST_CASE("star series low coefficients")
{
    const Lattice lat = fixtures::lattice("sf:-2;(2,1),(2,1),(2,1)");
    const SeriesRegion reg = z_coefficients(lat, Rat(2) * lat.estar(0) + lat.e_total());
    std::int64_t z0 = 0;
    std::int64_t z_center = 0;
    for (const auto& e : reg.entries) {
        if (e.exponents == std::vector<std::int64_t>{0, 0, 0, 0}) {
            z0 = e.z;
        }
        if (e.exponents == std::vector<std::int64_t>{1, 0, 0, 0}) {
            z_center = e.z;
        }
    }
    CHECK(z0 == 1);
    CHECK(z_center == -1);
}

TEST_CASE("counting functions")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    for (const auto& h : lat.group().elements()) {
        CHECK(counting_Q(lat, h, Cycle::zero(6)) == 0);
    }
    const Cycle& zk = lat.canonical_cycle();
    CHECK(counting_Q(lat, lat.class_of(zk), zk) == 0);

    const Cycle x = zk + lat.e_total();
    std::int64_t sum = 0;
    for (const auto& h : lat.group().elements()) {
        sum += counting_Q(lat, h, x);
        CHECK(counting_Q_I(lat, h, {0, 1, 2, 3, 4, 5}, x) == counting_Q(lat, h, x));
    }
    CHECK(sum == counting_total(lat, x));
    CHECK_THROWS_AS(counting_Q_I(lat, cls(1), {}, x), PreconditionFailed);
}

TEST_CASE("restriction to the first vertex of a string")
{
    const Lattice lat = fixtures::lattice("cqs:15/11");
    for (std::int64_t a = 1; a < 15; ++a) {
        const Cycle x = lat.canonical_cycle() + minimal_class_cycle(lat, cls(a));
        const std::int64_t expected = a % 11 == 0 ? a / 11 - 1 : a / 11;
        CHECK(counting_Q_I(lat, lat.class_of(x), {0}, x) == expected);
    }
}

TEST_CASE("region cache")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc2);
    RegionCache cache;
    const SeriesOptions cached{kDefaultBudget, &cache};
    const Cycle big = lat.canonical_cycle() + Rat(2) * lat.e_total();
    const Cycle small = lat.canonical_cycle() + lat.e_total();
    for (const auto& h : lat.group().elements()) {
        CHECK(counting_Q(lat, h, big, cached) == counting_Q(lat, h, big));
        CHECK(counting_Q(lat, h, small, cached) == counting_Q(lat, h, small));
    }
    CHECK(cache.size() >= 1);
    CHECK(cache.find_dominating(small) != nullptr);
}

TEST_CASE("enumeration budget")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    CHECK_THROWS_AS(z_coefficients(lat, Rat(5) * lat.e_total(), SeriesOptions{3, nullptr}), RegionTooLarge);
}

TEST_CASE("dual restriction")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    for (const auto& comp : components_minus(lat.graph(), {0})) {
        const Lattice sub(comp.graph);
        CHECK(dual_project(lat, sub, comp.to_parent, lat.canonical_cycle()) == sub.canonical_cycle());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            CHECK(dual_project(lat, sub, comp.to_parent, lat.e(comp.to_parent[i])) == sub.e(i));
        }
        for (const auto& h : lat.group().elements()) {
            const Cycle p = dual_project(lat, sub, comp.to_parent, minimal_class_cycle(lat, h));
            CHECK(minimal_class_cycle(sub, sub.class_of(p)) == p);
        }
    }
}

TEST_CASE("surgery identity")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    const auto at_zk = surgery_check(lat, {0}, lat.canonical_cycle());
    CHECK(at_zk.holds);
    CHECK(at_zk.lhs == 0);
    CHECK(at_zk.rhs == 0);
    for (const auto& I : std::vector<std::vector<int>>{{0}, {2, 5}, {1, 3, 4}}) {
        for (std::size_t v = 0; v < lat.size(); ++v) {
            const auto res = surgery_check(lat, I, lat.canonical_cycle() + lat.estar(v) + lat.estar(0));
            CHECK(res.holds);
        }
    }
    const Lattice ell = fixtures::lattice(fixtures::kBrieskorn237);
    CHECK_THROWS_AS(surgery_check(ell, {0}, ell.canonical_cycle()), NotRational);
    CHECK_THROWS_AS(kappa_top(ell, ell.estar(0)), NotRational);
}

TEST_CASE("topological kappa on the exceptional graphs")
{
    const Lattice exc1 = fixtures::lattice(fixtures::kExc1);
    CHECK(kappa_top(exc1, exc1.estar(2)) == 1);
    CHECK(kappa_top(exc1, exc1.estar(4) + exc1.estar(1)) == 2);
    CHECK(kappa_top(exc1, Rat(2) * exc1.estar(4)) == 2);
    CHECK(kappa_top(exc1, exc1.estar(4)) == 0);
    const Lattice exc2 = fixtures::lattice(fixtures::kExc2);
    CHECK(kappa_top(exc2, exc2.estar(1)) == 1);
}
