#include <algorithm>

#include <doctest.h>

#include "cdelta/error.hpp"
#include "cdelta/laufer.hpp"
#include "fixtures.hpp"

using namespace cdelta;
using fixtures::cls;

TEST_CASE("anti-nef cycles")
{
    const Lattice lat = fixtures::lattice("cqs:2/1");
    CHECK(is_anti_nef(lat, Cycle::zero(1)));
    CHECK(is_anti_nef(lat, lat.e_total()));
    CHECK_FALSE(is_anti_nef(lat, -lat.e_total()));
    const Lattice exc = fixtures::lattice(fixtures::kExc1);
    for (std::size_t v = 0; v < exc.size(); ++v) {
        CHECK(is_anti_nef(exc, exc.estar(v)));
    }
}

TEST_CASE("fundamental cycle")
{
    CHECK(fundamental_cycle(fixtures::lattice("cqs:7/3")).cycle == fixtures::lattice("cqs:7/3").e_total());
    const Lattice nq = fixtures::lattice(fixtures::kNonQuotient);
    const auto z = fundamental_cycle(nq);
    CHECK(z.cycle == nq.e_total());
    CHECK(z.sequence.empty());

    const Lattice e8 = fixtures::lattice("ade:E8");
    auto coeffs = fundamental_cycle(e8).cycle.coeffs();
    std::sort(coeffs.begin(), coeffs.end());
    CHECK(coeffs == std::vector<Rat>{2, 2, 3, 3, 4, 4, 5, 6});
    CHECK(fundamental_cycle(e8, TieBreak::largest_index).cycle == fundamental_cycle(e8).cycle);
    for (const auto& step : fundamental_cycle(e8).sequence) {
        CHECK(step.pairing == 1);
    }
}

TEST_CASE("rationality")
{
    for (const char* g : {"cqs:2/1", "cqs:15/11", "cqs:29/12", "ade:E8", "sf:-4;(2,1),(2,1),(2,1),(2,1)"}) {
        CHECK(is_rational(fixtures::lattice(g)));
    }
    const Lattice ell = fixtures::lattice(fixtures::kBrieskorn237);
    CHECK_FALSE(is_rational(ell));
    CHECK(ell.chi(fundamental_cycle(ell).cycle) == 0);
    const auto seq = fundamental_cycle(ell).sequence;
    CHECK(std::any_of(seq.begin(), seq.end(), [](const LauferStep& s) { return s.pairing > 1; }));
}

TEST_CASE("generalized Laufer algorithm")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    const auto fixed = s_of(lat, lat.estar(3));
    CHECK(fixed.cycle == lat.estar(3));
    CHECK(fixed.sequence.empty());

    const HElem h6 = cls(6);
    const auto s6 = s_of(lat, lat.r_of(h6));
    CHECK(s6.cycle == Rat(2) * lat.estar(4));
    CHECK(minimal_class_cycle(lat, h6) == s6.cycle);
    CHECK(box_minimum(lat, h6, s6.cycle + Rat(2) * lat.e_total()) == s6.cycle);
    for (const auto& step : s6.sequence) {
        CHECK(step.pairing > 0);
    }
    CHECK(minimal_class_cycle(lat, cls(0)).is_zero());
    CHECK_THROWS_AS(s_of(lat, make_rat(1, 2) * lat.e(0)), NotInLPrime);
}

TEST_CASE("D series minimal cycles")
{
    for (long d = 2; d <= 8; ++d) {
        const Lattice lat(seifert_graph(2, {{2, 1}, {2, 1}, {d, d - 1}}));
        const Cycle s = minimal_class_cycle(lat, lat.class_of(lat.estar(1)));
        CHECK(s == lat.estar(1));
        CHECK(s[0] == make_rat(d, 2));
    }
}

TEST_CASE("box enumeration")
{
    const Lattice lat = fixtures::lattice(fixtures::kExc1);
    const HElem h = cls(10);
    const Cycle s = minimal_class_cycle(lat, h);
    const auto cone = class_cone_in_box(lat, h, s + lat.e_total());
    CHECK(std::find(cone.begin(), cone.end(), s) != cone.end());
    for (const auto& c : cone) {
        CHECK(geq(c, s));
    }
    CHECK_FALSE(box_minimum(lat, h, s - lat.e(0)).has_value());
    CHECK_THROWS_AS(class_cone_in_box(lat, h, s + Rat(3) * lat.e_total(), 5), RegionTooLarge);
}
