#include <doctest.h>

#include "cdelta/families.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/star.hpp"
#include "cdelta/verify.hpp"
#include "fixtures.hpp"

using namespace cdelta;

namespace {

void require_clean(const Checker& chk)
{
    for (const auto& r : chk.results()) {
        INFO(r.name << ": " << r.first_failure);
        CHECK(r.ok());
    }
}

} // namespace

TEST_CASE("checker bookkeeping")
{
    Checker a;
    a.expect(true, "x", [] { return std::string("unused"); });
    a.expect(false, "x", [] { return std::string("first"); });
    a.expect(false, "x", [] { return std::string("second"); });
    a.observe(false, "claim", [] { return std::string("counterexample"); });
    CHECK_FALSE(a.ok());
    REQUIRE(a.results().size() == 2);
    CHECK(a.results()[0].cases == 3);
    CHECK(a.results()[0].failures == 2);
    CHECK(a.results()[0].first_failure == "first");
    CHECK(a.results()[1].ok());
    CHECK(a.results()[1].failures == 1);

    Checker b;
    b.expect(true, "y", [] { return std::string(); });
    b.merge(a);
    CHECK(b.total_cases() == 5);
    CHECK(b.results()[0].name == "y");
}

TEST_CASE("all suites on the named graphs")
{
    for (const auto& g : {fixtures::kExc1, fixtures::kExc2, fixtures::kNonQuotient, std::string("ade:E7"),
                          std::string("sf:-2;(3,1),(3,1),(3,1)")}) {
        Checker chk;
        check_graph(fixtures::lattice(g), chk, VerifyOptions{});
        INFO(g);
        require_clean(chk);
    }
}

TEST_CASE("non-rational graphs pass the lattice and Laufer suites")
{
    Checker chk;
    const Lattice lat = fixtures::lattice(fixtures::kBrieskorn237);
    check_lattice(lat, chk);
    check_laufer(lat, chk, VerifyOptions{});
    require_clean(chk);
}

TEST_CASE("the general maximality claim has counterexamples")
{
    // s_4 = 2E*_0 and s_4 + E*_3 = s_18, yet epsilon(4) = 1.
    const Lattice lat = fixtures::lattice("sf:-3;(2,1),(2,1),(3,1)");
    const HElem h4{4};
    const Cycle s4 = minimal_class_cycle(lat, h4);
    CHECK(s4 == Rat(2) * lat.estar(0));
    const HElem h = lat.group().add(h4, lat.class_of(lat.estar(3)));
    CHECK(minimal_class_cycle(lat, h) == s4 + lat.estar(3));
    const QuotientDelta q = delta_quotient(lat, h4);
    CHECK(q.epsilon == 1);
    CHECK(q.delta == 2);
    CHECK(q.rule == "N(-1)");

    Checker chk;
    check_star(lat, chk);
    bool refuted = false;
    for (const auto& r : chk.results()) {
        CHECK(r.ok());
        refuted = refuted || (r.observation && r.failures > 0);
    }
    CHECK(refuted);
}

TEST_CASE("small family sweeps")
{
    VerifyOptions opt;
    opt.jobs = 2;
    require_clean(verify_cyclic_family(12, opt));
    require_clean(verify_quotient_family(4, 3, opt));
    require_clean(verify_random(6, opt));
    require_clean(verify_nonquotient_family({4, 5}, opt));
}

TEST_CASE("families")
{
    const auto fam = quotient_seifert_family(7, 2, 5);
    CHECK(fam.size() == 128);
    for (const auto& s : fam) {
        Rat inv = 0;
        for (const auto& [d, q] : s.legs) {
            inv += Rat(1) / Rat(d);
        }
        CHECK(inv > 1);
    }
    CHECK(cyclic_family(5).size() == 9);
    const auto random = random_rational_graphs(RandomGraphOptions{});
    CHECK(random.size() == 50);
    for (const auto& g : random) {
        const Lattice lat(g);
        CHECK(lat.size() <= 7);
        CHECK(lat.det_abs() <= 60);
        CHECK(is_rational(lat));
    }
    CHECK(render_json(random_rational_graphs(RandomGraphOptions{})[17]) == render_json(random[17]));
}
