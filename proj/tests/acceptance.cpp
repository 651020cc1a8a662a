// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cdelta/cyclic.hpp"
#include "cdelta/error.hpp"
#include "cdelta/families.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/report.hpp"
#include "cdelta/series.hpp"
#include "cdelta/star.hpp"
#include "cdelta/verify.hpp"

using namespace cdelta;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            note << "first failure: " << what << "; ";
        }
        ok = ok && cond;
    }
};

bool criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs < limit_s, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_s) + " s");
    std::printf("%s criterion %d: %s [%.2f s, limit %.0f s] %s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                limit_s, out.note.str().c_str());
    std::fflush(stdout);
    return out.ok;
}

Cycle combo(const Lattice& lat, std::initializer_list<std::pair<int, int>> terms)
{
    Cycle c = Cycle::zero(lat.size());
    for (auto [mult, v] : terms) {
        c += Rat(mult) * lat.estar(v);
    }
    return c;
}

struct PaperRow {
    std::int64_t cls;
    Cycle s_h;
    int delta;
    int floor_s_gamma;
    std::vector<std::pair<int, int>> n_values; // (n, N(n))
    std::string type;
};

void check_table(Outcome& o, const Lattice& lat, const std::vector<PaperRow>& table)
{
    const SeifertData sd = seifert_from_graph(lat.graph());
    const DeltaReport rep = full_report(lat);
    o.require(rep.rows.size() == table.size(), "row count");
    for (const auto& p : table) {
        const std::string id = std::to_string(p.cls);
        const DeltaRow* row = nullptr;
        for (const auto& r : rep.rows) {
            if (r.class_id == id) {
                row = &r;
            }
        }
        if (row == nullptr) {
            o.require(false, "class " + id + " missing");
            continue;
        }
        o.require(row->s_h == p.s_h, "s_h of C" + id);
        o.require(row->delta_struct == p.delta && row->delta_chi == p.delta && row->delta_count == p.delta,
                  "delta of C" + id);
        o.require(row->s_h0 && floor_of(*row->s_h0 + sd.gamma) == p.floor_s_gamma, "floor(s_h0+gamma) of C" + id);
        o.require((*row->s_h0 <= 1) == (p.floor_s_gamma == 0), "s_h0 <= 1 grouping of C" + id);
        const StarDelta d = delta_star(lat, lat.group().parse(id));
        for (auto [n, v] : p.n_values) {
            o.require(n_func(sd, d.a_tilde, n) == v, "N(" + std::to_string(n) + ") of C" + id);
        }
        o.require(row->curve_type == p.type, "curve type of C" + id);
    }
}

} // namespace

int main()
{
    bool all = true;

    all &= criterion(1, "15/11 minimal tuples", 1.0, [](Outcome& o) {
        const std::set<std::vector<Int>> paper{
            {1, 0, 1, 0, 0}, {1, 0, 0, 1, 0}, {1, 0, 0, 0, 1}, {1, 0, 0, 0, 0}, {0, 1, 1, 0, 0},
            {0, 1, 0, 1, 0}, {0, 1, 0, 0, 1}, {0, 1, 0, 0, 0}, {0, 0, 2, 0, 0}, {0, 0, 1, 1, 0},
            {0, 0, 1, 0, 1}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0},
        };
        const HJData hj = hj_expand(15, 11);
        const Lattice lat(parse_graph("cqs:15/11"));
        std::set<std::vector<Int>> from_recursion;
        std::set<std::vector<Int>> from_lattice;
        for (std::int64_t a = 0; a < 15; ++a) {
            from_recursion.insert(cyclic_s_coeffs(hj, a));
            from_lattice.insert(lat.estar_coords(minimal_class_cycle(lat, HElem{a})));
        }
        o.require(from_recursion == paper, "recursion tuples");
        o.require(from_lattice == paper, "Laufer tuples");
        o.note << "15 tuples from both the recursion and the Laufer algorithm";
    });

    all &= criterion(2, "exceptional graph (-2;(2,1),(3,2),(5,2))", 5.0, [](Outcome& o) {
        const Lattice lat(parse_graph("sf:-2;(2,1),(3,2),(5,2)"));
        // E_0=0, E_{1,1}=1, E_{2,1}=2, E_{2,2}=3, E_{3,1}=4, E_{3,2}=5
        o.require(lat.group().order() == 13, "|H| = 13");
        o.require(lat.canonical_cycle() == lat.estar(4), "Z_K = E*_{3,1}");
        o.require(lat.canonical_cycle()[0] == make_rat(12, 13), "Z_K,0 = 12/13");
        check_table(o, lat,
                    {
                        {3, combo(lat, {{1, 4}}), 0, 0, {}, "R^1_1"},
                        {8, combo(lat, {{1, 5}}), 0, 0, {}, "R^1_1"},
                        {9, combo(lat, {{1, 3}}), 0, 0, {}, "R^1_1"},
                        {2, combo(lat, {{1, 5}, {1, 1}}), 1, 1, {{-1, 0}}, "R^2_2"},
                        {4, combo(lat, {{1, 5}, {1, 3}}), 1, 1, {{-1, 0}}, "R^2_2"},
                        {7, combo(lat, {{1, 1}}), 0, 1, {{-1, 0}}, "R^1_1"},
                        {11, combo(lat, {{1, 4}, {1, 5}}), 1, 1, {{-1, 0}}, "R^2_2"},
                        {12, combo(lat, {{1, 4}, {1, 3}}), 1, 1, {{-1, 0}}, "R^2_2"},
                        {5, combo(lat, {{1, 2}}), 1, 1, {{-1, 1}}, "R^0_1"},
                        {6, combo(lat, {{2, 4}}), 2, 1, {{-1, 1}}, "R^1_2"},
                        {1, combo(lat, {{1, 0}}), 1, 2, {{-1, 1}, {-2, 0}}, "R^0_1"},
                        {10, combo(lat, {{1, 4}, {1, 1}}), 2, 2, {{-1, 0}, {-2, 1}}, "R^1_2"},
                    });
        const std::vector<std::int64_t> cuts{1, 7, 5, 9, 3, 8};
        for (std::size_t v = 0; v < 6; ++v) {
            o.require(lat.class_of(lat.estar(v)) == HElem{cuts[v]}, "class of E*_" + std::to_string(v));
        }
        o.note << "12 classes, s_h, delta, N values and curve types as listed";
    });

    all &= criterion(3, "exceptional graph (-2;(2,1),(3,2),(5,3))", 5.0, [](Outcome& o) {
        const Lattice lat(parse_graph("sf:-2;(2,1),(3,2),(5,3)"));
        o.require(lat.group().order() == 7, "|H| = 7");
        o.require(lat.canonical_cycle()[0] == make_rat(6, 7), "Z_K,0 = 6/7");
        check_table(o, lat,
                    {
                        {3, combo(lat, {{1, 5}}), 0, 0, {}, "R^1_1"},
                        {5, combo(lat, {{1, 3}}), 0, 1, {{-1, 0}}, "R^1_1"},
                        {6, combo(lat, {{2, 5}}), 1, 1, {{-1, 0}}, "R^2_2"},
                        {1, combo(lat, {{1, 5}, {1, 3}}), 1, 2, {{-1, 0}, {-2, 0}}, "R^2_2"},
                        {2, combo(lat, {{1, 4}}), 1, 2, {{-1, 1}, {-2, 0}}, "R^0_1"},
                        {4, combo(lat, {{1, 1}}), 1, 2, {{-1, 0}, {-2, 1}}, "R^0_1"},
                    });
        const std::vector<std::int64_t> cuts{1, 4, 3, 5, 2, 3};
        for (std::size_t v = 0; v < 6; ++v) {
            o.require(lat.class_of(lat.estar(v)) == HElem{cuts[v]}, "class of E*_" + std::to_string(v));
        }
        o.note << "6 classes as listed";
    });

    all &= criterion(4, "non-quotient star (-4; four (2,1) legs) and its extensions", 60.0, [](Outcome& o) {
        const Lattice lat(parse_graph("sf:-4;(2,1),(2,1),(2,1),(2,1)"));
        const Cycle e0 = lat.estar(0);
        o.require(e0.coeffs() == std::vector<Rat>{make_rat(1, 2), make_rat(1, 4), make_rat(1, 4), make_rat(1, 4), make_rat(1, 4)}, "E*_0");
        o.require(lat.canonical_cycle() == Rat(2) * e0, "Z_K = 2E*_0");
        o.require(fundamental_cycle(lat).cycle == lat.e_total(), "Z_min = E");
        o.require(is_rational(lat) && !is_quotient(lat), "rational, not quotient");
        const HElem h = lat.class_of(Rat(3) * e0);
        const DeltaRow row = delta_row(lat, h);
        const StarDelta sd = delta_star(lat, h);
        o.require(row.s_h == Rat(3) * e0 && row.r == 3, "s_h = 3E*_0, r = 3");
        o.require(n_func(seifert_from_graph(lat.graph()), sd.a_tilde, -1) == 2, "N(-1) = 2");
        o.require(row.delta_struct == 4 && row.delta_chi == 4 && row.delta_count == 4, "delta = 4");

        std::ostringstream three;
        for (long k = 4; k <= 6; ++k) {
            const Lattice ext(nonquotient_star(k));
            o.require(is_rational(ext) && !is_quotient(ext), "k=" + std::to_string(k) + " rational non-quotient");
            const Cycle top = Rat(k - 1) * ext.estar(0);
            const DeltaRow r = delta_row(ext, ext.class_of(top));
            o.require(r.s_h == top && r.delta_struct - r.r == k - 3,
                      "k=" + std::to_string(k) + ": delta - r = k - 3 at (k-1)E*_0");
            const DeltaRow r3 = delta_row(ext, ext.class_of(Rat(3) * ext.estar(0)));
            three << " k=" << k << ":" << Int(r3.delta_struct - r3.r).get_str();
        }
        o.note << "extended family uses the class of (k-1)E*_0; the class of 3E*_0 gives delta - r ="
               << three.str();
    });

    all &= criterion(5, "quotient classification sweep (d_i <= 7, 2 <= k <= 5; cyclic d <= 30)", 120.0,
                     [](Outcome& o) {
                         VerifyOptions opt;
                         std::size_t rows = 0;
                         std::size_t eps1 = 0;
                         Checker chk;
                         for (const auto& spec : quotient_seifert_family(7, 2, 5)) {
                             const Lattice lat(seifert_graph(spec.k, spec.legs));
                             o.require(is_quotient(lat) && is_rational(lat), spec.text() + " is a rational quotient");
                             check_star(lat, chk);
                             for (const auto& h : lat.group().elements()) {
                                 if (lat.group().is_zero(h)) {
                                     continue;
                                 }
                                 const QuotientDelta q = delta_quotient(lat, h);
                                 const Int independent = delta_chi(lat, h);
                                 o.require(q.delta == q.r - 1 || q.delta == q.r, spec.text() + ": delta in {r-1, r}");
                                 o.require(Int(q.epsilon) == independent - (q.r - 1),
                                           spec.text() + ": epsilon matches the case analysis");
                                 eps1 += q.epsilon == 1;
                                 ++rows;
                             }
                         }
                         for (const auto& [d, q] : cyclic_family(30)) {
                             check_cyclic(d, q, chk, opt);
                             const Lattice lat(string_graph(hj_expand(d, q).ks()));
                             for (const auto& h : lat.group().elements()) {
                                 if (!lat.group().is_zero(h)) {
                                     const QuotientDelta qd = delta_quotient(lat, h);
                                     o.require(qd.epsilon == 0 && qd.delta == qd.r - 1, "cyclic epsilon 0");
                                     ++rows;
                                 }
                             }
                         }
                         std::size_t invariants = 0;
                         for (const auto& r : chk.results()) {
                             o.require(r.ok(), r.name + ": " + r.first_failure);
                             if (!r.observation) {
                                 invariants += r.cases;
                             }
                         }
                         o.note << rows << " classes, " << eps1 << " with epsilon 1, " << invariants
                                << " invariant checks (Claims 1-2, Lemmas 5.1-5.2 included)";
                     });

    const auto random = random_rational_graphs(RandomGraphOptions{});

    all &= criterion(6, "three-route equivalence on 50 random rational graphs", 300.0, [&](Outcome& o) {
        o.require(random.size() == 50, "50 graphs");
        std::size_t rows = 0;
        for (const auto& g : random) {
            const Lattice lat(g);
            o.require(lat.size() <= 7 && lat.det_abs() <= 60, "size and determinant bounds");
            for (const auto& row : full_report(lat).rows) {
                o.require(row.delta_chi == row.delta_count && row.delta_count == row.delta_struct,
                          render_json(g) + " class " + row.class_id);
                ++rows;
            }
        }
        o.note << rows << " classes";
    });

    all &= criterion(7, "surgery identity on 200 sampled triples", 300.0, [&](Outcome& o) {
        VerifyOptions opt;
        opt.surgery_samples = 4;
        Checker chk;
        for (const auto& g : random) {
            check_series(Lattice(g), chk, opt);
        }
        std::size_t triples = 0;
        std::size_t zk = 0;
        for (const auto& r : chk.results()) {
            o.require(r.ok(), r.name + ": " + r.first_failure);
            if (r.name == "surgery identity on Z_K + S'") {
                triples = r.cases;
            }
            if (r.name == "Q_[Z_K](Z_K) = 0 on rational graphs") {
                zk = r.cases;
            }
        }
        o.require(triples == 200, "200 triples");
        o.require(zk == random.size(), "Q_[Z_K](Z_K) on each graph");
        o.note << triples << " triples, " << zk << " graphs with Q_[Z_K](Z_K) = 0";
    });

    all &= criterion(8, "Laufer step criterion and chi(Z_min) = 1 agree; s_h equals the box minimum", 300.0,
                     [&](Outcome& o) {
                         std::vector<DualGraph> graphs = random;
                         for (const auto& s : quotient_seifert_family(7, 2, 5)) {
                             graphs.push_back(seifert_graph(s.k, s.legs));
                         }
                         for (const auto& [d, q] : cyclic_family(30)) {
                             graphs.push_back(string_graph(hj_expand(d, q).ks()));
                         }
                         // Non-rational stars: k = 1, 2 with three or four legs.
                         std::size_t nonrational = 0;
                         for (long k = 1; k <= 2; ++k) {
                             for (long d1 = 2; d1 <= 7; ++d1) {
                                 for (long d2 = d1; d2 <= 7; ++d2) {
                                     for (long d3 = d2; d3 <= 7; ++d3) {
                                         try {
                                             const DualGraph g = seifert_graph(k, {{d1, 1}, {d2, 1}, {d3, 1}});
                                             graphs.push_back(g);
                                         } catch (const ValidationError&) {
                                         }
                                     }
                                 }
                             }
                         }
                         std::size_t agree = 0;
                         for (const auto& g : graphs) {
                             const Lattice lat(g);
                             const bool step = is_rational(lat); // throws on disagreement
                             const bool artin = lat.chi(fundamental_cycle(lat).cycle) == 1;
                             o.require(step == artin, render_json(g));
                             nonrational += !step;
                             ++agree;
                         }
                         o.require(nonrational > 0, "non-rational graphs present");
                         std::size_t boxed = 0;
                         for (const auto& g : random) {
                             const Lattice lat(g);
                             for (const auto& [h, r] : lat.enumerate_classes()) {
                                 const Cycle s = minimal_class_cycle(lat, h);
                                 const auto best = box_minimum(lat, h, s + Rat(3) * lat.e_total());
                                 o.require(best && *best == s, render_json(g) + " class " + lat.group().format(h));
                                 ++boxed;
                             }
                         }
                         o.note << agree << " graphs (" << nonrational << " non-rational), " << boxed
                                << " classes against the box s_h + 3E";
                     });

    all &= criterion(9, "D series: s_[E*_1] = E*_1 with E_0-coefficient d/2", 5.0, [](Outcome& o) {
        for (long d = 2; d <= 8; ++d) {
            const Lattice lat(seifert_graph(2, {{2, 1}, {2, 1}, {d, d - 1}}));
            const Cycle s = minimal_class_cycle(lat, lat.class_of(lat.estar(1)));
            o.require(s == lat.estar(1) && s[0] == make_rat(d, 2), "d=" + std::to_string(d));
        }
        o.note << "d = 2..8";
    });

    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
