#include "cdelta/verify.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cdelta/cyclic.hpp"
#include "cdelta/error.hpp"
#include "cdelta/families.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/report.hpp"
#include "cdelta/star.hpp"

namespace cdelta {

CheckResult& Checker::slot(const std::string& name)
{
    for (auto& r : results_) {
        if (r.name == name) {
            return r;
        }
    }
    results_.push_back(CheckResult{name, 0, 0, {}, false});
    return results_.back();
}

void Checker::expect(bool cond, const std::string& name, const std::function<std::string()>& detail)
{
    CheckResult& r = slot(name);
    ++r.cases;
    if (!cond) {
        if (r.failures++ == 0) {
            r.first_failure = detail();
        }
    }
}

void Checker::observe(bool cond, const std::string& name, const std::function<std::string()>& detail)
{
    slot(name).observation = true;
    expect(cond, name, detail);
}

void Checker::merge(const Checker& other)
{
    for (const auto& o : other.results_) {
        CheckResult& r = slot(o.name);
        r.observation = r.observation || o.observation;
        r.cases += o.cases;
        if (o.failures > 0 && r.failures == 0) {
            r.first_failure = o.first_failure;
        }
        r.failures += o.failures;
    }
}

bool Checker::ok() const
{
    return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.ok(); });
}

std::size_t Checker::total_cases() const
{
    std::size_t n = 0;
    for (const auto& r : results_) {
        n += r.cases;
    }
    return n;
}

namespace {

std::string graph_tag(const Lattice& lat)
{
    return render_json(lat.graph());
}

std::vector<HElem> nonzero_classes(const Lattice& lat)
{
    std::vector<HElem> out;
    for (auto& h : lat.group().elements()) {
        if (!lat.group().is_zero(h)) {
            out.push_back(std::move(h));
        }
    }
    return out;
}

std::uint64_t graph_seed(const Lattice& lat, std::uint64_t seed)
{
    return std::hash<std::string>{}(graph_tag(lat)) ^ (seed * 0x9e3779b97f4a7c15ULL);
}

// Runs `body`; any library error becomes a failed case under `name`.
template <class F>
void guarded(Checker& chk, const std::string& name, const std::string& tag, F&& body)
{
    try {
        body();
    } catch (const Error& e) {
        const std::string msg = e.what();
        chk.expect(false, name, [&] { return tag + ": " + msg; });
    }
}

} // namespace

void check_lattice(const Lattice& lat, Checker& chk)
{
    const std::string tag = graph_tag(lat);
    const std::size_t n = lat.size();
    guarded(chk, "lattice", tag, [&] {
        const RatMatrix prod = multiply(lat.dual_inverse(), to_rational(lat.intersection()));
        RatMatrix minus_id(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            minus_id(i, i) = -1;
        }
        chk.expect(prod == minus_id, "dual inverse times M is -I", [&] { return tag; });

        const auto classes = lat.enumerate_classes();
        chk.expect(classes.size() == static_cast<std::size_t>(lat.group().order())
                       && Int(lat.group().order()) == lat.det_abs() && lat.group().is_zero(classes.front().first),
                   "class count equals |det M|", [&] { return tag; });
        for (std::size_t v = 0; v < n; ++v) {
            chk.expect(lat.group().is_zero(lat.class_of(lat.e(v))), "class of E_v is zero",
                       [&] { return tag + " v=" + std::to_string(v); });
        }
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                const auto lhs = lat.class_of(lat.estar(u) + lat.estar(v));
                const auto rhs = lat.group().add(lat.class_of(lat.estar(u)), lat.class_of(lat.estar(v)));
                chk.expect(lhs == rhs, "class map is additive",
                           [&] { return tag + " u=" + std::to_string(u) + " v=" + std::to_string(v); });
                const Cycle lp = lat.estar(u);
                const Cycle l = lat.e(v);
                chk.expect(lat.chi(lp + l) - lat.chi(lp) - lat.chi(l) == -lat.pairing(lp, l),
                           "chi is quadratic with the pairing as polarization",
                           [&] { return tag + " u=" + std::to_string(u) + " v=" + std::to_string(v); });
                chk.expect(is_integral(lat.chi(lat.e(u) + lat.e(v))), "chi is integral on L",
                           [&] { return tag; });
                chk.expect(lat.pairing(lat.estar(u), lat.e(v)) == (u == v ? -1 : 0), "dual basis pairing",
                           [&] { return tag; });
            }
            const Cycle lp = lat.estar(u);
            chk.expect(lat.chi(-lp) == lat.chi(lp) - lat.pairing(lp, lat.canonical_cycle()),
                       "chi(-l') = chi(l') - (l', Z_K)", [&] { return tag + " u=" + std::to_string(u); });
        }
        chk.expect(lat.canonical_cycle_adjunction() == lat.canonical_cycle_valency(),
                   "canonical cycle formulas agree", [&] { return tag; });
        chk.expect(lat.chi(Cycle::zero(n)) == 0 && lat.chi(lat.canonical_cycle()) == 0, "chi(0) = chi(Z_K) = 0",
                   [&] { return tag; });
        for (const auto& [h, r] : classes) {
            bool in_box = true;
            for (std::size_t v = 0; v < n; ++v) {
                in_box = in_box && r[v] >= 0 && r[v] < 1;
            }
            chk.expect(in_box && lat.class_of(r) == h, "r_h has coefficients in [0,1) and class h",
                       [&] { return tag + " h=" + lat.group().format(h); });
            const Cycle rm = lat.r_of(lat.group().negate(h));
            bool mirror = true;
            for (std::size_t v = 0; v < n; ++v) {
                mirror = mirror && rm[v] == (r[v] == 0 ? Rat(0) : 1 - r[v]);
            }
            chk.expect(mirror, "r_-h = 1 - r_h where r_h is nonzero",
                       [&] { return tag + " h=" + lat.group().format(h); });
        }
    });
}

void check_laufer(const Lattice& lat, Checker& chk, const VerifyOptions& opt)
{
    const std::string tag = graph_tag(lat);
    const std::size_t n = lat.size();
    guarded(chk, "laufer", tag, [&] {
        const auto z1 = fundamental_cycle(lat, TieBreak::smallest_index);
        const auto z2 = fundamental_cycle(lat, TieBreak::largest_index);
        chk.expect(z1.cycle == z2.cycle, "Z_min does not depend on the tie-break",
                   [&] { return tag + ": " + to_string(z1.cycle) + " vs " + to_string(z2.cycle); });
        chk.expect(geq(z1.cycle, lat.e_total()) && is_anti_nef(lat, z1.cycle) && z1.cycle.is_integral(),
                   "Z_min is an anti-nef integral cycle >= E", [&] { return tag; });
        bool rational = false;
        try {
            rational = is_rational(lat);
            chk.expect(true, "Laufer steps agree with chi(Z_min) = 1", [] { return std::string(); });
        } catch (const InternalInconsistency& e) {
            const std::string msg = e.what();
            chk.expect(false, "Laufer steps agree with chi(Z_min) = 1", [&] { return tag + ": " + msg; });
        }
        (void)rational;
        for (std::size_t v = 0; v < n; ++v) {
            const Cycle es = lat.estar(v);
            chk.expect(is_anti_nef(lat, es), "E*_v is anti-nef", [&] { return tag; });
            const auto st = s_of(lat, es);
            chk.expect(st.cycle == es && st.sequence.empty(), "s(l') = l' on the Lipman cone", [&] { return tag; });
        }
        for (const auto& [h, r] : lat.enumerate_classes()) {
            const Cycle sh = minimal_class_cycle(lat, h);
            const std::string hs = lat.group().format(h);
            chk.expect(is_anti_nef(lat, sh) && geq(sh, r) && lat.class_of(sh) == h,
                       "s_h is anti-nef, >= r_h and of class h", [&] { return tag + " h=" + hs; });
            chk.expect(s_of(lat, r, TieBreak::largest_index).cycle == sh, "s_h does not depend on the tie-break",
                       [&] { return tag + " h=" + hs; });
            if (lat.group().is_zero(h)) {
                chk.expect(sh.is_zero(), "s_0 = 0", [&] { return tag; });
            }
            if (lat.group().order() > opt.box_det_limit) {
                continue;
            }
            const Cycle upper = sh + Rat(3) * lat.e_total();
            const auto best = box_minimum(lat, h, upper, opt.budget);
            chk.expect(best && *best == sh, "s_h equals the brute-force minimum of S'_h in the box s_h + 3E",
                       [&] { return tag + " h=" + hs + " s_h=" + to_string(sh) + " box=" +
                                    (best ? to_string(*best) : std::string("none")); });
            auto cone = class_cone_in_box(lat, h, sh + lat.e_total(), opt.budget);
            if (cone.size() > 24) {
                cone.resize(24);
            }
            for (std::size_t i = 0; i < cone.size(); ++i) {
                for (std::size_t j = i + 1; j < cone.size(); ++j) {
                    const Cycle m = cwise_min(cone[i], cone[j]);
                    chk.expect(is_anti_nef(lat, m) && lat.class_of(m) == h, "S'_h is closed under min",
                               [&] { return tag + " h=" + hs; });
                }
            }
        }
    });
}

void check_series(const Lattice& lat, Checker& chk, const VerifyOptions& opt)
{
    const std::string tag = graph_tag(lat);
    const std::size_t n = lat.size();
    guarded(chk, "series", tag, [&] {
        const SeriesOptions so{opt.budget, nullptr};
        const Cycle x = lat.canonical_cycle() + lat.e_total();
        std::int64_t total = 0;
        for (const auto& h : lat.group().elements()) {
            total += counting_Q(lat, h, x, so);
        }
        chk.expect(total == counting_total(lat, x, so), "class counts sum to the total count",
                   [&] { return tag; });

        const auto small = z_coefficients(lat, x, so);
        const auto big = z_coefficients(lat, x + lat.e_total(), so);
        std::map<std::vector<std::int64_t>, std::int64_t> big_map;
        for (const auto& e : big.entries) {
            big_map[e.exponents] = e.z;
        }
        bool mono = true;
        for (const auto& e : small.entries) {
            auto it = big_map.find(e.exponents);
            mono = mono && it != big_map.end() && it->second == e.z;
        }
        chk.expect(mono, "enlarging the region keeps the coefficients", [&] { return tag; });

        for (const auto& h : lat.group().elements()) {
            std::vector<int> all(n);
            for (std::size_t v = 0; v < n; ++v) {
                all[v] = static_cast<int>(v);
            }
            chk.expect(counting_Q_I(lat, h, all, x, so) == counting_Q(lat, h, x, so), "Q_{h,V} = Q_h",
                       [&] { return tag; });
        }

        if (!is_rational(lat)) {
            return;
        }
        const Cycle& zk = lat.canonical_cycle();
        chk.expect(counting_Q(lat, lat.class_of(zk), zk, so) == 0, "Q_[Z_K](Z_K) = 0 on rational graphs",
                   [&] { return tag; });

        std::mt19937_64 rng(graph_seed(lat, opt.seed));
        std::uniform_int_distribution<int> coeff(0, 5);
        std::uniform_int_distribution<std::uint64_t> subset(1, (std::uint64_t{1} << n) - 1);
        for (std::size_t s = 0; s < opt.surgery_samples; ++s) {
            std::vector<int> I;
            const std::uint64_t mask = subset(rng);
            for (std::size_t v = 0; v < n; ++v) {
                if ((mask >> v) & 1U) {
                    I.push_back(static_cast<int>(v));
                }
            }
            std::vector<Int> c(n);
            for (auto& x_v : c) {
                const int r = coeff(rng);
                x_v = r < 3 ? 0 : r - 2;
            }
            const Cycle l = zk + lat.from_estar(c);
            const auto res = surgery_check(lat, I, l, so);
            chk.expect(res.holds, "surgery identity on Z_K + S'", [&] {
                std::ostringstream o;
                o << tag << " I=" << tuple_string(std::vector<Int>(I.begin(), I.end())) << " l'=" << to_string(l)
                  << " lhs=" << res.lhs << " Q_I=" << res.q_I << " rhs=" << res.rhs;
                return o.str();
            });
            const auto zres = surgery_check(lat, I, zk, so);
            chk.expect(zres.holds && zres.lhs == 0 && zres.rhs == 0, "surgery identity at Z_K",
                       [&] { return tag; });
            for (const auto& comp : components_minus(lat.graph(), I)) {
                const Lattice sub(comp.graph);
                chk.expect(dual_project(lat, sub, comp.to_parent, zk) == sub.canonical_cycle(), "j*(Z_K) = Z_K(sub)",
                           [&] { return tag; });
                for (std::size_t i = 0; i < sub.size(); ++i) {
                    chk.expect(dual_project(lat, sub, comp.to_parent, lat.e(comp.to_parent[i])) == sub.e(i),
                               "j*(E_v) = E_v(sub)", [&] { return tag; });
                }
                for (const auto& h : nonzero_classes(lat)) {
                    const Cycle p = dual_project(lat, sub, comp.to_parent, minimal_class_cycle(lat, h));
                    chk.expect(minimal_class_cycle(sub, sub.class_of(p)) == p, "j*(s_h) is a minimal cycle",
                               [&] { return tag + " h=" + lat.group().format(h); });
                }
            }
        }
    });
}

void check_routes(const Lattice& lat, Checker& chk, const VerifyOptions& opt)
{
    const std::string tag = graph_tag(lat);
    if (!is_rational(lat)) {
        return;
    }
    try {
        const auto rep = full_report(lat, ReportOptions{opt.budget, 1});
        for (const auto& row : rep.rows) {
            chk.expect(row.delta_chi == row.delta_count && row.delta_chi == row.delta_struct,
                       "three delta routes agree", [&] { return tag + " h=" + row.class_id; });
            chk.expect(row.delta_struct >= row.r - 1, "delta >= r - 1", [&] { return tag + " h=" + row.class_id; });
        }
    } catch (const Error& e) {
        const std::string msg = e.what();
        chk.expect(false, "three delta routes agree", [&] { return tag + ": " + msg; });
    }
}

void check_star(const Lattice& lat, Checker& chk)
{
    if (!lat.graph().is_star_shaped()) {
        return;
    }
    const std::string tag = graph_tag(lat);
    SeifertData sd;
    try {
        sd = seifert_from_graph(lat.graph());
    } catch (const NonMinimalLeg&) {
        return;
    }
    guarded(chk, "star", tag, [&] {
        std::vector<std::pair<Int, Int>> legs;
        for (const auto& l : sd.legs) {
            legs.emplace_back(l.d, l.q);
        }
        const SeifertData back = seifert_from_graph(seifert_graph(sd.k, legs));
        chk.expect(render_seifert(back) == render_seifert(sd), "Seifert data round-trips", [&] { return tag; });
        chk.expect(lat.pairing(lat.estar(sd.center), lat.estar(sd.center)) == 1 / sd.e, "(E*_0, E*_0) = 1/e",
                   [&] { return tag; });
        for (const auto& l : sd.legs) {
            chk.expect(lat.pairing(lat.estar(sd.center), lat.estar(l.end())) == 1 / (Rat(l.d) * sd.e),
                       "(E*_0, E*_i) = 1/(d_i e)", [&] { return tag; });
        }
        chk.expect(sd.gamma == lat.canonical_cycle()[sd.center] - 1, "gamma = Z_K,0 - 1", [&] { return tag; });

        // s_h per class, for the minimality oracle below.
        std::map<HElem, Cycle> sh_of;
        for (const auto& h : lat.group().elements()) {
            sh_of[h] = minimal_class_cycle(lat, h);
        }
        ReducedCoeffs a;
        a.c.assign(sd.nu() + 1, Int(0));
        for (;;) {
            const Cycle l = unreduce(lat, sd, a);
            const bool is_min = sh_of.at(lat.class_of(l)) == l;
            chk.expect(is_minimal_reduced(sd, a) == is_min, "reduced criterion matches the Laufer minimum",
                       [&] { return tag + " a=" + to_string(a); });
            chk.expect(reduced_transform(lat, sd, l) == a, "reduced transform inverts unreduce",
                       [&] { return tag + " a=" + to_string(a); });
            std::size_t i = 0;
            for (; i <= sd.nu(); ++i) {
                const Int lim = i == 0 ? sd.k : sd.legs[i - 1].d - 1;
                if (a.c[i] < lim) {
                    ++a.c[i];
                    break;
                }
                a.c[i] = 0;
            }
            if (i > sd.nu()) {
                break;
            }
        }
        ReducedCoeffs over;
        over.c.assign(sd.nu() + 1, Int(0));
        over.c[0] = sd.k;
        chk.expect(!is_minimal_reduced(sd, over), "a_0 = k violates the criterion", [&] { return tag; });

        if (!is_rational(lat)) {
            return;
        }
        const bool quotient = is_quotient(lat);
        Int max_d = 0;
        bool k2_two_q1 = false;
        bool k2_all_q1 = sd.k == 2;
        std::size_t q_ones = 0;
        for (const auto& l : sd.legs) {
            max_d = std::max(max_d, l.d);
            if (l.q == 1) {
                ++q_ones;
            } else {
                k2_all_q1 = false;
            }
        }
        k2_two_q1 = sd.k == 2 && q_ones >= 2;

        for (const auto& h : nonzero_classes(lat)) {
            const std::string hs = lat.group().format(h);
            const StarDelta d = delta_star(lat, h);
            chk.expect(is_minimal_reduced(sd, d.a), "reduced s_h satisfies the criterion",
                       [&] { return tag + " h=" + hs; });
            chk.expect(reduced_e0(sd, d.a) == d.s_h0, "E_0-coefficient from the reduced transform",
                       [&] { return tag + " h=" + hs; });
            chk.expect(-sd.gamma - d.s_h0 <= 0, "summation interval is nonempty", [&] { return tag + " h=" + hs; });
            chk.expect(d.delta >= d.r - 1, "delta >= r - 1", [&] { return tag + " h=" + hs; });
            const Int span = ceil_of(sd.gamma + d.s_h0) + 2 * max_d + 2;
            for (Int t = 1; t <= span; ++t) {
                chk.expect(n_func(sd, d.a_tilde, -t) <= static_cast<long>(sd.nu()) - 2, "N(n) <= nu - 2 for n < 0",
                           [&] { return tag + " h=" + hs + " n=-" + t.get_str(); });
            }
            const Rat pc = pc_Z(lat, h);
            chk.expect(pc >= 0 && is_integral(pc), "chi(r_-h) >= chi(s_-h)", [&] { return tag + " h=" + hs; });
            const bool applies = -sd.gamma - d.s_h0 <= Rat(floor_of(-d.s_h0));
            try {
                const Int alt = delta_star_alt(lat, h);
                chk.expect(applies && alt == d.delta, "alternative star formula agrees",
                           [&] { return tag + " h=" + hs + " alt=" + alt.get_str() + " delta=" + d.delta.get_str(); });
            } catch (const PreconditionFailed&) {
                chk.expect(!applies, "alternative star formula agrees", [&] { return tag + " h=" + hs; });
            }
            if (!quotient) {
                continue;
            }
            chk.expect(pc == 0, "pc vanishes on quotients", [&] { return tag + " h=" + hs; });
            chk.expect(!applies, "alternative formula never applies on quotients", [&] { return tag + " h=" + hs; });
            if (d.s_h0 <= 1) {
                chk.expect(d.delta == d.r - 1, "Claim 1: s_h0 <= 1 gives delta = r - 1",
                           [&] { return tag + " h=" + hs; });
            }
            for (Int t = 0; -sd.gamma - d.s_h0 <= Rat(-t); ++t) {
                chk.expect(n_func(sd, d.a_tilde, -t) >= 0, "Claim 2: N(-t) >= 0 on the interval",
                           [&] { return tag + " h=" + hs + " t=" + t.get_str(); });
            }
            if (sd.k >= 3) {
                chk.expect(d.s_h0 < 2, "Lemma 5.1: k >= 3 gives s_h0 < 2", [&] { return tag + " h=" + hs; });
            }
            if (k2_all_q1) {
                chk.expect(d.s_h0 <= 2, "Lemma 5.1: k = 2, q_i = 1 gives s_h0 <= 2",
                           [&] { return tag + " h=" + hs; });
            }
            if (k2_two_q1) {
                for (Int t = 2; t <= span; ++t) {
                    chk.expect(n_func(sd, d.a_tilde, -t) <= 0, "Lemma 5.2: N(n) <= 0 for n < -1",
                               [&] { return tag + " h=" + hs + " n=-" + t.get_str(); });
                }
            }
            const QuotientDelta q = delta_quotient(lat, h);
            chk.expect(q.delta == d.r - 1 || q.delta == d.r, "delta is r - 1 or r on quotients",
                       [&] { return tag + " h=" + hs; });
            chk.expect(q.delta == d.delta, "case analysis matches the star formula",
                       [&] { return tag + " h=" + hs + " rule=" + q.rule; });
            // s_h + E*_v = s_{h+[E*_v]}: C_h is a sub-collection of a larger
            // minimal generic curve.
            for (std::size_t v = 0; v < lat.size(); ++v) {
                const HElem hv = lat.group().add(h, lat.class_of(lat.estar(v)));
                if (d.s_h + lat.estar(v) != sh_of.at(hv)) {
                    continue;
                }
                const auto detail = [&] {
                    return tag + " h=" + hs + " v=" + std::to_string(v) + " delta=" + q.delta.get_str() +
                           " r=" + d.r.get_str();
                };
                bool two_leg = false;
                for (const auto& l : sd.legs) {
                    two_leg = two_leg || (l.d == 2 && static_cast<std::size_t>(l.end()) == v);
                }
                if (static_cast<int>(v) == sd.center) {
                    chk.expect(q.epsilon == 0, "s_h + E*_0 minimal gives epsilon 0", detail);
                } else if (two_leg) {
                    chk.expect(q.epsilon == 0, "s_h + E*_i minimal on a d_i = 2 leg gives epsilon 0", detail);
                }
                chk.observe(q.epsilon == 0, "non-maximal s_h has epsilon 0 (general claim)", detail);
            }
        }
    });
}

void check_cyclic(const Int& d, const Int& q, Checker& chk, const VerifyOptions& opt)
{
    const std::string tag = d.get_str() + "/" + q.get_str();
    guarded(chk, "cyclic", tag, [&] {
        const HJData hj = hj_expand(d, q);
        const std::size_t s = hj.length();
        chk.expect(evaluate_continued_fraction(hj.ks()) == make_rat(d, q), "continued fraction round-trips",
                   [&] { return tag; });
        chk.expect(hj.subdet(1, s) == d && hj.subdet(2, s) == q && hj.subdet(1, s - 1) == hj.q_prime()
                       && Int((q * hj.q_prime()) % d) == 1 % d,
                   "subdeterminants give d, q and q'", [&] { return tag; });
        const Lattice lat(string_graph(hj.ks()));
        const auto path = string_order(lat.graph());
        const SeriesOptions so{opt.budget, nullptr};
        for (Int a = 0; a < d; ++a) {
            const auto co = cyclic_s_coeffs(hj, a);
            Int sum = 0;
            Int weighted = 0;
            for (std::size_t j = 0; j < s; ++j) {
                sum += co[j];
                weighted += hj.subdet(j + 2, s) * co[j];
            }
            chk.expect(weighted == a && co[0] == Int(a / q), "a = sum d_{j+1,s} a_j and a_1 = floor(a/q)",
                       [&] { return tag + " a=" + a.get_str(); });
            const HElem h{to_i64(a)};
            const Cycle sh = minimal_class_cycle(lat, h);
            const auto est = lat.estar_coords(sh);
            bool same = true;
            for (std::size_t j = 0; j < s; ++j) {
                same = same && est[path[j]] == co[j];
            }
            chk.expect(same, "string recursion matches the Laufer minimum",
                       [&] { return tag + " a=" + a.get_str(); });
            chk.expect(lat.chi(sh) == detail::chi_minimal_cycle_closed_form(hj, a), "closed form of chi(s_h)",
                       [&] { return tag + " a=" + a.get_str(); });
            if (a == 0) {
                continue;
            }
            const Int dc = cyclic_delta(hj, a);
            chk.expect(dc == sum - 1 && dc == delta_chi(lat, h) && Int(delta_count(lat, h, so)) == dc,
                       "cyclic delta = kappa = chi route", [&] { return tag + " a=" + a.get_str(); });
            if (s < 2) {
                continue;
            }
            const Cycle x = lat.canonical_cycle() + sh;
            const auto res = surgery_check(lat, {path[0]}, x, so);
            const bool divides = a % q == 0;
            const Int expect_sub = divides ? Int(0) : sum - co[0] - 1;
            const Int expect_v1 = divides ? Int(a / q) - 1 : Int(a / q);
            chk.expect(res.holds && res.terms.size() == 1 && Int(res.terms[0].value) == expect_sub
                           && Int(res.q_I) == expect_v1,
                       "restriction recursion at the first vertex", [&] { return tag + " a=" + a.get_str(); });
        }
    });
}

void check_graph(const Lattice& lat, Checker& chk, const VerifyOptions& opt)
{
    check_lattice(lat, chk);
    check_laufer(lat, chk, opt);
    check_series(lat, chk, opt);
    check_routes(lat, chk, opt);
    check_star(lat, chk);
}

namespace {

// Runs one job per item on opt.jobs threads and merges in item order.
template <class F>
Checker sweep(std::size_t count, unsigned jobs, F&& job)
{
    std::vector<Checker> parts(count);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < count; i += stride) {
            job(i, parts[i]);
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(work, j, jobs);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    Checker all;
    for (const auto& p : parts) {
        all.merge(p);
    }
    return all;
}

} // namespace

Checker verify_quotient_family(long dmax, long kmax, const VerifyOptions& opt)
{
    const auto fam = quotient_seifert_family(dmax, 2, kmax);
    Checker out = sweep(fam.size(), opt.jobs, [&](std::size_t i, Checker& chk) {
        guarded(chk, "quotient family", fam[i].text(), [&] {
            const Lattice lat(seifert_graph(fam[i].k, fam[i].legs));
            chk.expect(is_rational(lat) && is_quotient(lat), "family members are rational quotients",
                       [&] { return fam[i].text(); });
            check_graph(lat, chk, opt);
        });
    });
    return out;
}

Checker verify_cyclic_family(long dmax, const VerifyOptions& opt)
{
    const auto fam = cyclic_family(dmax);
    return sweep(fam.size(), opt.jobs, [&](std::size_t i, Checker& chk) {
        const auto& [d, q] = fam[i];
        check_cyclic(d, q, chk, opt);
        guarded(chk, "cyclic family", d.get_str() + "/" + q.get_str(), [&] {
            const Lattice lat(string_graph(hj_expand(d, q).ks()));
            chk.expect(is_quotient(lat) && is_rational(lat), "cyclic quotients are rational quotients",
                       [&] { return d.get_str() + "/" + q.get_str(); });
            check_routes(lat, chk, opt);
        });
    });
}

Checker verify_random(std::size_t count, const VerifyOptions& opt)
{
    RandomGraphOptions ro;
    ro.count = count;
    ro.seed = opt.seed;
    const auto graphs = random_rational_graphs(ro);
    return sweep(graphs.size(), opt.jobs, [&](std::size_t i, Checker& chk) {
        guarded(chk, "random", render_json(graphs[i]), [&] {
            const Lattice lat(graphs[i]);
            check_graph(lat, chk, opt);
        });
    });
}

Checker verify_nonquotient_family(const std::vector<long>& ks, const VerifyOptions& opt)
{
    Checker chk;
    for (long k : ks) {
        const std::string tag = "k=" + std::to_string(k);
        guarded(chk, "non-quotient family", tag, [&] {
            const Lattice lat(nonquotient_star(k));
            chk.expect(is_rational(lat) && !is_quotient(lat), "rational and not a quotient", [&] { return tag; });
            chk.expect(lat.canonical_cycle() == Rat(k - 2) * lat.estar(0), "Z_K = (k-2) E*_0", [&] { return tag; });
            chk.expect(fundamental_cycle(lat).cycle == lat.e_total(), "Z_min = E", [&] { return tag; });
            const Cycle l = Rat(k - 1) * lat.estar(0);
            const HElem h = lat.class_of(l);
            const DeltaRow row = delta_row(lat, h, SeriesOptions{opt.budget, nullptr});
            chk.expect(row.s_h == l && row.r == k - 1, "s_h = (k-1) E*_0", [&] { return tag; });
            chk.expect(row.delta_struct - row.r == k - 3, "delta - r = k - 3",
                       [&] { return tag + " delta=" + row.delta_struct.get_str() + " r=" + row.r.get_str(); });
            check_routes(lat, chk, opt);
            check_star(lat, chk);
        });
    }
    return chk;
}

Checker verify_golden(const std::string& path, const VerifyOptions& opt)
{
    Checker chk;
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open golden file " + path);
    }
    nlohmann::ordered_json stored;
    try {
        stored = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("golden file is not JSON: ") + e.what());
    }
    if (!stored.contains("graph") || !stored.contains("report")) {
        throw ParseError("golden file needs 'graph' and 'report'");
    }
    const std::string text = stored["graph"].is_string() ? stored["graph"].get<std::string>() : stored["graph"].dump();
    const Lattice lat(parse_graph(text));
    const auto fresh = to_json(full_report(lat, ReportOptions{opt.budget, opt.jobs}));
    const auto diff = nlohmann::ordered_json::diff(stored["report"], fresh);
    chk.expect(diff.empty(), "golden report matches", [&] {
        return path + ": first difference " + diff.front().dump();
    });
    return chk;
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& body)
{
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected key=value in '" + item + "'");
        }
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

long param(const std::map<std::string, std::string>& kv, const std::string& key, long fallback)
{
    auto it = kv.find(key);
    if (it == kv.end()) {
        return fallback;
    }
    const Rat r = parse_rational(it->second);
    if (!is_integral(r)) {
        throw ParseError(key + " must be an integer");
    }
    return static_cast<long>(to_i64(r));
}

void reject_unknown(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> known)
{
    for (const auto& [k, v] : kv) {
        if (std::find_if(known.begin(), known.end(), [&](const char* s) { return k == s; }) == known.end()) {
            throw ParseError("unknown verify parameter '" + k + "'");
        }
    }
}

} // namespace

Checker run_verify_spec(const std::string& spec, const VerifyOptions& opt)
{
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "quotient") {
        const auto kv = parse_params(body);
        reject_unknown(kv, {"dmax", "kmax"});
        return verify_quotient_family(param(kv, "dmax", 7), param(kv, "kmax", 5), opt);
    }
    if (kind == "cyclic") {
        const auto kv = parse_params(body);
        reject_unknown(kv, {"dmax"});
        return verify_cyclic_family(param(kv, "dmax", 30), opt);
    }
    if (kind == "random") {
        const auto kv = parse_params(body);
        reject_unknown(kv, {"count", "seed"});
        VerifyOptions o = opt;
        o.seed = static_cast<std::uint64_t>(param(kv, "seed", static_cast<long>(opt.seed)));
        return verify_random(static_cast<std::size_t>(param(kv, "count", 50)), o);
    }
    if (kind == "nonquotient") {
        const auto kv = parse_params(body);
        reject_unknown(kv, {"kmin", "kmax"});
        std::vector<long> ks;
        for (long k = param(kv, "kmin", 4); k <= param(kv, "kmax", 6); ++k) {
            ks.push_back(k);
        }
        return verify_nonquotient_family(ks, opt);
    }
    if (kind == "golden") {
        return verify_golden(body, opt);
    }
    const Lattice lat(parse_graph(spec));
    Checker chk;
    check_graph(lat, chk, opt);
    return chk;
}

} // namespace cdelta
