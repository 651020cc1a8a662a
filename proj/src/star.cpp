#include "cdelta/star.hpp"

#include <algorithm>

#include "cdelta/error.hpp"
#include "cdelta/laufer.hpp"

namespace cdelta {

SeifertData seifert_from_graph(const DualGraph& g)
{
    const auto nodes = g.nodes();
    if (nodes.size() != 1) {
        throw NotStarShaped("graph has " + std::to_string(nodes.size()) + " nodes, a star needs exactly one");
    }
    SeifertData sd;
    sd.center = nodes[0];
    sd.k = -g.vertex(sd.center).euler;
    sd.e = -Rat(sd.k);
    Rat inv_sum = 0;
    for (int first : g.neighbors(sd.center)) {
        Leg leg;
        int prev = sd.center;
        int cur = first;
        for (;;) {
            leg.vertices.push_back(cur);
            if (g.valency(cur) == 1) {
                break;
            }
            const auto& nb = g.neighbors(cur);
            const int next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
        }
        std::vector<Int> ks;
        for (int v : leg.vertices) {
            const Int kk = -g.vertex(v).euler;
            if (kk < 2) {
                throw NonMinimalLeg("leg vertex " + std::to_string(v) + " has self-intersection "
                                    + std::to_string(g.vertex(v).euler));
            }
            ks.push_back(kk);
        }
        leg.hj = hj_from_chain(std::move(ks));
        leg.d = leg.hj.d();
        leg.q = leg.hj.q();
        sd.e += make_rat(leg.q, leg.d);
        inv_sum += make_rat(1, leg.d);
        sd.legs.push_back(std::move(leg));
    }
    if (sd.e >= 0) {
        throw InternalInconsistency("orbifold Euler number " + to_string(sd.e) + " of a negative definite star");
    }
    sd.gamma = (Rat(static_cast<long>(sd.nu())) - 2 - inv_sum) / (-sd.e);
    return sd;
}

std::string render_seifert(const SeifertData& sd)
{
    std::string s = "sf:-" + sd.k.get_str() + ";";
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        s += (i > 0 ? ",(" : "(") + sd.legs[i].d.get_str() + "," + sd.legs[i].q.get_str() + ")";
    }
    return s;
}

bool same_seifert(const SeifertData& sd, const Int& k, std::vector<std::pair<Int, Int>> legs)
{
    if (sd.k != k || sd.nu() != legs.size()) {
        return false;
    }
    std::vector<std::pair<Int, Int>> mine;
    for (const auto& l : sd.legs) {
        mine.emplace_back(l.d, l.q);
    }
    std::sort(mine.begin(), mine.end());
    std::sort(legs.begin(), legs.end());
    return mine == legs;
}

std::string to_string(const ReducedCoeffs& rc)
{
    std::string s = "(";
    for (std::size_t i = 0; i < rc.c.size(); ++i) {
        s += (i > 0 ? "," : "") + rc.c[i].get_str();
    }
    return s + ")";
}

namespace {

Cycle reduced_cycle(const Lattice& lat, const SeifertData& sd, const ReducedCoeffs& rc)
{
    std::vector<Int> a(lat.size(), Int(0));
    a[sd.center] = rc.c[0];
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        a[sd.legs[i].end()] += rc.c[i + 1];
    }
    return lat.from_estar(a);
}

void require_star(const Lattice& lat)
{
    if (!lat.graph().is_star_shaped()) {
        throw NotStarShaped("graph is not star-shaped");
    }
}

void require_rational(const Lattice& lat)
{
    if (!is_rational(lat)) {
        throw NotRational("graph is not rational");
    }
}

} // namespace

ReducedCoeffs reduced_transform(const Lattice& lat, const SeifertData& sd, const Cycle& l)
{
    const auto a = lat.estar_coords(l);
    ReducedCoeffs rc;
    rc.c.push_back(a[sd.center]);
    for (const auto& leg : sd.legs) {
        Int ci = 0;
        const std::size_t s = leg.vertices.size();
        for (std::size_t j = 1; j <= s; ++j) {
            ci += a[leg.vertices[j - 1]] * leg.hj.subdet(j + 1, s);
        }
        rc.c.push_back(ci);
    }
    const Cycle red = reduced_cycle(lat, sd, rc);
    if (lat.class_of(red) != lat.class_of(l)) {
        throw InternalInconsistency("reduced transform changed the class of " + to_string(l));
    }
    if (red[sd.center] != l[sd.center] || reduced_e0(sd, rc) != l[sd.center]) {
        throw InternalInconsistency("reduced transform changed the E_0-coefficient of " + to_string(l));
    }
    return rc;
}

Rat reduced_e0(const SeifertData& sd, const ReducedCoeffs& rc)
{
    Rat acc(rc.c[0]);
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        acc += make_rat(rc.c[i + 1], sd.legs[i].d);
    }
    return acc / (-sd.e);
}

Cycle unreduce(const Lattice& lat, const SeifertData& sd, const ReducedCoeffs& rc)
{
    if (rc.c.size() != sd.nu() + 1) {
        throw GraphMismatch("reduced coefficient vector has wrong length");
    }
    std::vector<Int> a(lat.size(), Int(0));
    a[sd.center] = rc.c[0];
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        const auto coeffs = cyclic_s_coeffs(sd.legs[i].hj, rc.c[i + 1]);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            a[sd.legs[i].vertices[j]] = coeffs[j];
        }
    }
    return lat.from_estar(a);
}

Int n_func(const SeifertData& sd, const ReducedCoeffs& c, const Int& n)
{
    Int v = 1 + c.c[0] + sd.k * n;
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        v -= ceil_of(make_rat(sd.legs[i].q * n - c.c[i + 1], sd.legs[i].d));
    }
    return v;
}

Int r_func(const SeifertData& sd, const ReducedCoeffs& a, const Int& t)
{
    Int v = 1 + a.c[0] - sd.k * t;
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        v += floor_of(make_rat(sd.legs[i].q * t + a.c[i + 1], sd.legs[i].d));
    }
    return v;
}

bool is_minimal_reduced(const SeifertData& sd, const ReducedCoeffs& a)
{
    if (a.c.size() != sd.nu() + 1 || a.c[0] < 0) {
        return false;
    }
    Rat top = 1 + Rat(a.c[0]);
    for (std::size_t i = 0; i < sd.nu(); ++i) {
        if (a.c[i + 1] < 0 || a.c[i + 1] >= sd.legs[i].d) {
            return false;
        }
        top += make_rat(a.c[i + 1], sd.legs[i].d);
    }
    const Int T = ceil_of(top / (-sd.e));
    for (Int t = 1; t <= T; ++t) {
        if (r_func(sd, a, t) > 0) {
            return false;
        }
    }
    return true;
}

ReducedCoeffs index_vector(const SeifertData& sd, const ReducedCoeffs& a)
{
    ReducedCoeffs t;
    t.c.push_back(a.c[0] + static_cast<long>(sd.nu()) - 2);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        t.c.push_back(a.c[i] - 1);
    }
    return t;
}

StarDelta delta_star(const Lattice& lat, const HElem& h)
{
    require_star(lat);
    require_rational(lat);
    if (lat.group().is_zero(h)) {
        throw EmptyCurve("the class 0 carries the empty curve");
    }
    const SeifertData sd = seifert_from_graph(lat.graph());
    if (sd.gamma != lat.canonical_cycle()[sd.center] - 1) {
        throw InternalInconsistency("gamma " + to_string(sd.gamma) + " differs from Z_K,0 - 1");
    }
    StarDelta out;
    out.s_h = minimal_class_cycle(lat, h);
    out.s_h0 = out.s_h[sd.center];
    out.r = 0;
    for (const auto& x : lat.estar_coords(out.s_h)) {
        out.r += x;
    }
    out.a = reduced_transform(lat, sd, out.s_h);
    out.a_tilde = index_vector(sd, out.a);
    out.delta = out.r - 1;
    for (Int n = ceil_of(-sd.gamma - out.s_h0); n <= -1; ++n) {
        const Int v = n_func(sd, out.a_tilde, n);
        out.n_values.emplace_back(n, v);
        if (v > 0) {
            out.delta += v;
        }
    }
    return out;
}

Rat pc_Z(const Lattice& lat, const HElem& h)
{
    require_rational(lat);
    const HElem mh = lat.group().negate(h);
    return lat.chi(lat.r_of(mh)) - lat.chi(minimal_class_cycle(lat, mh));
}

Int delta_star_alt(const Lattice& lat, const HElem& h)
{
    const StarDelta base = delta_star(lat, h);
    const SeifertData sd = seifert_from_graph(lat.graph());
    const Int fl = floor_of(-base.s_h0);
    if (-sd.gamma - base.s_h0 > Rat(fl)) {
        throw PreconditionFailed("-gamma - s_h0 = " + to_string(-sd.gamma - base.s_h0) + " exceeds floor(-s_h0) = "
                                 + fl.get_str());
    }
    const Rat pc = pc_Z(lat, h);
    if (!is_integral(pc)) {
        throw InternalInconsistency("periodic constant " + to_string(pc) + " is not an integer");
    }
    Int delta = base.r - 1 + pc.get_num();
    for (Int n = fl + 1; n <= -1; ++n) {
        const Int v = n_func(sd, base.a_tilde, n);
        if (v > 0) {
            delta += v;
        }
    }
    return delta;
}

bool is_quotient(const Lattice& lat)
{
    const Cycle& zk = lat.canonical_cycle();
    bool below_one = true;
    for (std::size_t v = 0; v < zk.size(); ++v) {
        if (zk[v] >= 1) {
            below_one = false;
        }
    }
    if (lat.graph().is_star_shaped()) {
        std::optional<SeifertData> sd;
        try {
            sd = seifert_from_graph(lat.graph());
        } catch (const NonMinimalLeg&) {
        }
        if (sd) {
            Rat inv_sum = 0;
            for (const auto& leg : sd->legs) {
                inv_sum += make_rat(1, leg.d);
            }
            const bool seifert = sd->nu() == 3 && inv_sum > 1;
            if (seifert != below_one) {
                throw InternalInconsistency("Z_K test and Seifert test disagree on quotient-ness of "
                                            + render_seifert(*sd));
            }
        }
    }
    return below_one;
}

std::string curve_type(const Int& r, const Int& delta)
{
    const Int eps = delta - r + 1;
    if (eps == 0 || eps == 1) {
        return "R^" + Int(r - eps).get_str() + "_" + r.get_str();
    }
    return "other";
}

QuotientDelta delta_quotient(const Lattice& lat, const HElem& h)
{
    if (!is_quotient(lat)) {
        throw NotQuotient("some coefficient of Z_K is >= 1");
    }
    if (lat.group().is_zero(h)) {
        throw EmptyCurve("the class 0 carries the empty curve");
    }
    QuotientDelta out;
    const DualGraph& g = lat.graph();
    if (g.is_string()) {
        const auto path = string_order(g);
        std::vector<Int> ks;
        for (int v : path) {
            ks.push_back(-g.vertex(v).euler);
        }
        const HJData hj = hj_from_chain(ks);
        if (lat.group().generator_vertex() != path.back()) {
            throw InternalInconsistency("string class generator is not the last vertex");
        }
        const Int a = h.at(0);
        const Cycle sh = minimal_class_cycle(lat, h);
        const auto est = lat.estar_coords(sh);
        const auto coeffs = cyclic_s_coeffs(hj, a);
        out.r = 0;
        for (std::size_t j = 0; j < path.size(); ++j) {
            if (coeffs[j] != est[path[j]]) {
                throw InternalInconsistency("string recursion and Laufer sequence disagree on s_h for class "
                                            + a.get_str());
            }
            out.r += coeffs[j];
        }
        out.delta = cyclic_delta(hj, a);
        out.epsilon = 0;
        out.rule = "cyclic";
        const Rat chi_route = lat.chi(-sh) - lat.chi(minimal_class_cycle(lat, lat.group().negate(h)));
        if (chi_route != Rat(out.delta)) {
            throw InternalInconsistency("cyclic delta " + out.delta.get_str() + " differs from the chi route "
                                        + to_string(chi_route));
        }
    } else {
        const StarDelta sdelta = delta_star(lat, h);
        const SeifertData sd = seifert_from_graph(g);
        out.r = sdelta.r;
        const auto est = lat.estar_coords(sdelta.s_h);
        auto only = [&](std::vector<std::pair<int, Int>> want) {
            std::vector<Int> t(lat.size(), Int(0));
            for (auto& [v, c] : want) {
                t[v] = c;
            }
            return t == est;
        };
        auto leg_with = [&](long d, long q) -> const Leg* {
            for (const auto& l : sd.legs) {
                if (l.d == d && l.q == q) {
                    return &l;
                }
            }
            return nullptr;
        };
        if (same_seifert(sd, 2, {{2, 1}, {3, 2}, {3, 2}})) {
            out.epsilon = 0;
            out.rule = "E6";
        } else if (same_seifert(sd, 2, {{2, 1}, {3, 2}, {4, 3}})) {
            out.epsilon = 0;
            out.rule = "E7";
        } else if (sdelta.s_h0 <= 1) {
            out.epsilon = 0;
            out.rule = "s_h0<=1";
        } else if (same_seifert(sd, 2, {{2, 1}, {3, 2}, {5, 2}})
                   && only({{leg_with(5, 2)->vertices[0], 1}, {leg_with(2, 1)->vertices[0], 1}})) {
            out.epsilon = 1;
            out.rule = "exceptional (-2;(2,1),(3,2),(5,2))";
        } else if (same_seifert(sd, 2, {{2, 1}, {3, 2}, {5, 3}}) && only({{leg_with(2, 1)->vertices[0], 1}})) {
            out.epsilon = 1;
            out.rule = "exceptional (-2;(2,1),(3,2),(5,3))";
        } else {
            Int n1 = 2 + sdelta.a.c[0] - sd.k;
            for (std::size_t i = 0; i < sd.nu(); ++i) {
                n1 += floor_of(make_rat(sd.legs[i].q + sdelta.a.c[i + 1] - 1, sd.legs[i].d));
            }
            if (n1 != n_func(sd, sdelta.a_tilde, -1)) {
                throw InternalInconsistency("two forms of N(-1) disagree");
            }
            out.epsilon = static_cast<int>(to_i64(n1));
            out.rule = "N(-1)";
        }
        out.delta = out.r - 1 + out.epsilon;
        if (out.delta != sdelta.delta) {
            throw InternalInconsistency("case analysis (" + out.rule + ") gives delta " + out.delta.get_str()
                                        + ", star formula gives " + sdelta.delta.get_str() + " for s_h = "
                                        + to_string(sdelta.s_h));
        }
    }
    if (out.epsilon != 0 && out.epsilon != 1) {
        throw InternalInconsistency("epsilon " + std::to_string(out.epsilon) + " outside {0,1}");
    }
    out.curve_type = curve_type(out.r, out.delta);
    return out;
}

} // namespace cdelta
