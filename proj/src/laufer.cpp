#include "cdelta/laufer.hpp"

#include "cdelta/error.hpp"

namespace cdelta {

namespace {

// Runs x -> x + E_v while some (x, E_v) > 0. The state is kept as the
// pairings b_v = (x, E_v), which stay exact rationals when x is not in L'.
LauferResult run_sequence(const Lattice& lat, Cycle x, TieBreak tie)
{
    const auto& m = lat.intersection();
    const std::size_t n = lat.size();
    std::vector<Rat> b = lat.estar_coords_q(x);
    for (auto& v : b) {
        v = -v;
    }
    LauferResult res;
    for (;;) {
        int chosen = -1;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v = tie == TieBreak::smallest_index ? i : n - 1 - i;
            if (b[v] > 0) {
                chosen = static_cast<int>(v);
                break;
            }
        }
        if (chosen < 0) {
            break;
        }
        res.sequence.push_back({x, chosen, b[chosen]});
        x.set(chosen, x[chosen] + 1);
        for (std::size_t v = 0; v < n; ++v) {
            if (m(v, chosen) != 0) {
                b[v] += Rat(m(v, chosen));
            }
        }
    }
    res.cycle = std::move(x);
    return res;
}

} // namespace

bool is_anti_nef(const Lattice& lat, const Cycle& l)
{
    for (const auto& a : lat.estar_coords_q(l)) {
        if (a < 0) {
            return false;
        }
    }
    return true;
}

LauferResult fundamental_cycle(const Lattice& lat, TieBreak tie)
{
    return run_sequence(lat, lat.e_total(), tie);
}

bool is_rational(const Lattice& lat)
{
    const auto res = fundamental_cycle(lat);
    bool steps_ok = true;
    for (const auto& st : res.sequence) {
        if (st.pairing != 1) {
            steps_ok = false;
        }
    }
    const bool artin = lat.chi(res.cycle) == 1;
    if (steps_ok != artin) {
        throw InternalInconsistency("Laufer steps and chi(Z_min) = " + to_string(lat.chi(res.cycle))
                                    + " disagree on rationality; Z_min = " + to_string(res.cycle));
    }
    return steps_ok;
}

LauferResult s_of(const Lattice& lat, const Cycle& l, TieBreak tie)
{
    if (!lat.in_lprime(l)) {
        throw NotInLPrime("s(l) needs l in L', got " + to_string(l));
    }
    return run_sequence(lat, l, tie);
}

Cycle minimal_class_cycle(const Lattice& lat, const HElem& h)
{
    return s_of(lat, lat.r_of(h)).cycle;
}

namespace {

// Walks r_h + k for 0 <= k <= floor(upper - r_h), tracking the E*-coordinates
// of the candidate so each anti-nef test is a sign check.
template <class Visit>
void walk_box(const Lattice& lat, const HElem& h, const Cycle& upper, std::uint64_t budget, Visit&& visit)
{
    lat.check(upper);
    const std::size_t n = lat.size();
    const auto& m = lat.intersection();
    const Cycle r = lat.r_of(h);

    std::vector<std::int64_t> top(n);
    for (std::size_t v = 0; v < n; ++v) {
        const Int t = floor_of(upper[v] - r[v]);
        if (t < 0) {
            return;
        }
        top[v] = to_i64(t);
    }
    std::vector<std::int64_t> mm(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mm[i * n + j] = to_i64(m(i, j));
        }
    }
    std::vector<std::int64_t> a(n);
    const auto ra = lat.estar_coords(r);
    for (std::size_t v = 0; v < n; ++v) {
        a[v] = to_i64(ra[v]);
    }
    std::vector<std::int64_t> k(n, 0);
    std::uint64_t visited = 0;
    for (;;) {
        if (++visited > budget) {
            throw RegionTooLarge("box enumeration exceeded the budget of " + std::to_string(budget));
        }
        bool nef = true;
        for (std::size_t v = 0; v < n && nef; ++v) {
            nef = a[v] >= 0;
        }
        if (nef) {
            visit(r, k);
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (k[i] < top[i]) {
                ++k[i];
                for (std::size_t v = 0; v < n; ++v) {
                    a[v] -= mm[v * n + i];
                }
                break;
            }
            for (std::size_t v = 0; v < n; ++v) {
                a[v] += k[i] * mm[v * n + i];
            }
            k[i] = 0;
        }
        if (i == n) {
            return;
        }
    }
}

Cycle shifted(const Cycle& r, const std::vector<std::int64_t>& k)
{
    Cycle c = r;
    for (std::size_t v = 0; v < r.size(); ++v) {
        c.set(v, r[v] + k[v]);
    }
    return c;
}

} // namespace

std::vector<Cycle> class_cone_in_box(const Lattice& lat, const HElem& h, const Cycle& upper,
                                     std::uint64_t budget)
{
    std::vector<Cycle> out;
    walk_box(lat, h, upper, budget, [&](const Cycle& r, const auto& k) { out.push_back(shifted(r, k)); });
    return out;
}

std::optional<Cycle> box_minimum(const Lattice& lat, const HElem& h, const Cycle& upper, std::uint64_t budget)
{
    std::optional<std::vector<std::int64_t>> best;
    Cycle base;
    walk_box(lat, h, upper, budget, [&](const Cycle& r, const auto& k) {
        if (!best) {
            best = k;
            base = r;
            return;
        }
        for (std::size_t v = 0; v < k.size(); ++v) {
            (*best)[v] = std::min((*best)[v], k[v]);
        }
    });
    if (!best) {
        return std::nullopt;
    }
    return shifted(base, *best);
}

} // namespace cdelta
