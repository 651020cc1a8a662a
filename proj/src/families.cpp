#include "cdelta/families.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "cdelta/error.hpp"
#include "cdelta/lattice.hpp"
#include "cdelta/laufer.hpp"

namespace cdelta {

std::string SeifertSpec::text() const
{
    std::string s = "sf:-" + k.get_str() + ";";
    for (std::size_t i = 0; i < legs.size(); ++i) {
        s += (i > 0 ? ",(" : "(") + legs[i].first.get_str() + "," + legs[i].second.get_str() + ")";
    }
    return s;
}

std::vector<SeifertSpec> quotient_seifert_family(long dmax, long kmin, long kmax)
{
    std::vector<std::pair<Int, Int>> pairs;
    for (long d = 2; d <= dmax; ++d) {
        for (long q = 1; q < d; ++q) {
            if (std::gcd(d, q) == 1) {
                pairs.emplace_back(d, q);
            }
        }
    }
    std::vector<SeifertSpec> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i; j < pairs.size(); ++j) {
            for (std::size_t l = j; l < pairs.size(); ++l) {
                const auto& a = pairs[i];
                const auto& b = pairs[j];
                const auto& c = pairs[l];
                const Rat inv = make_rat(1, a.first) + make_rat(1, b.first) + make_rat(1, c.first);
                if (inv <= 1) {
                    continue;
                }
                const Rat qs = make_rat(a.second, a.first) + make_rat(b.second, b.first)
                               + make_rat(c.second, c.first);
                for (long k = kmin; k <= kmax; ++k) {
                    if (qs - k < 0) {
                        out.push_back({Int(k), {a, b, c}});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<Int, Int>> cyclic_family(long dmax)
{
    std::vector<std::pair<Int, Int>> out;
    for (long d = 2; d <= dmax; ++d) {
        for (long q = 1; q < d; ++q) {
            if (std::gcd(d, q) == 1) {
                out.emplace_back(d, q);
            }
        }
    }
    return out;
}

DualGraph nonquotient_star(long k)
{
    if (k < 3) {
        throw OutOfRange("the family needs at least three legs");
    }
    return seifert_graph(Int(k), std::vector<std::pair<Int, Int>>(k, {Int(2), Int(1)}));
}

namespace {

enum class Shape { string, star, multi };

// Random tree on n vertices with the requested node count.
std::vector<Edge> random_tree(std::mt19937_64& rng, std::size_t n, Shape shape)
{
    for (;;) {
        std::vector<Edge> edges;
        for (std::size_t v = 1; v < n; ++v) {
            std::uniform_int_distribution<std::size_t> pick(0, v - 1);
            const std::size_t u = shape == Shape::string ? v - 1 : pick(rng);
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        std::vector<int> val(n, 0);
        for (const auto& [a, b] : edges) {
            ++val[a];
            ++val[b];
        }
        const auto nodes = std::count_if(val.begin(), val.end(), [](int x) { return x >= 3; });
        if ((shape == Shape::string && nodes == 0) || (shape == Shape::star && nodes == 1)
            || (shape == Shape::multi && nodes >= 2)) {
            return edges;
        }
    }
}

} // namespace

std::vector<DualGraph> random_rational_graphs(const RandomGraphOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::vector<DualGraph> out;
    std::set<std::string> seen;
    const std::size_t want_string = opt.count / 5;
    const std::size_t want_star = opt.count / 2;
    std::size_t strings = 0;
    std::size_t stars = 0;
    std::size_t multis = 0;
    std::uniform_int_distribution<int> weight(2, 6);
    std::uniform_int_distribution<int> coin(0, 99);
    std::uint64_t attempts = 0;
    while (out.size() < opt.count) {
        if (++attempts > 10'000'000) {
            throw InternalInconsistency("random graph sampler made no progress");
        }
        Shape shape;
        std::size_t min_n;
        if (strings < want_string) {
            shape = Shape::string;
            min_n = 1;
        } else if (stars < want_star) {
            shape = Shape::star;
            min_n = 4;
        } else {
            shape = Shape::multi;
            min_n = 6;
        }
        if (opt.max_vertices < min_n) {
            throw PreconditionFailed("too few vertices allowed for the requested shapes");
        }
        std::uniform_int_distribution<std::size_t> size(min_n, opt.max_vertices);
        const std::size_t n = size(rng);
        const auto edges = random_tree(rng, n, shape);
        std::vector<Vertex> vs(n);
        for (auto& v : vs) {
            // Mostly -2 curves keep the determinant small.
            v.euler = coin(rng) < 55 ? -2 : -weight(rng);
        }
        std::optional<DualGraph> g;
        try {
            g.emplace(vs, edges);
        } catch (const ValidationError&) {
            continue;
        }
        if (abs(determinant(intersection_matrix(*g))) > opt.max_det) {
            continue;
        }
        const Lattice lat(*g);
        if (!is_rational(lat)) {
            continue;
        }
        if (!seen.insert(render_json(*g)).second) {
            continue;
        }
        out.push_back(std::move(*g));
        (shape == Shape::string ? strings : shape == Shape::star ? stars : multis)++;
    }
    return out;
}

} // namespace cdelta
