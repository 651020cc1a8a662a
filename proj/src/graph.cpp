#include "cdelta/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include <json.hpp>

#include "cdelta/cyclic.hpp"
#include "cdelta/error.hpp"

namespace cdelta {

DualGraph::DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices))
{
    const auto n = static_cast<int>(vertices_.size());
    if (n == 0) {
        throw ValidationError("graph has no vertices");
    }
    for (int v = 0; v < n; ++v) {
        if (vertices_[v].genus != 0) {
            throw ValidationError("vertex " + std::to_string(v) + " has genus " + std::to_string(vertices_[v].genus)
                                  + "; only rational curves are supported");
        }
        if (vertices_[v].euler > -1) {
            throw ValidationError("vertex " + std::to_string(v) + " has self-intersection "
                                  + std::to_string(vertices_[v].euler) + " > -1");
        }
    }
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        }
        if (u == v) {
            throw ValidationError("loop at vertex " + std::to_string(u));
        }
        Edge e{std::min(u, v), std::max(u, v)};
        if (!seen.insert(e).second) {
            throw ValidationError("repeated edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
        }
    }
    edges_.assign(seen.begin(), seen.end());
    if (static_cast<int>(edges_.size()) != n - 1) {
        throw ValidationError("graph is not a tree: " + std::to_string(n) + " vertices, "
                              + std::to_string(edges_.size()) + " edges");
    }
    adjacency_.assign(n, {});
    for (auto [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }
    std::vector<bool> reached(n, false);
    std::vector<int> stack{0};
    reached[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[v]) {
            if (!reached[w]) {
                reached[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != n) {
        throw ValidationError("graph is not connected");
    }
    if (!negative_definite(intersection_matrix(*this))) {
        throw ValidationError("intersection matrix is not negative definite");
    }
}

std::vector<int> DualGraph::nodes() const
{
    std::vector<int> out;
    for (std::size_t v = 0; v < size(); ++v) {
        if (valency(v) >= 3) {
            out.push_back(static_cast<int>(v));
        }
    }
    return out;
}

IntMatrix intersection_matrix(const DualGraph& g)
{
    IntMatrix m(g.size(), g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        m(v, v) = g.vertex(v).euler;
    }
    for (auto [u, v] : g.edges()) {
        m(u, v) = 1;
        m(v, u) = 1;
    }
    return m;
}

bool negative_definite(const IntMatrix& m)
{
    const auto minors = leading_principal_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        // the (k+1)-th minor of a negative definite matrix has sign (-1)^(k+1)
        const int expected = (k % 2 == 0) ? -1 : 1;
        if (sgn(minors[k]) != expected) {
            return false;
        }
    }
    return true;
}

RatMatrix dual_inverse(const IntMatrix& m)
{
    RatMatrix inv = inverse(to_rational(m));
    for (std::size_t i = 0; i < inv.rows(); ++i) {
        for (std::size_t j = 0; j < inv.cols(); ++j) {
            inv(i, j) = -inv(i, j);
        }
    }
    return inv;
}

DualGraph string_graph(const std::vector<Int>& ks)
{
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        vs.push_back(Vertex{-static_cast<long>(to_i64(ks[i])), 0});
        if (i > 0) {
            es.emplace_back(static_cast<int>(i - 1), static_cast<int>(i));
        }
    }
    return DualGraph(std::move(vs), std::move(es));
}

DualGraph seifert_graph(const Int& k, const std::vector<std::pair<Int, Int>>& legs)
{
    if (k < 1) {
        throw ValidationError("central self-intersection must be <= -1");
    }
    std::vector<Vertex> vs{Vertex{-static_cast<long>(to_i64(k)), 0}};
    std::vector<Edge> es;
    for (const auto& [d, q] : legs) {
        HJData hj;
        try {
            hj = hj_expand(d, q);
        } catch (const BadFraction& e) {
            throw ValidationError(std::string("bad Seifert pair: ") + e.what());
        }
        int prev = 0;
        for (const auto& kk : hj.ks()) {
            const int id = static_cast<int>(vs.size());
            vs.push_back(Vertex{-static_cast<long>(to_i64(kk)), 0});
            es.emplace_back(prev, id);
            prev = id;
        }
    }
    return DualGraph(std::move(vs), std::move(es));
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::string strip_spaces(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(c);
        }
    }
    return out;
}

Int parse_int(const std::string& s, std::string_view context)
{
    const Rat r = parse_rational(s);
    if (!is_integral(r) || s.find('/') != std::string::npos) {
        throw ParseError("expected an integer in '" + std::string(context) + "'");
    }
    return r.get_num();
}

DualGraph parse_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
        throw ParseError("JSON graph needs a \"vertices\" array");
    }
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    try {
        for (const auto& v : j["vertices"]) {
            if (!v.is_object() || !v.contains("e")) {
                throw ParseError("every vertex needs an integer \"e\"");
            }
            Vertex vx;
            vx.euler = v.at("e").get<long>();
            vx.genus = v.value("g", 0L);
            vs.push_back(vx);
        }
        if (j.contains("edges")) {
            for (const auto& e : j["edges"]) {
                if (!e.is_array() || e.size() != 2) {
                    throw ParseError("every edge must be a pair of vertex indices");
                }
                es.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON graph: ") + e.what());
    }
    return DualGraph(std::move(vs), std::move(es));
}

// "-k;(d1,q1),(d2,q2)x3,..."
DualGraph parse_seifert(const std::string& body)
{
    const auto semi = body.find(';');
    if (semi == std::string::npos) {
        throw ParseError("Seifert shorthand needs 'sf:-k;(d,q),...'");
    }
    const Int center = parse_int(body.substr(0, semi), body);
    if (center > -1) {
        throw ValidationError("central self-intersection " + center.get_str() + " must be <= -1");
    }
    std::vector<std::pair<Int, Int>> legs;
    std::size_t pos = semi + 1;
    while (pos < body.size()) {
        if (body[pos] != '(') {
            throw ParseError("expected '(' at position " + std::to_string(pos) + " of '" + body + "'");
        }
        const auto close = body.find(')', pos);
        if (close == std::string::npos) {
            throw ParseError("unterminated leg in '" + body + "'");
        }
        const std::string inner = body.substr(pos + 1, close - pos - 1);
        const auto comma = inner.find(',');
        if (comma == std::string::npos) {
            throw ParseError("leg '(" + inner + ")' needs the form (d,q)");
        }
        const Int d = parse_int(inner.substr(0, comma), body);
        const Int q = parse_int(inner.substr(comma + 1), body);
        pos = close + 1;
        long repeat = 1;
        if (pos < body.size() && (body[pos] == 'x' || body[pos] == '*')) {
            std::size_t end = pos + 1;
            while (end < body.size() && std::isdigit(static_cast<unsigned char>(body[end]))) {
                ++end;
            }
            if (end == pos + 1) {
                throw ParseError("repetition count missing in '" + body + "'");
            }
            repeat = std::stol(body.substr(pos + 1, end - pos - 1));
            pos = end;
        }
        for (long r = 0; r < repeat; ++r) {
            legs.emplace_back(d, q);
        }
        if (pos < body.size()) {
            if (body[pos] != ',') {
                throw ParseError("expected ',' between legs in '" + body + "'");
            }
            ++pos;
        }
    }
    return seifert_graph(-center, legs);
}

DualGraph parse_cyclic(const std::string& body)
{
    const auto slash = body.find('/');
    if (slash == std::string::npos) {
        throw ParseError("cyclic shorthand needs 'cqs:d/q'");
    }
    const Int d = parse_int(body.substr(0, slash), body);
    const Int q = parse_int(body.substr(slash + 1), body);
    HJData hj;
    try {
        hj = hj_expand(d, q);
    } catch (const BadFraction& e) {
        throw ValidationError(e.what());
    }
    return string_graph(hj.ks());
}

DualGraph parse_ade(const std::string& body)
{
    using Legs = std::vector<std::pair<Int, Int>>;
    if (body == "E6") {
        return seifert_graph(2, Legs{{2, 1}, {3, 2}, {3, 2}});
    }
    if (body == "E7") {
        return seifert_graph(2, Legs{{2, 1}, {3, 2}, {4, 3}});
    }
    if (body == "E8") {
        return seifert_graph(2, Legs{{2, 1}, {3, 2}, {5, 4}});
    }
    if (body.size() >= 2 && (body[0] == 'A' || body[0] == 'D')) {
        std::string digits = body.substr(1);
        if (!digits.empty() && digits[0] == 'n') {
            digits = digits.substr(1);
            if (digits.empty() || digits[0] != ':') {
                throw ParseError("expected 'ade:" + std::string(1, body[0]) + "n:<n>'");
            }
            digits = digits.substr(1);
        }
        const Int n = parse_int(digits, body);
        if (body[0] == 'A') {
            if (n < 1) {
                throw ValidationError("A_n needs n >= 1");
            }
            return string_graph(std::vector<Int>(to_i64(n), Int(2)));
        }
        if (n < 4) {
            throw ValidationError("D_n needs n >= 4");
        }
        return seifert_graph(2, Legs{{2, 1}, {2, 1}, {n - 2, n - 3}});
    }
    throw ParseError("unknown ADE name '" + body + "'");
}

} // namespace

DualGraph parse_graph(std::string_view text)
{
    const std::string t = trim(text);
    if (t.empty()) {
        throw ParseError("empty graph description");
    }
    if (t[0] == '{') {
        return parse_json(t);
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
        throw ParseError("unrecognized graph description '" + t + "'");
    }
    const std::string kind = t.substr(0, colon);
    const std::string body = strip_spaces(t.substr(colon + 1));
    if (kind == "sf") {
        return parse_seifert(body);
    }
    if (kind == "cqs") {
        return parse_cyclic(body);
    }
    if (kind == "ade") {
        return parse_ade(body);
    }
    throw ParseError("unknown graph format '" + kind + "'");
}

std::string render_json(const DualGraph& g)
{
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices()) {
        j["vertices"].push_back({{"e", v.euler}, {"g", v.genus}});
    }
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) {
        j["edges"].push_back({u, v});
    }
    return j.dump();
}

std::vector<Subgraph> components_minus(const DualGraph& g, const std::vector<int>& removed)
{
    const auto n = static_cast<int>(g.size());
    std::vector<bool> gone(n, false);
    for (int v : removed) {
        if (v < 0 || v >= n) {
            throw OutOfRange("vertex " + std::to_string(v) + " not in graph");
        }
        gone[v] = true;
    }
    std::vector<Subgraph> out;
    std::vector<bool> seen(n, false);
    for (int start = 0; start < n; ++start) {
        if (gone[start] || seen[start]) {
            continue;
        }
        std::vector<int> members;
        std::vector<int> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w : g.neighbors(v)) {
                if (!gone[w] && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        std::vector<int> local(n, -1);
        std::vector<Vertex> vs;
        for (std::size_t i = 0; i < members.size(); ++i) {
            local[members[i]] = static_cast<int>(i);
            vs.push_back(g.vertex(members[i]));
        }
        std::vector<Edge> es;
        for (auto [u, v] : g.edges()) {
            if (local[u] >= 0 && local[v] >= 0) {
                es.emplace_back(local[u], local[v]);
            }
        }
        out.push_back(Subgraph{DualGraph(std::move(vs), std::move(es)), std::move(members)});
    }
    return out;
}

} // namespace cdelta

namespace cdelta {

std::vector<int> string_order(const DualGraph& g)
{
    if (!g.is_string()) {
        throw PreconditionFailed("graph is not a string");
    }
    if (g.size() == 1) {
        return {0};
    }
    int start = -1;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.valency(v) == 1) {
            start = static_cast<int>(v);
            break;
        }
    }
    std::vector<int> path{start};
    int prev = -1;
    int cur = start;
    while (path.size() < g.size()) {
        for (int w : g.neighbors(cur)) {
            if (w != prev) {
                prev = cur;
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

} // namespace cdelta
