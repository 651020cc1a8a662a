#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdelta/arith.hpp"
#include "cdelta/matrix.hpp"

namespace cdelta {

struct Vertex {
    long euler = -2; ///< self-intersection E_v^2
    long genus = 0;
};

using Edge = std::pair<int, int>;

/// Weighted dual resolution graph. Construction validates the tree shape,
/// the genus decorations and negative definiteness; a DualGraph value is
/// always valid. Vertex identity is the zero-based input index.
class DualGraph {
public:
    DualGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    std::size_t size() const noexcept { return vertices_.size(); }
    const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    /// Edges normalized to (min, max) and sorted.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(std::size_t v) const { return adjacency_.at(v); }
    int valency(std::size_t v) const { return static_cast<int>(adjacency_.at(v).size()); }

    /// Vertices of valency >= 3.
    std::vector<int> nodes() const;
    bool is_string() const { return nodes().empty(); }
    bool is_star_shaped() const { return nodes().size() == 1; }

    friend bool operator==(const DualGraph& a, const DualGraph& b)
    {
        if (a.size() != b.size() || a.edges_ != b.edges_) {
            return false;
        }
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (a.vertices_[v].euler != b.vertices_[v].euler || a.vertices_[v].genus != b.vertices_[v].genus) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/// Accepts JSON, "sf:-k;(d,q),...", "cqs:d/q" and "ade:<name>".
/// Throws ParseError for malformed text and ValidationError for
/// well-formed descriptions of invalid graphs.
DualGraph parse_graph(std::string_view text);

/// Canonical JSON form; parse_graph(render_json(g)) == g.
std::string render_json(const DualGraph& g);

/// String with self-intersections -ks[0], -ks[1], ...
DualGraph string_graph(const std::vector<Int>& ks);
/// Center (index 0) with euler -k, then each leg listed center-outward.
DualGraph seifert_graph(const Int& k, const std::vector<std::pair<Int, Int>>& legs);

/// Vertices of a string graph in path order, from the end with the smaller
/// index to the end with the larger one. Throws PreconditionFailed otherwise.
std::vector<int> string_order(const DualGraph& g);

IntMatrix intersection_matrix(const DualGraph& g);
/// Exact test via the signs of the leading principal minors.
bool negative_definite(const IntMatrix& m);
/// -M^{-1}; column v holds the E-coefficients of E*_v.
RatMatrix dual_inverse(const IntMatrix& m);

/// Connected full subgraph together with its vertex injection into the parent.
struct Subgraph {
    DualGraph graph;
    std::vector<int> to_parent;
};

/// Connected components of the full subgraph on V \ removed, ordered by
/// their smallest parent vertex.
std::vector<Subgraph> components_minus(const DualGraph& g, const std::vector<int>& removed);

} // namespace cdelta
