#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metgraph/errors.hpp"

namespace metgraph {

using VertexId = int;
using EdgeId = int;

struct EdgeSpec {
    VertexId u;
    VertexId v;
    double length;
};

/// Directed view of an edge: edge id plus a direction flag.
/// dir = 0 runs the edge as listed (u -> v), dir = 1 runs it v -> u.
/// For a loop the two orientations are distinct objects with equal endpoints.
class OrientedEdge {
public:
    constexpr OrientedEdge() = default;
    constexpr OrientedEdge(EdgeId e, int dir) : code_(2 * e + dir) {}

    static constexpr OrientedEdge from_code(int code) {
        OrientedEdge oe;
        oe.code_ = code;
        return oe;
    }

    EdgeId edge() const { return code_ >> 1; }
    bool is_reversed() const { return (code_ & 1) != 0; }
    OrientedEdge reverse() const { return from_code(code_ ^ 1); }
    int code() const { return code_; }
    bool valid() const { return code_ >= 0; }

    friend bool operator==(OrientedEdge a, OrientedEdge b) = default;
    friend auto operator<=>(OrientedEdge a, OrientedEdge b) = default;

private:
    int code_ = -1;
};

/// Finite weighted multigraph model of a compact metric graph.
/// Loops and parallel edges are allowed; edge lengths are positive reals.
/// Vertex ids are dense (0..n-1), edge ids follow input order, and the
/// object is immutable after construction, so iteration order is stable.
class MetricGraph {
public:
    explicit MetricGraph(std::vector<EdgeSpec> edges) : edges_(std::move(edges)) {
        if (edges_.empty())
            throw ValidationError("graph has no edges");
        VertexId max_id = 0;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            if (e.u < 0 || e.v < 0)
                throw ValidationError("negative vertex id on edge " + std::to_string(i));
            if (!(e.length > 0.0) || !std::isfinite(e.length))
                throw ValidationError("edge " + std::to_string(i) +
                                      " has nonpositive or nonfinite length");
            max_id = std::max({max_id, e.u, e.v});
        }
        n_vertices_ = max_id + 1;
        out_.assign(n_vertices_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const EdgeId id = static_cast<EdgeId>(i);
            out_[edges_[i].u].push_back(OrientedEdge(id, 0));
            out_[edges_[i].v].push_back(OrientedEdge(id, 1));
        }
        if (!connected_from(0))
            throw ValidationError("graph is not connected");
    }

    int vertex_count() const { return n_vertices_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int oriented_edge_count() const { return 2 * edge_count(); }

    const EdgeSpec& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<EdgeSpec>& edges() const { return edges_; }
    double length(EdgeId e) const { return edges_[e].length; }
    bool is_loop(EdgeId e) const { return edges_[e].u == edges_[e].v; }

    VertexId tail(OrientedEdge oe) const {
        const auto& e = edges_[oe.edge()];
        return oe.is_reversed() ? e.v : e.u;
    }
    VertexId head(OrientedEdge oe) const {
        const auto& e = edges_[oe.edge()];
        return oe.is_reversed() ? e.u : e.v;
    }

    /// Oriented edges with tail at v. Both orientations of a loop at v appear.
    const std::vector<OrientedEdge>& out_edges(VertexId v) const { return out_[v]; }

    /// Valence of v; a loop counts twice.
    int valence(VertexId v) const { return static_cast<int>(out_[v].size()); }

    /// First Betti number |E| - |V| + 1.
    int genus() const { return edge_count() - vertex_count() + 1; }

    double total_length() const {
        double s = 0;
        for (const auto& e : edges_) s += e.length;
        return s;
    }

private:
    bool connected_from(VertexId s) const {
        std::vector<char> seen(n_vertices_, 0);
        std::vector<VertexId> stack{s};
        seen[s] = 1;
        int count = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (OrientedEdge oe : out_[v]) {
                VertexId w = head(oe);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n_vertices_;
    }

    std::vector<EdgeSpec> edges_;
    std::vector<std::vector<OrientedEdge>> out_;
    int n_vertices_ = 0;
};

/// Piecewise Lebesgue measure stored as per-edge total mass over a
/// compatible model; the density on e is mass(e)/length(e).
struct Measure {
    const MetricGraph* graph = nullptr;
    std::vector<double> mass;

    Measure() = default;
    explicit Measure(const MetricGraph& g) : graph(&g), mass(g.edge_count(), 0.0) {}
    Measure(const MetricGraph& g, std::vector<double> m) : graph(&g), mass(std::move(m)) {}

    double total() const {
        double s = 0;
        for (double x : mass) s += x;
        return s;
    }
    double density(EdgeId e) const { return mass[e] / graph->length(e); }
};

struct Subdivision {
    MetricGraph graph;
    VertexId midpoint;   // the new vertex
    EdgeId first_half;   // tail(e) -> midpoint, length t (keeps the old edge id)
    EdgeId second_half;  // midpoint -> head(e), length l - t (appended id)
};

/// Split edge e at parameter t in (0, length(e)). All other edge ids are
/// unchanged, so cochains and measures transport componentwise.
inline Subdivision subdivide(const MetricGraph& g, EdgeId e, double t) {
    const double len = g.length(e);
    if (!(t > 0.0 && t < len))
        throw ValidationError("subdivision point must lie strictly inside the edge");
    std::vector<EdgeSpec> edges = g.edges();
    const VertexId mid = g.vertex_count();
    const VertexId v = edges[e].v;
    edges[e] = {edges[e].u, mid, t};
    const EdgeId second = static_cast<EdgeId>(edges.size());
    edges.push_back({mid, v, len - t});
    return Subdivision{MetricGraph(std::move(edges)), mid, e, second};
}

/// A closed subgraph given by a vertex set and an edge set whose endpoints
/// all lie in the vertex set. The edge set may be empty (a bare vertex set).
struct Subgraph {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

constexpr EdgeId kRemovedEdge = -1;

struct Contraction {
    MetricGraph graph;
    std::vector<VertexId> vertex_map;  // old vertex -> new vertex
    std::vector<EdgeId> edge_map;      // old edge -> new edge, kRemovedEdge if contracted
    VertexId merged_vertex;            // image of the whole subgraph
};

/// Collapse ALL of the subgraph (even if disconnected) to one point.
/// Remaining edges keep their lengths; loops created by the contraction stay.
inline Contraction contract(const MetricGraph& g, const Subgraph& sub) {
    std::vector<char> in_v(g.vertex_count(), 0);
    for (VertexId v : sub.vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw ValidationError("contract: vertex out of range");
        in_v[v] = 1;
    }
    std::vector<char> in_e(g.edge_count(), 0);
    for (EdgeId e : sub.edges) {
        if (e < 0 || e >= g.edge_count())
            throw ValidationError("contract: edge out of range");
        if (!in_v[g.edge(e).u] || !in_v[g.edge(e).v])
            throw ValidationError("contract: subgraph is not closed");
        in_e[e] = 1;
    }

    // New ids: the merged point takes the slot of the smallest old member;
    // other vertices keep their relative order.
    std::vector<VertexId> vmap(g.vertex_count(), -1);
    VertexId merged = -1;
    VertexId next = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (in_v[v]) {
            if (merged < 0) merged = next++;
            vmap[v] = merged;
        } else {
            vmap[v] = next++;
        }
    }

    std::vector<EdgeSpec> edges;
    std::vector<EdgeId> emap(g.edge_count(), kRemovedEdge);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in_e[e]) continue;
        emap[e] = static_cast<EdgeId>(edges.size());
        edges.push_back({vmap[g.edge(e).u], vmap[g.edge(e).v], g.length(e)});
    }
    if (edges.empty())
        throw ValidationError("contract: no edges remain");
    return Contraction{MetricGraph(std::move(edges)), std::move(vmap), std::move(emap),
                       merged < 0 ? 0 : merged};
}

struct BridgeInfo {
    bool bridge = false;
    std::vector<VertexId> tail_side;  // component of tail(e) in G \ e
    std::vector<VertexId> head_side;  // component of head(e) in G \ e
};

/// True iff G minus (the interior of) e is disconnected. Loops are never
/// bridges. When true, the two sides are returned as sorted vertex lists.
inline BridgeInfo is_bridge(const MetricGraph& g, EdgeId e) {
    BridgeInfo info;
    if (g.is_loop(e)) return info;
    const VertexId a = g.edge(e).u, b = g.edge(e).v;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (OrientedEdge oe : g.out_edges(v)) {
            if (oe.edge() == e) continue;
            VertexId w = g.head(oe);
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    if (seen[b]) return info;
    info.bridge = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        (seen[v] ? info.tail_side : info.head_side).push_back(v);
    return info;
}

/// All bridges at once (iterative lowlink DFS over the multigraph).
inline std::vector<char> bridge_edges(const MetricGraph& g) {
    const int n = g.vertex_count();
    std::vector<char> out(g.edge_count(), 0);
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;

    struct Frame {
        VertexId v;
        OrientedEdge via;  // edge used to enter v (invalid at the root)
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    stack.push_back({0, OrientedEdge(), 0});
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& outs = g.out_edges(f.v);
        if (f.next < outs.size()) {
            OrientedEdge oe = outs[f.next++];
            if (f.via.valid() && oe.edge() == f.via.edge()) continue;  // no immediate back-edge
            if (g.is_loop(oe.edge())) continue;
            VertexId w = g.head(oe);
            if (disc[w] < 0) {
                disc[w] = low[w] = timer++;
                stack.push_back({w, oe, 0});
            } else {
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        } else {
            Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                Frame& parent = stack.back();
                low[parent.v] = std::min(low[parent.v], low[done.v]);
                if (low[done.v] > disc[parent.v]) out[done.via.edge()] = 1;
            }
        }
    }
    return out;
}

/// Deterministic spanning tree (BFS from vertex 0, smallest edge id first).
/// Non-tree edge count equals the genus.
inline std::vector<char> spanning_tree_edges(const MetricGraph& g) {
    std::vector<char> in_tree(g.edge_count(), 0);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> queue{0};
    seen[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        VertexId v = queue[qi];
        for (OrientedEdge oe : g.out_edges(v)) {
            VertexId w = g.head(oe);
            if (!seen[w]) {
                seen[w] = 1;
                in_tree[oe.edge()] = 1;
                queue.push_back(w);
            }
        }
    }
    return in_tree;
}

/// Remove one edge; vertex ids are preserved. Requires e not to be a bridge
/// (the result must stay connected).
inline MetricGraph remove_edge(const MetricGraph& g, EdgeId e) {
    std::vector<EdgeSpec> edges;
    edges.reserve(g.edge_count() - 1);
    for (EdgeId i = 0; i < g.edge_count(); ++i)
        if (i != e) edges.push_back(g.edge(i));
    return MetricGraph(std::move(edges));
}

} // namespace metgraph
