#pragma once

#include <cmath>
#include <limits>

#include "metgraph/cochain.hpp"
#include "metgraph/graph.hpp"
#include "metgraph/linalg.hpp"

namespace metgraph {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// The unique piecewise linear j-function with Laplacian delta_y - delta_z
/// and j(z) = 0: the potential at a vertex when unit current enters at y and
/// exits at the grounded vertex z. Realized by the reduced weighted
/// Laplacian solve (conductance 1/length).
inline VertexPotential j_function(const MetricGraph& g, VertexId y, VertexId z) {
    VertexPotential f(g);
    if (y == z) return f;
    std::vector<double> b(g.vertex_count(), 0.0);
    b[y] = 1.0;
    b[z] = -1.0;
    GroundedLaplacian solver(g, z);
    f.value = solver.solve(b);
    return f;
}

/// Effective resistance of Def-style Zhang form: the resistance between the
/// endpoints of e measured in the graph with e removed. +infinity iff e is
/// a bridge. Loops are excluded; subdivide first (a loop's resistance is the
/// loop-minus-point path length).
inline double effective_resistance(const MetricGraph& g, EdgeId e) {
    if (g.is_loop(e))
        throw ValidationError("effective_resistance: loops must be subdivided first");
    if (is_bridge(g, e).bridge) return kInf;
    MetricGraph cut = remove_edge(g, e);
    const VertexId z = g.edge(e).u, y = g.edge(e).v;
    return j_function(cut, y, z)[y];
}

namespace detail {

/// Loopless internal model: every loop subdivided at its midpoint.
/// half_of[k] = {first, second} for an original loop k, else {-1, -1}.
struct LooplessModel {
    MetricGraph graph;
    std::vector<std::pair<EdgeId, EdgeId>> halves;
};

inline LooplessModel loopless_model(const MetricGraph& g) {
    std::vector<EdgeSpec> edges = g.edges();
    std::vector<std::pair<EdgeId, EdgeId>> halves(g.edge_count(), {-1, -1});
    VertexId next_vertex = g.vertex_count();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (edges[e].u != edges[e].v) continue;
        const VertexId mid = next_vertex++;
        const double half = edges[e].length / 2.0;
        const VertexId v = edges[e].v;
        edges[e] = {edges[e].u, mid, half};
        edges.push_back({mid, v, half});
        halves[e] = {e, static_cast<EdgeId>(edges.size() - 1)};
    }
    return {MetricGraph(std::move(edges)), std::move(halves)};
}

/// Zhang masses on a loopless model: mass(e) = 1 - R(u,v)/length(e) by the
/// parallel law (R(u,v) is the whole-graph resistance between the
/// endpoints), with bridges set to exactly zero.
inline std::vector<double> zhang_masses_loopless(const MetricGraph& g) {
    const auto bridges = bridge_edges(g);
    std::vector<double> mass(g.edge_count(), 0.0);
    bool any = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!bridges[e]) any = true;
    if (!any) return mass;  // a tree: zero measure
    GroundedLaplacian solver(g, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (bridges[e]) continue;
        const auto& s = g.edge(e);
        mass[e] = 1.0 - solver.resistance(s.u, s.v) / s.length;
    }
    return mass;
}

} // namespace detail

/// Zhang canonical measure: density 1/(R(e) + length(e)) per edge, i.e.
/// mass(e) = length(e)/(R(e)+length(e)). Bridges get exactly zero; loops are
/// subdivided internally and their halves' masses summed back. Total mass
/// equals the genus (Foster).
inline Measure zhang_measure(const MetricGraph& g) {
    detail::LooplessModel model = detail::loopless_model(g);
    std::vector<double> inner_mass = detail::zhang_masses_loopless(model.graph);
    Measure mu(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (model.halves[e].first < 0) {
            mu.mass[e] = inner_mass[e];
        } else {
            mu.mass[e] = inner_mass[model.halves[e].first] +
                         inner_mass[model.halves[e].second];
        }
    }
    return mu;
}

/// Zhang mass of a single edge via one sparse grounded solve. Same values as
/// zhang_measure, but scales to large nearly-tree graphs (wired truncation
/// balls) where a dense inverse would be wasteful.
inline double zhang_mass_of_edge(const MetricGraph& g, EdgeId e) {
    if (g.is_loop(e)) {
        Subdivision sub = subdivide(g, e, g.length(e) / 2.0);
        return zhang_mass_of_edge(sub.graph, sub.first_half) +
               zhang_mass_of_edge(sub.graph, sub.second_half);
    }
    if (is_bridge(g, e).bridge) return 0.0;
    const auto& s = g.edge(e);
    return 1.0 - pair_resistance_sparse(g, s.u, s.v) / s.length;
}

/// Orthogonal projection onto harmonic cochains under the length-weighted
/// inner product: pi(w) = w - df where Laplacian f = d* w. For w = de the
/// e-component of the projection is the Zhang mass of e.
inline Cochain harmonic_projection(const MetricGraph& g, const Cochain& w) {
    DiscreteMeasure b = dstar(w);
    GroundedLaplacian solver(g, 0);
    VertexPotential f(g);
    f.value = solver.solve(b.weight);
    Cochain df = coboundary(f);
    Cochain out(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.comp[e] = w.comp[e] - df.comp[e];
    return out;
}

/// Brute-force oracle: enumerate all weighted spanning trees (weight of a
/// tree is the product of 1/length over its edges) and set
/// mass(e) = 1 - Pr[e in weighted random spanning tree]. Loops never enter
/// a tree (mass 1), bridges enter every tree (mass 0). Independent of the
/// Laplacian route by construction.
inline Measure spanning_tree_measure(const MetricGraph& g, int max_edges = 16) {
    if (g.edge_count() > max_edges)
        throw ValidationError("spanning_tree_measure: edge count exceeds cap");
    const int n = g.vertex_count();
    std::vector<EdgeId> non_loops;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!g.is_loop(e)) non_loops.push_back(e);

    const int k = n - 1;  // edges in any spanning tree
    double total_weight = 0.0;
    std::vector<double> in_tree_weight(g.edge_count(), 0.0);

    std::vector<int> parent(n);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    std::vector<int> pick(k);
    // Iterate over k-subsets of non-loop edges in lexicographic order.
    auto process = [&]() {
        for (int i = 0; i < n; ++i) parent[i] = i;
        int comps = n;
        double w = 1.0;
        for (int i = 0; i < k; ++i) {
            const auto& s = g.edge(non_loops[pick[i]]);
            int a = find(s.u), b = find(s.v);
            if (a == b) return;  // cycle, not a tree
            parent[a] = b;
            --comps;
            w *= 1.0 / s.length;
        }
        if (comps != 1) return;
        total_weight += w;
        for (int i = 0; i < k; ++i) in_tree_weight[non_loops[pick[i]]] += w;
    };

    if (k == 0) {
        total_weight = 1.0;  // single vertex: the empty tree
    } else if (k <= static_cast<int>(non_loops.size())) {
        for (int i = 0; i < k; ++i) pick[i] = i;
        const int m = static_cast<int>(non_loops.size());
        while (true) {
            process();
            int i = k - 1;
            while (i >= 0 && pick[i] == m - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    if (total_weight <= 0.0)
        throw ValidationError("spanning_tree_measure: graph has no spanning tree");

    Measure mu(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        mu.mass[e] = 1.0 - in_tree_weight[e] / total_weight;
    return mu;
}

} // namespace metgraph
