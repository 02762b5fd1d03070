#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "metgraph/graph.hpp"
#include "metgraph/group.hpp"
#include "metgraph/harmonic.hpp"

namespace metgraph {

/// Base graph + finite group + voltage per edge (on the listed orientation;
/// the reverse orientation carries the inverse). The derived graph is the
/// finite Galois cover with deck group the given group.
struct VoltageCover {
    MetricGraph base;
    FiniteGroup group;
    std::vector<int> voltage;  // element index per edge id

    VoltageCover(MetricGraph b, FiniteGroup grp, std::vector<int> volt)
        : base(std::move(b)), group(std::move(grp)), voltage(std::move(volt)) {
        if (static_cast<int>(voltage.size()) != base.edge_count())
            throw ValidationError("voltage vector size must match edge count");
        for (int v : voltage)
            if (v < 0 || v >= group.order())
                throw ValidationError("voltage element index out of range");
    }

    int voltage_of(OrientedEdge oe) const {
        const int v = voltage[oe.edge()];
        return oe.is_reversed() ? group.inv(v) : v;
    }
};

/// Materialized cover: vertex (v,h) has id v*d + h, the lift of edge e at h
/// has id e*d + h and joins (u,h) to (v, h*sigma(e)). Deck element g acts by
/// left multiplication on the fiber coordinate, a free action commuting
/// with the construction.
class CoveringMap {
public:
    CoveringMap(const VoltageCover& vc)
        : base_(vc.base), group_(vc.group) {
        const int d = group_.order();
        const int nb = base_.vertex_count();
        std::vector<EdgeSpec> lifted;
        lifted.reserve(static_cast<std::size_t>(base_.edge_count()) * d);
        for (EdgeId e = 0; e < base_.edge_count(); ++e) {
            const auto& s = base_.edge(e);
            const int sigma = vc.voltage[e];
            for (int h = 0; h < d; ++h)
                lifted.push_back({s.u * d + h, s.v * d + group_.mul(h, sigma), s.length});
        }
        if (!edges_connected(lifted, nb * d))
            throw ValidationError("voltages do not generate the deck group "
                                  "(derived graph is disconnected)");
        cover_.emplace(std::move(lifted));
    }

    const MetricGraph& cover() const { return *cover_; }
    const MetricGraph& base() const { return base_; }
    const FiniteGroup& group() const { return group_; }
    int degree() const { return group_.order(); }

    VertexId project_vertex(VertexId cv) const { return cv / degree(); }
    EdgeId project_edge(EdgeId ce) const { return ce / degree(); }
    int fiber_index_vertex(VertexId cv) const { return cv % degree(); }
    int fiber_index_edge(EdgeId ce) const { return ce % degree(); }
    VertexId lift_vertex(VertexId v, int h) const { return v * degree() + h; }
    EdgeId lift_edge(EdgeId e, int h) const { return e * degree() + h; }

    VertexId deck_vertex(int g, VertexId cv) const {
        return lift_vertex(project_vertex(cv), group_.mul(g, fiber_index_vertex(cv)));
    }
    EdgeId deck_edge(int g, EdgeId ce) const {
        return lift_edge(project_edge(ce), group_.mul(g, fiber_index_edge(ce)));
    }

private:
    static bool edges_connected(const std::vector<EdgeSpec>& edges, int n) {
        if (edges.empty()) return false;
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        int comps = n;
        for (const auto& e : edges) {
            int a = find(e.u), b = find(e.v);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        return comps == 1;
    }

    MetricGraph base_;
    FiniteGroup group_;
    std::optional<MetricGraph> cover_;
};

/// Pushdown of a deck-invariant measure: the base edge gets the mass of ONE
/// lift (not the fiber sum). Deck invariance is checked to 1e-9.
inline Measure pushdown(const Measure& m, const CoveringMap& cm) {
    const int d = cm.degree();
    if (m.graph != &cm.cover())
        throw ValidationError("pushdown: measure is not defined on this cover");
    Measure out(cm.base());
    for (EdgeId e = 0; e < cm.base().edge_count(); ++e) {
        const double ref = m.mass[cm.lift_edge(e, cm.group().identity())];
        for (int h = 0; h < d; ++h)
            if (std::abs(m.mass[cm.lift_edge(e, h)] - ref) > 1e-9)
                throw ValidationError("pushdown: measure is not deck-invariant");
        out.mass[e] = ref;
    }
    return out;
}

/// Build the cover, take its Zhang measure, push it down. The total must be
/// g(base) - 1 + 1/d; a violation beyond 1e-9 is a numerical failure.
/// The returned measure lives on vc.base.
inline Measure cover_canonical_pushdown(const VoltageCover& vc) {
    CoveringMap cm(vc);
    Measure mu_cover = zhang_measure(cm.cover());
    Measure mu = pushdown(mu_cover, cm);
    Measure out(vc.base);
    out.mass = mu.mass;
    const double expected = vc.base.genus() - 1.0 + 1.0 / cm.degree();
    if (std::abs(out.total() - expected) > 1e-9)
        throw InvariantError("cover pushdown total deviates from g-1+1/d");
    return out;
}

/// Mod-n homology cover: group (Z/n)^genus, tree edges carry the identity,
/// the i-th non-tree edge (by edge id) maps to the i-th standard generator.
inline VoltageCover homology_tower(const MetricGraph& g, int n) {
    if (n < 2) throw ValidationError("homology tower level must be >= 2");
    const int genus = g.genus();
    FiniteGroup grp = FiniteGroup::power(n, genus);
    std::vector<int> volt(g.edge_count(), grp.identity());
    const auto in_tree = spanning_tree_edges(g);
    long long gen = 1;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        volt[e] = static_cast<int>(gen);
        gen *= n;
    }
    return VoltageCover(g, std::move(grp), std::move(volt));
}

} // namespace metgraph
