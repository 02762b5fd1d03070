#pragma once

#include <vector>

#include "metgraph/graph.hpp"

namespace metgraph {

/// Real 1-cochain with w(reverse(e)) = -w(e), stored as the component
/// w_e = w(e)/length(e) on each edge's listed orientation. The inner
/// product is the length-weighted one: <w, w'> = sum_e w_e w'_e length(e).
struct Cochain {
    const MetricGraph* graph = nullptr;
    std::vector<double> comp;  // w_e on the listed orientation of each edge

    Cochain() = default;
    explicit Cochain(const MetricGraph& g) : graph(&g), comp(g.edge_count(), 0.0) {}

    double component(OrientedEdge oe) const {
        return oe.is_reversed() ? -comp[oe.edge()] : comp[oe.edge()];
    }
    /// Evaluation w(e) = w_e * length(e).
    double value(OrientedEdge oe) const {
        return component(oe) * graph->length(oe.edge());
    }
    void add(OrientedEdge oe, double component_delta) {
        comp[oe.edge()] += oe.is_reversed() ? -component_delta : component_delta;
    }
};

inline double inner(const Cochain& a, const Cochain& b) {
    double s = 0;
    for (EdgeId e = 0; e < a.graph->edge_count(); ++e)
        s += a.comp[e] * b.comp[e] * a.graph->length(e);
    return s;
}

inline double norm2(const Cochain& a) { return inner(a, a); }

/// Piecewise linear function restricted to this model: one real per vertex.
struct VertexPotential {
    const MetricGraph* graph = nullptr;
    std::vector<double> value;

    VertexPotential() = default;
    explicit VertexPotential(const MetricGraph& g) : graph(&g), value(g.vertex_count(), 0.0) {}

    double operator[](VertexId v) const { return value[v]; }
    double& operator[](VertexId v) { return value[v]; }
};

/// Finitely supported signed measure on vertices (Dirac combination).
struct DiscreteMeasure {
    const MetricGraph* graph = nullptr;
    std::vector<double> weight;

    DiscreteMeasure() = default;
    explicit DiscreteMeasure(const MetricGraph& g) : graph(&g), weight(g.vertex_count(), 0.0) {}

    double operator[](VertexId v) const { return weight[v]; }
    double& operator[](VertexId v) { return weight[v]; }
    double total() const {
        double s = 0;
        for (double w : weight) s += w;
        return s;
    }
};

/// df: the slope (f(head) - f(tail)) / length on each edge. Loops get 0.
inline Cochain coboundary(const VertexPotential& f) {
    const MetricGraph& g = *f.graph;
    Cochain w(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& spec = g.edge(e);
        w.comp[e] = (f.value[spec.v] - f.value[spec.u]) / spec.length;
    }
    return w;
}

/// d*w: net inflow per vertex, d*w(v) = sum_{head=v} w_e - sum_{tail=v} w_e.
/// Loops cancel. Harmonic cochains are exactly the kernel.
inline DiscreteMeasure dstar(const Cochain& w) {
    const MetricGraph& g = *w.graph;
    DiscreteMeasure m(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& spec = g.edge(e);
        m.weight[spec.v] += w.comp[e];
        m.weight[spec.u] -= w.comp[e];
    }
    return m;
}

/// Transport a cochain through a subdivision: both halves inherit the
/// split edge's component, everything else is untouched. Preserves the
/// inner product.
inline Cochain transport(const Cochain& w, const Subdivision& sub) {
    Cochain out(sub.graph);
    for (EdgeId e = 0; e < static_cast<int>(w.comp.size()); ++e) out.comp[e] = w.comp[e];
    out.comp[sub.second_half] = w.comp[sub.first_half];
    return out;
}

/// Transport a measure through a subdivision: mass splits in proportion
/// to length (the density is unchanged).
inline Measure transport(const Measure& m, const Subdivision& sub) {
    Measure out(sub.graph);
    for (EdgeId e = 0; e < static_cast<int>(m.mass.size()); ++e) out.mass[e] = m.mass[e];
    const double t = sub.graph.length(sub.first_half);
    const double rest = sub.graph.length(sub.second_half);
    out.mass[sub.first_half] = m.mass[sub.first_half] * t / (t + rest);
    out.mass[sub.second_half] = m.mass[sub.first_half] * rest / (t + rest);
    return out;
}

/// 1-form associated to a walk: sum of de_i over the traversed oriented
/// edges (component +1 along each step's direction).
inline Cochain walk_form(const MetricGraph& g, const std::vector<OrientedEdge>& walk) {
    Cochain w(g);
    for (OrientedEdge oe : walk) w.add(oe, 1.0);
    return w;
}

/// Integral of w along a walk: <walk_form, w>.
inline double integrate(const Cochain& w, const std::vector<OrientedEdge>& walk) {
    return inner(walk_form(*w.graph, walk), w);
}

} // namespace metgraph
