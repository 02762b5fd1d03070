#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "metgraph/cochain.hpp"
#include "metgraph/cover.hpp"
#include "metgraph/graph.hpp"
#include "metgraph/harmonic.hpp"
#include "metgraph/hyperbolic.hpp"
#include "metgraph/nb_walk.hpp"

namespace metgraph {

struct CheckResult {
    std::string name;
    bool pass = true;
    double worst = 0.0;   // worst residual seen
    double tolerance = 0.0;
    std::string detail;

    CheckResult() = default;
    CheckResult(std::string check_name, double tol)
        : name(std::move(check_name)), tolerance(tol) {}

    void feed(double residual) {
        worst = std::max(worst, residual);
        if (worst > tolerance) pass = false;
    }
};

namespace checks {

/// Zhang total mass equals the genus (Foster).
inline CheckResult foster(const MetricGraph& g) {
    CheckResult r("foster_total", 1e-9);
    r.feed(std::abs(zhang_measure(g).total() - g.genus()));
    return r;
}

/// Componentwise agreement of the Laplacian route with the spanning-tree
/// enumeration oracle.
inline CheckResult oracle_equivalence(const MetricGraph& g) {
    CheckResult r("oracle_equivalence", 1e-9);
    if (g.edge_count() > 10) {
        r.detail = "skipped (edge count)";
        return r;
    }
    Measure a = zhang_measure(g);
    Measure b = spanning_tree_measure(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) r.feed(std::abs(a.mass[e] - b.mass[e]));
    return r;
}

/// pi(pi(w)) = pi(w), and w - pi(w) is orthogonal to every fundamental
/// cycle form.
inline CheckResult projection_idempotence(const MetricGraph& g) {
    CheckResult r("projection_idempotence", 1e-9);
    Cochain w(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        w.comp[e] = std::cos(1.0 + 0.7 * e);  // arbitrary fixed test form
    Cochain p = harmonic_projection(g, w);
    Cochain pp = harmonic_projection(g, p);
    for (EdgeId e = 0; e < g.edge_count(); ++e) r.feed(std::abs(pp.comp[e] - p.comp[e]));

    // Fundamental cycle of each non-tree edge via tree paths.
    const auto in_tree = spanning_tree_edges(g);
    std::vector<OrientedEdge> parent(g.vertex_count());
    std::vector<VertexId> order{0};
    std::vector<char> seen(g.vertex_count(), 0);
    seen[0] = 1;
    for (std::size_t qi = 0; qi < order.size(); ++qi)
        for (OrientedEdge oe : g.out_edges(order[qi]))
            if (in_tree[oe.edge()] && !seen[g.head(oe)]) {
                seen[g.head(oe)] = 1;
                parent[g.head(oe)] = oe;
                order.push_back(g.head(oe));
            }
    Cochain defect(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) defect.comp[e] = w.comp[e] - p.comp[e];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        Cochain gamma(g);
        gamma.add(OrientedEdge(e, 0), 1.0);
        // tree path head -> root, then root -> tail
        for (VertexId v = g.edge(e).v; v != 0; v = g.tail(parent[v]))
            gamma.add(parent[v].reverse(), 1.0);
        for (VertexId v = g.edge(e).u; v != 0; v = g.tail(parent[v]))
            gamma.add(parent[v], 1.0);
        r.feed(std::abs(inner(defect, gamma)));
        // and the cycle form itself is fixed by the projection
        Cochain pg = harmonic_projection(g, gamma);
        for (EdgeId f = 0; f < g.edge_count(); ++f)
            r.feed(std::abs(pg.comp[f] - gamma.comp[f]));
    }
    return r;
}

/// Zhang mass of an edge equals the sum over its halves after subdivision.
inline CheckResult subdivision_invariance(const MetricGraph& g) {
    CheckResult r("subdivision_invariance", 1e-9);
    Measure before = zhang_measure(g);
    const EdgeId e = g.edge_count() / 2;
    Subdivision sub = subdivide(g, e, 0.375 * g.length(e));
    Measure after = zhang_measure(sub.graph);
    r.feed(std::abs(before.mass[e] -
                    (after.mass[sub.first_half] + after.mass[sub.second_half])));
    for (EdgeId f = 0; f < g.edge_count(); ++f)
        if (f != e) r.feed(std::abs(before.mass[f] - after.mass[f]));
    return r;
}

/// Contracting a compact subgraph disjoint from e never decreases mass(e)
/// (checked over single-edge contractions).
inline CheckResult rayleigh_monotonicity(const MetricGraph& g) {
    CheckResult r("rayleigh_monotonicity", 1e-10);
    Measure before = zhang_measure(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        for (EdgeId f = 0; f < g.edge_count(); ++f) {
            if (f == e) continue;
            const auto &se = g.edge(e), &sf = g.edge(f);
            if (sf.u == se.u || sf.u == se.v || sf.v == se.u || sf.v == se.v) continue;
            Contraction c = contract(g, Subgraph{{sf.u, sf.v}, {f}});
            Measure after = zhang_measure(c.graph);
            r.feed(std::max(0.0, before.mass[e] - after.mass[c.edge_map[e]]));
        }
    }
    return r;
}

/// j_z(x,y) = j_z(y,x) (electrical reciprocity).
inline CheckResult j_symmetry(const MetricGraph& g) {
    CheckResult r("j_symmetry", 1e-9);
    const int n = g.vertex_count();
    if (n < 3) {
        r.detail = "skipped (needs 3 vertices)";
        return r;
    }
    for (VertexId z = 0; z < std::min(n, 3); ++z) {
        const VertexId x = (z + 1) % n, y = (z + 2) % n;
        r.feed(std::abs(j_function(g, y, z)[x] - j_function(g, x, z)[y]));
    }
    return r;
}

/// NB out-degree equals |S_e| = valence(head) - 1.
inline CheckResult nb_out_degree(const MetricGraph& g) {
    CheckResult r("nb_out_degree", 0);
    NBDigraph nb(g);
    for (int c = 0; c < g.oriented_edge_count(); ++c) {
        OrientedEdge e = OrientedEdge::from_code(c);
        r.feed(std::abs(static_cast<double>(nb.successors(e).size()) - nb.out_degree(e)));
    }
    return r;
}

/// Gauss-Bonnet: hyperbolic total mass is genus - 1.
inline CheckResult gauss_bonnet(const MetricGraph& g, const ResistanceMap& rmap) {
    CheckResult r("gauss_bonnet", 1e-8);
    r.feed(std::abs(hyperbolic_measure(g, rmap).total() - (g.genus() - 1)));
    return r;
}

/// Fixed-point residual of the R system after convergence.
inline CheckResult r_residual(const ResistanceMap& rmap) {
    CheckResult r("fixed_point_residual", 1e-10);
    r.feed(rmap.residual);
    return r;
}

/// Doubling all lengths doubles each finite R and S and leaves each
/// hyperbolic mass unchanged.
inline CheckResult scale_covariance(const MetricGraph& g, const ResistanceMap& rmap) {
    CheckResult r("scale_covariance", 1e-9);
    std::vector<EdgeSpec> doubled = g.edges();
    for (auto& e : doubled) e.length *= 2.0;
    MetricGraph g2(std::move(doubled));
    ResistanceMap r2 = solve_R(g2);
    Measure m1 = hyperbolic_measure(g, rmap);
    Measure m2 = hyperbolic_measure(g2, r2);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        r.feed(std::abs(m1.mass[e] - m2.mass[e]));
        const double s1 = s_value(rmap, e), s2 = s_value(r2, e);
        if (std::isfinite(s1) != std::isfinite(s2))
            r.feed(1.0);
        else if (std::isfinite(s1) && s1 > 0)
            r.feed(std::abs(s2 / s1 - 2.0));
    }
    return r;
}

/// Poisson-Jensen edge identity on every edge.
inline CheckResult pj_identity(const MetricGraph& g, const ResistanceMap& rmap) {
    CheckResult r("pj_identity", 1e-9);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        r.feed(pj_identity_check(g, rmap, e).diff);
    return r;
}

/// Single-edge exit cylinders at each vertex sum to 1.
inline CheckResult cylinder_normalization(const MetricGraph& g, const ResistanceMap& rmap) {
    CheckResult r("cylinder_normalization", 1e-12);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        double s = 0.0;
        for (OrientedEdge f : g.out_edges(v))
            s += boundary_measure(g, rmap, BoundaryCylinder{v, {f}});
        r.feed(std::abs(s - 1.0));
    }
    return r;
}

/// Edges with a non-transient side carry exactly zero mass in both the
/// Zhang measure of a dangling-tree edge sense and the hyperbolic measure.
inline CheckResult bridge_vanishing(const MetricGraph& g, const ResistanceMap& rmap) {
    CheckResult r("bridge_vanishing", 0);
    Measure zh = zhang_measure(g);
    Measure hy = hyperbolic_measure(g, rmap);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (is_bridge(g, e).bridge && zh.mass[e] != 0.0) r.feed(std::abs(zh.mass[e]));
        const int c0 = nb_reachable_cycles(g, OrientedEdge(e, 0));
        const int c1 = nb_reachable_cycles(g, OrientedEdge(e, 1));
        if ((c0 < 2 || c1 < 2) && hy.mass[e] != 0.0) r.feed(std::abs(hy.mass[e]));
    }
    return r;
}

/// Degree-2 cyclic cover: local isometry, deck freeness, Euler
/// characteristic multiplicativity, deck-choice independence of the Zhang
/// pushdown (1e-12), and the finite-cover total g - 1 + 1/d (1e-9).
inline CheckResult cover_pushdown(const MetricGraph& g) {
    CheckResult r("cover_pushdown", 1e-9);
    if (g.genus() < 1) {
        r.detail = "skipped (tree)";
        return r;
    }
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    std::vector<int> volt(g.edge_count(), 0);
    const auto in_tree = spanning_tree_edges(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!in_tree[e]) {
            volt[e] = 1;
            break;
        }
    VoltageCover vc(g, z2, volt);
    CoveringMap cm(vc);
    const auto& cov = cm.cover();
    if (cov.vertex_count() != 2 * g.vertex_count() ||
        cov.edge_count() != 2 * g.edge_count())
        r.feed(1.0);
    for (EdgeId ce = 0; ce < cov.edge_count(); ++ce)
        r.feed(std::abs(cov.length(ce) - g.length(cm.project_edge(ce))));
    for (VertexId cv = 0; cv < cov.vertex_count(); ++cv)
        if (cm.deck_vertex(1, cv) == cv) r.feed(1.0);
    const int chi_base = g.vertex_count() - g.edge_count();
    const int chi_cover = cov.vertex_count() - cov.edge_count();
    r.feed(std::abs(chi_cover - 2.0 * chi_base));

    Measure mu_cover = zhang_measure(cov);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        r.feed(std::abs(mu_cover.mass[cm.lift_edge(e, 0)] - mu_cover.mass[cm.lift_edge(e, 1)]) > 1e-12
                   ? 1.0
                   : 0.0);
    Measure mu = pushdown(mu_cover, cm);
    r.feed(std::abs(mu.total() - (g.genus() - 1 + 0.5)));
    return r;
}

} // namespace checks

/// The whole suite on one graph; hyperbolic checks run only when genus >= 2.
inline std::vector<CheckResult> run_invariant_suite(const MetricGraph& g) {
    std::vector<CheckResult> out;
    out.push_back(checks::foster(g));
    out.push_back(checks::oracle_equivalence(g));
    out.push_back(checks::projection_idempotence(g));
    out.push_back(checks::subdivision_invariance(g));
    out.push_back(checks::rayleigh_monotonicity(g));
    out.push_back(checks::j_symmetry(g));
    out.push_back(checks::nb_out_degree(g));
    out.push_back(checks::cover_pushdown(g));
    if (g.genus() >= 2) {
        ResistanceMap rmap = solve_R(g);
        out.push_back(checks::r_residual(rmap));
        out.push_back(checks::gauss_bonnet(g, rmap));
        out.push_back(checks::scale_covariance(g, rmap));
        out.push_back(checks::pj_identity(g, rmap));
        out.push_back(checks::cylinder_normalization(g, rmap));
        out.push_back(checks::bridge_vanishing(g, rmap));
    }
    return out;
}

} // namespace metgraph
