#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "metgraph/graph.hpp"
#include "metgraph/harmonic.hpp"
#include "metgraph/nb_walk.hpp"

namespace metgraph {

/// Solution of the resistance system 1/R(e) = sum_{e_i in S_e} 1/(l_i + R(e_i)).
/// R(e) is +infinity exactly on oriented edges whose non-backtracking side
/// reaches fewer than two distinct cycles (compact or quasi-ray side);
/// infinite entries contribute nothing to the sums.
struct ResistanceMap {
    const MetricGraph* graph = nullptr;
    std::vector<double> value;  // per oriented-edge code; kInf where not transient
    double residual = 0.0;      // max |1/R - sum 1/(l+R)| over finite entries
    int iterations = 0;

    double at(OrientedEdge oe) const { return value[oe.code()]; }
    bool finite(OrientedEdge oe) const { return std::isfinite(value[oe.code()]); }
};

inline ResistanceMap solve_R(const MetricGraph& g, double tol = 1e-12,
                             long max_iter = 1'000'000) {
    if (g.genus() < 2)
        throw ValidationError("solve_R requires genus >= 2");

    NBDigraph nb(g);
    const int m = g.oriented_edge_count();

    // Classification happens before any arithmetic: transient sides get a
    // finite unknown, everything else is pinned at +infinity.
    std::vector<char> fin(m, 0);
    std::vector<int> unknowns;
    for (int c = 0; c < m; ++c) {
        if (nb_reachable_cycles(g, OrientedEdge::from_code(c)) >= 2) {
            fin[c] = 1;
            unknowns.push_back(c);
        }
    }

    // Finite successors and their lengths, fixed sweep order.
    std::vector<std::vector<std::pair<int, double>>> succ(m);
    for (int c : unknowns) {
        for (OrientedEdge s : nb.successors(OrientedEdge::from_code(c)))
            if (fin[s.code()])
                succ[c].push_back({s.code(), g.length(s.edge())});
    }

    std::vector<double> x(m, kInf);
    for (int c : unknowns) x[c] = 0.0;

    auto sweep_value = [&](int c, const std::vector<double>& cur) {
        double s = 0.0;
        for (const auto& [sc, len] : succ[c]) s += 1.0 / (len + cur[sc]);
        return 1.0 / s;
    };

    // Monotone Jacobi iteration from zero: the update map is increasing, so
    // the iterates climb to the least positive fixed point.
    long it = 0;
    double step = kInf;
    std::vector<double> next(x);
    while (step >= tol) {
        if (++it > max_iter) {
            double res = 0.0;
            for (int c : unknowns)
                res = std::max(res, std::abs(1.0 / x[c] - 1.0 / sweep_value(c, x)));
            throw ConvergenceError("solve_R did not converge (residual " +
                                   std::to_string(res) + ")");
        }
        step = 0.0;
        for (int c : unknowns) {
            const double v = sweep_value(c, x);
            if (v < x[c] - 1e-15 * std::max(1.0, x[c]))
                throw ConvergenceError("solve_R iteration lost monotonicity");
            step = std::max(step, v - x[c]);
            next[c] = v;
        }
        std::swap(x, next);
    }

    // Damped Newton polish on H_e = x_e * sum 1/(l+x) - 1, small dense system.
    if (!unknowns.empty() && unknowns.size() <= 5000) {
        const int k = static_cast<int>(unknowns.size());
        std::vector<int> pos(m, -1);
        for (int i = 0; i < k; ++i) pos[unknowns[i]] = i;
        auto eval = [&](const Eigen::VectorXd& y, Eigen::VectorXd& H) {
            for (int i = 0; i < k; ++i) {
                double s = 0.0;
                for (const auto& [sc, len] : succ[unknowns[i]])
                    s += 1.0 / (len + y[pos[sc]]);
                H[i] = y[i] * s - 1.0;
            }
        };
        Eigen::VectorXd y(k), H(k);
        for (int i = 0; i < k; ++i) y[i] = x[unknowns[i]];
        eval(y, H);
        for (int round = 0; round < 8 && H.norm() > 1e-15 * k; ++round) {
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
            for (int i = 0; i < k; ++i) {
                double s = 0.0;
                for (const auto& [sc, len] : succ[unknowns[i]]) {
                    const double t = len + y[pos[sc]];
                    s += 1.0 / t;
                    J(i, pos[sc]) -= y[i] / (t * t);
                }
                J(i, i) += s;
            }
            Eigen::VectorXd delta = J.fullPivLu().solve(-H);
            double lambda = 1.0;
            Eigen::VectorXd trial(k), Ht(k);
            const double h0 = H.norm();
            bool accepted = false;
            for (int bt = 0; bt < 30; ++bt) {
                trial = y + lambda * delta;
                if (trial.minCoeff() > 0.0) {
                    eval(trial, Ht);
                    if (Ht.norm() < h0) {
                        y = trial;
                        H = Ht;
                        accepted = true;
                        break;
                    }
                }
                lambda *= 0.5;
            }
            if (!accepted) break;
        }
        for (int i = 0; i < k; ++i) x[unknowns[i]] = y[i];
    }

    ResistanceMap out;
    out.graph = &g;
    out.value = std::move(x);
    out.iterations = static_cast<int>(it);
    for (int c : unknowns)
        out.residual = std::max(out.residual,
                                std::abs(1.0 / out.value[c] - 1.0 / sweep_value(c, out.value)));
    return out;
}

/// S(e) = R(e) + R(reverse(e)); +infinity if either side is.
inline double s_value(const ResistanceMap& r, EdgeId e) {
    const double a = r.value[OrientedEdge(e, 0).code()];
    const double b = r.value[OrientedEdge(e, 1).code()];
    return a + b;
}

/// Measure induced from the canonical measure on the universal cover:
/// mass(e) = length(e) / (S(e) + length(e)), zero where S is infinite.
/// Total mass is genus - 1. Genus 1 yields the zero measure (a circle's
/// cover is a line); genus 0 has no infinite cover at all.
inline Measure hyperbolic_measure(const MetricGraph& g, const ResistanceMap& r) {
    Measure mu(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const double s = s_value(r, e);
        mu.mass[e] = std::isfinite(s) ? g.length(e) / (s + g.length(e)) : 0.0;
    }
    return mu;
}

inline Measure hyperbolic_measure(const MetricGraph& g) {
    if (g.genus() < 1)
        throw ValidationError("hyperbolic measure needs genus >= 1");
    if (g.genus() == 1) return Measure(g);
    ResistanceMap r = solve_R(g);
    return hyperbolic_measure(g, r);
}

/// Wired truncation estimate: develop the universal cover around a lift of e
/// to the given combinatorial radius (non-backtracking walk tree), contract
/// the ENTIRE boundary to one point, and return the Zhang mass of the lifted
/// edge. Nonincreasing in depth and converging to the hyperbolic mass.
inline double truncated_cover_measure(const MetricGraph& g, EdgeId e, int depth,
                                      std::size_t node_cap = 1'000'000) {
    if (g.genus() < 2)
        throw ValidationError("truncated_cover_measure requires genus >= 2");
    if (depth < 1) throw ValidationError("truncation depth must be >= 1");

    NBDigraph nb(g);
    struct Node {
        OrientedEdge via;  // base oriented edge whose lift ends here
        int depth;
    };
    std::vector<Node> nodes;
    std::vector<EdgeSpec> ball_edges;
    std::vector<VertexId> boundary;

    const OrientedEdge root_edge(e, 0);
    // Vertex 0 = lift of tail(e), vertex 1 = lift of head(e).
    nodes.push_back({root_edge.reverse(), 0});
    nodes.push_back({root_edge, 0});
    ball_edges.push_back({0, 1, g.length(e)});

    std::vector<int> frontier{0, 1};
    for (int level = 1; level <= depth && !frontier.empty(); ++level) {
        std::vector<int> next_frontier;
        for (int id : frontier) {
            for (OrientedEdge s : nb.successors(nodes[id].via)) {
                const int child = static_cast<int>(nodes.size());
                if (nodes.size() > node_cap)
                    throw ValidationError("truncation ball exceeds node cap");
                nodes.push_back({s, level});
                ball_edges.push_back({id, child, g.length(s.edge())});
                next_frontier.push_back(child);
            }
        }
        frontier = std::move(next_frontier);
    }
    // Cut vertices: frontier nodes with unexplored continuations. Genuine
    // leaves of the cover stay leaves.
    for (int id : frontier)
        if (!nb.successors(nodes[id].via).empty())
            boundary.push_back(id);

    MetricGraph ball(std::move(ball_edges));
    if (boundary.size() > 1) {
        Contraction wired = contract(ball, Subgraph{boundary, {}});
        return zhang_mass_of_edge(wired.graph, wired.edge_map[0]);
    }
    return zhang_mass_of_edge(ball, 0);
}

/// Non-backtracking word rooted at a base vertex; names the cylinder
/// boundary(T(last edge)) of the universal cover developed from the root.
struct BoundaryCylinder {
    VertexId root;
    std::vector<OrientedEdge> word;
};

/// Mass of a boundary cylinder under the exit measure rooted at cyl.root:
/// product of normalized split weights 1/(l+R), over all out-edges at the
/// root for the first step and over S_prev afterwards. Cylinders into a
/// non-transient side get 0.
inline double boundary_measure(const MetricGraph& g, const ResistanceMap& r,
                               const BoundaryCylinder& cyl) {
    if (cyl.word.empty()) return 1.0;
    NBDigraph nb(g);
    if (g.tail(cyl.word.front()) != cyl.root)
        throw ValidationError("cylinder word does not start at the root");
    for (std::size_t i = 1; i < cyl.word.size(); ++i) {
        if (cyl.word[i] == cyl.word[i - 1].reverse())
            throw ValidationError("cylinder word backtracks");
        if (g.tail(cyl.word[i]) != g.head(cyl.word[i - 1]))
            throw ValidationError("cylinder word is not a walk");
    }

    auto weight_of = [&](OrientedEdge oe) {
        const double rv = r.at(oe);
        return std::isfinite(rv) ? 1.0 / (g.length(oe.edge()) + rv) : 0.0;
    };

    double p = 1.0;
    for (std::size_t i = 0; i < cyl.word.size(); ++i) {
        const double num = weight_of(cyl.word[i]);
        if (num == 0.0) return 0.0;
        double den = 0.0;
        if (i == 0) {
            for (OrientedEdge f : g.out_edges(cyl.root)) den += weight_of(f);
        } else {
            for (OrientedEdge f : nb.successors(cyl.word[i - 1])) den += weight_of(f);
        }
        p *= num / den;
    }
    return p;
}

inline double boundary_measure(const MetricGraph& g, const BoundaryCylinder& cyl) {
    ResistanceMap r = solve_R(g);
    return boundary_measure(g, r, cyl);
}

struct PJCheck {
    double lhs = 0.0;  // half the total variation of the two exit measures
    double rhs = 0.0;  // hyperbolic mass of the edge
    double diff = 0.0;
};

/// Identity between the hyperbolic mass of e and the exit measures at its
/// two endpoints: mass(e) = (1/2)|mu_head - mu_tail|(boundary). The head
/// measure sends weight a = (R(rev)+l)/(R+R(rev)+l) into the head side and
/// 1-a backwards; similarly b from the tail. Degenerates to 0 = 0 on edges
/// with an infinite side.
inline PJCheck pj_identity_check(const MetricGraph& g, const ResistanceMap& r, EdgeId e) {
    PJCheck out;
    const double rf = r.value[OrientedEdge(e, 0).code()];
    const double rb = r.value[OrientedEdge(e, 1).code()];
    if (!std::isfinite(rf) || !std::isfinite(rb)) return out;  // exact 0 = 0
    const double len = g.length(e);
    const double denom = rf + rb + len;
    const double a = (rb + len) / denom;  // head-measure weight on the head side
    const double b = (rf + len) / denom;  // tail-measure weight on the tail side
    // Total variation over the two-set partition {head side, tail side}.
    out.lhs = 0.5 * (std::abs(a - (1.0 - b)) + std::abs(b - (1.0 - a)));
    out.rhs = len / denom;
    out.diff = std::abs(out.lhs - out.rhs);
    return out;
}

inline PJCheck pj_identity_check(const MetricGraph& g, EdgeId e) {
    if (g.genus() < 2)
        throw ValidationError("pj_identity_check requires genus >= 2");
    ResistanceMap r = solve_R(g);
    return pj_identity_check(g, r, e);
}

} // namespace metgraph
