#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "metgraph/graph.hpp"

namespace metgraph {

/// Non-backtracking digraph: nodes are oriented edges, with an arc e -> e'
/// whenever e' starts where e ends and e' is not the reversal of e.
/// The successor set of e is exactly S_e = { e' : e'^- = e^+, e' != reverse(e) }.
class NBDigraph {
public:
    explicit NBDigraph(const MetricGraph& g) : g_(&g) {}

    std::vector<OrientedEdge> successors(OrientedEdge e) const {
        std::vector<OrientedEdge> out;
        const OrientedEdge rev = e.reverse();
        for (OrientedEdge f : g_->out_edges(g_->head(e)))
            if (f != rev) out.push_back(f);
        return out;
    }

    int out_degree(OrientedEdge e) const {
        return g_->valence(g_->head(e)) - 1;
    }

    const MetricGraph& graph() const { return *g_; }

private:
    const MetricGraph* g_;
};

namespace detail {

/// Oriented edges reachable from e by walks of length >= 1 (e itself is
/// included only if some walk returns to it).
inline std::vector<char> nb_reachable(const MetricGraph& g, OrientedEdge e) {
    NBDigraph nb(g);
    std::vector<char> seen(g.oriented_edge_count(), 0);
    std::vector<OrientedEdge> stack;
    for (OrientedEdge s : nb.successors(e)) {
        if (!seen[s.code()]) {
            seen[s.code()] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        OrientedEdge cur = stack.back();
        stack.pop_back();
        for (OrientedEdge s : nb.successors(cur)) {
            if (!seen[s.code()]) {
                seen[s.code()] = 1;
                stack.push_back(s);
            }
        }
    }
    return seen;
}

/// Tarjan SCC over the NB digraph restricted to the given node mask.
inline std::vector<std::vector<int>> nb_sccs(const MetricGraph& g,
                                             const std::vector<char>& mask) {
    NBDigraph nb(g);
    const int n = g.oriented_edge_count();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> scc_stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int node;
        std::vector<OrientedEdge> succ;
        std::size_t next = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (!mask[root] || index[root] >= 0) continue;
        std::vector<Frame> stack;
        auto open = [&](int node) {
            index[node] = low[node] = counter++;
            scc_stack.push_back(node);
            on_stack[node] = 1;
            stack.push_back({node, nb.successors(OrientedEdge::from_code(node)), 0});
        };
        open(root);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < f.succ.size()) {
                int w = f.succ[f.next++].code();
                if (!mask[w]) continue;
                if (index[w] < 0) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                int node = f.node;
                int lowv = low[node];
                stack.pop_back();
                if (!stack.empty())
                    low[stack.back().node] = std::min(low[stack.back().node], lowv);
                if (lowv == index[node]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == node) break;
                    }
                    sccs.push_back(std::move(comp));
                }
            }
        }
    }
    return sccs;
}

} // namespace detail

/// Number of distinct directed cycles (distinct as UNORIENTED edge sets)
/// reachable from e in the non-backtracking digraph, capped at 2.
///
/// 0: the reachable set is acyclic — the universal-cover side T(e') is compact.
/// 1: exactly one cycle — T(e') is a quasi-ray, recurrent.
/// 2: at least two — T(e') branches forever, transient.
///
/// An SCC that is not a single directed cycle already contains two distinct
/// cycles. Single-cycle SCCs are deduplicated by unoriented edge set, so the
/// two orientations of one geometric loop (two parallel rays upstairs,
/// still recurrent) count once.
inline int nb_reachable_cycles(const MetricGraph& g, OrientedEdge e) {
    const auto mask = detail::nb_reachable(g, e);
    const auto sccs = detail::nb_sccs(g, mask);
    NBDigraph nb(g);

    std::set<std::vector<EdgeId>> simple_cycles;
    for (const auto& comp : sccs) {
        std::vector<char> in_comp(g.oriented_edge_count(), 0);
        for (int c : comp) in_comp[c] = 1;
        bool has_arc = false;
        bool single_cycle = true;
        for (int c : comp) {
            int internal_out = 0;
            for (OrientedEdge s : nb.successors(OrientedEdge::from_code(c)))
                if (in_comp[s.code()]) ++internal_out;
            if (internal_out > 0) has_arc = true;
            if (internal_out != 1) single_cycle = false;
        }
        if (!has_arc) continue;  // trivial SCC, no cycle
        if (!single_cycle) return 2;
        std::vector<EdgeId> edge_set;
        for (int c : comp) edge_set.push_back(OrientedEdge::from_code(c).edge());
        std::sort(edge_set.begin(), edge_set.end());
        edge_set.erase(std::unique(edge_set.begin(), edge_set.end()), edge_set.end());
        simple_cycles.insert(std::move(edge_set));
        if (simple_cycles.size() >= 2) return 2;
    }
    return static_cast<int>(simple_cycles.size());
}

} // namespace metgraph
