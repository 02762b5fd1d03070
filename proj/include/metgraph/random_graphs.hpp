#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "metgraph/graph.hpp"

namespace metgraph {

namespace detail {

// Hand-rolled draws: std::uniform_*_distribution is implementation-defined,
// and reports must be byte-stable across platforms.
inline double unit_real(std::mt19937& rng) {
    const std::uint64_t hi = rng(), lo = rng();
    return static_cast<double>((hi << 32 | lo) >> 11) * 0x1.0p-53;
}

inline int unit_int(std::mt19937& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(unit_real(rng) * (hi - lo + 1 - 1e-12));
}

inline double log_uniform_length(std::mt19937& rng) {
    // log-uniform in [0.1, 10]
    return std::exp(std::log(0.1) + unit_real(rng) * (std::log(10.0) - std::log(0.1)));
}

} // namespace detail

/// Random connected multigraph: a random spanning tree plus extra edges with
/// uniformly chosen endpoints (loops and parallels allowed), lengths
/// log-uniform in [0.1, 10]. Deterministic for a given rng state.
inline MetricGraph random_connected_graph(std::mt19937& rng, int max_edges,
                                          int min_edges = 1) {
    const int m = detail::unit_int(rng, std::max(1, min_edges), max_edges);
    const int n = detail::unit_int(rng, 1, m);  // tree edges = n-1 <= m
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({detail::unit_int(rng, 0, v - 1), v,
                         detail::log_uniform_length(rng)});
    while (static_cast<int>(edges.size()) < m)
        edges.push_back({detail::unit_int(rng, 0, n - 1), detail::unit_int(rng, 0, n - 1),
                         detail::log_uniform_length(rng)});
    return MetricGraph(std::move(edges));
}

/// Random connected multigraph with prescribed genus (tree + exactly that
/// many extra edges).
inline MetricGraph random_graph_with_genus(std::mt19937& rng, int genus,
                                           int max_vertices = 6) {
    const int n = std::max(detail::unit_int(rng, 1, max_vertices), genus == 0 ? 2 : 1);
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({detail::unit_int(rng, 0, v - 1), v,
                         detail::log_uniform_length(rng)});
    for (int i = 0; i < genus; ++i)
        edges.push_back({detail::unit_int(rng, 0, n - 1), detail::unit_int(rng, 0, n - 1),
                         detail::log_uniform_length(rng)});
    return MetricGraph(std::move(edges));
}

} // namespace metgraph
