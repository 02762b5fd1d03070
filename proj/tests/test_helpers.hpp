#pragma once

#include <cmath>
#include <vector>

#include "metgraph/graph.hpp"

namespace testutil {

using metgraph::EdgeSpec;
using metgraph::MetricGraph;

// Two vertices joined by three parallel edges, lengths 2, 1, 1.
inline MetricGraph banana() { return MetricGraph({{0, 1, 2.0}, {0, 1, 1.0}, {0, 1, 1.0}}); }

// Unit banana.
inline MetricGraph theta() { return MetricGraph({{0, 1, 1.0}, {0, 1, 1.0}, {0, 1, 1.0}}); }

// loop - bridge - loop, unit lengths. Edge 1 is the bridge.
inline MetricGraph dumbbell() {
    return MetricGraph({{0, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}});
}

inline MetricGraph rose(int d, double len = 1.0) {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < d; ++i) edges.push_back({0, 0, len});
    return MetricGraph(std::move(edges));
}

inline MetricGraph k4() {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 1.0});
    return MetricGraph(std::move(edges));
}

inline MetricGraph petersen() {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5, 1.0});          // outer cycle
    for (int i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5, 1.0});  // pentagram
    for (int i = 0; i < 5; ++i) edges.push_back({i, 5 + i, 1.0});                // spokes
    return MetricGraph(std::move(edges));
}

inline const double sqrt41 = std::sqrt(41.0);
inline const double banana_R1 = (3.0 + sqrt41) / 8.0;
inline const double banana_R23 = (sqrt41 - 1.0) / 4.0;
inline const double banana_hyp_m1 = (11.0 - sqrt41) / 10.0;
inline const double banana_hyp_m23 = (sqrt41 - 1.0) / 20.0;

} // namespace testutil
