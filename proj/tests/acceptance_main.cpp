// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "metgraph/checks.hpp"
#include "metgraph/cli.hpp"
#include "metgraph/cover.hpp"
#include "metgraph/harmonic.hpp"
#include "metgraph/hyperbolic.hpp"
#include "metgraph/random_graphs.hpp"
#include "test_helpers.hpp"

using namespace metgraph;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    bool pass = true;
    double worst = 0.0;
    std::string note;

    void require(bool ok, const std::string& why = "") {
        if (!ok) {
            pass = false;
            if (note.empty()) note = why;
        }
    }
    void feed(double residual, double tol) {
        worst = std::max(worst, residual);
        if (residual > tol) pass = false;
    }
};

void run(const std::string& label, double time_budget_s,
         const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.label = label;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget_s > 0 && secs > time_budget_s) {
        c.pass = false;
        c.note += (c.note.empty() ? "" : "; ") + std::string("over time budget");
    }
    if (!c.pass) ++failures;
    std::printf("%s  %-22s worst=%.3e  %6.2fs%s%s\n", c.pass ? "PASS" : "FAIL",
                label.c_str(), c.worst, secs, c.note.empty() ? "" : "  -- ",
                c.note.c_str());
    std::fflush(stdout);
}

// Connected multigraphs on <= 5 labeled vertices with <= max_edges edges
// (loops and parallels included), three {0.5, 1, 2} length assignments
// each, plus shapes needing 6-7 vertices.
std::vector<MetricGraph> oracle_corpus(int max_edges) {
    std::vector<std::pair<VertexId, VertexId>> slots;
    for (VertexId u = 0; u < 5; ++u)
        for (VertexId v = u; v < 5; ++v) slots.push_back({u, v});
    const double grid[3] = {0.5, 1.0, 2.0};
    std::vector<MetricGraph> out;
    std::vector<int> pick;

    // cheap connectivity pre-check over the touched vertex range
    std::vector<int> parent(5);
    auto connected = [&]() {
        for (int i = 0; i < 5; ++i) parent[i] = i;
        auto find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        VertexId max_v = 0;
        for (int s : pick) {
            const auto [u, v] = slots[s];
            max_v = std::max({max_v, u, v});
            parent[find(u)] = find(v);
        }
        int roots = 0;
        for (VertexId v = 0; v <= max_v; ++v) roots += find(v) == v;
        return roots == 1;
    };
    auto emit = [&]() {
        if (!connected()) return;
        for (int variant = 0; variant < 3; ++variant) {
            std::vector<EdgeSpec> edges;
            for (std::size_t i = 0; i < pick.size(); ++i) {
                const auto [u, v] = slots[pick[i]];
                edges.push_back({u, v, grid[(i * (variant + 1) + variant) % 3]});
            }
            out.push_back(MetricGraph(std::move(edges)));
        }
    };
    auto rec = [&](auto&& self, int min_slot, int remaining) -> void {
        if (!pick.empty()) emit();
        if (remaining == 0) return;
        for (int s = min_slot; s < static_cast<int>(slots.size()); ++s) {
            pick.push_back(s);
            self(self, s, remaining - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, max_edges);

    // shapes needing 6-7 vertices
    auto add = [&](std::vector<EdgeSpec> edges) { out.push_back(MetricGraph(std::move(edges))); };
    add({{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {3, 4, 1.0}, {4, 5, 2.0}, {5, 0, 1.0}});  // C6
    add({{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {3, 4, 1.0}, {4, 5, 2.0}, {5, 6, 1.0}});  // P7
    add({{0, 1, 2.0}, {0, 2, 1.0}, {0, 3, 0.5}, {0, 4, 1.0}, {0, 5, 2.0}, {0, 6, 0.5}});  // star
    add({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 0.5}, {3, 4, 2.0}, {4, 5, 1.0}, {5, 1, 0.5}});  // 6-v unicyclic
    return out;
}

MetricGraph with_dangling_path(const MetricGraph& g) {
    std::vector<EdgeSpec> edges = g.edges();
    const VertexId n = g.vertex_count();
    edges.push_back({0, n, 1.0});
    edges.push_back({n, n + 1, 0.5});
    edges.push_back({n + 1, n + 2, 2.0});
    return MetricGraph(std::move(edges));
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    run("1. banana exactness", 0.1, [](Criterion& c) {
        MetricGraph banana = testutil::banana();
        ResistanceMap r = solve_R(banana);
        c.feed(std::abs(r.value[OrientedEdge(0, 0).code()] - testutil::banana_R1), 1e-10);
        c.feed(std::abs(r.value[OrientedEdge(0, 1).code()] - testutil::banana_R1), 1e-10);
        for (EdgeId e : {1, 2})
            for (int d : {0, 1})
                c.feed(std::abs(r.value[OrientedEdge(e, d).code()] - testutil::banana_R23), 1e-10);
        Measure hy = hyperbolic_measure(banana, r);
        c.feed(std::abs(hy.mass[0] - testutil::banana_hyp_m1), 1e-10);
        c.feed(std::abs(hy.mass[1] - testutil::banana_hyp_m23), 1e-10);
        c.feed(std::abs(hy.mass[2] - testutil::banana_hyp_m23), 1e-10);
    });

    run("2. foster totals", 5.0, [](Criterion& c) {
        std::mt19937 rng(1234);
        for (int i = 0; i < 200; ++i) {
            MetricGraph g = random_connected_graph(rng, 12);
            c.feed(std::abs(zhang_measure(g).total() - g.genus()), 1e-9);
        }
    });

    run("3. oracle equivalence", 30.0, [](Criterion& c) {
        const auto corpus = oracle_corpus(6);
        c.require(corpus.size() >= 30, "corpus too small");
        for (const auto& g : corpus) {
            Measure a = zhang_measure(g);
            Measure b = spanning_tree_measure(g);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                c.feed(std::abs(a.mass[e] - b.mass[e]), 1e-9);
        }
        c.note = std::to_string(corpus.size()) + " graphs";
    });

    run("4. gauss-bonnet", 30.0, [](Criterion& c) {
        std::mt19937 rng(4321);
        for (int i = 0; i < 100; ++i) {
            MetricGraph g = random_graph_with_genus(rng, 2 + i % 5);
            c.feed(std::abs(hyperbolic_measure(g).total() - (g.genus() - 1.0)), 1e-8);
        }
    });

    run("5. regular graphs", 5.0, [](Criterion& c) {
        for (double m : hyperbolic_measure(testutil::k4()).mass)
            c.feed(std::abs(m - 1.0 / 3.0), 1e-10);
        for (double m : hyperbolic_measure(testutil::petersen()).mass)
            c.feed(std::abs(m - 1.0 / 3.0), 1e-10);
    });

    run("6. finite-cover totals", 10.0, [](Criterion& c) {
        for (int n : {2, 3, 4, 5}) {
            FiniteGroup grp = FiniteGroup::power(n, 2);
            VoltageCover vc(testutil::rose(2), grp, {1, n});
            Measure pd = cover_canonical_pushdown(vc);
            c.feed(std::abs(pd.total() - (1.0 + 1.0 / (static_cast<double>(n) * n))), 1e-9);
        }
    });

    run("7. kazhdan tower", 60.0, [](Criterion& c) {
        // Per-level per-loop mass for the (Z/n)^2 covers of the 2-rose is
        // exactly 1/2 + 1/(2 n^2): strictly decreasing to the abelian-cover
        // limit 1/2, gap below 0.01 at n = 32.
        double prev = 1.0;
        std::string seen;
        for (int n : {2, 4, 8, 16, 32}) {
            VoltageCover vc = homology_tower(testutil::rose(2), n);
            Measure pd = cover_canonical_pushdown(vc);
            const double exact = 0.5 + 0.5 / (static_cast<double>(n) * n);
            for (EdgeId e : {0, 1}) c.feed(std::abs(pd.mass[e] - exact), 1e-9);
            c.require(pd.mass[0] < prev, "not strictly monotone");
            prev = pd.mass[0];
            seen += (seen.empty() ? "" : " ") + std::to_string(pd.mass[0]).substr(0, 8);
        }
        c.require(std::abs(prev - 0.5) < 0.01, "gap at n=32 not below 0.01");
        c.note = "masses " + seen + " (decreasing; see ledger)";
    });

    run("8. two-route agreement", 120.0, [](Criterion& c) {
        struct Case {
            MetricGraph g;
            int deep;
        };
        const std::vector<Case> cases = {{testutil::banana(), 19},
                                         {testutil::dumbbell(), 19},
                                         {testutil::theta(), 19},
                                         {testutil::k4(), 19}};
        for (const auto& [g, deep] : cases) {
            Measure hy = hyperbolic_measure(g);
            const EdgeId e = 0;
            double prev = 1.0;
            for (int d = 1; d <= 10; ++d) {
                const double est = truncated_cover_measure(g, e, d);
                c.require(est <= prev + 1e-12, "depth sequence increased");
                c.require(est >= hy.mass[e] - 1e-9, "estimate fell below the limit");
                prev = est;
            }
            const double final_est = truncated_cover_measure(g, e, deep, 5'000'000);
            c.feed(std::abs(final_est - hy.mass[e]), 1e-6);
        }
    });

    run("9. poisson-jensen", 30.0, [](Criterion& c) {
        for (const MetricGraph& g :
             {testutil::banana(), testutil::dumbbell(), testutil::k4()}) {
            ResistanceMap r = solve_R(g);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                c.feed(pj_identity_check(g, r, e).diff, 1e-9);
        }
        std::mt19937 rng(555);
        for (int i = 0; i < 20; ++i) {
            MetricGraph g = random_graph_with_genus(rng, 2 + i % 4);
            ResistanceMap r = solve_R(g);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                c.feed(pj_identity_check(g, r, e).diff, 1e-9);
        }
    });

    run("10. bridge vanishing", 30.0, [](Criterion& c) {
        std::mt19937 rng(777);
        std::vector<MetricGraph> bases = {testutil::banana(), testutil::k4()};
        for (int i = 0; i < 10; ++i) bases.push_back(random_graph_with_genus(rng, 2 + i % 3));
        for (const auto& base : bases) {
            MetricGraph g = with_dangling_path(base);
            Measure zh = zhang_measure(g);
            Measure hy = hyperbolic_measure(g);
            for (EdgeId e = base.edge_count(); e < g.edge_count(); ++e) {
                c.require(zh.mass[e] == 0.0, "zhang mass of a dangling edge is nonzero");
                c.require(hy.mass[e] == 0.0, "hyperbolic mass of a dangling edge is nonzero");
            }
        }
    });

    run("11. property suite", 120.0, [](Criterion& c) {
        CommandResult res = cmd_check("", 50, 10, 7);
        c.require(res.exit_code == 0, "cmd_check reported a failure");
        for (const auto& [name, line] : res.report.notes)
            if (line.rfind("FAIL", 0) == 0) c.require(false, name + ": " + line);
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
