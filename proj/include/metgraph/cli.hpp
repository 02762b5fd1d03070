#pragma once

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "metgraph/checks.hpp"
#include "metgraph/cover.hpp"
#include "metgraph/errors.hpp"
#include "metgraph/harmonic.hpp"
#include "metgraph/hyperbolic.hpp"
#include "metgraph/io.hpp"
#include "metgraph/random_graphs.hpp"
#include "metgraph/report.hpp"

namespace metgraph {

struct CommandResult {
    RunReport report;
    int exit_code = 0;
};

namespace cli_detail {

inline void edge_table(RunReport& rep, const MetricGraph& g, const Measure& mu) {
    rep.int_cols = {"edge", "u", "v"};
    rep.real_cols = {"length", "mass", "density"};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& s = g.edge(e);
        rep.add_row({e, s.u, s.v}, {s.length, mu.mass[e], mu.density(e)});
    }
}

template <class F>
auto map_indexed(int count, F&& f) {
    using R = decltype(f(0));
    std::vector<std::future<R>> futs;
    futs.reserve(count);
    for (int i = 0; i < count; ++i)
        futs.push_back(std::async(std::launch::async, f, i));
    std::vector<R> out;
    out.reserve(count);
    for (auto& fu : futs) out.push_back(fu.get());  // collected by index
    return out;
}

} // namespace cli_detail

/// Zhang canonical measure table with the Foster total check.
inline CommandResult cmd_canon(const std::string& graph_path) {
    const std::string bytes = read_file(graph_path);
    MetricGraph g = load_graph(graph_path);
    CommandResult res;
    res.report.command = "canon " + graph_path;
    res.report.input_digest = fnv1a_digest(bytes);

    Measure mu = zhang_measure(g);
    cli_detail::edge_table(res.report, g, mu);
    res.report.totals.push_back({"total_mass", res.report.printed_column_sum("mass")});
    res.report.totals.push_back({"genus", static_cast<double>(g.genus())});
    const double resid = std::abs(mu.total() - g.genus());
    res.report.notes.push_back({"foster_residual", fixed12(resid)});
    if (resid > 1e-9) {
        res.report.notes.push_back({"status", "FAIL foster total"});
        res.exit_code = 3;
    } else {
        res.report.notes.push_back({"status", "ok"});
    }
    return res;
}

/// Universal-cover measure: R table, masses, Gauss-Bonnet total, optional
/// wired-truncation comparison column.
inline CommandResult cmd_hyperbolic(const std::string& graph_path, double tol = 1e-12,
                                    long max_iter = 1'000'000,
                                    int check_truncation_depth = 0) {
    const std::string bytes = read_file(graph_path);
    MetricGraph g = load_graph(graph_path);
    if (g.genus() < 1)
        throw ValidationError("hyperbolic measure needs genus >= 1 (no infinite cover)");

    CommandResult res;
    res.report.command = "hyperbolic " + graph_path;
    res.report.input_digest = fnv1a_digest(bytes);
    res.report.int_cols = {"edge", "u", "v"};
    res.report.real_cols = {"length", "R_fwd", "R_rev", "mass", "density"};
    if (check_truncation_depth > 0) {
        res.report.real_cols.push_back("truncation_estimate");
        res.report.real_cols.push_back("truncation_gap");
    }

    Measure mu(g);
    ResistanceMap rmap;
    rmap.graph = &g;
    rmap.value.assign(g.oriented_edge_count(), kInf);
    if (g.genus() >= 2) {
        rmap = solve_R(g, tol, max_iter);
        mu = hyperbolic_measure(g, rmap);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& s = g.edge(e);
        std::vector<double> reals = {s.length, rmap.value[OrientedEdge(e, 0).code()],
                                     rmap.value[OrientedEdge(e, 1).code()], mu.mass[e],
                                     mu.density(e)};
        if (check_truncation_depth > 0) {
            const double est = g.genus() >= 2
                                   ? truncated_cover_measure(g, e, check_truncation_depth)
                                   : 0.0;
            reals.push_back(est);
            reals.push_back(est - mu.mass[e]);
        }
        res.report.add_row({e, s.u, s.v}, std::move(reals));
    }
    res.report.totals.push_back({"total_mass", res.report.printed_column_sum("mass")});
    res.report.totals.push_back({"genus_minus_1", static_cast<double>(g.genus() - 1)});
    res.report.notes.push_back({"iterations", std::to_string(rmap.iterations)});
    res.report.notes.push_back({"residual", fixed12(rmap.residual)});
    const double gb = std::abs(mu.total() - (g.genus() - 1));
    if (gb > 1e-8) {
        res.report.notes.push_back({"status", "FAIL gauss-bonnet total"});
        res.exit_code = 3;
    } else {
        res.report.notes.push_back({"status", "ok"});
    }
    return res;
}

/// Finite-cover pushdown table with the g - 1 + 1/d total identity.
inline CommandResult cmd_cover(const std::string& graph_path,
                               const std::string& voltage_path) {
    const std::string graph_bytes = read_file(graph_path);
    const std::string volt_bytes = read_file(voltage_path);
    MetricGraph g = load_graph(graph_path);
    VoltageCover vc = parse_voltage_json(volt_bytes, g, voltage_path);

    CommandResult res;
    res.report.command = "cover " + graph_path + " " + voltage_path;
    res.report.input_digest = fnv1a_digest(graph_bytes + "\n" + volt_bytes);

    CoveringMap cm(vc);
    Measure mu_cover = zhang_measure(cm.cover());
    Measure mu = pushdown(mu_cover, cm);
    cli_detail::edge_table(res.report, g, mu);

    const double expected = g.genus() - 1.0 + 1.0 / cm.degree();
    res.report.totals.push_back({"total_mass", res.report.printed_column_sum("mass")});
    res.report.totals.push_back({"expected_total", expected});
    res.report.notes.push_back({"group", cm.group().name()});
    res.report.notes.push_back({"degree", std::to_string(cm.degree())});
    res.report.notes.push_back({"cover_vertices", std::to_string(cm.cover().vertex_count())});
    res.report.notes.push_back({"cover_edges", std::to_string(cm.cover().edge_count())});
    res.report.notes.push_back({"cover_genus", std::to_string(cm.cover().genus())});
    const double resid = std::abs(mu.total() - expected);
    res.report.notes.push_back({"total_residual", fixed12(resid)});
    if (resid > 1e-9) {
        res.report.notes.push_back({"status", "FAIL cover total"});
        res.exit_code = 3;
    } else {
        res.report.notes.push_back({"status", "ok"});
    }
    return res;
}

/// Homology tower: per-level pushdown masses, with the known limit column
/// for roses (every edge a loop at one vertex).
inline CommandResult cmd_tower(const std::string& graph_path,
                               const std::string& family,
                               const std::vector<int>& levels) {
    if (family != "homology")
        throw ValidationError("unsupported tower family \"" + family + "\"");
    const std::string bytes = read_file(graph_path);
    MetricGraph g = load_graph(graph_path);

    CommandResult res;
    res.report.command = "tower " + graph_path + " homology";
    res.report.input_digest = fnv1a_digest(bytes);

    const bool rose = g.vertex_count() == 1;
    const double rose_limit = rose ? 1.0 - 1.0 / g.genus() : 0.0;
    res.report.int_cols = {"level", "edge", "u", "v"};
    res.report.real_cols = {"length", "mass"};
    if (rose) {
        res.report.real_cols.push_back("limit");
        res.report.real_cols.push_back("gap");
    }

    auto masses = cli_detail::map_indexed(static_cast<int>(levels.size()), [&](int i) {
        VoltageCover vc = homology_tower(g, levels[i]);
        Measure m = cover_canonical_pushdown(vc);
        m.graph = &g;  // rebind off the local cover before it goes away
        return m;
    });
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto& s = g.edge(e);
            std::vector<double> reals = {s.length, masses[i].mass[e]};
            if (rose) {
                reals.push_back(rose_limit);
                reals.push_back(std::abs(masses[i].mass[e] - rose_limit));
            }
            res.report.add_row({levels[i], e, s.u, s.v}, std::move(reals));
        }
    }
    if (!rose)
        res.report.notes.push_back(
            {"limit", "unknown for this base (abelian-cover value is only "
                      "closed-form for roses); column omitted"});
    res.report.notes.push_back({"status", "ok"});
    return res;
}

/// Invariant suite over one graph file or a seeded random corpus.
inline CommandResult cmd_check(const std::string& graph_path, int random_count = 0,
                               int max_edges = 10, unsigned seed = 0) {
    CommandResult res;
    std::vector<std::vector<CheckResult>> runs;
    if (!graph_path.empty()) {
        const std::string bytes = read_file(graph_path);
        MetricGraph g = load_graph(graph_path);
        res.report.command = "check " + graph_path;
        res.report.input_digest = fnv1a_digest(bytes);
        runs.push_back(run_invariant_suite(g));
    } else {
        res.report.command = "check --random " + std::to_string(random_count) +
                             " --max-edges " + std::to_string(max_edges) + " --seed " +
                             std::to_string(seed);
        res.report.input_digest = fnv1a_digest(res.report.command);
        runs = cli_detail::map_indexed(random_count, [&](int i) {
            std::mt19937 rng(seed + static_cast<unsigned>(i));
            MetricGraph g = random_connected_graph(rng, max_edges);
            return run_invariant_suite(g);
        });
    }

    // Aggregate worst residual per check name across the corpus.
    std::vector<CheckResult> agg;
    for (const auto& run : runs) {
        for (const auto& c : run) {
            auto it = std::find_if(agg.begin(), agg.end(),
                                   [&](const CheckResult& a) { return a.name == c.name; });
            if (it == agg.end()) {
                agg.push_back(c);
            } else {
                it->worst = std::max(it->worst, c.worst);
                it->pass = it->pass && c.pass;
            }
        }
    }

    bool all_pass = true;
    for (const auto& c : agg) {
        all_pass = all_pass && c.pass;
        std::string line = std::string(c.pass ? "pass" : "FAIL") +
                           " worst=" + fixed12(c.worst) + " tol=" + fixed12(c.tolerance);
        if (!c.detail.empty()) line += " (" + c.detail + ")";
        res.report.notes.push_back({c.name, line});
    }
    res.report.notes.push_back({"cases", std::to_string(runs.size())});
    res.report.notes.push_back({"status", all_pass ? "ok" : "FAIL"});
    res.exit_code = all_pass ? 0 : 3;
    return res;
}

/// Shared output handling: stdout or --out FILE with format from the
/// extension; wall time goes to stderr to keep the body deterministic.
inline void emit_report(const RunReport& rep, const std::string& out_path,
                        const std::string& format, std::ostream& stdout_stream,
                        std::ostream& stderr_stream) {
    std::string body;
    if (!out_path.empty()) {
        const bool json = out_path.size() > 5 &&
                          out_path.substr(out_path.size() - 5) == ".json";
        body = json ? rep.to_json() : rep.to_csv();
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + out_path);
        out << body;
    } else {
        body = (format == "json") ? rep.to_json() : rep.to_csv();
        stdout_stream << body;
    }
    stderr_stream << "# wall_ms," << fixed12(rep.wall_ms) << "\n";
}

} // namespace metgraph
