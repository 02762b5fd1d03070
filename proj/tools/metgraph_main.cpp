#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metgraph/cli.hpp"

namespace {

using metgraph::CommandResult;

int run(int argc, char** argv) {
    CLI::App app{"Canonical, cover-induced, and universal-cover measures on metric graphs"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    auto add_output_options = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write the report to FILE (.csv or .json)");
        sub->add_option("--format", format, "stdout format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    std::string graph_path, voltage_path;
    double tol = 1e-12;
    long max_iter = 1'000'000;
    int trunc_depth = 0;

    auto* canon = app.add_subcommand("canon", "Zhang canonical measure");
    canon->add_option("graph", graph_path, "graph file")->required();

    auto* hyp = app.add_subcommand("hyperbolic", "universal-cover measure");
    hyp->add_option("graph", graph_path, "graph file")->required();
    hyp->add_option("--tol", tol, "fixed-point tolerance");
    hyp->add_option("--max-iter", max_iter, "iteration cap");
    hyp->add_option("--check-truncation", trunc_depth,
                    "add a wired-truncation estimate column at this depth");

    auto* cover = app.add_subcommand("cover", "finite Galois cover pushdown");
    cover->add_option("graph", graph_path, "graph file")->required();
    cover->add_option("voltages", voltage_path, "voltage spec (JSON)")->required();

    std::string family = "homology";
    std::vector<int> levels;
    auto* tower = app.add_subcommand("tower", "tower of covers, per-level masses");
    tower->add_option("graph", graph_path, "graph file")->required();
    tower->add_option("--family", family, "tower family")->capture_default_str();
    tower->add_option("--levels", levels, "levels, e.g. --levels 2 4 8")
        ->required()
        ->delimiter(',');

    int random_count = 0, max_edges = 10;
    unsigned seed = 0;
    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("graph", graph_path, "graph file (omit with --random)");
    check->add_option("--random", random_count, "number of random graphs");
    check->add_option("--max-edges", max_edges, "random graph edge cap");
    check->add_option("--seed", seed, "random seed");

    for (CLI::App* sub : {canon, hyp, cover, tower, check}) add_output_options(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        CommandResult res;
        if (canon->parsed()) {
            res = metgraph::cmd_canon(graph_path);
        } else if (hyp->parsed()) {
            res = metgraph::cmd_hyperbolic(graph_path, tol, max_iter, trunc_depth);
        } else if (cover->parsed()) {
            res = metgraph::cmd_cover(graph_path, voltage_path);
        } else if (tower->parsed()) {
            res = metgraph::cmd_tower(graph_path, family, levels);
        } else {
            if (graph_path.empty() && random_count <= 0)
                throw metgraph::ValidationError("check needs a graph file or --random N");
            res = metgraph::cmd_check(graph_path, random_count, max_edges, seed);
        }
        res.report.wall_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        metgraph::emit_report(res.report, out_path, format, std::cout, std::cerr);
        return res.exit_code;
    } catch (const metgraph::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const metgraph::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const metgraph::InvariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
