#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "metgraph/cli.hpp"
#include "metgraph/io.hpp"
#include "test_helpers.hpp"

using namespace metgraph;
using Catch::Approx;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& contents)
        : path("/tmp/metgraph_test_" + name) {
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kBananaText = "# banana graph\n0 1 2\n0 1 1\n0 1 1\n";

} // namespace

TEST_CASE("text parser: comments, blank lines, errors with line numbers") {
    std::istringstream in("# comment\n\n0 1 2.0\n1 2 1.5 # trailing comment\n");
    MetricGraph g = parse_graph_text(in, "test.txt");
    CHECK(g.edge_count() == 2);
    CHECK(g.length(1) == Approx(1.5));

    std::istringstream bad("0 1 1.0\n0 2\n");
    try {
        parse_graph_text(bad, "bad.txt");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
    }

    std::istringstream neg("0 -1 1.0\n");
    CHECK_THROWS_AS(parse_graph_text(neg, "neg.txt"), ValidationError);
    std::istringstream disc("0 1 1.0\n2 3 1.0\n");
    CHECK_THROWS_AS(parse_graph_text(disc, "disc.txt"), ValidationError);
}

TEST_CASE("both graph formats round-trip") {
    MetricGraph g({{0, 1, 2.0}, {1, 2, 0.125}, {2, 0, 3.75}, {0, 0, 1.5}});
    std::istringstream txt(write_graph_text(g));
    MetricGraph g1 = parse_graph_text(txt);
    MetricGraph g2 = parse_graph_json(write_graph_json(g));
    for (const MetricGraph* h : {&g1, &g2}) {
        REQUIRE(h->edge_count() == g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            CHECK(h->edge(e).u == g.edge(e).u);
            CHECK(h->edge(e).v == g.edge(e).v);
            CHECK(h->edge(e).length == g.edge(e).length);
        }
    }
}

TEST_CASE("voltage spec parsing: Z^k groups, tables, coefficient reduction") {
    MetricGraph rose = testutil::rose(2);
    VoltageCover vc = parse_voltage_json(
        R"({"group": {"type": "Z^k mod n", "k": 2, "n": 4},
            "voltages": {"0": [1, 0], "1": [0, 1]}})",
        rose);
    CHECK(vc.group.order() == 16);
    CHECK(vc.voltage[0] == 1);
    CHECK(vc.voltage[1] == 4);

    // negative coefficients reduce mod n; missing edges default to identity
    VoltageCover vneg = parse_voltage_json(
        R"({"group": {"type": "Z^k mod n", "k": 1, "n": 5}, "voltages": {"1": [-1]}})", rose);
    CHECK(vneg.voltage[0] == 0);
    CHECK(vneg.voltage[1] == 4);

    VoltageCover vtb = parse_voltage_json(
        R"({"group": {"type": "table", "mul": [[0,1],[1,0]]}, "voltages": {"0": 1}})", rose);
    CHECK(vtb.group.order() == 2);

    CHECK_THROWS_AS(parse_voltage_json(R"({"voltages": {}})", rose), ValidationError);
    CHECK_THROWS_AS(parse_voltage_json(
                        R"({"group": {"type": "Z^k mod n", "k": 1, "n": 3},
                            "voltages": {"7": [1]}})",
                        rose),
                    ValidationError);
}

TEST_CASE("cmd_canon emits the banana table with the Foster total") {
    TempFile f("banana.txt", kBananaText);
    CommandResult res = cmd_canon(f.path);
    CHECK(res.exit_code == 0);
    const std::string csv = res.report.to_csv();
    CHECK(csv.find("edge,u,v,length,mass,density") != std::string::npos);
    CHECK(csv.find("0,0,1,2.000000000000,0.800000000000,0.400000000000") != std::string::npos);
    CHECK(csv.find("# total_mass,2.000000000000") != std::string::npos);
}

TEST_CASE("cmd_canon on a tree produces the zero table") {
    TempFile f("tree.txt", "0 1 1\n1 2 2\n");
    CommandResult res = cmd_canon(f.path);
    CHECK(res.exit_code == 0);
    CHECK(res.report.to_csv().find("# total_mass,0.000000000000") != std::string::npos);
}

TEST_CASE("cmd_hyperbolic reports masses, R columns and Gauss-Bonnet total") {
    TempFile f("banana.txt", kBananaText);
    CommandResult res = cmd_hyperbolic(f.path);
    CHECK(res.exit_code == 0);
    const std::string csv = res.report.to_csv();
    CHECK(csv.find("0.459687576257") != std::string::npos);
    CHECK(csv.find("0.270156211872") != std::string::npos);
    // printed total is the sum of the printed mass column, by construction
    const double printed = res.report.printed_column_sum("mass");
    CHECK(std::abs(printed - 1.0) < 2e-12);
    CHECK(csv.find("# total_mass," + fixed12(printed)) != std::string::npos);

    // truncation comparison column
    CommandResult res2 = cmd_hyperbolic(f.path, 1e-12, 1'000'000, 6);
    CHECK(res2.report.real_cols.back() == "truncation_gap");
    CHECK(res2.exit_code == 0);

    TempFile fd("dumbbell.txt", "0 0 1\n0 1 1\n1 1 1\n");
    CommandResult res3 = cmd_hyperbolic(fd.path);
    for (const auto& row : res3.report.real_rows)
        CHECK(row[3] == Approx(1.0 / 3.0).margin(1e-10));  // mass column
}

TEST_CASE("cmd_cover matches cmd_canon under the trivial group") {
    TempFile fg("banana.txt", kBananaText);
    TempFile fv("trivial.json", R"({"group": {"type": "Z^k mod n", "k": 0, "n": 1}})");
    CommandResult cover = cmd_cover(fg.path, fv.path);
    CommandResult canon = cmd_canon(fg.path);
    CHECK(cover.exit_code == 0);
    REQUIRE(cover.report.real_rows.size() == canon.report.real_rows.size());
    for (std::size_t i = 0; i < cover.report.real_rows.size(); ++i)
        CHECK(cover.report.real_rows[i][1] == Approx(canon.report.real_rows[i][1]).margin(1e-12));
}

TEST_CASE("cmd_cover: rose with (Z/2)^2 gives total 1.25") {
    TempFile fg("rose2.txt", "0 0 1\n0 0 1\n");
    TempFile fv("z22.json",
                R"({"group": {"type": "Z^k mod n", "k": 2, "n": 2},
                    "voltages": {"0": [1, 0], "1": [0, 1]}})");
    CommandResult res = cmd_cover(fg.path, fv.path);
    CHECK(res.exit_code == 0);
    CHECK(res.report.to_csv().find("# total_mass,1.250000000000") != std::string::npos);
}

TEST_CASE("cmd_tower: rose levels shrink toward the abelian limit") {
    TempFile fg("rose2.txt", "0 0 1\n0 0 1\n");
    CommandResult res = cmd_tower(fg.path, "homology", {2, 4, 8});
    CHECK(res.exit_code == 0);
    // gap column strictly shrinking per level (two edges per level)
    std::vector<double> gaps;
    for (std::size_t i = 0; i < res.report.real_rows.size(); i += 2)
        gaps.push_back(res.report.real_rows[i].back());
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[0] > gaps[1]);
    CHECK(gaps[1] > gaps[2]);
    CHECK(gaps[2] == Approx(0.5 / 64.0).margin(1e-9));

    CHECK_THROWS_AS(cmd_tower(fg.path, "congruence", {2}), ValidationError);
}

TEST_CASE("cmd_tower: circle levels carry mass 1/n with limit 0") {
    TempFile fg("circle.txt", "0 0 1\n");
    CommandResult res = cmd_tower(fg.path, "homology", {2, 5});
    REQUIRE(res.report.real_rows.size() == 2);
    CHECK(res.report.real_rows[0][1] == Approx(0.5).margin(1e-9));
    CHECK(res.report.real_rows[1][1] == Approx(0.2).margin(1e-9));
    CHECK(res.report.real_rows[1][2] == 0.0);  // limit 1 - 1/1
}

TEST_CASE("cmd_tower: non-rose bases omit the limit column with a note") {
    TempFile fg("k4ish.txt", "0 1 1\n1 2 1\n2 0 1\n0 1 1\n");
    CommandResult res = cmd_tower(fg.path, "homology", {2});
    CHECK(res.exit_code == 0);
    CHECK(res.report.real_cols == std::vector<std::string>{"length", "mass"});
    bool noted = false;
    for (const auto& [k, v] : res.report.notes) noted = noted || k == "limit";
    CHECK(noted);
}

TEST_CASE("cmd_check passes on the banana and fails loudly on bad input") {
    TempFile f("banana.txt", kBananaText);
    CommandResult res = cmd_check(f.path);
    CHECK(res.exit_code == 0);

    TempFile bad("disconnected.txt", "0 1 1\n2 3 1\n");
    CHECK_THROWS_AS(cmd_check(bad.path), ValidationError);
}

TEST_CASE("cmd_check random corpus is deterministic and passes") {
    CommandResult a = cmd_check("", 12, 8, 7);
    CommandResult b = cmd_check("", 12, 8, 7);
    CHECK(a.exit_code == 0);
    CHECK(a.report.to_csv() == b.report.to_csv());
    CHECK(a.report.to_json() == b.report.to_json());
}

TEST_CASE("reports: identical runs are byte-identical, totals match printed sums") {
    TempFile f("banana.txt", kBananaText);
    CommandResult a = cmd_canon(f.path);
    CommandResult b = cmd_canon(f.path);
    CHECK(a.report.to_csv() == b.report.to_csv());

    // the printed total equals the sum of printed mass entries
    double sum = 0;
    for (const auto& row : a.report.real_rows) sum += round12(row[1]);
    for (const auto& [name, value] : a.report.totals)
        if (name == "total_mass") CHECK(fixed12(value) == fixed12(sum));
}

TEST_CASE("json report carries full precision") {
    TempFile f("banana.txt", kBananaText);
    CommandResult res = cmd_hyperbolic(f.path);
    const std::string js = res.report.to_json();
    auto parsed = nlohmann::json::parse(js);
    const double mass0 = parsed["rows"][0]["mass"].get<double>();
    CHECK(mass0 == Approx(testutil::banana_hyp_m1).margin(1e-14));
}
