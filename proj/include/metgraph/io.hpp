#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "metgraph/cover.hpp"
#include "metgraph/graph.hpp"

namespace metgraph {

/// Text graph format: one `u v length` per line, `#` starts a comment,
/// blank lines allowed. Vertices are nonnegative integers.
inline MetricGraph parse_graph_text(std::istream& in, const std::string& source = "<input>") {
    std::vector<EdgeSpec> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u, v;
        double len;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v >> len))
            throw ValidationError(source + ":" + std::to_string(lineno) +
                                  ": expected `u v length`");
        std::string rest;
        if (ls >> rest)
            throw ValidationError(source + ":" + std::to_string(lineno) +
                                  ": trailing tokens after `u v length`");
        if (u < 0 || v < 0)
            throw ValidationError(source + ":" + std::to_string(lineno) +
                                  ": negative vertex id");
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), len});
    }
    try {
        return MetricGraph(std::move(edges));
    } catch (const ValidationError& err) {
        throw ValidationError(source + ": " + err.what());
    }
}

/// JSON alternative: { "edges": [[u, v, length], ...] }.
inline MetricGraph parse_graph_json(const std::string& text, const std::string& source = "<input>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(source + ": " + err.what());
    }
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ValidationError(source + ": missing \"edges\" array");
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& row = j["edges"][i];
        if (!row.is_array() || row.size() != 3)
            throw ValidationError(source + ": edge " + std::to_string(i) +
                                  " must be [u, v, length]");
        edges.push_back({row[0].get<VertexId>(), row[1].get<VertexId>(),
                         row[2].get<double>()});
    }
    try {
        return MetricGraph(std::move(edges));
    } catch (const ValidationError& err) {
        throw ValidationError(source + ": " + err.what());
    }
}

inline std::string write_graph_text(const MetricGraph& g) {
    std::ostringstream out;
    out << "# u v length\n";
    out.precision(17);
    for (const auto& e : g.edges()) out << e.u << " " << e.v << " " << e.length << "\n";
    return out.str();
}

inline std::string write_graph_json(const MetricGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.length});
    return nlohmann::json{{"edges", edges}}.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads either format: files ending in .json (or whose first non-space
/// byte is '{') are parsed as JSON, everything else as text.
inline MetricGraph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool json_like =
        (path.size() > 5 && path.substr(path.size() - 5) == ".json") ||
        (first != std::string::npos && text[first] == '{');
    if (json_like) return parse_graph_json(text, path);
    std::istringstream in(text);
    return parse_graph_text(in, path);
}

/// Voltage spec:
/// {
///   "group": {"type": "Z^k mod n", "k": 2, "n": 4} | {"type": "table", "mul": [[...]]},
///   "voltages": { "<edge id>": [coeffs...] | <element index> }
/// }
/// Edges absent from "voltages" carry the identity.
inline VoltageCover parse_voltage_json(const std::string& text, const MetricGraph& base,
                                       const std::string& source = "<input>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(source + ": " + err.what());
    }
    if (!j.contains("group"))
        throw ValidationError(source + ": missing \"group\"");
    const auto& gj = j["group"];
    const std::string type = gj.value("type", "");
    FiniteGroup grp = FiniteGroup::trivial();
    int zk_k = 0, zk_n = 1;
    if (type == "Z^k mod n") {
        zk_k = gj.value("k", -1);
        zk_n = gj.value("n", -1);
        if (zk_k < 0 || zk_n < 1)
            throw ValidationError(source + ": Z^k mod n needs fields k >= 0 and n >= 1");
        grp = FiniteGroup::power(zk_n, zk_k);
    } else if (type == "table") {
        if (!gj.contains("mul"))
            throw ValidationError(source + ": table group needs \"mul\"");
        grp = FiniteGroup::from_table(gj["mul"].get<std::vector<std::vector<int>>>());
    } else {
        throw ValidationError(source + ": unknown group type \"" + type + "\"");
    }

    std::vector<int> volt(base.edge_count(), grp.identity());
    if (j.contains("voltages")) {
        for (const auto& [key, val] : j["voltages"].items()) {
            int e = -1;
            try {
                e = std::stoi(key);
            } catch (...) {
                throw ValidationError(source + ": voltage key \"" + key +
                                      "\" is not an edge id");
            }
            if (e < 0 || e >= base.edge_count())
                throw ValidationError(source + ": voltage edge id " + key + " out of range");
            if (val.is_array()) {
                if (type != "Z^k mod n")
                    throw ValidationError(source + ": coefficient voltages need a Z^k group");
                const auto coeffs = val.get<std::vector<long long>>();
                if (static_cast<int>(coeffs.size()) != zk_k)
                    throw ValidationError(source + ": voltage for edge " + key +
                                          " needs " + std::to_string(zk_k) + " coefficients");
                long long idx = 0, p = 1;
                for (int i = 0; i < zk_k; ++i) {
                    long long c = ((coeffs[i] % zk_n) + zk_n) % zk_n;
                    idx += c * p;
                    p *= zk_n;
                }
                volt[e] = static_cast<int>(idx);
            } else if (val.is_number_integer()) {
                const int idx = val.get<int>();
                if (idx < 0 || idx >= grp.order())
                    throw ValidationError(source + ": voltage element index out of range");
                volt[e] = idx;
            } else {
                throw ValidationError(source + ": voltage for edge " + key +
                                      " must be an index or coefficient array");
            }
        }
    }
    return VoltageCover(base, std::move(grp), std::move(volt));
}

inline VoltageCover load_voltage_cover(const std::string& path, const MetricGraph& base) {
    return parse_voltage_json(read_file(path), base, path);
}

/// FNV-1a 64-bit digest of raw bytes, printed as 16 hex digits. Identifies
/// inputs in reports without pulling in a crypto dependency.
inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace metgraph
