#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace metgraph {

/// Round to the 12 decimals the CSV prints, so printed totals equal the sum
/// of the printed per-edge column exactly.
inline double round12(double x) {
    return std::round(x * 1e12) / 1e12;
}

inline std::string fixed12(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    std::string s(buf);
    if (s == "-0.000000000000") s = "0.000000000000";
    return s;
}

/// Deterministic run report: fixed 12-decimal CSV for humans, full-precision
/// JSON for machines. Wall time is tracked but kept out of the report body
/// so identical inputs give byte-identical output.
struct RunReport {
    std::string command;
    std::string input_digest;
    std::vector<std::string> int_cols;
    std::vector<std::string> real_cols;
    std::vector<std::vector<long long>> int_rows;
    std::vector<std::vector<double>> real_rows;
    std::vector<std::pair<std::string, double>> totals;
    std::vector<std::pair<std::string, std::string>> notes;  // residuals, iterations, status
    double wall_ms = 0.0;

    void add_row(std::vector<long long> ints, std::vector<double> reals) {
        int_rows.push_back(std::move(ints));
        real_rows.push_back(std::move(reals));
    }

    /// Sum of a real column as printed (rounded per entry first).
    double printed_column_sum(const std::string& col) const {
        double s = 0.0;
        for (std::size_t c = 0; c < real_cols.size(); ++c)
            if (real_cols[c] == col)
                for (const auto& row : real_rows)
                    if (std::isfinite(row[c])) s += round12(row[c]);
        return round12(s);
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "# command: " << command << "\n";
        out << "# input: " << input_digest << "\n";
        for (std::size_t c = 0; c < int_cols.size(); ++c)
            out << (c ? "," : "") << int_cols[c];
        for (std::size_t c = 0; c < real_cols.size(); ++c)
            out << (int_cols.empty() && c == 0 ? "" : ",") << real_cols[c];
        out << "\n";
        for (std::size_t r = 0; r < int_rows.size(); ++r) {
            for (std::size_t c = 0; c < int_rows[r].size(); ++c)
                out << (c ? "," : "") << int_rows[r][c];
            for (std::size_t c = 0; c < real_rows[r].size(); ++c)
                out << (int_rows[r].empty() && c == 0 ? "" : ",") << fixed12(real_rows[r][c]);
            out << "\n";
        }
        for (const auto& [name, value] : totals)
            out << "# " << name << "," << fixed12(value) << "\n";
        for (const auto& [name, value] : notes)
            out << "# " << name << "," << value << "\n";
        return out.str();
    }

    std::string to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["input_digest"] = input_digest;
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < int_rows.size(); ++r) {
            nlohmann::json row;
            for (std::size_t c = 0; c < int_rows[r].size(); ++c)
                row[int_cols[c]] = int_rows[r][c];
            for (std::size_t c = 0; c < real_rows[r].size(); ++c) {
                const double v = real_rows[r][c];
                if (std::isinf(v))
                    row[real_cols[c]] = "inf";
                else
                    row[real_cols[c]] = v;
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        for (const auto& [name, value] : totals) j[name] = value;
        for (const auto& [name, value] : notes) j[name] = value;
        return j.dump(2) + "\n";
    }
};

} // namespace metgraph
