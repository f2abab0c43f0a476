#pragma once

// File formats: state and partition specs as strict JSON (unknown keys are
// rejected so typos fail loudly), sweep tables as CSV with 12 significant
// digits.  Parsing is split from file handling so tests can feed documents
// directly.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwm/bounds.hpp"
#include "gwm/gw_states.hpp"

namespace gwm {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                const std::vector<std::string>& known,
                                const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const std::string& k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw std::runtime_error(std::string(where) + ": unknown field \"" +
                                     it.key() + "\"");
    }
}

// Accepts both signed and unsigned JSON integer storage (text parsing yields
// unsigned for non-negative literals, programmatic construction may not) but
// insists on a strictly positive value.
inline std::size_t positive_integer(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw std::runtime_error(std::string(what) +
                                 " must be a positive integer");
    return v.get<std::size_t>();
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

} // namespace detail

/// Parses a state spec document:
///   {"d": 2, "n": 4, "coeffs": [{"site": 1, "level": 1, "re": 0.5, "im": 0}]}
/// "level" defaults to 1 and "im" to 0; any unknown field is an error.
/// The result is validated (normalization, ranges, duplicates).
inline GWStateSpec parse_state_spec(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw std::runtime_error("state spec: top level must be an object");
    detail::reject_unknown_keys(doc, {"d", "n", "coeffs"}, "state spec");
    if (!doc.contains("d") || !doc.contains("n") || !doc.contains("coeffs"))
        throw std::runtime_error("state spec: fields d, n, coeffs are required");
    GWStateSpec spec;
    spec.d = detail::positive_integer(doc["d"], "state spec: d");
    spec.n = detail::positive_integer(doc["n"], "state spec: n");
    if (!doc["coeffs"].is_array())
        throw std::runtime_error("state spec: coeffs must be an array");
    for (const nlohmann::json& c : doc["coeffs"]) {
        if (!c.is_object())
            throw std::runtime_error("state spec: each coeff must be an object");
        detail::reject_unknown_keys(c, {"site", "level", "re", "im"},
                                    "state spec coeff");
        if (!c.contains("site") || !c.contains("re"))
            throw std::runtime_error("state spec coeff: site and re are required");
        GWCoeff gc;
        gc.site = detail::positive_integer(c["site"], "state spec coeff: site");
        gc.level = 1;
        if (c.contains("level"))
            gc.level =
                detail::positive_integer(c["level"], "state spec coeff: level");
        if (!c["re"].is_number())
            throw std::runtime_error("state spec coeff: re must be a number");
        const double re = c["re"].get<double>();
        double im = 0.0;
        if (c.contains("im")) {
            if (!c["im"].is_number())
                throw std::runtime_error("state spec coeff: im must be a number");
            im = c["im"].get<double>();
        }
        gc.b = cplx(re, im);
        spec.coeffs.push_back(gc);
    }
    validate_spec(spec);
    return spec;
}

/// Parses a partition document: {"parties": [[1], [2], [3]]} with an
/// optional "traced" list that must equal the complement of the parties.
/// Validation (disjointness, ranges) runs against site count n.
inline Partition parse_partition(const nlohmann::json& doc, std::size_t n) {
    if (!doc.is_object())
        throw std::runtime_error("partition: top level must be an object");
    detail::reject_unknown_keys(doc, {"parties", "traced"}, "partition");
    if (!doc.contains("parties") || !doc["parties"].is_array())
        throw std::runtime_error("partition: parties array is required");
    Partition part;
    for (const nlohmann::json& p : doc["parties"]) {
        if (!p.is_array() || p.empty())
            throw std::runtime_error("partition: each party must be a non-empty "
                                     "array of sites");
        std::vector<std::size_t> sites;
        for (const nlohmann::json& s : p)
            sites.push_back(detail::positive_integer(s, "partition: site"));
        part.parties.push_back(std::move(sites));
    }
    validate_partition(part, n);
    if (doc.contains("traced")) {
        if (!doc["traced"].is_array())
            throw std::runtime_error("partition: traced must be an array");
        std::vector<std::size_t> declared;
        for (const nlohmann::json& s : doc["traced"])
            declared.push_back(
                detail::positive_integer(s, "partition: traced site"));
        std::sort(declared.begin(), declared.end());
        const std::vector<std::size_t> actual = traced_sites(part, n);
        if (declared != actual)
            throw std::runtime_error("partition: traced list does not match the "
                                     "complement of the parties");
    }
    return part;
}

inline GWStateSpec load_state_spec(const std::string& path) {
    return parse_state_spec(detail::load_json_file(path));
}

inline Partition load_partition(const std::string& path, std::size_t n) {
    return parse_partition(detail::load_json_file(path), n);
}

/// CSV serialization: comma-separated header, one row per grid point,
/// values with 12 significant digits.  Deterministic byte-for-byte.
inline void write_csv(const SweepTable& tab, std::ostream& out) {
    for (std::size_t i = 0; i < tab.columns.size(); ++i) {
        if (i)
            out << ',';
        out << tab.columns[i];
    }
    out << '\n';
    char buf[40];
    for (const std::vector<double>& row : tab.rows) {
        if (row.size() != tab.columns.size())
            throw std::invalid_argument("write_csv: row width " +
                                        std::to_string(row.size()) +
                                        " does not match header width " +
                                        std::to_string(tab.columns.size()));
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out << ',';
            std::snprintf(buf, sizeof buf, "%.12g", row[i]);
            out << buf;
        }
        out << '\n';
    }
}

inline std::string format_csv(const SweepTable& tab) {
    std::ostringstream ss;
    write_csv(tab, ss);
    return ss.str();
}

inline void save_csv(const SweepTable& tab, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_csv(tab, out);
}

} // namespace gwm
