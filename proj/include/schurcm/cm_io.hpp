#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurcm/symplectic.hpp"

namespace schurcm {

// On-disk form of a covariance matrix: party order, mode counts and the
// row-major 2n x 2n entry list. A single JSON document; numbers are written
// with 17 significant digits so save -> load -> save is byte-identical.
struct CmFile {
    std::vector<std::string> order;
    std::map<std::string, int> modes;
    std::vector<double> matrix;  // row-major
};

inline CmFile to_cm_file(const CovarianceMatrix& v) {
    CmFile f;
    for (const Party& p : v.partition().parties()) {
        f.order.push_back(p.label);
        f.modes[p.label] = p.modes;
    }
    f.matrix.reserve(static_cast<std::size_t>(v.dim() * v.dim()));
    for (Index r = 0; r < v.dim(); ++r)
        for (Index c = 0; c < v.dim(); ++c) f.matrix.push_back(v.matrix()(r, c));
    return f;
}

inline CovarianceMatrix from_cm_file(const CmFile& f) {
    std::vector<Party> parties;
    for (const std::string& label : f.order) {
        const auto it = f.modes.find(label);
        if (it == f.modes.end())
            throw ParseError("field 'modes' is missing an entry for party '" + label + "'");
        parties.push_back(Party{label, it->second});
    }
    if (f.modes.size() != f.order.size())
        throw ParseError("field 'modes' lists parties that are not in 'order'");
    const ModePartition partition(parties);
    const Index d = partition.dim();
    if (static_cast<Index>(f.matrix.size()) != d * d)
        throw ParseError("field 'matrix' has " + std::to_string(f.matrix.size()) +
                         " entries, expected " + std::to_string(d * d));
    Matrix m(d, d);
    for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) m(r, c) = f.matrix[static_cast<std::size_t>(d * r + c)];
    try {
        return CovarianceMatrix(m, partition);
    } catch (const Error& e) {
        throw ParseError("field 'matrix' is not a valid CM: " + std::string(e.what()));
    }
}

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

// Deterministic writer: fixed key order, one matrix row per line.
inline std::string serialize_cm(const CmFile& f) {
    std::ostringstream os;
    os << "{\n  \"order\": [";
    for (std::size_t i = 0; i < f.order.size(); ++i)
        os << (i ? ", " : "") << '"' << detail::json_escape(f.order[i]) << '"';
    os << "],\n  \"modes\": {";
    for (std::size_t i = 0; i < f.order.size(); ++i)
        os << (i ? ", " : "") << '"' << detail::json_escape(f.order[i])
           << "\": " << f.modes.at(f.order[i]);
    os << "},\n  \"matrix\": [\n";
    std::size_t d = 0;
    while (d * d < f.matrix.size()) ++d;
    for (std::size_t r = 0; r < d; ++r) {
        os << "    ";
        for (std::size_t c = 0; c < d; ++c) {
            os << detail::format_double(f.matrix[d * r + c]);
            if (d * r + c + 1 < f.matrix.size()) os << ",";
            if (c + 1 < d) os << " ";
        }
        os << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

inline CmFile parse_cm(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // translate byte offset into a line number for the diagnostic
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be a JSON object");
    for (const char* key : {"order", "modes", "matrix"})
        if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");

    CmFile f;
    if (!j["order"].is_array()) throw ParseError("field 'order' must be an array of strings");
    for (const auto& e : j["order"]) {
        if (!e.is_string()) throw ParseError("field 'order' must contain only strings");
        f.order.push_back(e.get<std::string>());
    }
    if (!j["modes"].is_object()) throw ParseError("field 'modes' must be an object");
    for (const auto& [k, val] : j["modes"].items()) {
        if (!val.is_number_integer() || val.get<int>() <= 0)
            throw ParseError("field 'modes." + k + "' must be a positive integer");
        f.modes[k] = val.get<int>();
    }
    if (!j["matrix"].is_array()) throw ParseError("field 'matrix' must be an array of numbers");
    for (const auto& e : j["matrix"]) {
        if (!e.is_number()) throw ParseError("field 'matrix' must contain only numbers");
        f.matrix.push_back(e.get<double>());
    }
    return f;
}

inline void save_cm_file(const std::string& path, const CmFile& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << serialize_cm(f);
}

inline void save_cm(const std::string& path, const CovarianceMatrix& v) {
    save_cm_file(path, to_cm_file(v));
}

inline CmFile load_cm_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_cm(ss.str());
}

inline CovarianceMatrix load_cm(const std::string& path) {
    return from_cm_file(load_cm_file(path));
}

}  // namespace schurcm
