// Copyright 2026 The graphstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Text formats. Vertices are 1-based on disk.
//
// graph:  {"convention": "real"|"complex", "n": 3,
//          "edges": [{"u": 1, "v": 2, "w": [re, im]}], "loops": [{"v": 1, "w": re}]}
// matrix: {"n": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}
// kraus:  {"in_dim": n, "out_dim": m, "operators": [{"sign": "+", "n": ..., "entries": ...}]}

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "graphstate/error.hpp"
#include "graphstate/graph.hpp"
#include "graphstate/kraus.hpp"
#include "graphstate/matrix.hpp"

namespace graphstate::io {

using nlohmann::json;

/// 12 significant digits, lowercase exponent, no negative zero.
inline std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_complex(Complex z) {
    return "[" + format_number(z.real()) + ", " + format_number(z.imag()) + "]";
}

inline std::string format_graph(const WeightedGraph &g) {
    std::ostringstream out;
    out << "{\n  \"convention\": \"" << to_string(g.convention()) << "\",\n  \"n\": " << g.n() << ",\n  \"edges\": [";
    bool first = true;
    for (const auto &[k, w] : g.edges()) {
        out << (first ? "\n" : ",\n") << "    {\"u\": " << k.first + 1 << ", \"v\": " << k.second + 1
            << ", \"w\": " << format_complex(w) << "}";
        first = false;
    }
    out << (first ? "]" : "\n  ]") << ",\n  \"loops\": [";
    first = true;
    for (const auto &[v, w] : g.loops()) {
        out << (first ? "\n" : ",\n") << "    {\"v\": " << v + 1 << ", \"w\": " << format_number(w) << "}";
        first = false;
    }
    out << (first ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

namespace detail {

inline void write_entries(std::ostringstream &out, const Matrix &m, const std::string &indent) {
    out << "\"entries\": [";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i == 0 ? "\n" : ",\n") << indent << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << (j == 0 ? "" : ", ") << format_complex(m(i, j));
        }
        out << "]";
    }
    out << (m.rows() == 0 ? "]" : "\n" + indent + "]");
}

inline void write_shape(std::ostringstream &out, const Matrix &m) {
    if (m.is_square()) {
        out << "\"n\": " << m.rows();
    } else {
        out << "\"rows\": " << m.rows() << ", \"cols\": " << m.cols();
    }
}

}  // namespace detail

inline std::string format_matrix(const Matrix &m) {
    std::ostringstream out;
    out << "{\n  ";
    detail::write_shape(out, m);
    out << ",\n  ";
    detail::write_entries(out, m, "  ");
    out << "\n}\n";
    return out.str();
}

inline std::string format_kraus(const KrausSet &k) {
    std::ostringstream out;
    out << "{\n  \"in_dim\": " << k.in_dim << ",\n  \"out_dim\": " << k.out_dim << ",\n  \"operators\": [";
    bool first = true;
    auto emit = [&](const KrausOperator &op, const char *sign) {
        out << (first ? "\n" : ",\n") << "    {\"sign\": \"" << sign << "\", ";
        detail::write_shape(out, op.op);
        out << ",\n     ";
        detail::write_entries(out, op.op, "     ");
        out << "}";
        first = false;
    };
    for (const auto &a : k.positive) {
        emit(a, "+");
    }
    for (const auto &b : k.negative) {
        emit(b, "-");
    }
    out << (first ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

namespace detail {

[[noreturn]] inline void fail(const std::string &where, const std::string &what) {
    throw Error(ErrorKind::FormatError, where + ": " + what);
}

inline const json &field(const json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        fail(where, std::string("missing \"") + key + "\"");
    }
    return j.at(key);
}

inline std::size_t index_field(const json &j, const char *key, const std::string &where) {
    const json &v = field(j, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        fail(where + "." + key, "expected a positive integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

inline double real_number(const json &v, const std::string &where) {
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    return v.get<double>();
}

inline Complex complex_number(const json &v, const std::string &where) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (!v.is_array() || v.size() != 2) {
        fail(where, "expected [re, im]");
    }
    return {real_number(v[0], where + "[0]"), real_number(v[1], where + "[1]")};
}

}  // namespace detail

inline json parse_json(const std::string &text, const std::string &source = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::FormatError, source + ": " + e.what());
    }
}

inline bool looks_like_graph(const json &j) {
    return j.is_object() && j.contains("edges");
}

inline WeightedGraph graph_from_json(const json &j) {
    const json &conv = detail::field(j, "convention", "graph");
    Convention convention;
    if (conv == "real") {
        convention = Convention::RealSigned;
    } else if (conv == "complex") {
        convention = Convention::ComplexHermitian;
    } else {
        detail::fail("graph.convention", "expected \"real\" or \"complex\"");
    }
    const std::size_t n = detail::index_field(j, "n", "graph");
    std::vector<Edge> edges;
    std::set<VertexPair> seen;
    const json &ej = detail::field(j, "edges", "graph");
    if (!ej.is_array()) {
        detail::fail("graph.edges", "expected an array");
    }
    for (std::size_t i = 0; i < ej.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const std::size_t u = detail::index_field(ej[i], "u", where);
        const std::size_t v = detail::index_field(ej[i], "v", where);
        if (u >= v) {
            detail::fail(where, "requires u < v");
        }
        if (v > n) {
            detail::fail(where, "vertex exceeds n");
        }
        if (!seen.insert({u, v}).second) {
            detail::fail(where, "duplicate pair");
        }
        const Complex w = detail::complex_number(detail::field(ej[i], "w", where), where + ".w");
        if (convention == Convention::RealSigned && w.imag() != 0.0) {
            detail::fail(where + ".w", "imaginary part in a real graph");
        }
        if (w == Complex{}) {
            detail::fail(where + ".w", "zero weight");
        }
        edges.push_back({u - 1, v - 1, w});
    }
    std::vector<Loop> loops;
    std::set<std::size_t> looped;
    if (j.contains("loops")) {
        const json &lj = j.at("loops");
        if (!lj.is_array()) {
            detail::fail("graph.loops", "expected an array");
        }
        for (std::size_t i = 0; i < lj.size(); ++i) {
            const std::string where = "loops[" + std::to_string(i) + "]";
            const std::size_t v = detail::index_field(lj[i], "v", where);
            if (v > n) {
                detail::fail(where, "vertex exceeds n");
            }
            if (!looped.insert(v).second) {
                detail::fail(where, "duplicate loop");
            }
            const double w = detail::real_number(detail::field(lj[i], "w", where), where + ".w");
            if (w == 0.0) {
                detail::fail(where + ".w", "zero weight");
            }
            loops.push_back({v - 1, w});
        }
    }
    return WeightedGraph(convention, n, edges, loops);
}

inline Matrix matrix_from_json(const json &j) {
    const std::size_t n = detail::index_field(j, "n", "matrix");
    const json &rows = detail::field(j, "entries", "matrix");
    if (!rows.is_array() || rows.size() != n) {
        detail::fail("matrix.entries", "expected " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) {
            detail::fail("entries[" + std::to_string(r) + "]", "expected " + std::to_string(n) + " columns");
        }
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = detail::complex_number(rows[r][c], "entries[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::FormatError, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::FormatError, "cannot write " + path);
    }
    out << text;
}

inline WeightedGraph load_graph(const std::string &path) {
    return graph_from_json(parse_json(read_file(path), path));
}

inline Matrix load_matrix(const std::string &path) {
    return matrix_from_json(parse_json(read_file(path), path));
}

}  // namespace graphstate::io
