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

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "graphstate/graphstate.hpp"
#include "graphstate/io.hpp"

namespace graphstate::cli {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using Input = std::variant<WeightedGraph, Matrix>;

inline Input load_input(const std::string &path) {
    const auto j = io::parse_json(io::read_file(path), path);
    if (io::looks_like_graph(j)) {
        return io::graph_from_json(j);
    }
    return io::matrix_from_json(j);
}

inline WeightedGraph require_graph(const Input &in, const std::string &what) {
    if (const auto *g = std::get_if<WeightedGraph>(&in)) {
        return *g;
    }
    throw UsageError(what + " needs a graph file");
}

inline Convention parse_convention(const std::string &s) {
    if (s == "real") {
        return Convention::RealSigned;
    }
    if (s == "complex") {
        return Convention::ComplexHermitian;
    }
    throw UsageError("convention must be real or complex");
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

// Accepts decimals and simple fractions such as 1/3.
inline double parse_number(const std::string &s) {
    try {
        const auto slash = s.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(s, &used);
            if (used != s.size()) {
                throw UsageError("bad number '" + s + "'");
            }
            return v;
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        const double a = std::stod(num, &used);
        if (used != num.size()) {
            throw UsageError("bad number '" + s + "'");
        }
        const double b = std::stod(den, &used);
        if (used != den.size() || b == 0.0) {
            throw UsageError("bad number '" + s + "'");
        }
        return a / b;
    } catch (const std::logic_error &) {
        throw UsageError("bad number '" + s + "'");
    }
}

inline std::size_t parse_index(const std::string &s) {
    const double v = parse_number(s);
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw UsageError("bad vertex '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

inline BipartiteShape parse_shape(const std::string &s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) {
        throw UsageError("shape must be p,q");
    }
    return {parse_index(parts[0]), parse_index(parts[1])};
}

inline void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        io::write_file(path, text);
    }
}

inline std::string render(const WeightedGraph &g, const std::string &as) {
    if (as == "matrix") {
        return io::format_matrix(density_from_graph(g).matrix());
    }
    return io::format_graph(g);
}

inline std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x == 0.0 ? 0.0 : x);
    return buf;
}

}  // namespace detail

/// Runs the command line tool; returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Graphs, Laplacians and the density matrices they define"};
    app.require_subcommand(1);

    std::string out_path;
    std::string emit_as = "graph";
    auto add_emit = [&](CLI::App *sub) {
        sub->add_option("--out", out_path, "Write the result here instead of stdout");
        sub->add_option("--emit", emit_as, "graph or matrix")->check(CLI::IsMember({"graph", "matrix"}));
    };

    // convert
    std::string convert_in, convert_to, convention = "real";
    bool observable = false;
    auto *convert = app.add_subcommand("convert", "Graph <-> matrix");
    convert->add_option("input", convert_in)->required();
    convert->add_option("--to", convert_to)->required()->check(CLI::IsMember({"graph", "matrix"}));
    convert->add_option("--convention", convention)->check(CLI::IsMember({"real", "complex"}));
    convert->add_flag("--observable", observable, "Treat the matrix as an operator (no trace or positivity)");
    convert->add_option("--out", out_path);

    // check
    std::string check_in;
    bool want_psd = false, want_pure = false, want_entropy = false, want_graphical = false;
    auto *check = app.add_subcommand("check", "Positivity, purity, entropy, graphical tests");
    check->add_option("input", check_in)->required();
    check->add_flag("--psd", want_psd);
    check->add_flag("--pure", want_pure);
    check->add_flag("--entropy", want_entropy);
    check->add_flag("--graphical", want_graphical);
    check->add_option("--convention", convention)->check(CLI::IsMember({"real", "complex"}));

    // product
    std::vector<std::string> product_in;
    std::string kind;
    auto *product = app.add_subcommand("product", "Tensor, modified tensor or Cartesian product");
    product->add_option("inputs", product_in)->required()->expected(2);
    product->add_option("--kind", kind)->required()->check(CLI::IsMember({"tensor", "modified", "cartesian"}));
    add_emit(product);

    // mix
    std::vector<std::string> mix_in;
    std::string weights;
    auto *mixc = app.add_subcommand("mix", "Convex combination of states");
    mixc->add_option("inputs", mix_in)->required()->expected(1, -1);
    mixc->add_option("--weights", weights)->required();
    add_emit(mixc);

    // ptrace
    std::string ptrace_in, dims, keep = "first";
    auto *ptrace = app.add_subcommand("ptrace", "Partial trace");
    ptrace->add_option("input", ptrace_in)->required();
    ptrace->add_option("--dims", dims)->required();
    ptrace->add_option("--keep", keep)->check(CLI::IsMember({"first", "second"}));
    add_emit(ptrace);

    // separability
    std::string sep_in, shape, method;
    auto *sep = app.add_subcommand("separability", "Separability tests on a bipartite state");
    sep->add_option("input", sep_in)->required();
    sep->add_option("--shape", shape)->required();
    sep->add_option("--method", method)->required()->check(CLI::IsMember({"degree", "ppt", "partner-edges"}));

    // kraus
    std::string kraus_in, edit, kraus_out;
    auto *kraus = app.add_subcommand("kraus", "Graph edit as a quantum operation");
    kraus->add_option("input", kraus_in)->required();
    kraus->add_option("--edit", edit, "del-edge:u,v | add-edge:u,v,w | del-loop:v | add-loop:v,w | del-vertex:v | add-vertex")
        ->required();
    kraus->add_option("--kraus-out", kraus_out, "Write the Kraus operators here");
    kraus->add_option("--out", out_path);
    std::string kraus_emit = "matrix";
    kraus->add_option("--emit", kraus_emit)->check(CLI::IsMember({"graph", "matrix"}));

    // psd-pure
    int exponent = 0;
    auto *pure = app.add_subcommand("psd-pure", "Signed complete graph with a pure state on 2^k vertices");
    pure->add_option("--n-exponent", exponent)->required()->check(CLI::Range(1, 12));
    add_emit(pure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (convert->parsed()) {
            const auto in = detail::load_input(convert_in);
            const Convention conv = detail::parse_convention(convention);
            std::string text;
            if (const auto *g = std::get_if<WeightedGraph>(&in)) {
                if (convert_to == "matrix") {
                    text = io::format_matrix(observable ? laplacian(*g).matrix() : density_from_graph(*g).matrix());
                } else if (observable) {
                    text = io::format_graph(observable_graph(laplacian(*g), conv));
                } else {
                    text = io::format_graph(graph_from_density(density_from_graph(*g), conv));
                }
            } else {
                const HermitianMatrix h = make_hermitian(std::get<Matrix>(in));
                if (convert_to == "matrix") {
                    text = io::format_matrix(observable ? h.matrix() : DensityMatrix(h).matrix());
                } else {
                    text = io::format_graph(observable ? observable_graph(h, conv)
                                                       : graph_from_density(DensityMatrix(h), conv));
                }
            }
            detail::emit(text, out_path, out);
        } else if (check->parsed()) {
            const auto in = detail::load_input(check_in);
            if (!want_psd && !want_pure && !want_entropy && !want_graphical) {
                want_psd = want_pure = want_entropy = true;
                want_graphical = std::holds_alternative<WeightedGraph>(in);
            }
            const auto *g = std::get_if<WeightedGraph>(&in);
            const HermitianMatrix h = g ? laplacian(*g) : make_hermitian(std::get<Matrix>(in));
            if (want_psd) {
                const double lo = min_eigenvalue(h);
                out << "psd: " << (lo >= -psd_tolerance(h) ? "true" : "false") << "\n";
            }
            if (want_pure) {
                bool is_p;
                if (g) {
                    is_p = is_pure(*g);
                } else {
                    const DensityMatrix rho(h);
                    const double purity = (rho.matrix() * rho.matrix()).trace().real();
                    is_p = std::abs(purity - 1.0) <= 1e-10;
                }
                out << "pure: " << (is_p ? "true" : "false") << "\n";
            }
            if (want_entropy) {
                const DensityMatrix rho = g ? density_from_graph(*g) : DensityMatrix(h);
                out << "entropy: " << detail::fixed6(von_neumann_entropy(rho)) << " bits\n";
            }
            if (want_graphical) {
                const WeightedGraph gg = g ? *g : observable_graph(h, detail::parse_convention(convention));
                const PsdReport r = graphical_psd_check(gg);
                out << "graphical: " << to_string(r.verdict) << "\n";
                err << "graphical: rule " << to_string(r.rule);
                if (!r.detail.empty()) {
                    err << " (" << r.detail << ")";
                }
                err << "\n";
            }
        } else if (product->parsed()) {
            const WeightedGraph g = io::load_graph(product_in[0]);
            const WeightedGraph h = io::load_graph(product_in[1]);
            const WeightedGraph r = kind == "tensor" ? tensor(g, h) : kind == "modified" ? modified_tensor(g, h)
                                                                                        : cartesian(g, h);
            detail::emit(detail::render(r, emit_as), out_path, out);
        } else if (mixc->parsed()) {
            std::vector<double> p;
            for (const auto &s : detail::split(weights, ',')) {
                p.push_back(detail::parse_number(s));
            }
            if (p.size() != mix_in.size()) {
                throw UsageError("one weight per input is required");
            }
            std::vector<WeightedGraph> gs;
            for (const auto &path : mix_in) {
                gs.push_back(io::load_graph(path));
            }
            const WeightedGraph r = mix(std::span<const double>(p), std::span<const WeightedGraph>(gs));
            detail::emit(detail::render(r, emit_as), out_path, out);
        } else if (ptrace->parsed()) {
            const WeightedGraph g = io::load_graph(ptrace_in);
            const WeightedGraph r =
                partial_trace(g, detail::parse_shape(dims), keep == "first" ? Keep::First : Keep::Second);
            detail::emit(detail::render(r, emit_as), out_path, out);
        } else if (sep->parsed()) {
            const auto in = detail::load_input(sep_in);
            const BipartiteShape bs = detail::parse_shape(shape);
            SeparabilityVerdict v;
            if (method == "ppt") {
                const auto *g = std::get_if<WeightedGraph>(&in);
                v = ppt_oracle(g ? density_from_graph(*g) : DensityMatrix(make_hermitian(std::get<Matrix>(in))), bs);
            } else if (method == "degree") {
                v = degree_criterion(detail::require_graph(in, "degree method"), bs);
            } else {
                v = partner_edge_criterion(detail::require_graph(in, "partner-edges method"), bs);
            }
            out << to_record(v) << "\n";
        } else if (kraus->parsed()) {
            const WeightedGraph g = io::load_graph(kraus_in);
            const auto colon = edit.find(':');
            const std::string op = edit.substr(0, colon);
            const auto args = colon == std::string::npos ? std::vector<std::string>{}
                                                          : detail::split(edit.substr(colon + 1), ',');
            auto need = [&](std::size_t k) {
                if (args.size() != k) {
                    throw UsageError("edit '" + op + "' takes " + std::to_string(k) + " arguments");
                }
            };
            std::vector<KrausSet> stages;
            WeightedGraph result = g;
            if (op == "del-edge") {
                need(2);
                auto r = delete_edge(g, detail::parse_index(args[0]) - 1, detail::parse_index(args[1]) - 1);
                stages.push_back(std::move(r.kraus));
                result = std::move(r.result);
            } else if (op == "add-edge") {
                need(3);
                auto r = add_edge(g, detail::parse_index(args[0]) - 1, detail::parse_index(args[1]) - 1,
                                  detail::parse_number(args[2]));
                stages.push_back(std::move(r.kraus));
                result = std::move(r.result);
            } else if (op == "del-loop") {
                need(1);
                auto r = delete_loop(g, detail::parse_index(args[0]) - 1);
                stages.push_back(std::move(r.kraus));
                result = std::move(r.result);
            } else if (op == "add-loop") {
                need(2);
                auto r = add_loop(g, detail::parse_index(args[0]) - 1, detail::parse_number(args[1]));
                stages.push_back(std::move(r.kraus));
                result = std::move(r.result);
            } else if (op == "del-vertex") {
                need(1);
                auto r = vertex_deletion(g, detail::parse_index(args[0]) - 1);
                for (auto &s : r.steps) {
                    stages.push_back(std::move(s.kraus));
                }
                stages.push_back(std::move(r.removal));
                result = std::move(r.result);
            } else if (op == "add-vertex") {
                need(0);
                stages.push_back(add_vertex_kraus(g.n()));
                result = add_vertex(g);
            } else {
                throw UsageError("unknown edit '" + op + "'");
            }
            // check every stage before reporting
            for (std::size_t s = 0; s < stages.size(); ++s) {
                const auto &k = stages[s];
                const double dev = max_abs_diff(completeness(k), Matrix::identity(k.in_dim));
                out << "stage " << s + 1 << ": " << k.positive.size() << " A, " << k.negative.size()
                    << " B, completeness " << (dev <= 1e-10 ? "ok" : "FAILED") << "\n";
            }
            if (!kraus_out.empty()) {
                std::string text;
                if (stages.size() == 1) {
                    text = io::format_kraus(stages.front());
                } else {
                    text = "[\n";
                    for (std::size_t s = 0; s < stages.size(); ++s) {
                        text += io::format_kraus(stages[s]);
                        if (s + 1 < stages.size()) {
                            text.insert(text.size() - 1, ",");
                        }
                    }
                    text += "]\n";
                }
                io::write_file(kraus_out, text);
            }
            if (!out_path.empty()) {
                io::write_file(out_path, detail::render(result, kraus_emit));
            }
        } else if (pure->parsed()) {
            detail::emit(detail::render(signed_complete_pure(exponent), emit_as), out_path, out);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kOk;
}

}  // namespace graphstate::cli
