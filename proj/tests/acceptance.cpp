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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace {

using namespace graphstate;
using namespace graphstate::testing;

struct Result {
    bool ok;
    std::string detail;
};

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Matrix sigma(const WeightedGraph &g) {
    return density_from_graph(g).matrix();
}

DensityMatrix state(const Matrix &m) {
    return DensityMatrix(HermitianMatrix(m, 1e-14));
}

Result round_trips() {
    const std::vector<Matrix> real{plus_pair_state(),  two_qubit_mixed_state(), maximally_mixed(4),
                                   two_qubit_mixed_reduced(), path_product_state(), looped_k4_state()};
    const std::vector<Matrix> complex{y_plus_state(), y_minus_state(), y_plus_plus_state(), complex_mixed_state()};
    double worst = 0;
    int count = 0;
    for (const Matrix &m : real) {
        for (Convention c : {Convention::RealSigned, Convention::ComplexHermitian}) {
            worst = std::max(worst, max_abs_diff(sigma(graph_from_density(state(m), c)), m));
            ++count;
        }
    }
    for (const Matrix &m : complex) {
        worst = std::max(worst, max_abs_diff(sigma(graph_from_density(state(m), Convention::ComplexHermitian)), m));
        ++count;
    }
    return {worst <= 1e-12, std::to_string(count) + " matrices, max deviation " + fmt("%.2e", worst)};
}

Result mixture() {
    const auto g1 = graph_from_density(state(uniform_four_state()), Convention::RealSigned);
    const auto g2 = graph_from_density(state(middle_pair_state()), Convention::RealSigned);
    const double dev = max_abs_diff(sigma(mix({1.0 / 3, 2.0 / 3}, {g1, g2})), middle_pair_mixture());
    return {dev <= 1e-12, "max deviation " + fmt("%.2e", dev)};
}

Result reduced_state() {
    const auto g = graph_from_density(state(two_qubit_mixed_state()), Convention::RealSigned);
    const Matrix graph_rule = sigma(partial_trace(g, {2, 2}));
    const double dev = max_abs_diff(graph_rule, two_qubit_mixed_reduced());
    const double oracle = max_abs_diff(graph_rule, reference_trace_second(two_qubit_mixed_state(), 2, 2));
    return {dev <= 1e-12 && oracle <= 1e-12, "vs expected " + fmt("%.2e", dev) + ", vs matrix oracle " + fmt("%.2e", oracle)};
}

Result factorization() {
    Random rng(1001);
    double worst_q = 0, worst_s = 0;
    int pairs = 0, states = 0;
    for (Convention c : {Convention::RealSigned, Convention::ComplexHermitian}) {
        const bool complex = c == Convention::ComplexHermitian;
        for (int trial = 0; trial < 1000; ++trial) {
            const WeightedGraph g = rng.graph(c, rng.index(1, 4), rng.uniform(0.3, 1.0), false, true, complex);
            const WeightedGraph h = rng.graph(c, rng.index(1, 4), rng.uniform(0.3, 1.0), false, true, complex);
            const WeightedGraph p = modified_tensor(g, h);
            worst_q = std::max(worst_q, max_abs_diff(laplacian(p).matrix(),
                                                     reference_kron(reference_laplacian(g), reference_laplacian(h))));
            ++pairs;
            if (reference_is_psd(reference_laplacian(g)) && reference_is_psd(reference_laplacian(h)) &&
                degree_sum(g) > 1e-9 && degree_sum(h) > 1e-9) {
                worst_s = std::max(worst_s, max_abs_diff(sigma(p), reference_kron(sigma(g), sigma(h))));
                ++states;
            }
        }
    }
    const double example = max_abs_diff(sigma(modified_tensor(unit_k2(), unit_path4())), path_product_state());
    return {worst_q <= 1e-12 && worst_s <= 1e-12 && example <= 1e-15 && states >= 200,
            std::to_string(pairs) + " pairs, Q dev " + fmt("%.2e", worst_q) + "; " + std::to_string(states) +
                " states, sigma dev " + fmt("%.2e", worst_s) + "; edge x path dev " + fmt("%.2e", example)};
}

Result kraus_fidelity() {
    const QuantumOperation op = delete_edge(signed_k4_graph(), 0, 1);
    const double dev = max_abs_diff(sigma(op.result), signed_k4_after_deletion());
    const double act = max_abs_diff(apply(op.kraus, signed_k4_state()), signed_k4_after_deletion());
    const double comp = max_abs_diff(completeness(op.kraus), Matrix::identity(4));
    const bool example = dev <= 1e-10 && act <= 1e-10 && comp <= 1e-10 && op.kraus.positive.size() == 24 &&
                         op.kraus.negative.size() == 4;

    Random rng(1002);
    double worst = 0, worst_comp = 0;
    int done = 0;
    while (done < 500) {
        const WeightedGraph g = rng.graph(Convention::RealSigned, rng.index(2, 7), 0.6, true, true, true);
        if (g.edges().empty() || g.edges().size() + g.loops().size() < 2) {
            continue;
        }
        auto it = g.edges().begin();
        std::advance(it, rng.index(0, g.edges().size() - 1));
        const QuantumOperation r = delete_edge(g, it->first.first, it->first.second);
        worst = std::max(worst, max_abs_diff(apply(r.kraus, sigma(g)), sigma(r.result)));
        worst_comp = std::max(worst_comp, max_abs_diff(completeness(r.kraus), Matrix::identity(g.n())));
        ++done;
    }
    return {example && worst <= 1e-10 && worst_comp <= 1e-10,
            std::to_string(op.kraus.positive.size()) + " A / " + std::to_string(op.kraus.negative.size()) +
                " B, state dev " + fmt("%.2e", std::max(dev, act)) + ", completeness " + fmt("%.2e", comp) + "; " +
                std::to_string(done) + " random deletions, dev " + fmt("%.2e", worst)};
}

Result separability() {
    const auto k4 = partner_edge_criterion(looped_k4_graph(), {2, 2});
    const auto k4_ppt = ppt_oracle(density_from_graph(looped_k4_graph()), {2, 2});
    const auto signed_ppt = ppt_oracle(density_from_graph(signed_k4_graph()), {2, 2});
    bool ok = k4.verdict == Verdict::Separable && k4_ppt.verdict == Verdict::Separable &&
              signed_ppt.verdict == Verdict::Entangled && signed_ppt.value && *signed_ppt.value < 0;

    Random rng(1003);
    const std::vector<BipartiteShape> shapes{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}};
    int graphs = 0, entangled = 0, disagree = 0;
    while (graphs < 1000) {
        const BipartiteShape s = shapes[rng.index(0, shapes.size() - 1)];
        const WeightedGraph g = rng.graph(Convention::RealSigned, s.p * s.q, rng.uniform(0.2, 0.8), true, false, false);
        if (g.edges().empty()) {
            continue;
        }
        ++graphs;
        if (degree_criterion(g, s).verdict == Verdict::Entangled) {
            ++entangled;
            disagree += ppt_oracle(density_from_graph(g), s).verdict != Verdict::Entangled;
        }
    }
    ok = ok && disagree == 0 && entangled > 0;
    return {ok, "constant K4 " + std::string(to_string(k4.verdict)) + ", signed K4 " +
                    std::string(to_string(signed_ppt.verdict)) + " (min eigenvalue " +
                    fmt("%.6f", signed_ppt.value.value_or(0)) + "); " + std::to_string(entangled) + " of " +
                    std::to_string(graphs) + " degree verdicts Entangled, " + std::to_string(disagree) +
                    " disagree with PPT"};
}

Result entropy() {
    double worst = 0;
    for (std::size_t n = 2; n <= 16; ++n) {
        worst = std::max(worst, std::abs(von_neumann_entropy(state(maximally_mixed(n))) - std::log2(double(n))));
    }
    std::vector<WeightedGraph> pure;
    for (const Matrix &m : {minus_state(), first_basis_state(), plus_pair_state(), minus_minus_state(), plus_state_2x3()}) {
        pure.push_back(graph_from_density(state(m), Convention::RealSigned));
    }
    for (int k = 1; k <= 4; ++k) {
        pure.push_back(signed_complete_pure(k));
    }
    double worst_pure = 0;
    bool all_pure = true;
    for (const auto &g : pure) {
        worst_pure = std::max(worst_pure, std::abs(von_neumann_entropy(density_from_graph(g))));
        all_pure = all_pure && is_pure(g);
    }
    return {worst <= 1e-9 && worst_pure <= 1e-9 && all_pure,
            "maximally mixed dev " + fmt("%.2e", worst) + "; " + std::to_string(pure.size()) +
                " pure graphs, max entropy " + fmt("%.2e", worst_pure) + (all_pure ? "" : ", purity test failed")};
}

Result psd_soundness() {
    Random rng(1004);
    int total = 0, decided = 0, wrong = 0;
    while (total < 10000) {
        const int kind = total % 5;
        WeightedGraph g = kind == 0   ? rng.graph(Convention::ComplexHermitian, rng.index(1, 7), rng.uniform(0.2, 1.0),
                                                  false, rng.chance(0.6), rng.chance(0.5))
                          : kind == 1 ? rng.tree(rng.index(2, 8), true)
                          : kind == 2 ? rng.cycle(rng.index(4, 8), true)
                                      : rng.graph(Convention::RealSigned, rng.index(1, 8), rng.uniform(0.2, 1.0),
                                                  rng.chance(0.3), rng.chance(0.6), rng.chance(0.5));
        if (kind == 1 && rng.chance(0.3)) {
            // trees with loops leave the tree rule to the others
            g = edge_union(g, WeightedGraph(Convention::RealSigned, g.n(), {}, {{0, rng.signed_weight()}}));
        }
        ++total;
        const PsdReport r = graphical_psd_check(g);
        if (r.verdict == PsdVerdict::Unknown) {
            continue;
        }
        ++decided;
        wrong += (r.verdict == PsdVerdict::PSD) != reference_is_psd(reference_laplacian(g));
    }

    int shapes = 0, unknown = 0, incorrect = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const bool cycle = trial % 2 == 1;
        const WeightedGraph g = cycle ? rng.cycle(rng.index(4, 10), true) : rng.tree(rng.index(2, 10), true);
        ++shapes;
        const PsdReport r = graphical_psd_check(g);
        if (r.verdict == PsdVerdict::Unknown) {
            ++unknown;
        } else {
            incorrect += (r.verdict == PsdVerdict::PSD) != reference_is_psd(reference_laplacian(g));
        }
    }
    return {wrong == 0 && unknown == 0 && incorrect == 0,
            std::to_string(total) + " graphs, " + std::to_string(decided) + " decided, " + std::to_string(wrong) +
                " wrong; " + std::to_string(shapes) + " trees/cycles, " + std::to_string(unknown) + " unknown, " +
                std::to_string(incorrect) + " wrong"};
}

Result signed_complete() {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 4; ++k) {
        const WeightedGraph g = signed_complete_pure(k);
        const std::size_t n = std::size_t{1} << k;
        std::vector<std::size_t> negative(n, 0);
        for (const auto &[key, w] : g.edges()) {
            if (w.real() < 0) {
                ++negative[key.first];
                ++negative[key.second];
            }
        }
        const std::size_t expect = (n / 2) - 1;
        bool shape = g.n() == n && g.edges().size() == n * (n - 1) / 2 && g.is_loop_free();
        for (Vertex v = 0; v < n; ++v) {
            shape = shape && negative[v] == expect && std::abs(degree(g, v) - 1.0) <= 1e-12;
        }
        const Matrix s = sigma(g);
        const double purity = (s * s).trace().real();
        ok = ok && shape && std::abs(purity - 1.0) <= 1e-10;
        detail += (k > 1 ? ", " : "") + std::string("K") + std::to_string(n) + " tr(s^2)=" + fmt("%.12f", purity);
    }
    return {ok, detail};
}

Result cli_goldens() {
    const std::string data = GRAPHSTATE_TEST_DATA;
    const std::string golden = GRAPHSTATE_TEST_GOLDEN;
    const std::string tmp = (std::filesystem::temp_directory_path() / "graphstate-acceptance").string();
    std::filesystem::create_directories(tmp);
    auto invoke = [](std::vector<std::string> args) {
        args.insert(args.begin(), "graphstate");
        std::vector<const char *> argv;
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::pair{code, out.str()};
    };
    int matched = 0, runs = 0;
    for (int rep = 0; rep < 2; ++rep) {
        const auto e = invoke({"check", "--entropy", data + "/identity4.json"});
        matched += e.first == 0 && e.second == io::read_file(golden + "/entropy_identity4.txt");
        const auto p = invoke({"product", data + "/k2.json", data + "/p4.json", "--kind", "modified", "--emit", "matrix"});
        matched += p.first == 0 && p.second == io::read_file(golden + "/modified_k2_p4.json");
        const auto k = invoke({"kraus", data + "/signed_k4.json", "--edit", "del-edge:1,2", "--out", tmp + "/state.json",
                               "--kraus-out", tmp + "/kraus.json"});
        matched += k.first == 0 && io::read_file(tmp + "/state.json") == io::read_file(golden + "/signed_k4_del12_state.json") &&
                   io::read_file(tmp + "/kraus.json") == io::read_file(golden + "/signed_k4_del12_kraus.json");
        runs += 3;
    }
    std::filesystem::remove_all(tmp);
    return {matched == runs, std::to_string(matched) + " of " + std::to_string(runs) + " runs match the stored output"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"round-trip exactness", round_trips},
        {"mixture of two states", mixture},
        {"partial trace", reduced_state},
        {"modified tensor factorization", factorization},
        {"edge deletion channel fidelity", kraus_fidelity},
        {"separability verdicts", separability},
        {"entropy and purity", entropy},
        {"graphical PSD soundness", psd_soundness},
        {"signed complete pure graphs", signed_complete},
        {"CLI golden files", cli_goldens},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception &e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += !r.ok;
        std::printf("%s %2zu %s: %s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
