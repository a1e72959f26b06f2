#pragma once

// Shared test oracles and generators. Everything here is independent of
// the library's production code paths it is used to check: paths are
// enumerated exhaustively, scores are re-derived with a different
// summation order, and equivalence classes come from brute-force grouping.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bnaco/graph.hpp"
#include "bnaco/network.hpp"
#include "bnaco/operators.hpp"
#include "bnaco/rng.hpp"
#include "bnaco/scoring.hpp"
#include "bnaco/search.hpp"

namespace testsupport {

using namespace bnaco;

// Every labeled DAG on n nodes: each unordered pair is absent, forward or
// backward, filtered for acyclicity. 25 graphs for n=3, 543 for n=4.
inline std::vector<Dag> all_dags(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<Dag> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        Dag g(n);
        std::size_t c = code;
        for (const auto& [a, b] : pairs) {
            const int state = static_cast<int>(c % 3);
            c /= 3;
            if (state == 1) g.add_arc(a, b);
            if (state == 2) g.add_arc(b, a);
        }
        if (g.is_acyclic()) out.push_back(g);
    }
    return out;
}

// Exhaustive simple-path probe: DFS over all simple paths of the given
// kind, returning true iff every path has an internal vertex in blockers.
inline bool paths_blocked_oracle(const Pdag& p, int from, int to, PathKind kind,
                                 const std::set<int>& blockers,
                                 std::optional<std::pair<int, int>> excluded_arc = std::nullopt) {
    std::vector<char> on_path(p.node_count(), 0);
    bool found_unblocked = false;

    auto dfs = [&](auto&& self, int u) -> void {
        if (found_unblocked) return;
        auto try_step = [&](int v, bool directed_edge) {
            if (found_unblocked) return;
            if (directed_edge && excluded_arc && excluded_arc->first == u &&
                excluded_arc->second == v)
                return;
            if (v == to) {
                found_unblocked = true;  // internal vertices all avoided blockers
                return;
            }
            if (on_path[v] || blockers.count(v)) return;
            on_path[v] = 1;
            self(self, v);
            on_path[v] = 0;
        };
        for (int v : p.neighbors(u)) try_step(v, false);
        if (kind == PathKind::SemiDirected)
            for (int v : p.children(u)) try_step(v, true);
    };
    on_path[from] = 1;
    dfs(dfs, from);
    return !found_unblocked;
}

inline Dag random_dag(int n, double edge_prob, std::uint64_t seed) {
    Rng rng(seed);
    // random topological order, arcs oriented along it
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(rank[i], rank[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    Dag g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_uniform() >= edge_prob) continue;
            if (rank[i] < rank[j])
                g.add_arc(i, j);
            else
                g.add_arc(j, i);
        }
    if (!g.is_acyclic()) throw std::logic_error("random_dag produced a cycle");
    return g;
}

inline Dataset random_dataset(int n_vars, int max_card, int n_rows, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Variable> vars;
    for (int i = 0; i < n_vars; ++i) {
        Variable v;
        v.name = "x" + std::to_string(i);
        const int card = 2 + static_cast<int>(rng.next_below(max_card - 1));
        for (int k = 0; k < card; ++k) v.values.push_back("s" + std::to_string(k));
        vars.push_back(std::move(v));
    }
    Dataset out(vars, n_rows);
    for (int r = 0; r < n_rows; ++r)
        for (int v = 0; v < n_vars; ++v)
            out.set_value(r, v,
                          static_cast<std::uint8_t>(rng.next_below(vars[v].values.size())));
    return out;
}

// Random CPDAG reached by applying valid moves from the empty graph, so
// every intermediate state is a genuine equivalence class.
inline Cpdag random_cpdag(int n, int steps, std::uint64_t seed) {
    Rng rng(seed);
    Cpdag state(n);
    for (int s = 0; s < steps; ++s) {
        const auto moves = candidate_moves(state, OperatorSet::all());
        if (moves.empty()) break;
        state = apply_move(state, moves[rng.next_below(moves.size())]);
    }
    return state;
}

// Independent BDeu route: long-double accumulation, cells walked in
// reverse order, log-gamma applied cell by cell over the dense table.
inline double bdeu_reference(const FamilyCounts& counts, double ess) {
    const long double a_row = static_cast<long double>(ess) / counts.q;
    const long double a_cell = a_row / counts.r;
    long double acc = 0.0L;
    for (std::int64_t j = counts.q - 1; j >= 0; --j) {
        const std::int64_t n_j = counts.row_total(j);
        if (n_j == 0) continue;
        for (int k = counts.r - 1; k >= 0; --k) {
            const std::int64_t c = counts.count(j, k);
            if (c == 0) continue;
            acc += std::lgammal(a_cell + c) - std::lgammal(a_cell);
        }
        acc += std::lgammal(a_row) - std::lgammal(a_row + n_j);
    }
    return static_cast<double>(acc);
}

// Random binary network whose structure has at least `min_vstructs`
// v-structures; CPT probabilities kept in [0.1, 0.9] so dependencies stay
// visible in moderate samples.
inline DiscreteBayesNet random_net(int n, std::uint64_t seed, int min_vstructs) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng = Rng(seed).stream(attempt, 0xBEEF);
        Dag g(n);
        for (int v = 2; v < n; ++v) {
            const int want = 2 + static_cast<int>(rng.next_below(2));  // 2 or 3 parents
            std::vector<int> chosen;
            for (int tries = 0; tries < 20 && static_cast<int>(chosen.size()) < want; ++tries) {
                const int cand = static_cast<int>(rng.next_below(v));
                bool ok = std::find(chosen.begin(), chosen.end(), cand) == chosen.end();
                for (int c : chosen)
                    if (g.adjacent(cand, c)) ok = false;  // keep parents non-adjacent
                if (ok) chosen.push_back(cand);
            }
            for (int c : chosen) g.add_arc(c, v);
        }
        if (static_cast<int>(v_structures(g).size()) < min_vstructs) continue;

        std::vector<Variable> vars;
        for (int i = 0; i < n; ++i) vars.push_back({"x" + std::to_string(i), {"v0", "v1"}});
        std::vector<std::vector<double>> cpts(n);
        for (int i = 0; i < n; ++i) {
            std::int64_t q = 1;
            for (std::size_t p = 0; p < g.parents(i).size(); ++p) q *= 2;
            for (std::int64_t j = 0; j < q; ++j) {
                const double p0 = 0.1 + 0.8 * rng.next_uniform();
                cpts[i].push_back(p0);
                cpts[i].push_back(1.0 - p0);
            }
        }
        return DiscreteBayesNet("random" + std::to_string(n), std::move(vars), std::move(g),
                                std::move(cpts));
    }
}

// Move source replaying a fixed table of heuristic values keyed by the
// canonical edge signature of the current state. Candidate moves still
// come from the production validity tests.
class ReplayMoveSource final : public MoveSource {
public:
    static std::string signature(const Cpdag& p) {
        std::string out;
        for (const auto& [t, h] : p.directed_edges())
            out += "d" + std::to_string(t) + "," + std::to_string(h) + ";";
        for (const auto& [a, b] : p.undirected_edges())
            out += "u" + std::to_string(a) + "," + std::to_string(b) + ";";
        return out;
    }

    void set_eta(const Cpdag& state, const Move& m, double eta) {
        eta_[signature(state)][m.text()] = eta;
    }
    void set_score(const Cpdag& state, double score) { score_[signature(state)] = score; }

    std::vector<ScoredMove> moves(const Cpdag& state) override {
        const auto table = eta_.find(signature(state));
        std::vector<ScoredMove> out;
        for (const Move& m : candidate_moves(state, OperatorSet::all())) {
            if (table == eta_.end()) throw std::logic_error("replay: unknown state");
            auto it = table->second.find(m.text());
            if (it == table->second.end())
                throw std::logic_error("replay: move " + m.text() + " missing from table");
            out.push_back({m, it->second});
        }
        return out;
    }

    double structure_score(const Cpdag& state) override {
        auto it = score_.find(signature(state));
        if (it == score_.end()) throw std::logic_error("replay: state has no score");
        return it->second;
    }

private:
    std::map<std::string, std::map<std::string, double>> eta_;
    std::map<std::string, double> score_;
};

// Trace fixture: the three-variable run with pheromone 0.00312 everywhere
// and the eta values used throughout the search tests.
struct TraceFixture {
    ReplayMoveSource source;
    Cpdag empty{3}, one_edge{3}, two_edges{3}, vee{3}, triangle{3};

    TraceFixture() {
        one_edge.add_undirected(0, 2);
        two_edges.add_undirected(0, 2);
        two_edges.add_undirected(1, 2);
        vee.add_directed(0, 2);
        vee.add_directed(1, 2);
        triangle.add_undirected(0, 1);
        triangle.add_undirected(0, 2);
        triangle.add_undirected(1, 2);

        source.set_eta(empty, Move::insert_u(0, 1), -0.21565);
        source.set_eta(empty, Move::insert_u(0, 2), 34.6527);
        source.set_eta(empty, Move::insert_u(1, 2), 11.2204);

        source.set_eta(one_edge, Move::insert_u(0, 1), -0.21565);
        source.set_eta(one_edge, Move::insert_u(1, 2), 11.2204);
        source.set_eta(one_edge, Move::delete_u(0, 2), -34.6527);

        source.set_eta(two_edges, Move::insert_u(0, 1), 0.37742);
        source.set_eta(two_edges, Move::delete_u(0, 2), -34.6527);
        source.set_eta(two_edges, Move::delete_u(1, 2), -11.2204);
        source.set_eta(two_edges, Move::make_v(0, 1, 2), 0.59307);

        source.set_eta(vee, Move::insert_u(0, 1), -0.21565);
        source.set_eta(vee, Move::delete_d(0, 2), -35.2457);
        source.set_eta(vee, Move::delete_d(1, 2), -11.8134);
        source.set_eta(vee, Move::reverse_d(0, 2), -0.59306);
        source.set_eta(vee, Move::reverse_d(1, 2), -0.59307);

        source.set_eta(triangle, Move::delete_u(0, 1), -0.47742);
        source.set_eta(triangle, Move::delete_u(0, 2), -35.2457);
        source.set_eta(triangle, Move::delete_u(1, 2), -11.8134);

        source.set_score(vee, -106.918);
        source.set_score(triangle, -107.13368);
        source.set_score(two_edges, -107.51110);
        source.set_score(one_edge, -118.65147);
        source.set_score(empty, -153.30417);
    }
};

inline std::string repo_path(const std::string& relative) {
    const char* root = std::getenv("BNACO_SOURCE_DIR");
    return (root ? std::string(root) : std::string(".")) + "/" + relative;
}

inline std::string cli_path() {
    const char* cli = std::getenv("BNACO_CLI");
    return cli ? cli : "";
}

}  // namespace testsupport
