#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "bnaco/operators.hpp"
#include "bnaco/rng.hpp"

namespace bnaco {

// Pheromone keyed by canonical move, lazily defaulting to tau0 so the
// move space never has to be pre-enumerated.
class PheromoneTable {
public:
    explicit PheromoneTable(double tau0);

    double tau0() const { return tau0_; }
    double get(const Move& m) const;

    // tau <- (1-rho)*tau + rho*tau0 on the traversed move.
    void local_evaporate(const Move& m, double rho);

    // tau <- (1-rho)*tau + rho/|best_score| on every move of the path.
    void global_deposit(const std::vector<Move>& path, double best_score, double rho);

    std::size_t stored_entries() const { return tau_.size(); }

private:
    struct KeyHash {
        std::size_t operator()(const std::array<int, 4>& k) const;
    };

    double tau0_;
    std::unordered_map<std::array<int, 4>, double, KeyHash> tau_;
};

struct AcoParams {
    int t_max = 200;   // iterations
    int t_step = 201;  // local-search period; > t_max defers it to the end
    int ants = 10;     // ants per iteration
    double rho = 0.1;  // evaporation/deposition rate in [0, 1]
    double q0 = 0.8;   // exploitation threshold in [0, 1]
    double beta = 1.0; // heuristic exponent, >= 0
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// Move sequence from the empty graph; replaying it reproduces the
// associated CPDAG.
struct AntPath {
    std::vector<Move> moves;
};

struct IterationStats {
    int iteration = 0;
    double best_score = 0.0;
    std::int64_t total_evals = 0;
    std::int64_t distinct_evals = 0;
};

struct SearchResult {
    Cpdag best{0};
    AntPath path;                   // equivalence-class moves (empty for aco_b)
    std::vector<DagMove> dag_path;  // arc insertions reproducing aco_b's best DAG
    double score = 0.0;
    std::vector<IterationStats> stats;
};

// Source of scored moves for the searchers; the production implementation
// wraps a Scorer, tests can replay fixed heuristic values.
class MoveSource {
public:
    virtual ~MoveSource() = default;
    virtual std::vector<ScoredMove> moves(const Cpdag& state) = 0;
    virtual double structure_score(const Cpdag& state) = 0;
    virtual std::int64_t total_evals() const { return 0; }
    virtual std::int64_t distinct_evals() const { return 0; }
};

class ScorerMoveSource final : public MoveSource {
public:
    ScorerMoveSource(Scorer& scorer, OperatorSet kinds) : scorer_(scorer), kinds_(kinds) {}

    std::vector<ScoredMove> moves(const Cpdag& state) override {
        return enumerate_moves(state, scorer_, kinds_);
    }
    double structure_score(const Cpdag& state) override { return scorer_.structure(state); }
    std::int64_t total_evals() const override { return scorer_.total_evals(); }
    std::int64_t distinct_evals() const override { return scorer_.distinct_evals(); }

private:
    Scorer& scorer_;
    OperatorSet kinds_;
};

// tau * eta^beta when eta > 0, else 0.
double total_score_rule(double tau, double eta, double beta);

// 1 / (n * |best_score|).
double initial_pheromone(int n, double best_score);

// Normalised weights over the candidates (zero for non-improving moves).
std::vector<double> selection_probabilities(const std::vector<ScoredMove>& candidates,
                                            const PheromoneTable& pheromone, double beta);

// Pseudo-random proportional rule: with probability q0 the arg-max of
// total_score_rule (ties resolved by candidate order), otherwise a draw
// proportional to the weights. At least one weight must be positive.
std::size_t select_move(const std::vector<ScoredMove>& candidates,
                        const PheromoneTable& pheromone, double q0, double beta, Rng& rng);

// Steepest-ascent over the source's moves while the best delta is
// positive; moves taken are appended to `path`.
std::pair<Cpdag, AntPath> greedy_e(MoveSource& src, Cpdag start, AntPath path);

// One ant tour from the empty graph with local evaporation on each chosen
// move.
std::pair<Cpdag, AntPath> ant_e(MoveSource& src, int n, PheromoneTable& pheromone, double q0,
                                double rho, double beta, Rng& rng);

// Invoked as each stats row is produced, for streaming output.
using StatsSink = std::function<void(const IterationStats&)>;

// Full colony search over equivalence classes.
SearchResult aco_e(MoveSource& src, int n, const AcoParams& params, const StatsSink& sink = {});
SearchResult aco_e(const Dataset& data, const ScoringConfig& cfg, const AcoParams& params,
                   const OperatorSet& kinds = OperatorSet::all(), const StatsSink& sink = {});

// Greedy equivalence-class search from the empty graph (single stats row).
SearchResult greedy_e_search(const Dataset& data, const ScoringConfig& cfg,
                             const OperatorSet& kinds = OperatorSet::all(),
                             const StatsSink& sink = {});

// DAG-space colony: ants add arcs; pheromone lives on ordered arcs; every
// 10 iterations ants' DAGs are refined by greedy DAG search. tau0 comes
// from a greedy DAG search from the empty graph. Result reported as the
// completion of the best DAG.
SearchResult aco_b(const Dataset& data, const ScoringConfig& cfg, const AcoParams& params,
                   const StatsSink& sink = {});

// Hill climbing over insert/delete/reverse arc moves.
Dag greedy_dag_search(Dag start, Scorer& scorer);

}  // namespace bnaco
