#include "bnaco/search.hpp"

#include <cmath>
#include <stdexcept>

#include "bnaco/errors.hpp"

namespace bnaco {

std::size_t PheromoneTable::KeyHash::operator()(const std::array<int, 4>& k) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int v : k) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B9u + (h << 6) +
             (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
    }
    return static_cast<std::size_t>(h);
}

PheromoneTable::PheromoneTable(double tau0) : tau0_(tau0) {
    if (!(tau0 > 0)) throw ConfigError("PheromoneTable: tau0 must be > 0");
}

double PheromoneTable::get(const Move& m) const {
    auto it = tau_.find(m.key());
    return it == tau_.end() ? tau0_ : it->second;
}

void PheromoneTable::local_evaporate(const Move& m, double rho) {
    double& tau = tau_.try_emplace(m.key(), tau0_).first->second;
    tau = (1.0 - rho) * tau + rho * tau0_;
}

void PheromoneTable::global_deposit(const std::vector<Move>& path, double best_score, double rho) {
    if (best_score == 0.0)
        throw std::invalid_argument("PheromoneTable::global_deposit: zero score");
    const double deposit = 1.0 / std::abs(best_score);
    for (const Move& m : path) {
        double& tau = tau_.try_emplace(m.key(), tau0_).first->second;
        tau = (1.0 - rho) * tau + rho * deposit;
    }
}

void AcoParams::validate() const {
    if (t_max < 0) throw ConfigError("AcoParams: t_max must be >= 0");
    if (t_step < 1) throw ConfigError("AcoParams: t_step must be >= 1");
    if (ants < 1) throw ConfigError("AcoParams: ants must be >= 1");
    if (!(rho >= 0 && rho <= 1)) throw ConfigError("AcoParams: rho must be in [0, 1]");
    if (!(q0 >= 0 && q0 <= 1)) throw ConfigError("AcoParams: q0 must be in [0, 1]");
    if (!(beta >= 0)) throw ConfigError("AcoParams: beta must be >= 0");
}

double total_score_rule(double tau, double eta, double beta) {
    if (!(tau > 0)) throw std::invalid_argument("total_score_rule: tau must be > 0");
    return eta > 0 ? tau * std::pow(eta, beta) : 0.0;
}

double initial_pheromone(int n, double best_score) {
    if (n < 1) throw std::invalid_argument("initial_pheromone: n must be >= 1");
    if (best_score == 0.0) throw std::invalid_argument("initial_pheromone: zero score");
    return 1.0 / (n * std::abs(best_score));
}

std::vector<double> selection_probabilities(const std::vector<ScoredMove>& candidates,
                                            const PheromoneTable& pheromone, double beta) {
    std::vector<double> weights(candidates.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        weights[i] = total_score_rule(pheromone.get(candidates[i].move), candidates[i].eta, beta);
        total += weights[i];
    }
    if (total > 0)
        for (double& w : weights) w /= total;
    return weights;
}

std::size_t select_move(const std::vector<ScoredMove>& candidates,
                        const PheromoneTable& pheromone, double q0, double beta, Rng& rng) {
    std::size_t best = candidates.size();
    double best_weight = 0.0;
    double total = 0.0;
    std::vector<double> weights(candidates.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        weights[i] = total_score_rule(pheromone.get(candidates[i].move), candidates[i].eta, beta);
        total += weights[i];
        if (weights[i] > best_weight) {
            best_weight = weights[i];
            best = i;
        }
    }
    if (!(best_weight > 0))
        throw std::logic_error("select_move: no candidate with positive total score");

    const double q = rng.next_uniform();
    if (q <= q0) return best;

    double draw = rng.next_uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        draw -= weights[i];
        if (draw < 0 && weights[i] > 0) return i;
    }
    // Rounding pushed the draw past the last positive weight.
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0) return i;
    throw std::logic_error("select_move: unreachable");
}

std::pair<Cpdag, AntPath> greedy_e(MoveSource& src, Cpdag start, AntPath path) {
    Cpdag state = std::move(start);
    while (true) {
        const auto candidates = src.moves(state);
        std::size_t best = candidates.size();
        double best_eta = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].eta > best_eta) {
                best_eta = candidates[i].eta;
                best = i;
            }
        }
        if (!(best_eta > 0)) break;
        state = apply_move(state, candidates[best].move);
        path.moves.push_back(candidates[best].move);
    }
    return {std::move(state), std::move(path)};
}

std::pair<Cpdag, AntPath> ant_e(MoveSource& src, int n, PheromoneTable& pheromone, double q0,
                                double rho, double beta, Rng& rng) {
    Cpdag state(n);
    AntPath path;
    while (true) {
        const auto candidates = src.moves(state);
        bool any_positive = false;
        for (const auto& c : candidates) {
            if (total_score_rule(pheromone.get(c.move), c.eta, beta) > 0) {
                any_positive = true;
                break;
            }
        }
        if (candidates.empty() || !any_positive) return {std::move(state), std::move(path)};
        const std::size_t pick = select_move(candidates, pheromone, q0, beta, rng);
        const Move chosen = candidates[pick].move;
        pheromone.local_evaporate(chosen, rho);
        state = apply_move(state, chosen);
        path.moves.push_back(chosen);
    }
}

namespace {

IterationStats stats_row(int iteration, double best_score, const MoveSource& src) {
    return {iteration, best_score, src.total_evals(), src.distinct_evals()};
}

}  // namespace

SearchResult aco_e(MoveSource& src, int n, const AcoParams& params, const StatsSink& sink) {
    params.validate();
    SearchResult result;
    auto emit = [&](const IterationStats& row) {
        result.stats.push_back(row);
        if (sink) sink(row);
    };

    auto [best, best_path] = greedy_e(src, Cpdag(n), AntPath{});
    double best_score = src.structure_score(best);
    emit(stats_row(0, best_score, src));

    PheromoneTable pheromone(initial_pheromone(n, best_score));
    Rng master(params.seed);

    for (int t = 1; t <= params.t_max; ++t) {
        Cpdag iter_best(n);
        AntPath iter_path;
        double iter_score = 0.0;
        bool have_iter = false;
        for (int k = 1; k <= params.ants; ++k) {
            Rng rng = master.stream(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k));
            auto [graph, path] = ant_e(src, n, pheromone, params.q0, params.rho, params.beta, rng);
            if (t % params.t_step == 0)
                std::tie(graph, path) = greedy_e(src, std::move(graph), std::move(path));
            const double score = src.structure_score(graph);
            if (!have_iter || score > iter_score) {
                iter_best = std::move(graph);
                iter_path = std::move(path);
                iter_score = score;
                have_iter = true;
            }
        }
        if (iter_score > best_score) {
            best = std::move(iter_best);
            best_path = std::move(iter_path);
            best_score = iter_score;
        }
        pheromone.global_deposit(best_path.moves, best_score, params.rho);
        emit(stats_row(t, best_score, src));
    }

    result.best = std::move(best);
    result.path = std::move(best_path);
    result.score = best_score;
    return result;
}

SearchResult aco_e(const Dataset& data, const ScoringConfig& cfg, const AcoParams& params,
                   const OperatorSet& kinds, const StatsSink& sink) {
    if (data.row_count() == 0) throw ConfigError("aco_e: dataset is empty");
    Scorer scorer(data, cfg);
    ScorerMoveSource src(scorer, kinds);
    return aco_e(src, data.var_count(), params, sink);
}

SearchResult greedy_e_search(const Dataset& data, const ScoringConfig& cfg,
                             const OperatorSet& kinds, const StatsSink& sink) {
    Scorer scorer(data, cfg);
    ScorerMoveSource src(scorer, kinds);
    SearchResult result;
    auto [best, path] = greedy_e(src, Cpdag(data.var_count()), AntPath{});
    result.score = src.structure_score(best);
    result.best = std::move(best);
    result.path = std::move(path);
    result.stats.push_back(stats_row(0, result.score, src));
    if (sink) sink(result.stats.back());
    return result;
}

Dag greedy_dag_search(Dag start, Scorer& scorer) {
    Dag state = std::move(start);
    while (true) {
        const auto candidates = enumerate_dag_moves(state, scorer, false);
        std::size_t best = candidates.size();
        double best_delta = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].second > best_delta) {
                best_delta = candidates[i].second;
                best = i;
            }
        }
        if (!(best_delta > 0)) return state;
        state = apply_dag_move(state, candidates[best].first);
    }
}

namespace {

// Arcs of a DAG as canonical pheromone keys (the construction-graph
// component for arc j->i is the insertion of that arc).
std::vector<Move> arc_path(const Dag& g) {
    std::vector<Move> out;
    out.reserve(g.arc_count());
    for (const auto& [t, h] : g.arcs()) out.push_back(Move::insert_d(t, h));
    return out;
}

}  // namespace

SearchResult aco_b(const Dataset& data, const ScoringConfig& cfg, const AcoParams& params,
                   const StatsSink& sink) {
    params.validate();
    if (data.row_count() == 0) throw ConfigError("aco_b: dataset is empty");
    const int n = data.var_count();
    constexpr int kLocalSearchPeriod = 10;

    Scorer scorer(data, cfg);
    SearchResult result;
    auto emit = [&](const IterationStats& row) {
        result.stats.push_back(row);
        if (sink) sink(row);
    };

    Dag best = greedy_dag_search(Dag(n), scorer);
    double best_score = scorer.structure(best);
    emit({0, best_score, scorer.total_evals(), scorer.distinct_evals()});

    PheromoneTable pheromone(initial_pheromone(n, best_score));
    Rng master(params.seed);

    for (int t = 1; t <= params.t_max; ++t) {
        Dag iter_best(n);
        double iter_score = 0.0;
        bool have_iter = false;
        for (int k = 1; k <= params.ants; ++k) {
            Rng rng = master.stream(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k));
            Dag ant(n);
            while (true) {
                const auto additions = enumerate_dag_moves(ant, scorer, true);
                std::vector<ScoredMove> candidates;
                candidates.reserve(additions.size());
                for (const auto& [m, delta] : additions)
                    candidates.push_back({Move::insert_d(m.tail, m.head), delta});
                bool any_positive = false;
                for (const auto& c : candidates) {
                    if (total_score_rule(pheromone.get(c.move), c.eta, params.beta) > 0) {
                        any_positive = true;
                        break;
                    }
                }
                if (candidates.empty() || !any_positive) break;
                const std::size_t pick =
                    select_move(candidates, pheromone, params.q0, params.beta, rng);
                const Move& chosen = candidates[pick].move;
                pheromone.local_evaporate(chosen, params.rho);
                ant = apply_dag_move(ant, {DagMove::Kind::Insert, chosen.x, chosen.y});
            }
            if (t % kLocalSearchPeriod == 0) ant = greedy_dag_search(std::move(ant), scorer);
            const double score = scorer.structure(ant);
            if (!have_iter || score > iter_score) {
                iter_best = std::move(ant);
                iter_score = score;
                have_iter = true;
            }
        }
        if (iter_score > best_score) {
            best = std::move(iter_best);
            best_score = iter_score;
        }
        pheromone.global_deposit(arc_path(best), best_score, params.rho);
        emit({t, best_score, scorer.total_evals(), scorer.distinct_evals()});
    }

    for (const auto& [t, h] : best.arcs())
        result.dag_path.push_back({DagMove::Kind::Insert, t, h});
    result.best = dag_to_cpdag(best);
    result.score = scorer.structure(result.best);
    return result;
}

}  // namespace bnaco
