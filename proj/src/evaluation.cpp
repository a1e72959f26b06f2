#include "bnaco/evaluation.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "bnaco/errors.hpp"
#include "bnaco/rng.hpp"

namespace bnaco {

int shd(const Cpdag& a, const Cpdag& b) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("shd: graphs are over different node sets");
    int distance = 0;
    for (int i = 0; i < a.node_count(); ++i) {
        for (int j = i + 1; j < a.node_count(); ++j) {
            const bool adj_a = a.adjacent(i, j);
            const bool adj_b = b.adjacent(i, j);
            if (adj_a != adj_b) {
                ++distance;
            } else if (adj_a) {
                const bool same_mark = (a.has_undirected(i, j) && b.has_undirected(i, j)) ||
                                       (a.has_directed(i, j) && b.has_directed(i, j)) ||
                                       (a.has_directed(j, i) && b.has_directed(j, i));
                if (!same_mark) ++distance;
            }
        }
    }
    return distance;
}

ApplicabilityResult applicability_estimate(const Dataset& data, int resamples,
                                           const ScoringConfig& cfg, std::uint64_t seed) {
    if (resamples < 1) throw ConfigError("applicability_estimate: resamples must be >= 1");
    ApplicabilityResult out;
    Rng master(seed);
    const int n = data.var_count();
    for (int r = 0; r < resamples; ++r) {
        Dataset boot = data.bootstrap(master.stream(static_cast<std::uint64_t>(r)).next_u64());
        SearchResult result = greedy_e_search(boot, cfg);
        out.values.push_back(static_cast<double>(v_structures(result.best).size()) / n);
    }
    double total = 0.0;
    for (double v : out.values) total += v;
    out.mean = total / resamples;
    return out;
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::AcoE: return "aco-e";
        case Algorithm::AcoB: return "aco-b";
        case Algorithm::GreedyE: return "greedy-e";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (repetitions < 1) throw ConfigError("ExperimentConfig: repetitions must be >= 1");
    if (sample_sizes.empty()) throw ConfigError("ExperimentConfig: no sample sizes");
    for (int s : sample_sizes)
        if (s < 1) throw ConfigError("ExperimentConfig: sample sizes must be positive");
    params.validate();
    scoring.validate();
}

std::vector<Report> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const Cpdag truth = dag_to_cpdag(cfg.net.structure());
    Rng master(cfg.seed);

    std::vector<Report> reports;
    for (int size : cfg.sample_sizes) {
        Report report;
        report.sample_size = size;
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            Rng rep_rng = master.stream(static_cast<std::uint64_t>(size),
                                        static_cast<std::uint64_t>(rep));
            RepetitionRow row;
            row.rep = rep;
            row.seed = rep_rng.seed();
            const Dataset train = forward_sample(cfg.net, size, rep_rng.stream(1).next_u64());
            const Dataset test = forward_sample(cfg.net, size, rep_rng.stream(2).next_u64());

            AcoParams params = cfg.params;
            params.seed = rep_rng.stream(3).next_u64();

            const auto started = std::chrono::steady_clock::now();
            SearchResult result;
            switch (cfg.algorithm) {
                case Algorithm::AcoE:
                    result = aco_e(train, cfg.scoring, params);
                    break;
                case Algorithm::AcoB:
                    result = aco_b(train, cfg.scoring, params);
                    break;
                case Algorithm::GreedyE:
                    result = greedy_e_search(train, cfg.scoring);
                    break;
            }
            const auto elapsed = std::chrono::steady_clock::now() - started;
            row.wall_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

            row.train_score = result.score;
            Scorer test_scorer(test, cfg.scoring);
            row.test_score = test_scorer.structure(result.best);
            row.shd = shd(result.best, truth);
            if (!result.stats.empty()) {
                row.total_evals = result.stats.back().total_evals;
                row.distinct_evals = result.stats.back().distinct_evals;
            }
            report.rows.push_back(row);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "rep,seed,train_score,test_score,shd,total_evals,distinct_evals,wall_ms\n";
    out.precision(10);
    for (const auto& r : report.rows) {
        out << r.rep << ',' << r.seed << ',' << r.train_score << ',' << r.test_score << ','
            << r.shd << ',' << r.total_evals << ',' << r.distinct_evals << ',' << r.wall_ms
            << '\n';
    }
    return out.str();
}

}  // namespace bnaco
