#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "bnaco/dataset.hpp"
#include "bnaco/graph.hpp"

namespace bnaco {

enum class Metric { Bdeu, Bic, Aic };

struct ScoringConfig {
    Metric metric = Metric::Bdeu;
    double ess = 4.0;    // equivalent sample size, > 0
    double kappa = 1.0;  // structure prior base, in (0, 1]; 1 disables the prior
    std::optional<Dag> prior_graph;  // absent means empty prior graph
    int max_parents = 5;

    void validate() const;  // throws ConfigError
};

// Sufficient statistics for one family (node, parent set). Only parent
// configurations that occur in the data are stored; count() returns 0 for
// the rest. q is the full configuration count, parents sorted ascending
// with the first parent most significant in the row index.
struct FamilyCounts {
    int r = 0;
    std::int64_t q = 1;
    std::map<std::int64_t, std::vector<std::int64_t>> rows;

    std::int64_t count(std::int64_t j, int k) const;
    std::int64_t row_total(std::int64_t j) const;
    std::int64_t sample_total() const;
};

FamilyCounts family_counts(const Dataset& data, int node, const std::set<int>& parents);

// Natural-log Dirichlet-multinomial family score with uniform priors
// ess/q per configuration and ess/(r*q) per cell. All-zero counts score
// exactly 0.
double bdeu_family_score(const FamilyCounts& counts, double ess);

// Max-log-likelihood minus the complexity penalty: (d/2)*ln(N) for BIC,
// d for AIC, with d = (r-1)*q free parameters. 0*ln(0) counts as 0.
double penalized_family_score(const FamilyCounts& counts, Metric mode, double n_samples);

// delta * ln(kappa), delta = |parents symdiff prior-parents|. Zero when
// kappa = 1; the normalisation constant is dropped.
double log_prior_delta(int node, const std::set<int>& parents, const ScoringConfig& cfg);

// Memoised family scoring bound to one dataset and config. Counts every
// query (total) and every cache miss (distinct). Safe for concurrent
// readers; insertion is serialized.
class Scorer {
public:
    Scorer(const Dataset& data, ScoringConfig cfg);

    // Cached family score including the prior term. Throws LimitError when
    // |parents| exceeds max_parents.
    double family(int node, const std::set<int>& parents);

    double structure(const Dag& g);
    // Scores any consistent extension; throws NoConsistentExtension.
    double structure(const Pdag& p);

    const Dataset& data() const { return data_; }
    const ScoringConfig& config() const { return cfg_; }

    std::int64_t total_evals() const { return total_evals_.load(); }
    std::int64_t distinct_evals() const { return distinct_evals_.load(); }

private:
    double compute(int node, const std::set<int>& parents) const;

    const Dataset& data_;
    ScoringConfig cfg_;
    std::unordered_map<std::string, double> cache_;
    mutable std::mutex mutex_;
    std::atomic<std::int64_t> total_evals_{0};
    std::atomic<std::int64_t> distinct_evals_{0};
};

}  // namespace bnaco
