#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnaco/network.hpp"
#include "bnaco/scoring.hpp"
#include "bnaco/search.hpp"

namespace bnaco {

// Structural Hamming distance between CPDAGs: one penalty per node pair
// that is adjacent in exactly one graph or carries a different edge mark
// (direction or orientation status).
int shd(const Cpdag& a, const Cpdag& b);

struct ApplicabilityResult {
    double mean = 0.0;
    std::vector<double> values;  // v-structures per node, one per resample
};

// Bootstrap-and-greedy estimator: resample the data with replacement, run
// the greedy equivalence-class search from empty, record
// |v_structures| / n. Deterministic given the seed.
ApplicabilityResult applicability_estimate(const Dataset& data, int resamples,
                                           const ScoringConfig& cfg, std::uint64_t seed);

enum class Algorithm { AcoE, AcoB, GreedyE };

std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
    DiscreteBayesNet net;
    std::vector<int> sample_sizes;
    Algorithm algorithm = Algorithm::AcoE;
    AcoParams params;
    ScoringConfig scoring;
    int repetitions = 1;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct RepetitionRow {
    int rep = 0;
    std::uint64_t seed = 0;
    double train_score = 0.0;
    double test_score = 0.0;
    int shd = 0;
    std::int64_t total_evals = 0;
    std::int64_t distinct_evals = 0;
    std::int64_t wall_ms = 0;
};

struct Report {
    int sample_size = 0;
    std::vector<RepetitionRow> rows;
};

// Per repetition: fresh train and independent same-size test samples from
// the generating network, one search run, scores against both samples and
// SHD against the completed generating structure.
std::vector<Report> run_experiment(const ExperimentConfig& cfg);

// Header: rep,seed,train_score,test_score,shd,total_evals,distinct_evals,wall_ms
std::string report_to_csv(const Report& report);

}  // namespace bnaco
