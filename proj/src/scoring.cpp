#include "bnaco/scoring.hpp"

#include <cmath>
#include <stdexcept>

#include "bnaco/errors.hpp"

namespace bnaco {

void ScoringConfig::validate() const {
    if (!(ess > 0)) throw ConfigError("ScoringConfig: ess must be > 0");
    if (!(kappa > 0 && kappa <= 1)) throw ConfigError("ScoringConfig: kappa must be in (0, 1]");
    if (max_parents < 1) throw ConfigError("ScoringConfig: max_parents must be >= 1");
}

std::int64_t FamilyCounts::count(std::int64_t j, int k) const {
    auto it = rows.find(j);
    return it == rows.end() ? 0 : it->second.at(k);
}

std::int64_t FamilyCounts::row_total(std::int64_t j) const {
    auto it = rows.find(j);
    if (it == rows.end()) return 0;
    std::int64_t total = 0;
    for (auto c : it->second) total += c;
    return total;
}

std::int64_t FamilyCounts::sample_total() const {
    std::int64_t total = 0;
    for (const auto& [j, counts] : rows)
        for (auto c : counts) total += c;
    return total;
}

FamilyCounts family_counts(const Dataset& data, int node, const std::set<int>& parents) {
    if (parents.count(node)) throw std::invalid_argument("family_counts: node in its parent set");
    FamilyCounts out;
    out.r = data.variable(node).cardinality();

    std::vector<int> pa(parents.begin(), parents.end());  // ascending node id
    for (int p : pa) out.q *= data.variable(p).cardinality();

    const auto& node_col = data.column(node);
    for (int row = 0; row < data.row_count(); ++row) {
        std::int64_t j = 0;
        for (int p : pa) j = j * data.variable(p).cardinality() + data.value(row, p);
        auto& counts = out.rows[j];
        if (counts.empty()) counts.assign(out.r, 0);
        ++counts[node_col[row]];
    }
    return out;
}

double bdeu_family_score(const FamilyCounts& counts, double ess) {
    if (!(ess > 0)) throw std::invalid_argument("bdeu_family_score: ess must be > 0");
    const double a_row = ess / static_cast<double>(counts.q);
    const double a_cell = a_row / counts.r;
    double score = 0.0;
    for (const auto& [j, row] : counts.rows) {
        std::int64_t n_j = 0;
        for (auto c : row) n_j += c;
        if (n_j == 0) continue;
        score += std::lgamma(a_row) - std::lgamma(a_row + static_cast<double>(n_j));
        for (int k = 0; k < counts.r; ++k) {
            if (row[k] == 0) continue;
            score += std::lgamma(a_cell + static_cast<double>(row[k])) - std::lgamma(a_cell);
        }
    }
    return score;
}

double penalized_family_score(const FamilyCounts& counts, Metric mode, double n_samples) {
    if (!(n_samples >= 1)) throw std::invalid_argument("penalized_family_score: N must be >= 1");
    double ll = 0.0;
    for (const auto& [j, row] : counts.rows) {
        std::int64_t n_j = 0;
        for (auto c : row) n_j += c;
        if (n_j == 0) continue;
        for (int k = 0; k < counts.r; ++k) {
            if (row[k] == 0) continue;
            ll += static_cast<double>(row[k]) *
                  std::log(static_cast<double>(row[k]) / static_cast<double>(n_j));
        }
    }
    const double d = static_cast<double>(counts.r - 1) * static_cast<double>(counts.q);
    switch (mode) {
        case Metric::Bic:
            return ll - 0.5 * d * std::log(n_samples);
        case Metric::Aic:
            return ll - d;
        default:
            throw std::invalid_argument("penalized_family_score: mode must be BIC or AIC");
    }
}

double log_prior_delta(int node, const std::set<int>& parents, const ScoringConfig& cfg) {
    if (cfg.kappa == 1.0) return 0.0;
    std::size_t delta;
    if (cfg.prior_graph) {
        const auto& prior = cfg.prior_graph->parents(node);
        delta = 0;
        for (int p : parents) delta += prior.count(p) == 0;
        for (int p : prior) delta += parents.count(p) == 0;
    } else {
        delta = parents.size();
    }
    return static_cast<double>(delta) * std::log(cfg.kappa);
}

namespace {

std::string family_key(int node, const std::set<int>& parents) {
    std::string key;
    key.reserve((parents.size() + 1) * sizeof(int));
    auto push = [&key](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof(int)); };
    push(node);
    for (int p : parents) push(p);
    return key;
}

}  // namespace

Scorer::Scorer(const Dataset& data, ScoringConfig cfg) : data_(data), cfg_(std::move(cfg)) {
    cfg_.validate();
}

double Scorer::compute(int node, const std::set<int>& parents) const {
    FamilyCounts counts = family_counts(data_, node, parents);
    double s;
    if (cfg_.metric == Metric::Bdeu)
        s = bdeu_family_score(counts, cfg_.ess);
    else
        s = penalized_family_score(counts, cfg_.metric, static_cast<double>(data_.row_count()));
    return s + log_prior_delta(node, parents, cfg_);
}

double Scorer::family(int node, const std::set<int>& parents) {
    if (static_cast<int>(parents.size()) > cfg_.max_parents)
        throw LimitError("Scorer: family exceeds max_parents");
    total_evals_.fetch_add(1, std::memory_order_relaxed);
    const std::string key = family_key(node, parents);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const double value = compute(node, parents);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, value);
    if (inserted) distinct_evals_.fetch_add(1, std::memory_order_relaxed);
    return it->second;
}

double Scorer::structure(const Dag& g) {
    double total = 0.0;
    for (int v = 0; v < g.node_count(); ++v) total += family(v, g.parents(v));
    return total;
}

double Scorer::structure(const Pdag& p) { return structure(pdag_to_dag(p)); }

}  // namespace bnaco
