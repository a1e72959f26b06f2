#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnaco/dataset.hpp"
#include "bnaco/graph.hpp"

namespace bnaco {

// Discrete Bayesian network: DAG structure plus one CPT per node. CPT rows
// are indexed by parent configuration (parents sorted ascending by node id,
// first parent most significant), each row holding r probabilities that sum
// to 1 within 1e-9.
class DiscreteBayesNet {
public:
    DiscreteBayesNet() : structure_(0) {}
    DiscreteBayesNet(std::string name, std::vector<Variable> variables, Dag structure,
                     std::vector<std::vector<double>> cpts);

    const std::string& name() const { return name_; }
    int var_count() const { return static_cast<int>(vars_.size()); }
    const Variable& variable(int i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const { return vars_; }
    const Dag& structure() const { return structure_; }

    // Row-major table for node i, q_i rows of length r_i.
    const std::vector<double>& cpt(int i) const { return cpts_.at(i); }
    std::int64_t config_count(int i) const;

    int index_of(const std::string& var_name) const;  // -1 if unknown

private:
    std::string name_;
    std::vector<Variable> vars_;
    Dag structure_;
    std::vector<std::vector<double>> cpts_;
};

DiscreteBayesNet parse_network(const std::string& text);
std::string serialize_network(const DiscreteBayesNet& net);

DiscreteBayesNet load_network_file(const std::string& path);

// Ancestral sampling: variables drawn in topological order (lowest node id
// first among available), one inverse-CDF uniform per cell. Deterministic
// given the seed; zero-probability values are never emitted.
Dataset forward_sample(const DiscreteBayesNet& net, int n, std::uint64_t seed);

// CSV with a header of variable names and label-valued cells. The
// single-argument form infers each column's vocabulary from the file
// (distinct labels, sorted); the overload takes label sets from a network.
Dataset load_dataset(const std::string& text);
Dataset load_dataset(const std::string& text, const DiscreteBayesNet& vocab);
std::string write_dataset(const Dataset& data);

Dataset load_dataset_file(const std::string& path);

}  // namespace bnaco
