#include "bnaco/dataset.hpp"

#include <stdexcept>

#include "bnaco/errors.hpp"
#include "bnaco/rng.hpp"

namespace bnaco {

Dataset::Dataset(std::vector<Variable> vars, int n_rows)
    : vars_(std::move(vars)), n_rows_(n_rows) {
    if (n_rows < 0) throw std::invalid_argument("Dataset: negative row count");
    for (const auto& v : vars_) {
        if (v.cardinality() < 1) throw DataError("Dataset: variable '" + v.name + "' has no values");
        if (v.cardinality() > 255)
            throw DataError("Dataset: variable '" + v.name + "' exceeds 255 values");
    }
    cols_.assign(vars_.size(), std::vector<std::uint8_t>(n_rows, 0));
}

void Dataset::set_value(int row, int var, std::uint8_t v) {
    if (v >= vars_.at(var).cardinality())
        throw DataError("Dataset: value index out of range for variable '" + vars_[var].name +
                        "'");
    cols_[var][row] = v;
}

Dataset Dataset::bootstrap(std::uint64_t seed) const {
    Dataset out(vars_, n_rows_);
    Rng rng(seed);
    for (int r = 0; r < n_rows_; ++r) {
        int src = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_rows_)));
        for (int v = 0; v < var_count(); ++v) out.cols_[v][r] = cols_[v][src];
    }
    return out;
}

}  // namespace bnaco
