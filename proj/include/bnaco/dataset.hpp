#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bnaco {

struct Variable {
    std::string name;
    std::vector<std::string> values;  // value labels; index is the stored code

    int cardinality() const { return static_cast<int>(values.size()); }
};

// Complete discrete sample, stored column-major.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Variable> vars, int n_rows);

    int var_count() const { return static_cast<int>(vars_.size()); }
    int row_count() const { return n_rows_; }

    const Variable& variable(int i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const { return vars_; }

    std::uint8_t value(int row, int var) const { return cols_[var][row]; }
    void set_value(int row, int var, std::uint8_t v);

    const std::vector<std::uint8_t>& column(int var) const { return cols_.at(var); }

    // Rows drawn with replacement from this dataset; size preserved.
    Dataset bootstrap(std::uint64_t seed) const;

private:
    std::vector<Variable> vars_;
    std::vector<std::vector<std::uint8_t>> cols_;
    int n_rows_ = 0;
};

}  // namespace bnaco
