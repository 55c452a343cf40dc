#pragma once

#include <memory>
#include <vector>

#include "lsb/types.hpp"

namespace lsb {

// Class membership lookup. The grid partition below is the primary
// implementation; tabular instances use explicit per-state labels.
class Partition {
public:
    virtual ~Partition() = default;
    virtual int num_classes() const = 0;
    virtual int class_of(const State& s) const = 0;

    // beta_i(s): 0 while s stays in class i, 1 once it has left.
    int termination(int i, const State& s) const {
        if (i < 0 || i >= num_classes())
            throw std::invalid_argument("class index out of range");
        return class_of(s) == i ? 0 : 1;
    }
};

// Shared cell indexer for axis-aligned grids: half-open cells
// [low_k, high_k) with the top boundary absorbed into the last cell,
// row-major with dimension 0 slowest. Out-of-bounds states are clamped.
int grid_cell_index(const StateBounds& bounds, const std::vector<int>& dims, const State& s);

class GridPartition : public Partition {
public:
    GridPartition(StateBounds bounds, std::vector<int> dims);

    int num_classes() const override { return m_; }
    int class_of(const State& s) const override;

    const StateBounds& bounds() const { return bounds_; }
    const std::vector<int>& dims() const { return dims_; }

    // Sub-box of class i (same index convention as class_of).
    void cell_box(int i, State& lo, State& hi) const;
    State cell_center(int i) const;

private:
    StateBounds bounds_;
    std::vector<int> dims_;
    int m_ = 0;
};

GridPartition make_grid_partition(const StateBounds& bounds, const std::vector<int>& dims);

// Arbitrary labelling of an integer-indexed state space, used when a tabular
// instance is embedded as a continuous environment (state = index + 0.5).
class LabelPartition : public Partition {
public:
    explicit LabelPartition(std::vector<int> labels);

    int num_classes() const override { return m_; }
    int class_of(const State& s) const override;
    int label_of_index(std::size_t idx) const { return labels_.at(idx); }

private:
    std::vector<int> labels_;
    int m_ = 0;
};

} // namespace lsb
