#include "lsb/partition.hpp"

#include <cmath>

namespace lsb {

int grid_cell_index(const StateBounds& bounds, const std::vector<int>& dims, const State& s) {
    if (s.size() != dims.size())
        throw std::invalid_argument("state dimension does not match grid");
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (std::isnan(s[k])) throw std::invalid_argument("NaN state coordinate");
        double lo = bounds.low[k], hi = bounds.high[k];
        double x = s[k] < lo ? lo : (s[k] > hi ? hi : s[k]);
        int cell = static_cast<int>(std::floor((x - lo) / (hi - lo) * dims[k]));
        if (cell >= dims[k]) cell = dims[k] - 1; // top boundary -> last cell
        if (cell < 0) cell = 0;
        index = index * dims[k] + cell;
    }
    return index;
}

GridPartition::GridPartition(StateBounds bounds, std::vector<int> dims)
    : bounds_(std::move(bounds)), dims_(std::move(dims)) {
    bounds_.validate();
    if (dims_.size() != bounds_.dim())
        throw std::invalid_argument("partition dims must match state dimension");
    m_ = 1;
    for (int d : dims_) {
        if (d < 1) throw std::invalid_argument("partition dims must be positive");
        m_ *= d;
    }
}

int GridPartition::class_of(const State& s) const {
    return grid_cell_index(bounds_, dims_, s);
}

void GridPartition::cell_box(int i, State& lo, State& hi) const {
    if (i < 0 || i >= m_) throw std::invalid_argument("class index out of range");
    std::size_t n = dims_.size();
    lo.assign(n, 0.0);
    hi.assign(n, 0.0);
    int rem = i;
    for (std::size_t k = n; k-- > 0;) {
        int cell = rem % dims_[k];
        rem /= dims_[k];
        double width = (bounds_.high[k] - bounds_.low[k]) / dims_[k];
        lo[k] = bounds_.low[k] + cell * width;
        hi[k] = lo[k] + width;
    }
}

State GridPartition::cell_center(int i) const {
    State lo, hi;
    cell_box(i, lo, hi);
    State c(lo.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
    return c;
}

GridPartition make_grid_partition(const StateBounds& bounds, const std::vector<int>& dims) {
    return GridPartition(bounds, dims);
}

LabelPartition::LabelPartition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("empty label set");
    m_ = 0;
    for (int l : labels_) {
        if (l < 0) throw std::invalid_argument("negative class label");
        if (l + 1 > m_) m_ = l + 1;
    }
}

int LabelPartition::class_of(const State& s) const {
    if (s.empty() || std::isnan(s[0])) throw std::invalid_argument("bad embedded state");
    auto idx = static_cast<std::size_t>(std::floor(s[0]));
    if (idx >= labels_.size()) idx = labels_.size() - 1;
    return labels_[idx];
}

} // namespace lsb
