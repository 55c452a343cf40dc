#include "lsb/features.hpp"

#include <cmath>
#include <stdexcept>

#include "lsb/partition.hpp"

namespace lsb {

FeatureMap FeatureMap::one_hot_action(int action_count) {
    FeatureMap f;
    f.kind_ = Kind::OneHotAction;
    f.action_count_ = action_count;
    f.output_dim_ = static_cast<std::size_t>(action_count);
    return f;
}

FeatureMap FeatureMap::poly_action_block(int action_count, const StateBounds& bounds) {
    FeatureMap f;
    f.kind_ = Kind::PolyActionBlock;
    f.action_count_ = action_count;
    f.bounds_ = bounds;
    f.output_dim_ = static_cast<std::size_t>(action_count) * (bounds.dim() + 1);
    return f;
}

FeatureMap FeatureMap::grid_action_block(int action_count, const StateBounds& bounds,
                                         const std::vector<int>& cells) {
    FeatureMap f;
    f.kind_ = Kind::GridActionBlock;
    f.action_count_ = action_count;
    f.bounds_ = bounds;
    f.cells_ = cells;
    std::size_t n_cells = 1;
    for (int c : cells) n_cells *= static_cast<std::size_t>(c);
    f.output_dim_ = n_cells * action_count;
    return f;
}

FeatureMap FeatureMap::tabular(int n_states, int action_count) {
    FeatureMap f;
    f.kind_ = Kind::Tabular;
    f.action_count_ = action_count;
    f.n_states_ = n_states;
    f.output_dim_ = static_cast<std::size_t>(n_states) * action_count;
    return f;
}

void FeatureMap::evaluate_sparse(const State& s, int action,
                                 std::vector<std::size_t>& idx, std::vector<double>& val) const {
    idx.clear();
    val.clear();
    if (action < 0 || action >= action_count_)
        throw std::invalid_argument("action out of range");
    switch (kind_) {
    case Kind::OneHotAction:
        idx.push_back(static_cast<std::size_t>(action));
        val.push_back(1.0);
        break;
    case Kind::PolyActionBlock: {
        State z = bounds_.normalize(s);
        std::size_t base = static_cast<std::size_t>(action) * (z.size() + 1);
        idx.push_back(base);
        val.push_back(1.0);
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (!std::isfinite(z[k])) throw std::runtime_error("non-finite feature input");
            idx.push_back(base + 1 + k);
            val.push_back(z[k]);
        }
        break;
    }
    case Kind::Tabular: {
        auto state_idx = static_cast<long>(std::floor(s.at(0)));
        if (state_idx < 0) state_idx = 0;
        if (state_idx >= n_states_) state_idx = n_states_ - 1;
        idx.push_back(static_cast<std::size_t>(state_idx) * action_count_ + action);
        val.push_back(1.0);
        break;
    }
    case Kind::GridActionBlock: {
        auto cell = static_cast<std::size_t>(grid_cell_index(bounds_, cells_, s));
        idx.push_back(cell * action_count_ + action);
        val.push_back(1.0);
        break;
    }
    }
}

std::vector<double> FeatureMap::evaluate(const State& s, int action) const {
    std::vector<std::size_t> idx;
    std::vector<double> val;
    evaluate_sparse(s, action, idx, val);
    std::vector<double> out(output_dim_, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = val[k];
    return out;
}

std::string FeatureMap::kind_name() const {
    switch (kind_) {
    case Kind::OneHotAction: return "one_hot_action";
    case Kind::PolyActionBlock: return "poly_action_block";
    case Kind::Tabular: return "tabular";
    case Kind::GridActionBlock: return "grid_action_block";
    }
    return "?";
}

FeatureMap FeatureMap::from_kind_name(const std::string& name, int action_count,
                                      const StateBounds& bounds, int n_states) {
    if (name == "one_hot_action") return one_hot_action(action_count);
    if (name == "poly_action_block") return poly_action_block(action_count, bounds);
    if (name == "tabular") return tabular(n_states, action_count);
    throw std::invalid_argument("unknown feature kind: " + name);
}

} // namespace lsb
