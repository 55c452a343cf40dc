#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsb {

using State = std::vector<double>;

// Per-dimension [low, high] box.
struct StateBounds {
    std::vector<double> low;
    std::vector<double> high;

    std::size_t dim() const { return low.size(); }

    bool contains(const State& s) const {
        if (s.size() != low.size()) return false;
        for (std::size_t k = 0; k < s.size(); ++k)
            if (s[k] < low[k] || s[k] > high[k]) return false;
        return true;
    }

    State clamp(const State& s) const {
        State out = s;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (std::isnan(out[k]))
                throw std::invalid_argument("NaN state coordinate");
            if (out[k] < low[k]) out[k] = low[k];
            if (out[k] > high[k]) out[k] = high[k];
        }
        return out;
    }

    // Maps each coordinate into [0, 1].
    State normalize(const State& s) const {
        State out(s.size());
        for (std::size_t k = 0; k < s.size(); ++k)
            out[k] = (s[k] - low[k]) / (high[k] - low[k]);
        return out;
    }

    void validate() const {
        if (low.empty() || low.size() != high.size())
            throw std::invalid_argument("bounds dimension mismatch");
        for (std::size_t k = 0; k < low.size(); ++k)
            if (!(low[k] < high[k]))
                throw std::invalid_argument("degenerate bounds in dimension " + std::to_string(k));
    }
};

} // namespace lsb
