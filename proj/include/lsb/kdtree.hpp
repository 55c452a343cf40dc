#pragma once

#include <cstddef>
#include <vector>

namespace lsb {

// Static KD-tree over a fixed point set. Nearest-neighbor queries break
// distance ties toward the lowest stored point index.
class KdTree {
public:
    KdTree() = default;
    explicit KdTree(const std::vector<std::vector<double>>& points);

    std::size_t size() const { return points_.size(); }
    // Returns the index of the nearest stored point (lowest index on ties).
    std::size_t nearest(const std::vector<double>& query) const;

private:
    struct Node {
        int axis = -1;       // -1 marks a leaf
        std::size_t point = 0;
        int left = -1;
        int right = -1;
    };

    int build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi, int depth);
    void search(int node, const std::vector<double>& query, double& best_d2,
                std::size_t& best_idx) const;

    std::vector<std::vector<double>> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::size_t dim_ = 0;
};

} // namespace lsb
