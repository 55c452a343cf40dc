#include "lsb/kdtree.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsb {

namespace {
double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double diff = a[k] - b[k];
        d += diff * diff;
    }
    return d;
}
} // namespace

KdTree::KdTree(const std::vector<std::vector<double>>& points) : points_(points) {
    if (points_.empty()) throw std::invalid_argument("empty point set");
    dim_ = points_[0].size();
    std::vector<std::size_t> idx(points_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    nodes_.reserve(points_.size());
    root_ = build(idx, 0, idx.size(), 0);
}

int KdTree::build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi, int depth) {
    if (lo >= hi) return -1;
    int axis = depth % static_cast<int>(dim_);
    std::size_t mid = (lo + hi) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                     [&](std::size_t a, std::size_t b) {
                         if (points_[a][axis] != points_[b][axis])
                             return points_[a][axis] < points_[b][axis];
                         return a < b;
                     });
    Node node;
    node.axis = axis;
    node.point = idx[mid];
    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    int left = build(idx, lo, mid, depth + 1);
    int right = build(idx, mid + 1, hi, depth + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void KdTree::search(int node, const std::vector<double>& query, double& best_d2,
                    std::size_t& best_idx) const {
    if (node < 0) return;
    const Node& nd = nodes_[node];
    double d2 = dist2(points_[nd.point], query);
    if (d2 < best_d2 || (d2 == best_d2 && nd.point < best_idx)) {
        best_d2 = d2;
        best_idx = nd.point;
    }
    double diff = query[nd.axis] - points_[nd.point][nd.axis];
    int near = diff < 0.0 ? nd.left : nd.right;
    int far = diff < 0.0 ? nd.right : nd.left;
    search(near, query, best_d2, best_idx);
    // The far side can still hold an equal-distance lower index, so recurse
    // on <= rather than <.
    if (diff * diff <= best_d2) search(far, query, best_d2, best_idx);
}

std::size_t KdTree::nearest(const std::vector<double>& query) const {
    if (query.size() != dim_) throw std::invalid_argument("query dimension mismatch");
    double best_d2 = 1e300;
    std::size_t best_idx = points_.size();
    search(root_, query, best_d2, best_idx);
    return best_idx;
}

} // namespace lsb
