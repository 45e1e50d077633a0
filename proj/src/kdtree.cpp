#include "btorrt/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace btorrt {

KdTree::KdTree(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("empty point set");
    dim_ = points_[0].dim;
    for (const Point& p : points_) {
        if (p.dim != dim_) throw std::invalid_argument("dimension mismatch");
    }
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    nodes_.reserve(points_.size());
    root_ = build_range(order, 0, order.size(), 0);
}

int KdTree::build_range(std::vector<std::size_t>& order, std::size_t begin,
                        std::size_t end, int depth) {
    if (begin >= end) return -1;
    const int axis = depth % dim_;
    const std::size_t mid = begin + (end - begin) / 2;
    // Secondary sort on the point index keeps construction deterministic
    // when coordinates tie.
    std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(mid),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         const double ca = coord(points_[a], axis);
                         const double cb = coord(points_[b], axis);
                         if (ca != cb) return ca < cb;
                         return a < b;
                     });
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{order[mid], axis});
    const int left = build_range(order, begin, mid, depth + 1);
    const int right = build_range(order, mid + 1, end, depth + 1);
    nodes_[static_cast<std::size_t>(node_id)].left = left;
    nodes_[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
}

KdTree::NearestHit KdTree::nearest(const Point& q) const {
    if (q.dim != dim_) throw std::invalid_argument("dimension mismatch");
    NearestHit best;
    double best_d2 = std::numeric_limits<double>::infinity();
    nearest_impl(root_, q, kNoSkip, best, best_d2);
    best.dist = std::sqrt(best_d2);
    return best;
}

KdTree::NearestHit KdTree::nearest_excluding(const Point& q,
                                             std::size_t skip) const {
    if (q.dim != dim_) throw std::invalid_argument("dimension mismatch");
    if (points_.size() < 2) throw std::invalid_argument("need at least 2 points");
    NearestHit best;
    double best_d2 = std::numeric_limits<double>::infinity();
    nearest_impl(root_, q, skip, best, best_d2);
    best.dist = std::sqrt(best_d2);
    return best;
}

void KdTree::nearest_impl(int node, const Point& q, std::size_t skip,
                          NearestHit& best, double& best_d2) const {
    if (node < 0) return;
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    const Point& p = points_[n.point_index];
    if (n.point_index != skip) {
        const double d2 = squared_distance(p, q);
        if (d2 < best_d2 || (d2 == best_d2 && n.point_index < best.index)) {
            best_d2 = d2;
            best.index = n.point_index;
        }
    }
    const double diff = coord(q, n.axis) - coord(p, n.axis);
    const int near_side = diff < 0.0 ? n.left : n.right;
    const int far_side = diff < 0.0 ? n.right : n.left;
    nearest_impl(near_side, q, skip, best, best_d2);
    // The far side may still hold an equally distant point with a lower
    // index, so prune only when the splitting plane is strictly farther.
    if (diff * diff <= best_d2) nearest_impl(far_side, q, skip, best, best_d2);
}

std::vector<std::size_t> KdTree::within_radius(const Point& q, double r) const {
    if (q.dim != dim_) throw std::invalid_argument("dimension mismatch");
    if (r < 0.0) throw std::invalid_argument("negative radius");
    std::vector<std::size_t> out;
    radius_impl(root_, q, r * r, r, out);
    std::sort(out.begin(), out.end());
    return out;
}

void KdTree::radius_impl(int node, const Point& q, double r2, double r,
                         std::vector<std::size_t>& out) const {
    if (node < 0) return;
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    const Point& p = points_[n.point_index];
    if (squared_distance(p, q) <= r2) out.push_back(n.point_index);
    const double diff = coord(q, n.axis) - coord(p, n.axis);
    const int near_side = diff < 0.0 ? n.left : n.right;
    const int far_side = diff < 0.0 ? n.right : n.left;
    radius_impl(near_side, q, r2, r, out);
    if (std::abs(diff) <= r) radius_impl(far_side, q, r2, r, out);
}

}  // namespace btorrt
