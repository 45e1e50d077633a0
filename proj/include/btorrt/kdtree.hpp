#ifndef BTORRT_KDTREE_HPP
#define BTORRT_KDTREE_HPP

#include <cstddef>
#include <vector>

#include "btorrt/geometry.hpp"

namespace btorrt {

/// Immutable k-d tree over a fixed point set (2D or 3D).
///
/// Queries are exact: they return the same answers as an exhaustive scan,
/// with ties at equal distance broken by the lowest stored point index.
/// The tree is safe for concurrent read-only queries after construction.
class KdTree {
  public:
    struct NearestHit {
        std::size_t index = 0;
        double dist = 0.0;
    };

    /// Builds a balanced tree by median split, cycling axes by depth.
    /// Throws on an empty point set or mixed point dimensions.
    explicit KdTree(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    int dim() const { return dim_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

    /// Closest stored point to q. Throws on dimension mismatch.
    NearestHit nearest(const Point& q) const;

    /// Closest stored point to q, ignoring the point at index `skip`.
    /// Requires size() >= 2.
    NearestHit nearest_excluding(const Point& q, std::size_t skip) const;

    /// Indices of all points within distance r of q (inclusive boundary),
    /// sorted ascending. Throws if r is negative.
    std::vector<std::size_t> within_radius(const Point& q, double r) const;

  private:
    struct Node {
        std::size_t point_index;
        int axis;
        int left = -1;
        int right = -1;
    };

    int build_range(std::vector<std::size_t>& order, std::size_t begin,
                    std::size_t end, int depth);
    void nearest_impl(int node, const Point& q, std::size_t skip,
                      NearestHit& best, double& best_d2) const;
    void radius_impl(int node, const Point& q, double r2, double r,
                     std::vector<std::size_t>& out) const;

    std::vector<Point> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
    int dim_ = 2;

    static constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);
};

}  // namespace btorrt

#endif  // BTORRT_KDTREE_HPP
