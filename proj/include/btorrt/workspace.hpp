#ifndef BTORRT_WORKSPACE_HPP
#define BTORRT_WORKSPACE_HPP

#include "btorrt/geometry.hpp"

namespace btorrt {

/// Collision-queryable environment. Implementations are immutable once
/// constructed, so concurrent queries need no locking.
class Workspace {
  public:
    virtual ~Workspace() = default;

    virtual int dim() const = 0;

    /// Box the planners sample from.
    virtual Aabb bounds() const = 0;

    /// True if p lies in free space. Out-of-bounds points are not free.
    virtual bool point_free(const Point& p) const = 0;

    /// True if the straight segment a-b stays in free space.
    virtual bool segment_free(const Point& a, const Point& b) const = 0;
};

}  // namespace btorrt

#endif  // BTORRT_WORKSPACE_HPP
