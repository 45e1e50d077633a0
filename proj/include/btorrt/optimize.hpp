#ifndef BTORRT_OPTIMIZE_HPP
#define BTORRT_OPTIMIZE_HPP

#include "btorrt/spline.hpp"
#include "btorrt/workspace.hpp"

namespace btorrt {

/// Greedy shortcutting. Walks a probe forward while the anchor still sees
/// it; the last visible waypoint becomes the next breakpoint. The result is
/// a subsequence of the input with both endpoints preserved and
/// cost(out) <= cost(in).
Polyline downsample(const Polyline& path, const Workspace& ws);

/// Randomized shortening. Per iteration, two sorted arc-length draws pick
/// interpolated points gamma_1/gamma_2 on the path; if the chord between
/// them is collision-free it replaces everything in between. Cost is
/// non-increasing across iterations; endpoints are preserved.
Polyline upsample(const Polyline& path, const Workspace& ws, int iterations, Rng& rng);

/// Removes exactly-coincident consecutive waypoints.
Polyline dedupe_consecutive(const Polyline& path);

struct SmoothResult {
    SplinePath spline;
    Polyline trajectory;         // discretized spline, or the input when degraded
    std::vector<double> params;  // parameter per trajectory sample (empty when degraded)
    int keypoints_inserted = 0;
    int rounds = 0;
    bool converged = true;
};

/// Collision-aware spline smoothing. Fits a natural cubic spline through
/// the key points, collision-checks the discretized curve segment by
/// segment, and on a hit inserts the midpoint between the key point nearest
/// (in parameter) to the colliding sample and its predecessor, then refits.
/// Stops when the discretized curve is collision-free; after max_rounds
/// insertions it falls back to the input polyline with converged = false.
SmoothResult kp_smooth(const Polyline& keypoints, const Workspace& ws,
                       double sample_spacing, int max_rounds = 50);

}  // namespace btorrt

#endif  // BTORRT_OPTIMIZE_HPP
