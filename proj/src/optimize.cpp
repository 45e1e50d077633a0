#include "btorrt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace btorrt {

Polyline downsample(const Polyline& path, const Workspace& ws) {
    if (path.size() < 2) throw std::invalid_argument("need at least 2 waypoints");
    Polyline out{path.front()};
    std::size_t anchor = 0;
    const std::size_t last = path.size() - 1;
    while (anchor < last) {
        std::size_t probe = anchor + 1;  // consecutive edge, free by precondition
        while (probe < last && ws.segment_free(path[anchor], path[probe + 1])) ++probe;
        out.push_back(path[probe]);
        anchor = probe;
    }
    return out;
}

Polyline upsample(const Polyline& path, const Workspace& ws, int iterations, Rng& rng) {
    if (path.size() < 2) throw std::invalid_argument("need at least 2 waypoints");
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    Polyline current = path;
    std::vector<double> cs = cumulative_lengths(current);
    for (int iter = 0; iter < iterations; ++iter) {
        const double total = cs.back();
        double r1 = rng.canonical() * total;
        double r2 = rng.canonical() * total;
        if (r1 > r2) std::swap(r1, r2);
        if (r1 == r2) continue;  // degenerate draw, keep the iteration budget

        // Segment i holds arc length r when cs[i] <= r < cs[i+1].
        auto segment_at = [&](double r) {
            auto it = std::upper_bound(cs.begin(), cs.end(), r);
            auto idx = static_cast<std::ptrdiff_t>(it - cs.begin()) - 1;
            idx = std::clamp<std::ptrdiff_t>(idx, 0,
                                             static_cast<std::ptrdiff_t>(cs.size()) - 2);
            return static_cast<std::size_t>(idx);
        };
        const std::size_t i = segment_at(r1);
        const std::size_t j = segment_at(r2);
        if (i == j) continue;

        const double a1 = (r1 - cs[i]) / (cs[i + 1] - cs[i]);
        const double a2 = (r2 - cs[j]) / (cs[j + 1] - cs[j]);
        const Point gamma1 = lerp(current[i], current[i + 1], a1);
        const Point gamma2 = lerp(current[j], current[j + 1], a2);
        if (!ws.segment_free(gamma1, gamma2)) continue;

        Polyline next;
        next.reserve(i + (current.size() - j) + 2);
        next.insert(next.end(), current.begin(),
                    current.begin() + static_cast<std::ptrdiff_t>(i + 1));
        next.push_back(gamma1);
        next.push_back(gamma2);
        next.insert(next.end(), current.begin() + static_cast<std::ptrdiff_t>(j + 1),
                    current.end());
        current = std::move(next);
        cs = cumulative_lengths(current);
    }
    return current;
}

Polyline dedupe_consecutive(const Polyline& path) {
    Polyline out;
    for (const Point& p : path) {
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

SmoothResult kp_smooth(const Polyline& keypoints, const Workspace& ws,
                       double sample_spacing, int max_rounds) {
    if (keypoints.size() < 2) throw std::invalid_argument("need at least 2 keypoints");
    if (sample_spacing <= 0.0) throw std::invalid_argument("sample_spacing must be positive");

    SmoothResult result;
    Polyline kp = keypoints;
    while (true) {
        result.spline = fit_cubic_spline(kp);
        DiscretizedSpline disc = discretize(result.spline, sample_spacing);

        std::ptrdiff_t collide_at = -1;
        for (std::size_t s = 0; s + 1 < disc.points.size(); ++s) {
            if (!ws.segment_free(disc.points[s], disc.points[s + 1])) {
                collide_at = static_cast<std::ptrdiff_t>(s);
                break;
            }
        }
        if (collide_at < 0) {
            result.trajectory = std::move(disc.points);
            result.params = std::move(disc.params);
            return result;
        }
        if (result.rounds >= max_rounds) {
            // Smoothing did not settle; hand back the collision-free input.
            result.trajectory = keypoints;
            result.params.clear();
            result.converged = false;
            return result;
        }

        // Key point closest in parameter to the colliding sample; insert the
        // midpoint between it and its predecessor. Ties go to the earlier
        // key point.
        const double t_hit = disc.params[static_cast<std::size_t>(collide_at)];
        const auto& knots = result.spline.knots();
        std::size_t closest = 0;
        double best = std::abs(knots[0] - t_hit);
        for (std::size_t q = 1; q < knots.size(); ++q) {
            const double d = std::abs(knots[q] - t_hit);
            if (d < best) {
                best = d;
                closest = q;
            }
        }
        const std::size_t q = std::max<std::size_t>(closest, 1);
        const Point mid = lerp(kp[q - 1], kp[q], 0.5);
        kp.insert(kp.begin() + static_cast<std::ptrdiff_t>(q), mid);
        ++result.keypoints_inserted;
        ++result.rounds;
    }
}

}  // namespace btorrt
