#ifndef BTORRT_SPLINE_HPP
#define BTORRT_SPLINE_HPP

#include <array>
#include <vector>

#include "btorrt/planner.hpp"

namespace btorrt {

/// Natural cubic spline through a waypoint sequence: one 1D spline per
/// coordinate over a shared chord-length parameter. Each segment j is
///   S_j(t) = a_j + b_j (t - t_j) + c_j (t - t_j)^2 + d_j (t - t_j)^3
/// with zero second derivative at both ends and C2 continuity at the
/// interior knots.
class SplinePath {
  public:
    /// Per-dimension coefficient arrays, one entry per segment.
    struct Coefficients {
        std::vector<double> a, b, c, d;
    };

    const std::vector<double>& knots() const { return knots_; }
    const Polyline& keypoints() const { return keypoints_; }
    int dim() const { return dim_; }
    std::size_t segment_count() const { return knots_.size() - 1; }
    double t_min() const { return knots_.front(); }
    double t_max() const { return knots_.back(); }
    const Coefficients& coefficients(int axis) const {
        return coef_[static_cast<std::size_t>(axis)];
    }

    /// Evaluates the curve; t is clamped to [t_min, t_max].
    Point eval(double t) const;

    friend SplinePath fit_cubic_spline(const Polyline& keypoints);

  private:
    int segment_of(double t) const;

    std::vector<double> knots_;
    std::array<Coefficients, 3> coef_;
    Polyline keypoints_;
    int dim_ = 2;
};

/// Interpolating natural cubic spline over chord-length knots.
/// Throws "degenerate knot" when consecutive keypoints coincide and
/// requires at least 2 keypoints.
SplinePath fit_cubic_spline(const Polyline& keypoints);

/// Curve samples (and their parameters) at arc spacing <= sample_spacing,
/// including every knot and both endpoints exactly.
struct DiscretizedSpline {
    Polyline points;
    std::vector<double> params;
};
DiscretizedSpline discretize(const SplinePath& spline, double sample_spacing);

}  // namespace btorrt

#endif  // BTORRT_SPLINE_HPP
