#include "btorrt/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace btorrt {

int SplinePath::segment_of(double t) const {
    // Last knot belongs to the final segment.
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    auto idx = static_cast<std::ptrdiff_t>(it - knots_.begin()) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0,
                                     static_cast<std::ptrdiff_t>(segment_count()) - 1);
    return static_cast<int>(idx);
}

Point SplinePath::eval(double t) const {
    t = std::clamp(t, t_min(), t_max());
    const int j = segment_of(t);
    const double u = t - knots_[static_cast<std::size_t>(j)];
    Point p = keypoints_.front();  // carries dim
    for (int axis = 0; axis < dim_; ++axis) {
        const auto& co = coef_[static_cast<std::size_t>(axis)];
        const auto k = static_cast<std::size_t>(j);
        set_coord(p, axis, co.a[k] + u * (co.b[k] + u * (co.c[k] + u * co.d[k])));
    }
    return p;
}

SplinePath fit_cubic_spline(const Polyline& keypoints) {
    const std::size_t n = keypoints.size();
    if (n < 2) throw std::invalid_argument("need at least 2 keypoints");
    const int dim = keypoints.front().dim;
    for (const Point& p : keypoints)
        if (p.dim != dim) throw std::invalid_argument("dimension mismatch");

    SplinePath spline;
    spline.dim_ = dim;
    spline.keypoints_ = keypoints;
    spline.knots_ = cumulative_lengths(keypoints);

    std::vector<double> h(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        h[j] = spline.knots_[j + 1] - spline.knots_[j];
        if (h[j] <= 0.0) throw std::invalid_argument("degenerate knot");
    }

    for (int axis = 0; axis < dim; ++axis) {
        std::vector<double> a(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = coord(keypoints[j], axis);

        // Natural boundary: c_0 = c_{n-1} = 0; interior c from the
        // tridiagonal system
        //   h_{j-1} c_{j-1} + 2(h_{j-1}+h_j) c_j + h_j c_{j+1}
        //     = 3 (a_{j+1}-a_j)/h_j - 3 (a_j-a_{j-1})/h_{j-1}
        // solved by the Thomas algorithm.
        std::vector<double> c(n, 0.0);
        if (n > 2) {
            const std::size_t m = n - 2;  // interior unknowns
            std::vector<double> diag(m), rhs(m);
            for (std::size_t k = 0; k < m; ++k) {
                const std::size_t j = k + 1;
                diag[k] = 2.0 * (h[j - 1] + h[j]);
                rhs[k] = 3.0 * (a[j + 1] - a[j]) / h[j] - 3.0 * (a[j] - a[j - 1]) / h[j - 1];
            }
            for (std::size_t k = 1; k < m; ++k) {
                // sub-diagonal h[k], super-diagonal h[k] share the knot spacings
                const double w = h[k] / diag[k - 1];
                diag[k] -= w * h[k];
                rhs[k] -= w * rhs[k - 1];
            }
            c[m] = rhs[m - 1] / diag[m - 1];
            for (std::size_t k = m - 1; k >= 1; --k)
                c[k] = (rhs[k - 1] - h[k] * c[k + 1]) / diag[k - 1];
        }

        auto& co = spline.coef_[static_cast<std::size_t>(axis)];
        co.a.resize(n - 1);
        co.b.resize(n - 1);
        co.c.resize(n - 1);
        co.d.resize(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            co.a[j] = a[j];
            co.b[j] = (a[j + 1] - a[j]) / h[j] - h[j] * (2.0 * c[j] + c[j + 1]) / 3.0;
            co.c[j] = c[j];
            co.d[j] = (c[j + 1] - c[j]) / (3.0 * h[j]);
        }
    }
    return spline;
}

DiscretizedSpline discretize(const SplinePath& spline, double sample_spacing) {
    if (sample_spacing <= 0.0) throw std::invalid_argument("sample_spacing must be positive");
    DiscretizedSpline out;
    const auto& knots = spline.knots();
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        const double h = knots[j + 1] - knots[j];
        int pieces = std::max(1, static_cast<int>(std::ceil(h / sample_spacing)));
        // Chord-length parameters track arc length only approximately, so
        // refine until no consecutive chord exceeds the requested spacing.
        for (int round = 0; round < 20; ++round) {
            double worst = 0.0;
            Point prev = spline.eval(knots[j]);
            for (int s = 1; s <= pieces; ++s) {
                const Point cur =
                    spline.eval(knots[j] + h * static_cast<double>(s) / pieces);
                worst = std::max(worst, distance(prev, cur));
                prev = cur;
            }
            if (worst <= sample_spacing) break;
            pieces *= 2;
        }
        for (int s = 0; s < pieces; ++s) {
            const double t = knots[j] + h * static_cast<double>(s) / pieces;
            out.points.push_back(spline.eval(t));
            out.params.push_back(t);
        }
    }
    out.points.push_back(spline.eval(knots.back()));
    out.params.push_back(knots.back());
    return out;
}

}  // namespace btorrt
