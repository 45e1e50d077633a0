#ifndef BTORRT_POINT_CLOUD_HPP
#define BTORRT_POINT_CLOUD_HPP

#include <memory>
#include <string>
#include <vector>

#include "btorrt/kdtree.hpp"
#include "btorrt/workspace.hpp"

namespace btorrt {

/// Loads an ASCII point cloud: PLY ("vertex" element with x y z), PCD
/// (FIELDS containing x y z, DATA ascii), or headerless CSV/XYZ rows.
/// Positions are preserved exactly; color and other attributes are dropped.
/// Parse errors name the offending line. Requires at least 4 points.
std::vector<Point> load_cloud(const std::string& path);

/// Writes one "x,y[,z]" row per point with round-trip-exact formatting.
void save_cloud_csv(const std::vector<Point>& cloud, const std::string& path);

/// Cloud density statistics and the planning parameters derived from them:
/// step_size = step_coeff * mean_nn_dist and safe_dist = alpha * step_size.
struct DensityReport {
    double mean_nn_dist = 0.0;
    double std_nn_dist = 0.0;
    double step_size = 0.0;
    double safe_dist = 0.0;
    double alpha = 0.0;
};

/// Mean/stddev of each point's distance to its nearest distinct neighbor,
/// computed with a k-d tree. The per-point loop runs under OpenMP; results
/// are bit-identical to analyze_density_serial for any thread count.
DensityReport analyze_density(const std::vector<Point>& cloud, double alpha = 0.75,
                              double step_coeff = 4.0);

/// Single-threaded reference for analyze_density, kept for testing.
DensityReport analyze_density_serial(const std::vector<Point>& cloud,
                                     double alpha = 0.75, double step_coeff = 4.0);

std::string density_report_json(const DensityReport& report);

/// Point-cloud environment: free space is everything strictly farther than
/// `safe_dist` from every cloud point. Segments are checked by sampling at
/// spacing <= safe_dist / 2 including both endpoints.
class CloudMap final : public Workspace {
  public:
    CloudMap(std::vector<Point> cloud, double step_size, double safe_dist);

    /// Derives step size and safe distance from the cloud's density.
    static CloudMap from_analysis(std::vector<Point> cloud, double alpha = 0.75,
                                  double step_coeff = 4.0);

    const KdTree& index() const { return *index_; }
    const std::vector<Point>& cloud() const { return index_->points(); }
    double step_size() const { return step_size_; }
    double safe_dist() const { return safe_dist_; }

    int dim() const override { return index_->dim(); }
    Aabb bounds() const override { return bounds_; }
    bool point_free(const Point& p) const override;
    bool segment_free(const Point& a, const Point& b) const override;

  private:
    std::unique_ptr<KdTree> index_;
    double step_size_ = 0.0;
    double safe_dist_ = 0.0;
    Aabb bounds_;
};

}  // namespace btorrt

#endif  // BTORRT_POINT_CLOUD_HPP
