#ifndef BTORRT_PLANNER_HPP
#define BTORRT_PLANNER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "btorrt/kdtree.hpp"
#include "btorrt/workspace.hpp"

namespace btorrt {

/// Ordered waypoint sequence.
using Polyline = std::vector<Point>;

/// Sum of segment lengths.
double path_cost(const Polyline& path);

/// Cs[0] = 0, Cs[i] = Cs[i-1] + |p_i - p_{i-1}|.
std::vector<double> cumulative_lengths(const Polyline& path);

/// Deterministic RNG handed to planners and the path optimizer.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// U(0,1).
    double canonical() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Search tree: node positions plus parent indices. The root has parent -1.
struct Tree {
    std::vector<Point> nodes;
    std::vector<int> parent;
    int newest = 0;

    static Tree rooted_at(const Point& root) {
        Tree t;
        t.nodes.push_back(root);
        t.parent.push_back(-1);
        return t;
    }

    int append(const Point& p, int parent_index) {
        nodes.push_back(p);
        parent.push_back(parent_index);
        newest = static_cast<int>(nodes.size()) - 1;
        return newest;
    }

    std::size_t size() const { return nodes.size(); }

    /// Waypoints from `index` back to the root, inclusive.
    Polyline backtrack(int index) const;
};

/// Exact nearest-neighbor index over a growing tree: a k-d tree covers a
/// frozen prefix and a linear scan covers nodes appended since the last
/// rebuild. Answers match a full linear scan (lowest index wins ties).
class TreeIndex {
  public:
    explicit TreeIndex(const Tree& tree) : tree_(&tree) {}

    void note_append();
    KdTree::NearestHit nearest(const Point& q) const;
    std::vector<std::size_t> within_radius(const Point& q, double r) const;

  private:
    const Tree* tree_;
    std::optional<KdTree> prefix_;
    std::size_t indexed_ = 1;  // root is covered by the initial linear scan
};

struct PlanConfig {
    double step_size = 20.0;
    int max_iterations = 5000;
    std::uint64_t rng_seed = 0;
    double rrt_star_radius = 0.0;  // 0 = 3 * step_size
    int rrt_star_max_iter = 4000;
};

struct PlanResult {
    std::optional<Polyline> path;
    Tree tree_a;
    Tree tree_b;
    int iterations_used = 0;
    int nodes_total = 0;
    double wall_time_ms = 0.0;
};

/// Uniformly samples a free point from ws.bounds() by rejection; throws
/// "free space not sampleable" after 10^4 rejected draws.
Point sample_free(const Workspace& ws, Rng& rng);

struct ExtendOutcome {
    bool added = false;
    bool reached = false;
};

/// One target-oriented extension step. The node nearest to `target` steers
/// toward the target itself when it can see it, otherwise toward a uniform
/// free sample. `reached` reports |x_new - target| < step_size.
ExtendOutcome extend(Tree& tree, TreeIndex& index, const Point& target,
                     const Workspace& ws, const PlanConfig& cfg, Rng& rng);

/// Bidirectional target-oriented planner: tree A grows from the start
/// toward the goal, tree B grows from the goal toward A's newest node, and
/// the trees join when B reaches that node with a collision-free junction.
PlanResult plan_bto_rrt(const Workspace& ws, const Point& start, const Point& goal,
                        const PlanConfig& cfg);

/// Baseline single-tree RRT with uniform sampling.
PlanResult plan_rrt(const Workspace& ws, const Point& start, const Point& goal,
                    const PlanConfig& cfg);

/// Baseline bidirectional RRT: both trees grow by uniform sampling and
/// connect when a new node comes within one step of the other tree.
PlanResult plan_brrt(const Workspace& ws, const Point& start, const Point& goal,
                     const PlanConfig& cfg);

/// Baseline RRT*: runs exactly cfg.rrt_star_max_iter iterations with
/// choose-parent and rewiring inside rrt_star_radius, then extracts the
/// best goal-connected path.
PlanResult plan_rrt_star(const Workspace& ws, const Point& start, const Point& goal,
                         const PlanConfig& cfg);

}  // namespace btorrt

#endif  // BTORRT_PLANNER_HPP
