#include "btorrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace btorrt {

double path_cost(const Polyline& path) {
    double cost = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) cost += distance(path[i - 1], path[i]);
    return cost;
}

std::vector<double> cumulative_lengths(const Polyline& path) {
    std::vector<double> cs(path.size(), 0.0);
    for (std::size_t i = 1; i < path.size(); ++i)
        cs[i] = cs[i - 1] + distance(path[i - 1], path[i]);
    return cs;
}

Polyline Tree::backtrack(int index) const {
    Polyline out;
    for (int i = index; i >= 0; i = parent[static_cast<std::size_t>(i)])
        out.push_back(nodes[static_cast<std::size_t>(i)]);
    return out;
}

void TreeIndex::note_append() {
    const std::size_t tail = tree_->size() - indexed_;
    if (tail > std::max<std::size_t>(64, indexed_)) {
        prefix_.emplace(tree_->nodes);
        indexed_ = tree_->size();
    }
}

KdTree::NearestHit TreeIndex::nearest(const Point& q) const {
    KdTree::NearestHit best{0, std::numeric_limits<double>::infinity()};
    if (prefix_) best = prefix_->nearest(q);
    for (std::size_t i = prefix_ ? prefix_->size() : 0; i < tree_->size(); ++i) {
        const double d = distance(tree_->nodes[i], q);
        if (d < best.dist || (d == best.dist && i < best.index)) best = {i, d};
    }
    return best;
}

std::vector<std::size_t> TreeIndex::within_radius(const Point& q, double r) const {
    std::vector<std::size_t> out;
    if (prefix_) out = prefix_->within_radius(q, r);
    for (std::size_t i = prefix_ ? prefix_->size() : 0; i < tree_->size(); ++i) {
        if (distance(tree_->nodes[i], q) <= r) out.push_back(i);
    }
    return out;
}

Point sample_free(const Workspace& ws, Rng& rng) {
    const Aabb box = ws.bounds();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Point p = box.lo;
        for (int a = 0; a < box.dim(); ++a)
            set_coord(p, a, rng.uniform(coord(box.lo, a), coord(box.hi, a)));
        if (ws.point_free(p)) return p;
    }
    throw std::runtime_error("free space not sampleable");
}

namespace {

Point steer(const Point& from, const Point& toward, double step) {
    const double d = distance(from, toward);
    if (d <= step) return toward;
    return lerp(from, toward, step / d);
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_endpoints(const Workspace& ws, const Point& start, const Point& goal) {
    if (!ws.point_free(start)) throw std::invalid_argument("start in collision");
    if (!ws.point_free(goal)) throw std::invalid_argument("goal in collision");
    if (start == goal) throw std::invalid_argument("start equals goal");
}

/// Classic RRT extension toward a given sample (nearest node to the sample)
/// used by the uniform-sampling baselines. Returns the new node index or -1.
int extend_toward_sample(Tree& tree, TreeIndex& index, const Point& sample,
                         const Workspace& ws, double step) {
    const auto hit = index.nearest(sample);
    const Point& nearest = tree.nodes[hit.index];
    if (hit.dist == 0.0) return -1;
    const Point fresh = steer(nearest, sample, step);
    if (!ws.segment_free(nearest, fresh)) return -1;
    const int id = tree.append(fresh, static_cast<int>(hit.index));
    index.note_append();
    return id;
}

Polyline join_paths(const Tree& tree_a, int a_index, const Tree& tree_b, int b_index) {
    Polyline from_start = tree_a.backtrack(a_index);
    std::reverse(from_start.begin(), from_start.end());
    const Polyline to_goal = tree_b.backtrack(b_index);
    for (const Point& p : to_goal) {
        if (!from_start.empty() && from_start.back() == p) continue;  // exact junction
        from_start.push_back(p);
    }
    return from_start;
}

}  // namespace

ExtendOutcome extend(Tree& tree, TreeIndex& index, const Point& target,
                     const Workspace& ws, const PlanConfig& cfg, Rng& rng) {
    const auto hit = index.nearest(target);
    const Point near_node = tree.nodes[hit.index];
    Point sample;
    if (ws.segment_free(near_node, target))
        sample = target;  // target visible: grow straight at it
    else
        sample = sample_free(ws, rng);

    const double d = distance(near_node, sample);
    if (d == 0.0) {
        // Nearest node already sits on the sample; nothing to add.
        return {false, distance(near_node, target) < cfg.step_size};
    }
    const Point fresh = steer(near_node, sample, cfg.step_size);
    if (!ws.segment_free(near_node, fresh)) return {false, false};
    tree.append(fresh, static_cast<int>(hit.index));
    index.note_append();
    return {true, distance(fresh, target) < cfg.step_size};
}

PlanResult plan_bto_rrt(const Workspace& ws, const Point& start, const Point& goal,
                        const PlanConfig& cfg) {
    check_endpoints(ws, start, goal);
    const auto t0 = Clock::now();
    Rng rng(cfg.rng_seed);
    PlanResult result;
    result.tree_a = Tree::rooted_at(start);
    result.tree_b = Tree::rooted_at(goal);
    TreeIndex index_a(result.tree_a);
    TreeIndex index_b(result.tree_b);

    for (int i = 1; i <= cfg.max_iterations; ++i) {
        result.iterations_used = i;
        extend(result.tree_a, index_a, goal, ws, cfg, rng);
        const Point& tip_a = result.tree_a.nodes[static_cast<std::size_t>(result.tree_a.newest)];
        const auto reply = extend(result.tree_b, index_b, tip_a, ws, cfg, rng);
        const Point& tip_b = result.tree_b.nodes[static_cast<std::size_t>(result.tree_b.newest)];
        if (reply.reached && ws.segment_free(tip_b, tip_a)) {
            result.path = join_paths(result.tree_a, result.tree_a.newest, result.tree_b,
                                     result.tree_b.newest);
            break;
        }
    }
    result.nodes_total =
        static_cast<int>(result.tree_a.size() + result.tree_b.size());
    result.wall_time_ms = elapsed_ms(t0);
    return result;
}

PlanResult plan_rrt(const Workspace& ws, const Point& start, const Point& goal,
                    const PlanConfig& cfg) {
    check_endpoints(ws, start, goal);
    const auto t0 = Clock::now();
    Rng rng(cfg.rng_seed);
    PlanResult result;
    result.tree_a = Tree::rooted_at(start);
    TreeIndex index(result.tree_a);

    for (int i = 1; i <= cfg.max_iterations; ++i) {
        result.iterations_used = i;
        const Point sample = sample_free(ws, rng);
        const int fresh = extend_toward_sample(result.tree_a, index, sample, ws,
                                               cfg.step_size);
        if (fresh < 0) continue;
        const Point& tip = result.tree_a.nodes[static_cast<std::size_t>(fresh)];
        if (distance(tip, goal) < cfg.step_size && ws.segment_free(tip, goal)) {
            const int goal_id = result.tree_a.append(goal, fresh);
            index.note_append();
            Polyline path = result.tree_a.backtrack(goal_id);
            std::reverse(path.begin(), path.end());
            result.path = std::move(path);
            break;
        }
    }
    result.nodes_total = static_cast<int>(result.tree_a.size());
    result.wall_time_ms = elapsed_ms(t0);
    return result;
}

PlanResult plan_brrt(const Workspace& ws, const Point& start, const Point& goal,
                     const PlanConfig& cfg) {
    check_endpoints(ws, start, goal);
    const auto t0 = Clock::now();
    Rng rng(cfg.rng_seed);
    PlanResult result;
    result.tree_a = Tree::rooted_at(start);
    result.tree_b = Tree::rooted_at(goal);
    TreeIndex index_a(result.tree_a);
    TreeIndex index_b(result.tree_b);

    for (int i = 1; i <= cfg.max_iterations && !result.path; ++i) {
        result.iterations_used = i;
        for (int side = 0; side < 2 && !result.path; ++side) {
            Tree& tree = side == 0 ? result.tree_a : result.tree_b;
            TreeIndex& index = side == 0 ? index_a : index_b;
            const Tree& other = side == 0 ? result.tree_b : result.tree_a;
            const TreeIndex& other_index = side == 0 ? index_b : index_a;

            const Point sample = sample_free(ws, rng);
            const int fresh = extend_toward_sample(tree, index, sample, ws, cfg.step_size);
            if (fresh < 0) continue;
            const Point& tip = tree.nodes[static_cast<std::size_t>(fresh)];
            const auto meet = other_index.nearest(tip);
            if (meet.dist < cfg.step_size &&
                ws.segment_free(tip, other.nodes[meet.index])) {
                if (side == 0)
                    result.path = join_paths(result.tree_a, fresh, result.tree_b,
                                             static_cast<int>(meet.index));
                else
                    result.path = join_paths(result.tree_a, static_cast<int>(meet.index),
                                             result.tree_b, fresh);
            }
        }
    }
    result.nodes_total =
        static_cast<int>(result.tree_a.size() + result.tree_b.size());
    result.wall_time_ms = elapsed_ms(t0);
    return result;
}

PlanResult plan_rrt_star(const Workspace& ws, const Point& start, const Point& goal,
                         const PlanConfig& cfg) {
    check_endpoints(ws, start, goal);
    const auto t0 = Clock::now();
    Rng rng(cfg.rng_seed);
    const double radius =
        cfg.rrt_star_radius > 0.0 ? cfg.rrt_star_radius : 3.0 * cfg.step_size;
    PlanResult result;
    result.tree_a = Tree::rooted_at(start);
    TreeIndex index(result.tree_a);
    std::vector<double> cost{0.0};
    std::vector<std::vector<int>> children{{}};

    // Propagates a cost change through a rewired subtree.
    auto update_subtree = [&](int node, double delta) {
        std::vector<int> stack{node};
        while (!stack.empty()) {
            const int id = stack.back();
            stack.pop_back();
            cost[static_cast<std::size_t>(id)] += delta;
            for (int c : children[static_cast<std::size_t>(id)]) stack.push_back(c);
        }
    };

    for (int i = 1; i <= cfg.rrt_star_max_iter; ++i) {
        result.iterations_used = i;
        const Point sample = sample_free(ws, rng);
        const auto hit = index.nearest(sample);
        const Point& near_node = result.tree_a.nodes[hit.index];
        if (hit.dist == 0.0) continue;
        const Point fresh = steer(near_node, sample, cfg.step_size);
        if (!ws.segment_free(near_node, fresh)) continue;

        const auto neighbors = index.within_radius(fresh, radius);
        int best_parent = static_cast<int>(hit.index);
        double best_cost = cost[hit.index] + distance(near_node, fresh);
        for (std::size_t j : neighbors) {
            const double through = cost[j] + distance(result.tree_a.nodes[j], fresh);
            if (through < best_cost && ws.segment_free(result.tree_a.nodes[j], fresh)) {
                best_parent = static_cast<int>(j);
                best_cost = through;
            }
        }
        const int fresh_id = result.tree_a.append(fresh, best_parent);
        index.note_append();
        cost.push_back(best_cost);
        children.emplace_back();
        children[static_cast<std::size_t>(best_parent)].push_back(fresh_id);

        for (std::size_t j : neighbors) {
            const double through = best_cost + distance(fresh, result.tree_a.nodes[j]);
            if (through < cost[j] && ws.segment_free(fresh, result.tree_a.nodes[j])) {
                const int old_parent = result.tree_a.parent[j];
                auto& siblings = children[static_cast<std::size_t>(old_parent)];
                siblings.erase(std::find(siblings.begin(), siblings.end(),
                                         static_cast<int>(j)));
                result.tree_a.parent[j] = fresh_id;
                children[static_cast<std::size_t>(fresh_id)].push_back(static_cast<int>(j));
                update_subtree(static_cast<int>(j), through - cost[j]);
            }
        }
    }

    // Best path over every node that can legally connect to the goal.
    int best_tail = -1;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < result.tree_a.size(); ++j) {
        const double d = distance(result.tree_a.nodes[j], goal);
        if (d >= cfg.step_size) continue;
        const double total = cost[j] + d;
        if (total < best_total && ws.segment_free(result.tree_a.nodes[j], goal)) {
            best_tail = static_cast<int>(j);
            best_total = total;
        }
    }
    if (best_tail >= 0) {
        Polyline path = result.tree_a.backtrack(best_tail);
        std::reverse(path.begin(), path.end());
        if (!(path.back() == goal)) path.push_back(goal);
        result.path = std::move(path);
    }
    result.nodes_total = static_cast<int>(result.tree_a.size());
    result.wall_time_ms = elapsed_ms(t0);
    return result;
}

}  // namespace btorrt
