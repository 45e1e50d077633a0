#ifndef BTORRT_BENCH_HPP
#define BTORRT_BENCH_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "btorrt/optimize.hpp"
#include "btorrt/planner.hpp"

namespace btorrt {

enum class Algo { rrt, brrt, rrt_star, bto_rrt };

Algo parse_algo(const std::string& name);
std::string algo_name(Algo a);

/// Full pipeline settings for one trial. For bto_rrt the planner result is
/// post-processed by downsample, upsample, and kp_smooth; the baselines
/// report the raw path only.
struct PipelineConfig {
    PlanConfig plan;
    int upsample_iterations = 1000;
    double sample_spacing = 0.0;  // 0 = plan.step_size / 2
    int smooth_max_rounds = 50;
};

struct TrialRecord {
    Algo algorithm = Algo::rrt;
    std::string map_id;
    std::uint64_t seed = 0;
    bool success = false;
    std::optional<double> raw_cost;
    std::optional<double> downsample_cost;
    std::optional<double> upsample_cost;
    std::optional<double> smooth_length;
    int nodes_total = 0;
    double wall_time_ms = 0.0;
    int iterations_used = 0;
};

/// A benchmark environment plus its query endpoints.
struct BenchMap {
    std::string id;
    std::shared_ptr<const Workspace> ws;
    Point start;
    Point goal;
};

/// Deterministic per-trial seed: a hash of (base_seed, map_id, algorithm,
/// trial index). Stable across platforms.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, const std::string& map_id,
                                Algo algo, int trial);

/// One planning + optimization run. Wall time covers planning and
/// optimization, not I/O.
TrialRecord run_trial(const BenchMap& map, Algo algo, const PipelineConfig& cfg,
                      std::uint64_t trial_seed);

/// Runs trials for every (map, algorithm) pair. Trials execute in parallel
/// under OpenMP (jobs = 0 uses the OpenMP default, jobs = 1 is serial);
/// records come back in canonical (map, algorithm, trial) order regardless
/// of scheduling.
std::vector<TrialRecord> run_benchmark(const std::vector<BenchMap>& maps,
                                       const std::vector<Algo>& algorithms, int trials,
                                       const PipelineConfig& cfg,
                                       std::uint64_t base_seed, int jobs = 0);

/// Aggregate statistics of one numeric record field within a group.
struct FieldStats {
    std::size_t count = 0;
    double median = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
};

struct GroupSummary {
    Algo algorithm = Algo::rrt;
    std::string map_id;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    FieldStats raw_cost, downsample_cost, upsample_cost, smooth_length;
    FieldStats nodes_total, wall_time_ms, iterations_used;
};

/// Per-(algorithm, map) aggregates; a pure function of the record stream.
/// Cost statistics cover successful trials only.
struct BenchSummary {
    std::vector<GroupSummary> groups;  // sorted by (map_id, algorithm)
};

BenchSummary summarize(const std::vector<TrialRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(const std::string& path);

std::string summary_json(const BenchSummary& summary);

}  // namespace btorrt

#endif  // BTORRT_BENCH_HPP
