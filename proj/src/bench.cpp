#include "btorrt/bench.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace btorrt {

Algo parse_algo(const std::string& name) {
    if (name == "rrt") return Algo::rrt;
    if (name == "brrt") return Algo::brrt;
    if (name == "rrt_star") return Algo::rrt_star;
    if (name == "bto_rrt") return Algo::bto_rrt;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::rrt: return "rrt";
        case Algo::brrt: return "brrt";
        case Algo::rrt_star: return "rrt_star";
        case Algo::bto_rrt: return "bto_rrt";
    }
    throw std::invalid_argument("unknown algorithm");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t base_seed, const std::string& map_id,
                                Algo algo, int trial) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, &base_seed, sizeof(base_seed));
    h = fnv1a(h, map_id.data(), map_id.size());
    const std::string algo_str = algo_name(algo);
    h = fnv1a(h, algo_str.data(), algo_str.size());
    h = fnv1a(h, &trial, sizeof(trial));
    return splitmix64(h);
}

TrialRecord run_trial(const BenchMap& map, Algo algo, const PipelineConfig& cfg,
                      std::uint64_t trial_seed) {
    TrialRecord record;
    record.algorithm = algo;
    record.map_id = map.id;
    record.seed = trial_seed;

    PlanConfig plan_cfg = cfg.plan;
    plan_cfg.rng_seed = trial_seed;

    const auto t0 = std::chrono::steady_clock::now();
    PlanResult result;
    switch (algo) {
        case Algo::rrt: result = plan_rrt(*map.ws, map.start, map.goal, plan_cfg); break;
        case Algo::brrt: result = plan_brrt(*map.ws, map.start, map.goal, plan_cfg); break;
        case Algo::rrt_star:
            result = plan_rrt_star(*map.ws, map.start, map.goal, plan_cfg);
            break;
        case Algo::bto_rrt:
            result = plan_bto_rrt(*map.ws, map.start, map.goal, plan_cfg);
            break;
    }
    record.iterations_used = result.iterations_used;
    record.nodes_total = result.nodes_total;
    if (result.path) {
        record.success = true;
        record.raw_cost = path_cost(*result.path);
        if (algo == Algo::bto_rrt) {
            const Polyline ds = downsample(*result.path, *map.ws);
            record.downsample_cost = path_cost(ds);
            Rng up_rng(splitmix64(trial_seed ^ 0x75700001ULL));
            const Polyline us =
                upsample(ds, *map.ws, cfg.upsample_iterations, up_rng);
            record.upsample_cost = path_cost(us);
            const double spacing =
                cfg.sample_spacing > 0.0 ? cfg.sample_spacing : plan_cfg.step_size / 2.0;
            const SmoothResult smooth = kp_smooth(dedupe_consecutive(us), *map.ws,
                                                  spacing, cfg.smooth_max_rounds);
            record.smooth_length = path_cost(smooth.trajectory);
        }
    }
    record.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return record;
}

std::vector<TrialRecord> run_benchmark(const std::vector<BenchMap>& maps,
                                       const std::vector<Algo>& algorithms, int trials,
                                       const PipelineConfig& cfg,
                                       std::uint64_t base_seed, int jobs) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    struct Job {
        std::size_t map_index;
        Algo algo;
        int trial;
    };
    std::vector<Job> jobs_list;
    for (std::size_t m = 0; m < maps.size(); ++m)
        for (Algo a : algorithms)
            for (int t = 0; t < trials; ++t) jobs_list.push_back({m, a, t});

    std::vector<TrialRecord> records(jobs_list.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    // Each trial owns its RNG stream, so scheduling order cannot change the
    // records; slot-indexed writes keep the output order canonical.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(jobs_list.size()); ++k) {
        const Job& job = jobs_list[static_cast<std::size_t>(k)];
        const BenchMap& map = maps[job.map_index];
        const std::uint64_t seed = derive_trial_seed(base_seed, map.id, job.algo, job.trial);
        records[static_cast<std::size_t>(k)] = run_trial(map, job.algo, cfg, seed);
    }
    return records;
}

namespace {

FieldStats stats_of(std::vector<double> values) {
    FieldStats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(var / static_cast<double>(n));
    return s;
}

}  // namespace

BenchSummary summarize(const std::vector<TrialRecord>& records) {
    struct Key {
        std::string map_id;
        Algo algo;
        bool operator<(const Key& o) const {
            if (map_id != o.map_id) return map_id < o.map_id;
            return static_cast<int>(algo) < static_cast<int>(o.algo);
        }
    };
    std::vector<Key> keys;
    for (const TrialRecord& r : records) {
        const Key k{r.map_id, r.algorithm};
        if (std::find_if(keys.begin(), keys.end(), [&](const Key& x) {
                return !(x < k) && !(k < x);
            }) == keys.end())
            keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());

    BenchSummary summary;
    for (const Key& key : keys) {
        GroupSummary g;
        g.algorithm = key.algo;
        g.map_id = key.map_id;
        std::vector<double> raw, ds, us, sm, nodes, wall, iters;
        for (const TrialRecord& r : records) {
            if (r.map_id != key.map_id || r.algorithm != key.algo) continue;
            ++g.trials;
            if (r.success) ++g.successes;
            if (r.raw_cost) raw.push_back(*r.raw_cost);
            if (r.downsample_cost) ds.push_back(*r.downsample_cost);
            if (r.upsample_cost) us.push_back(*r.upsample_cost);
            if (r.smooth_length) sm.push_back(*r.smooth_length);
            nodes.push_back(r.nodes_total);
            wall.push_back(r.wall_time_ms);
            iters.push_back(r.iterations_used);
        }
        g.success_rate = static_cast<double>(g.successes) / static_cast<double>(g.trials);
        g.raw_cost = stats_of(std::move(raw));
        g.downsample_cost = stats_of(std::move(ds));
        g.upsample_cost = stats_of(std::move(us));
        g.smooth_length = stats_of(std::move(sm));
        g.nodes_total = stats_of(std::move(nodes));
        g.wall_time_ms = stats_of(std::move(wall));
        g.iterations_used = stats_of(std::move(iters));
        summary.groups.push_back(std::move(g));
    }
    return summary;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? fmt::format("{}", *v) : std::string();
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "algorithm,map_id,seed,success,raw_cost,downsample_cost,upsample_cost,"
           "smooth_length,nodes_total,wall_time_ms,iterations_used\n";
    for (const TrialRecord& r : records) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", algo_name(r.algorithm),
                           r.map_id, r.seed, r.success ? 1 : 0, opt_field(r.raw_cost),
                           opt_field(r.downsample_cost), opt_field(r.upsample_cost),
                           opt_field(r.smooth_length), r.nodes_total,
                           fmt::format("{}", r.wall_time_ms), r.iterations_used);
    }
}

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_records_csv(out, records);
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::vector<TrialRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    std::vector<TrialRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        // A trailing empty field drops at the line end; restore it.
        while (cells.size() < 11) cells.emplace_back();
        if (cells.size() != 11)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected 11 columns");
        TrialRecord r;
        r.algorithm = parse_algo(cells[0]);
        r.map_id = cells[1];
        r.seed = std::stoull(cells[2]);
        r.success = cells[3] == "1";
        auto opt = [](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::stod(s);
        };
        r.raw_cost = opt(cells[4]);
        r.downsample_cost = opt(cells[5]);
        r.upsample_cost = opt(cells[6]);
        r.smooth_length = opt(cells[7]);
        r.nodes_total = std::stoi(cells[8]);
        r.wall_time_ms = std::stod(cells[9]);
        r.iterations_used = std::stoi(cells[10]);
        records.push_back(std::move(r));
    }
    return records;
}

std::string summary_json(const BenchSummary& summary) {
    nlohmann::json root;
    root["groups"] = nlohmann::json::array();
    for (const GroupSummary& g : summary.groups) {
        nlohmann::json jg;
        jg["algorithm"] = algo_name(g.algorithm);
        jg["map_id"] = g.map_id;
        jg["trials"] = g.trials;
        jg["successes"] = g.successes;
        jg["success_rate"] = g.success_rate;
        auto put = [&](const char* name, const FieldStats& s) {
            if (s.count == 0) return;
            jg[name] = {{"count", s.count},
                        {"median", s.median},
                        {"mean", s.mean},
                        {"std", s.std_dev}};
        };
        put("raw_cost", g.raw_cost);
        put("downsample_cost", g.downsample_cost);
        put("upsample_cost", g.upsample_cost);
        put("smooth_length", g.smooth_length);
        put("nodes_total", g.nodes_total);
        put("wall_time_ms", g.wall_time_ms);
        put("iterations_used", g.iterations_used);
        root["groups"].push_back(std::move(jg));
    }
    return root.dump(2) + "\n";
}

}  // namespace btorrt
