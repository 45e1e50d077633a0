#include "btorrt/map_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace btorrt {

namespace {

// splitmix64; used to derive independent sub-streams from one seed.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void fill_disc(GridMap& map, double cx, double cy, double r) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(map.width() - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(map.height() - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = (x + 0.5) - cx, dy = (y + 0.5) - cy;
            if (dx * dx + dy * dy <= r * r) map.set_occupied(x, y);
        }
    }
}

void carve_disc(GridMap& map, double cx, double cy, double r) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(map.width() - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(map.height() - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = (x + 0.5) - cx, dy = (y + 0.5) - cy;
            if (dx * dx + dy * dy <= r * r) map.set_occupied(x, y, false);
        }
    }
}

void fill_rect(GridMap& map, int x0, int y0, int x1, int y1) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, map.width() - 1);
    y1 = std::min(y1, map.height() - 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) map.set_occupied(x, y);
}

double frac(const GridMap& map) { return map.obstacle_fraction(); }

// Carves a winding tube of the given radius through all points of the
// polyline, stamping discs at sub-radius spacing.
void carve_tube(GridMap& map, const std::vector<std::pair<double, double>>& pts,
                double radius) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dx = pts[i + 1].first - pts[i].first;
        const double dy = pts[i + 1].second - pts[i].second;
        const double len = std::hypot(dx, dy);
        const int steps = std::max(1, static_cast<int>(std::ceil(len / (radius * 0.5))));
        for (int s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) / steps;
            carve_disc(map, pts[i].first + t * dx, pts[i].second + t * dy, radius);
        }
    }
}

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

GridMap gen_disc_scatter(Rng& rng, const MapGenParams& p, double r_lo, double r_hi,
                         double target_lo, double target_hi, const Point& start,
                         const Point& goal, double keep_out) {
    GridMap map(p.size, p.size, p.resolution);
    const double target = 0.5 * (target_lo + target_hi);
    for (int guard = 0; guard < 4000 && frac(map) < target; ++guard) {
        const double r = uniform(rng, r_lo, r_hi);
        const double cx = uniform(rng, 0.0, p.size);
        const double cy = uniform(rng, 0.0, p.size);
        const double sx = start.x / p.resolution, sy = start.y / p.resolution;
        const double gx = goal.x / p.resolution, gy = goal.y / p.resolution;
        if (std::hypot(cx - sx, cy - sy) < r + keep_out) continue;
        if (std::hypot(cx - gx, cy - gy) < r + keep_out) continue;
        fill_disc(map, cx, cy, r);
    }
    return map;
}

GridMap gen_square_scatter(Rng& rng, const MapGenParams& p, const Point& start,
                           const Point& goal) {
    GridMap map(p.size, p.size, p.resolution);
    const double scale = p.size / 500.0;
    while (frac(map) < 0.245) {
        const int side = uniform_int(rng, static_cast<int>(20 * scale),
                                     static_cast<int>(50 * scale));
        const int x = uniform_int(rng, 0, p.size - 1 - side);
        const int y = uniform_int(rng, 0, p.size - 1 - side);
        const double sx = start.x / p.resolution, sy = start.y / p.resolution;
        const double gx = goal.x / p.resolution, gy = goal.y / p.resolution;
        const double m = 15 * scale;
        auto hits = [&](double px, double py) {
            return px >= x - m && px <= x + side + m && py >= y - m && py <= y + side + m;
        };
        if (hits(sx, sy) || hits(gx, gy)) continue;
        fill_rect(map, x, y, x + side, y + side);
    }
    return map;
}

GridMap gen_regular_maze(Rng& rng, const MapGenParams& p) {
    // Perfect maze on a coarse lattice: recursive backtracker carves
    // passages, remaining lattice edges become walls of thickness 6.
    GridMap map(p.size, p.size, p.resolution);
    const double scale = p.size / 500.0;
    const int cell = static_cast<int>(60 * scale);
    const int border = static_cast<int>(4 * scale);
    const int cols = (p.size - 2 * border) / cell;
    const int rows = cols;
    const int half_wall = std::max(1, static_cast<int>(3 * scale));
    const int x_end = border + cols * cell;
    const int y_end = border + rows * cell;

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(cols * rows), 0);
    // open_right[c] / open_down[c]: passage carved through that cell wall
    std::vector<std::uint8_t> open_right(static_cast<std::size_t>(cols * rows), 0);
    std::vector<std::uint8_t> open_down(static_cast<std::size_t>(cols * rows), 0);
    auto id = [&](int cx, int cy) { return static_cast<std::size_t>(cy * cols + cx); };
    std::vector<std::pair<int, int>> stack{{uniform_int(rng, 0, cols - 1),
                                            uniform_int(rng, 0, rows - 1)}};
    visited[id(stack[0].first, stack[0].second)] = 1;
    while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        int dirs[4] = {0, 1, 2, 3};
        std::shuffle(std::begin(dirs), std::end(dirs), rng);
        bool moved = false;
        for (int d : dirs) {
            const int nx = cx + (d == 0) - (d == 1);
            const int ny = cy + (d == 2) - (d == 3);
            if (nx < 0 || ny < 0 || nx >= cols || ny >= rows || visited[id(nx, ny)])
                continue;
            if (d == 0) open_right[id(cx, cy)] = 1;
            if (d == 1) open_right[id(nx, ny)] = 1;
            if (d == 2) open_down[id(cx, cy)] = 1;
            if (d == 3) open_down[id(nx, ny)] = 1;
            visited[id(nx, ny)] = 1;
            stack.emplace_back(nx, ny);
            moved = true;
            break;
        }
        if (!moved) stack.pop_back();
    }

    // Outer border of the maze block.
    fill_rect(map, border - half_wall, border - half_wall, x_end + half_wall,
              border + half_wall);
    fill_rect(map, border - half_wall, y_end - half_wall, x_end + half_wall,
              y_end + half_wall);
    fill_rect(map, border - half_wall, border - half_wall, border + half_wall,
              y_end + half_wall);
    fill_rect(map, x_end - half_wall, border - half_wall, x_end + half_wall,
              y_end + half_wall);
    // Internal walls where no passage was carved.
    for (int cy = 0; cy < rows; ++cy) {
        for (int cx = 0; cx < cols; ++cx) {
            const int x0 = border + cx * cell;
            const int y0 = border + cy * cell;
            if (cx + 1 < cols && !open_right[id(cx, cy)])
                fill_rect(map, x0 + cell - half_wall, y0 - half_wall,
                          x0 + cell + half_wall, y0 + cell + half_wall);
            if (cy + 1 < rows && !open_down[id(cx, cy)])
                fill_rect(map, x0 - half_wall, y0 + cell - half_wall,
                          x0 + cell + half_wall, y0 + cell + half_wall);
        }
    }
    return map;
}

GridMap gen_irregular_maze(Rng& rng, const MapGenParams& p, const Point& start,
                           const Point& goal) {
    // Cellular-automaton cave, then clearings carved at the endpoints.
    GridMap map(p.size, p.size, p.resolution);
    const int n = p.size;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n, 0);
    std::bernoulli_distribution walls(0.43);
    for (auto& c : cells) c = walls(rng) ? 1 : 0;
    std::vector<std::uint8_t> next(cells.size());
    for (int iter = 0; iter < 4; ++iter) {
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                int neighbors = 0;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= n || ny >= n)
                            ++neighbors;  // border counts as wall
                        else
                            neighbors += cells[static_cast<std::size_t>(ny) * n + nx];
                    }
                }
                const bool wall = cells[static_cast<std::size_t>(y) * n + x] != 0;
                next[static_cast<std::size_t>(y) * n + x] =
                    (neighbors >= 5 || (wall && neighbors == 4)) ? 1 : 0;
            }
        }
        std::swap(cells, next);
    }
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if (cells[static_cast<std::size_t>(y) * n + x]) map.set_occupied(x, y);
    const double scale = p.size / 500.0;
    carve_disc(map, start.x / p.resolution, start.y / p.resolution, 14 * scale);
    carve_disc(map, goal.x / p.resolution, goal.y / p.resolution, 14 * scale);
    return map;
}

GridMap gen_tunnels(Rng& rng, const MapGenParams& p, bool multi) {
    GridMap map(p.size, p.size, p.resolution);
    const double s = p.size / 500.0;
    if (!multi) {
        // One solid band crossed by a winding tunnel.
        const int band_lo = static_cast<int>(150 * s);
        const int band_hi = static_cast<int>(355 * s);
        fill_rect(map, 0, band_lo, p.size - 1, band_hi);
        const double x_entry = uniform(rng, 90 * s, 410 * s);
        const double x_mid = uniform(rng, 90 * s, 410 * s);
        const double x_exit = uniform(rng, 90 * s, 410 * s);
        carve_tube(map,
                   {{x_entry, band_lo - 10 * s},
                    {x_entry, (band_lo + band_hi) / 2.0 - 40 * s},
                    {x_mid, (band_lo + band_hi) / 2.0},
                    {x_exit, (band_lo + band_hi) / 2.0 + 40 * s},
                    {x_exit, band_hi + 10 * s}},
                   15 * s);
    } else {
        // Two bands, tunnels horizontally offset so paths must jog.
        const int bands[2][2] = {{static_cast<int>(110 * s), static_cast<int>(210 * s)},
                                 {static_cast<int>(255 * s), static_cast<int>(355 * s)}};
        double prev_x = uniform(rng, 80 * s, 420 * s);
        for (int b = 0; b < 2; ++b) {
            fill_rect(map, 0, bands[b][0], p.size - 1, bands[b][1]);
            double x = prev_x;
            const int tunnels = 2 + (b == 0 ? 0 : 1);
            for (int t = 0; t < tunnels; ++t) {
                if (t > 0 || b > 0) {
                    // Keep successive tunnels far apart.
                    const double shift = uniform(rng, 140 * s, 260 * s);
                    x = std::fmod(x + shift, 340 * s) + 80 * s;
                }
                const double wiggle = uniform(rng, -25 * s, 25 * s);
                carve_tube(map,
                           {{x, bands[b][0] - 8 * s},
                            {x + wiggle, (bands[b][0] + bands[b][1]) / 2.0},
                            {x, bands[b][1] + 8 * s}},
                           13 * s);
                if (t == 0) prev_x = x;
            }
        }
    }
    return map;
}

}  // namespace

Archetype parse_archetype(const std::string& name) {
    if (name == "circular") return Archetype::circular;
    if (name == "irregular_maze") return Archetype::irregular_maze;
    if (name == "regular_maze") return Archetype::regular_maze;
    if (name == "single_tunnel") return Archetype::single_tunnel;
    if (name == "multi_tunnel") return Archetype::multi_tunnel;
    if (name == "circular_scatter") return Archetype::circular_scatter;
    if (name == "square_scatter") return Archetype::square_scatter;
    throw std::invalid_argument("unknown archetype: " + name);
}

std::string archetype_name(Archetype a) {
    switch (a) {
        case Archetype::circular: return "circular";
        case Archetype::irregular_maze: return "irregular_maze";
        case Archetype::regular_maze: return "regular_maze";
        case Archetype::single_tunnel: return "single_tunnel";
        case Archetype::multi_tunnel: return "multi_tunnel";
        case Archetype::circular_scatter: return "circular_scatter";
        case Archetype::square_scatter: return "square_scatter";
    }
    throw std::invalid_argument("unknown archetype");
}

bool is_archetype_name(const std::string& name) {
    try {
        parse_archetype(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::pair<double, double> archetype_fraction_band(Archetype a) {
    switch (a) {
        case Archetype::circular: return {0.24, 0.28};
        case Archetype::irregular_maze: return {0.35, 0.45};
        case Archetype::regular_maze: return {0.09, 0.17};
        case Archetype::single_tunnel: return {0.37, 0.43};
        case Archetype::multi_tunnel: return {0.34, 0.42};
        case Archetype::circular_scatter: return {0.05, 0.09};
        case Archetype::square_scatter: return {0.22, 0.28};
    }
    throw std::invalid_argument("unknown archetype");
}

std::pair<Point, Point> default_endpoints(Archetype a, const GridMap& map) {
    const double s = map.width() * map.resolution() / 500.0;
    auto pt = [&](double x, double y) { return Point::of2(x * s, y * s); };
    switch (a) {
        case Archetype::circular: return {pt(10, 10), pt(490, 490)};
        case Archetype::irregular_maze: return {pt(350, 330), pt(470, 470)};
        case Archetype::regular_maze: return {pt(50, 170), pt(430, 340)};
        case Archetype::single_tunnel: return {pt(245, 10), pt(245, 490)};
        case Archetype::multi_tunnel: return {pt(245, 10), pt(245, 400)};
        case Archetype::circular_scatter: return {pt(10, 490), pt(490, 10)};
        case Archetype::square_scatter: return {pt(10, 490), pt(490, 10)};
    }
    throw std::invalid_argument("unknown archetype");
}

GridMap generate_map(Archetype archetype, std::uint64_t seed, const MapGenParams& params) {
    if (params.size < 50) throw std::invalid_argument("map size must be >= 50");
    if (params.resolution <= 0.0) throw std::invalid_argument("resolution must be positive");
    const auto [band_lo, band_hi] = archetype_fraction_band(archetype);
    // Deterministic retry chain: regenerate with a derived sub-seed until the
    // fraction band, free endpoints, and endpoint connectivity all hold.
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng(mix64(seed * 1024 + attempt * 2 + 1));
        GridMap map(2, 2);
        Point start = Point::of2(0, 0), goal = start;
        {
            GridMap candidate = [&]() {
                switch (archetype) {
                    case Archetype::circular: {
                        GridMap probe(params.size, params.size, params.resolution);
                        auto [s0, g0] = default_endpoints(archetype, probe);
                        return gen_disc_scatter(rng, params, 18 * params.size / 500.0,
                                                45 * params.size / 500.0, band_lo, band_hi,
                                                s0, g0, 20 * params.size / 500.0);
                    }
                    case Archetype::circular_scatter: {
                        GridMap probe(params.size, params.size, params.resolution);
                        auto [s0, g0] = default_endpoints(archetype, probe);
                        return gen_disc_scatter(rng, params, 6 * params.size / 500.0,
                                                14 * params.size / 500.0, band_lo, band_hi,
                                                s0, g0, 16 * params.size / 500.0);
                    }
                    case Archetype::square_scatter: {
                        GridMap probe(params.size, params.size, params.resolution);
                        auto [s0, g0] = default_endpoints(archetype, probe);
                        return gen_square_scatter(rng, params, s0, g0);
                    }
                    case Archetype::regular_maze: return gen_regular_maze(rng, params);
                    case Archetype::irregular_maze: {
                        GridMap probe(params.size, params.size, params.resolution);
                        auto [s0, g0] = default_endpoints(archetype, probe);
                        return gen_irregular_maze(rng, params, s0, g0);
                    }
                    case Archetype::single_tunnel: return gen_tunnels(rng, params, false);
                    case Archetype::multi_tunnel: return gen_tunnels(rng, params, true);
                }
                throw std::invalid_argument("unknown archetype");
            }();
            map = std::move(candidate);
            auto endpoints = default_endpoints(archetype, map);
            start = endpoints.first;
            goal = endpoints.second;
        }
        const double f = map.obstacle_fraction();
        if (f < band_lo || f > band_hi) continue;
        if (!map.point_free(start) || !map.point_free(goal)) continue;
        if (!map.cells_connected(start, goal)) continue;
        return map;
    }
    throw std::runtime_error("map generation failed for archetype " +
                             archetype_name(archetype));
}

}  // namespace btorrt
