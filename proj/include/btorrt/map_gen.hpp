#ifndef BTORRT_MAP_GEN_HPP
#define BTORRT_MAP_GEN_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "btorrt/grid_map.hpp"

namespace btorrt {

/// The seven benchmark map families. Each family targets a characteristic
/// obstacle fraction and comes with canonical start/goal endpoints.
enum class Archetype {
    circular,
    irregular_maze,
    regular_maze,
    single_tunnel,
    multi_tunnel,
    circular_scatter,
    square_scatter,
};

Archetype parse_archetype(const std::string& name);
std::string archetype_name(Archetype a);
bool is_archetype_name(const std::string& name);

struct MapGenParams {
    int size = 500;           // square side in cells
    double resolution = 1.0;  // map units per cell
};

/// Deterministic for a fixed (archetype, seed, params). The generated map
/// always has free, mutually reachable default endpoints and an obstacle
/// fraction inside the archetype's band (see archetype_fraction_band).
GridMap generate_map(Archetype archetype, std::uint64_t seed,
                     const MapGenParams& params = {});

/// Target obstacle-fraction band [lo, hi] enforced by generate_map.
std::pair<double, double> archetype_fraction_band(Archetype a);

/// Canonical start/goal for the archetype, scaled to the map size.
std::pair<Point, Point> default_endpoints(Archetype a, const GridMap& map);

}  // namespace btorrt

#endif  // BTORRT_MAP_GEN_HPP
