#ifndef BTORRT_GRID_MAP_HPP
#define BTORRT_GRID_MAP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "btorrt/workspace.hpp"

namespace btorrt {

/// 2D occupancy grid. Cells are half-open squares of side `resolution`;
/// a point belongs to the cell containing it under floor(), and anything
/// outside the grid counts as an obstacle.
class GridMap final : public Workspace {
  public:
    GridMap(int width, int height, double resolution = 1.0);

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }

    bool in_bounds_cell(int cx, int cy) const {
        return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
    }

    /// Out-of-bounds cells read as occupied.
    bool occupied(int cx, int cy) const {
        if (!in_bounds_cell(cx, cy)) return true;
        return occ_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(cx)] != 0;
    }

    void set_occupied(int cx, int cy, bool value = true);

    /// Occupied cells / total cells.
    double obstacle_fraction() const;
    std::size_t occupied_count() const { return occupied_count_; }

    // Workspace interface
    int dim() const override { return 2; }
    Aabb bounds() const override;
    bool point_free(const Point& p) const override;
    bool segment_free(const Point& a, const Point& b) const override;

    /// 4-connected reachability between the cells containing a and b.
    bool cells_connected(const Point& a, const Point& b) const;

  private:
    int width_ = 0;
    int height_ = 0;
    double resolution_ = 1.0;
    std::vector<std::uint8_t> occ_;
    std::size_t occupied_count_ = 0;
};

/// Loads PGM (P2/P5), 8-bit grayscale PNG, or an ASCII 0/1 grid, picked by
/// file extension (.pgm/.png/anything else). Pixels with intensity below
/// `occ_threshold` become obstacles; ASCII '1' cells are obstacles.
GridMap load_grid(const std::string& path, int occ_threshold = 128);

/// Parses an ASCII grid of 0/1 rows. Errors name the offending line.
GridMap parse_ascii_grid(const std::string& text, double resolution = 1.0);

/// Writes a binary PGM (P5): free = 255, obstacle = 0. Byte-deterministic.
void save_pgm(const GridMap& map, const std::string& path);

/// Writes the ASCII 0/1 form accepted by parse_ascii_grid.
void save_ascii_grid(const GridMap& map, const std::string& path);

}  // namespace btorrt

#endif  // BTORRT_GRID_MAP_HPP
