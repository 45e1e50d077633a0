#include "btorrt/grid_map.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace btorrt {

GridMap::GridMap(int width, int height, double resolution)
    : width_(width), height_(height), resolution_(resolution) {
    if (width < 2 || height < 2) throw std::invalid_argument("zero-size map");
    if (resolution <= 0.0) throw std::invalid_argument("resolution must be positive");
    occ_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

void GridMap::set_occupied(int cx, int cy, bool value) {
    if (!in_bounds_cell(cx, cy)) return;
    std::uint8_t& cell = occ_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(width_) +
                              static_cast<std::size_t>(cx)];
    if (cell != static_cast<std::uint8_t>(value)) {
        occupied_count_ += value ? 1 : -1;
        cell = static_cast<std::uint8_t>(value);
    }
}

double GridMap::obstacle_fraction() const {
    return static_cast<double>(occupied_count_) / static_cast<double>(occ_.size());
}

Aabb GridMap::bounds() const {
    Aabb box;
    box.lo = Point::of2(0.0, 0.0);
    box.hi = Point::of2(width_ * resolution_, height_ * resolution_);
    return box;
}

bool GridMap::point_free(const Point& p) const {
    if (p.dim != 2) return false;
    const int cx = static_cast<int>(std::floor(p.x / resolution_));
    const int cy = static_cast<int>(std::floor(p.y / resolution_));
    return in_bounds_cell(cx, cy) && !occupied(cx, cy);
}

// Supercover traversal: visits every cell the segment touches, stepping
// into both side cells when the segment crosses a cell corner so diagonal
// gaps cannot be slipped through.
bool GridMap::segment_free(const Point& a, const Point& b) const {
    if (!point_free(a) || !point_free(b)) return false;

    const double x0 = a.x / resolution_, y0 = a.y / resolution_;
    const double x1 = b.x / resolution_, y1 = b.y / resolution_;
    int cx = static_cast<int>(std::floor(x0));
    int cy = static_cast<int>(std::floor(y0));
    const int ex = static_cast<int>(std::floor(x1));
    const int ey = static_cast<int>(std::floor(y1));
    const double dx = x1 - x0, dy = y1 - y0;
    const int sx = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const int sy = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);

    const double inf = std::numeric_limits<double>::infinity();
    // Segment parameter at which the ray leaves the current cell per axis.
    double t_max_x = inf, t_delta_x = inf;
    double t_max_y = inf, t_delta_y = inf;
    if (sx != 0) {
        const double next_x = sx > 0 ? std::floor(x0) + 1.0 : std::floor(x0);
        t_max_x = (next_x - x0) / dx;
        t_delta_x = 1.0 / std::abs(dx);
    }
    if (sy != 0) {
        const double next_y = sy > 0 ? std::floor(y0) + 1.0 : std::floor(y0);
        t_max_y = (next_y - y0) / dy;
        t_delta_y = 1.0 / std::abs(dy);
    }

    // occupied() treats out-of-bounds as blocked already.
    long guard = static_cast<long>(std::abs(ex - cx)) +
                 static_cast<long>(std::abs(ey - cy)) + 4;
    while ((cx != ex || cy != ey) && guard-- > 0) {
        const double tie_eps = 1e-12 * std::max(1.0, std::min(t_max_x, t_max_y));
        if (sx != 0 && sy != 0 && std::abs(t_max_x - t_max_y) <= tie_eps) {
            // Corner crossing: both orthogonal neighbors are touched.
            if (occupied(cx + sx, cy) || occupied(cx, cy + sy)) return false;
            cx += sx;
            cy += sy;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if (t_max_x < t_max_y) {
            cx += sx;
            t_max_x += t_delta_x;
        } else {
            cy += sy;
            t_max_y += t_delta_y;
        }
        if (occupied(cx, cy)) return false;
    }
    return guard > 0;
}

bool GridMap::cells_connected(const Point& a, const Point& b) const {
    if (!point_free(a) || !point_free(b)) return false;
    const int sx = static_cast<int>(std::floor(a.x / resolution_));
    const int sy = static_cast<int>(std::floor(a.y / resolution_));
    const int gx = static_cast<int>(std::floor(b.x / resolution_));
    const int gy = static_cast<int>(std::floor(b.y / resolution_));
    std::vector<std::uint8_t> seen(occ_.size(), 0);
    std::deque<std::pair<int, int>> queue;
    queue.emplace_back(sx, sy);
    seen[static_cast<std::size_t>(sy) * static_cast<std::size_t>(width_) +
         static_cast<std::size_t>(sx)] = 1;
    const int off[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop_front();
        if (cx == gx && cy == gy) return true;
        for (const auto& d : off) {
            const int nx = cx + d[0], ny = cy + d[1];
            if (!in_bounds_cell(nx, ny) || occupied(nx, ny)) continue;
            std::uint8_t& mark = seen[static_cast<std::size_t>(ny) *
                                          static_cast<std::size_t>(width_) +
                                      static_cast<std::size_t>(nx)];
            if (!mark) {
                mark = 1;
                queue.emplace_back(nx, ny);
            }
        }
    }
    return false;
}

namespace {

std::string lower_ext(const std::string& path) {
    const auto pos = path.rfind('.');
    if (pos == std::string::npos) return "";
    std::string ext = path.substr(pos + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

int next_pnm_token(std::istream& in) {
    // Skips whitespace and '#' comment lines between header tokens.
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            in.unget();
            int value;
            if (!(in >> value)) break;
            return value;
        }
    }
    throw std::runtime_error("truncated PGM header");
}

GridMap load_pgm(const std::string& path, int occ_threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
        throw std::runtime_error(path + ": not a PGM file");
    const bool binary = magic[1] == '5';
    const int width = next_pnm_token(in);
    const int height = next_pnm_token(in);
    const int maxval = next_pnm_token(in);
    if (maxval <= 0 || maxval > 255)
        throw std::runtime_error(path + ": only 8-bit PGM supported");
    GridMap map(width, height);
    if (binary) in.get();  // single whitespace byte after maxval
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int value;
            if (binary) {
                const int c = in.get();
                if (c == EOF) throw std::runtime_error(path + ": truncated pixel data");
                value = c;
            } else {
                if (!(in >> value)) throw std::runtime_error(path + ": truncated pixel data");
            }
            if (value < occ_threshold) map.set_occupied(x, y);
        }
    }
    return map;
}

GridMap load_png(const std::string& path, int occ_threshold) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw std::runtime_error("cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error(path + ": PNG decode error");
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    // Normalize anything to 8-bit grayscale.
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    if (png_get_color_type(png, info) & PNG_COLOR_MASK_PALETTE) png_set_palette_to_rgb(png);
    if (png_get_color_type(png, info) & PNG_COLOR_MASK_COLOR)
        png_set_rgb_to_gray(png, 1, -1.0, -1.0);
    if (png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    std::vector<png_byte> row(png_get_rowbytes(png, info));
    GridMap map(width, height);
    for (int y = 0; y < height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (int x = 0; x < width; ++x) {
            if (row[static_cast<std::size_t>(x)] < occ_threshold) map.set_occupied(x, y);
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return map;
}

}  // namespace

GridMap parse_ascii_grid(const std::string& text, double resolution) {
    std::vector<std::vector<bool>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<bool> row;
        for (char c : line) {
            if (c == '0')
                row.push_back(false);
            else if (c == '1')
                row.push_back(true);
            else if (c == ' ' || c == '\t' || c == '\r')
                continue;
            else
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": invalid cell character");
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": ragged row width");
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2 || rows.front().size() < 2)
        throw std::runtime_error("zero-size map");
    GridMap map(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()),
                resolution);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)])
                map.set_occupied(x, y);
        }
    }
    return map;
}

GridMap load_grid(const std::string& path, int occ_threshold) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm") return load_pgm(path, occ_threshold);
    if (ext == "png") return load_png(path, occ_threshold);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_ascii_grid(buffer.str());
}

void save_pgm(const GridMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P5\n" << map.width() << " " << map.height() << "\n255\n";
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            out.put(map.occupied(x, y) ? '\0' : static_cast<char>(255));
        }
    }
    if (!out) throw std::runtime_error("cannot write " + path);
}

void save_ascii_grid(const GridMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) out.put(map.occupied(x, y) ? '1' : '0');
        out.put('\n');
    }
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace btorrt
