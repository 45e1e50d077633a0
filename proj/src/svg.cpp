#include "btorrt/svg.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>

#include "btorrt/grid_map.hpp"
#include "btorrt/point_cloud.hpp"

namespace btorrt {

namespace {

constexpr const char* kTreeAColor = "#9ec5e8";
constexpr const char* kTreeBColor = "#f0a8a8";

const char* stage_color(const std::string& name) {
    if (name == "raw") return "#ff8c00";
    if (name == "downsample") return "#1f6feb";
    if (name == "upsample") return "#2da44e";
    if (name == "smooth") return "#d62728";
    return "#6f42c1";
}

bool stage_dashed(const std::string& name) { return name == "smooth"; }

std::string fmt_num(double v) { return fmt::format("{:.2f}", v); }

// Maps world coordinates into one drawing panel.
struct View {
    int ax0, ax1;  // world axes drawn as panel x/y
    double scale;
    double off_x, off_y;  // panel origin in page space
    double world_x0, world_y0;

    double px(const Point& p) const { return off_x + (coord(p, ax0) - world_x0) * scale; }
    double py(const Point& p) const { return off_y + (coord(p, ax1) - world_y0) * scale; }
};

void emit_polyline(std::ostream& out, const View& v, const Polyline& path,
                   const std::string& id, const char* color, bool dashed,
                   double width) {
    out << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << fmt_num(width) << "\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out << " ";
        out << fmt_num(v.px(path[i])) << "," << fmt_num(v.py(path[i]));
    }
    out << "\"/>\n";
}

void emit_tree(std::ostream& out, const View& v, const Tree& tree,
               const std::string& id, const char* color) {
    if (tree.size() < 2) return;
    out << "<path id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"0.6\" d=\"";
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const int parent = tree.parent[i];
        if (parent < 0) continue;
        const Point& a = tree.nodes[static_cast<std::size_t>(parent)];
        const Point& b = tree.nodes[i];
        out << "M" << fmt_num(v.px(a)) << " " << fmt_num(v.py(a)) << "L" << fmt_num(v.px(b))
            << " " << fmt_num(v.py(b));
    }
    out << "\"/>\n";
}

void emit_grid_obstacles(std::ostream& out, const View& v, const GridMap& grid) {
    out << "<g id=\"obstacles\" fill=\"#30363d\">\n";
    // Merge horizontal runs of occupied cells into single rects.
    for (int y = 0; y < grid.height(); ++y) {
        int run_start = -1;
        for (int x = 0; x <= grid.width(); ++x) {
            const bool occ = x < grid.width() && grid.occupied(x, y);
            if (occ && run_start < 0) run_start = x;
            if (!occ && run_start >= 0) {
                const double res = grid.resolution();
                const Point lo = Point::of2(run_start * res, y * res);
                out << "<rect x=\"" << fmt_num(v.px(lo)) << "\" y=\"" << fmt_num(v.py(lo))
                    << "\" width=\"" << fmt_num((x - run_start) * res * v.scale)
                    << "\" height=\"" << fmt_num(res * v.scale) << "\"/>\n";
                run_start = -1;
            }
        }
    }
    out << "</g>\n";
}

void emit_cloud_points(std::ostream& out, const View& v,
                       const std::vector<Point>& cloud, const std::string& id) {
    const std::size_t max_points = 20000;
    const std::size_t stride = cloud.size() > max_points ? cloud.size() / max_points + 1 : 1;
    out << "<g id=\"" << id << "\" fill=\"#57606a\">\n";
    for (std::size_t i = 0; i < cloud.size(); i += stride) {
        out << "<circle cx=\"" << fmt_num(v.px(cloud[i])) << "\" cy=\""
            << fmt_num(v.py(cloud[i])) << "\" r=\"0.8\"/>\n";
    }
    out << "</g>\n";
}

void emit_legend(std::ostream& out, double x, double y, bool with_trees,
                 const std::vector<RenderStage>& stages) {
    out << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    double row = y;
    auto entry = [&](const char* color, const std::string& label, bool dashed) {
        out << "<line x1=\"" << fmt_num(x) << "\" y1=\"" << fmt_num(row - 4) << "\" x2=\""
            << fmt_num(x + 26) << "\" y2=\"" << fmt_num(row - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"";
        if (dashed) out << " stroke-dasharray=\"6 4\"";
        out << "/>\n<text x=\"" << fmt_num(x + 32) << "\" y=\"" << fmt_num(row) << "\">"
            << label << "</text>\n";
        row += 18;
    };
    if (with_trees) {
        entry(kTreeAColor, "tree from start", false);
        entry(kTreeBColor, "tree from goal", false);
    }
    for (const RenderStage& s : stages) entry(stage_color(s.name), s.name, stage_dashed(s.name));
    out << "</g>\n";
}

void render_view(std::ostream& out, const View& v, const Workspace& ws,
                 const PlanResult* result, const std::vector<RenderStage>& stages,
                 const std::string& suffix) {
    if (const auto* grid = dynamic_cast<const GridMap*>(&ws)) {
        emit_grid_obstacles(out, v, *grid);
    } else if (const auto* cloud = dynamic_cast<const CloudMap*>(&ws)) {
        emit_cloud_points(out, v, cloud->cloud(), "cloud" + suffix);
    }
    if (result) {
        emit_tree(out, v, result->tree_a, "tree-a" + suffix, kTreeAColor);
        emit_tree(out, v, result->tree_b, "tree-b" + suffix, kTreeBColor);
    }
    for (const RenderStage& s : stages) {
        emit_polyline(out, v, s.path, "stage-" + s.name + suffix, stage_color(s.name),
                      stage_dashed(s.name), 1.6);
    }
}

}  // namespace

void render_svg(std::ostream& out, const Workspace& ws, const PlanResult* result,
                const std::vector<RenderStage>& stages) {
    const Aabb box = ws.bounds();
    const double legend_w = 180.0;
    if (ws.dim() == 2) {
        const double w = box.hi.x - box.lo.x;
        const double h = box.hi.y - box.lo.y;
        const double scale = 520.0 / std::max(w, h);
        const double page_w = w * scale + legend_w + 20.0;
        const double page_h = h * scale + 20.0;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(page_w)
            << "\" height=\"" << fmt_num(page_h) << "\" viewBox=\"0 0 " << fmt_num(page_w)
            << " " << fmt_num(page_h) << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        const View v{0, 1, scale, 10.0, 10.0, box.lo.x, box.lo.y};
        render_view(out, v, ws, result, stages, "");
        emit_legend(out, w * scale + 24.0, 30.0, result != nullptr, stages);
        out << "</svg>\n";
    } else {
        // Three orthographic projections side by side.
        const int axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        const char* names[3] = {"xy", "xz", "yz"};
        const double panel = 360.0;
        const double gap = 24.0;
        const double page_w = 3 * panel + 4 * gap + legend_w;
        const double page_h = panel + 2 * gap + 24.0;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(page_w)
            << "\" height=\"" << fmt_num(page_h) << "\" viewBox=\"0 0 " << fmt_num(page_w)
            << " " << fmt_num(page_h) << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        for (int k = 0; k < 3; ++k) {
            const int ax0 = axes[k][0], ax1 = axes[k][1];
            const double w = coord(box.hi, ax0) - coord(box.lo, ax0);
            const double h = coord(box.hi, ax1) - coord(box.lo, ax1);
            const double scale = panel / std::max({w, h, 1e-9});
            const double off_x = gap + k * (panel + gap);
            out << "<g id=\"panel-" << names[k] << "\">\n";
            out << "<rect x=\"" << fmt_num(off_x) << "\" y=\"" << fmt_num(gap)
                << "\" width=\"" << fmt_num(panel) << "\" height=\"" << fmt_num(panel)
                << "\" fill=\"none\" stroke=\"#d0d7de\"/>\n";
            out << "<text x=\"" << fmt_num(off_x) << "\" y=\"" << fmt_num(gap + panel + 18.0)
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << names[k]
                << "</text>\n";
            const View v{ax0, ax1, scale, off_x, gap, coord(box.lo, ax0), coord(box.lo, ax1)};
            render_view(out, v, ws, result, stages, std::string("-") + names[k]);
            out << "</g>\n";
        }
        emit_legend(out, 3 * panel + 4 * gap, 40.0, result != nullptr, stages);
        out << "</svg>\n";
    }
}

void render_svg(const std::string& path, const Workspace& ws, const PlanResult* result,
                const std::vector<RenderStage>& stages) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    render_svg(out, ws, result, stages);
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace btorrt
