#include "btorrt/point_cloud.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btorrt {

namespace {

std::string lower_ext(const std::string& path) {
    const auto pos = path.rfind('.');
    if (pos == std::string::npos) return "";
    std::string ext = path.substr(pos + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

[[noreturn]] void fail_line(const std::string& path, int line_no, const std::string& what) {
    throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::string token;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!token.empty()) tokens.push_back(std::move(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) tokens.push_back(std::move(token));
    return tokens;
}

double parse_double(const std::string& token, const std::string& path, int line_no) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        fail_line(path, line_no, "invalid number '" + token + "'");
    }
    if (used != token.size()) fail_line(path, line_no, "invalid number '" + token + "'");
    return value;
}

std::vector<Point> load_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        return true;
    };
    if (!next_line() || split_tokens(line) != std::vector<std::string>{"ply"})
        fail_line(path, line_no, "missing 'ply' magic");

    long vertex_count = -1;
    int xi = -1, yi = -1, zi = -1;
    int property_index = 0;
    bool in_vertex_element = false;
    bool ascii = false;
    while (next_line()) {
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "format") {
            ascii = tokens.size() >= 2 && tokens[1] == "ascii";
        } else if (tokens[0] == "element") {
            in_vertex_element = tokens.size() >= 3 && tokens[1] == "vertex";
            if (in_vertex_element) vertex_count = std::stol(tokens[2]);
        } else if (tokens[0] == "property" && in_vertex_element) {
            if (tokens.size() >= 3) {
                if (tokens[2] == "x") xi = property_index;
                if (tokens[2] == "y") yi = property_index;
                if (tokens[2] == "z") zi = property_index;
            }
            ++property_index;
        } else if (tokens[0] == "end_header") {
            break;
        }
    }
    if (!ascii) throw std::runtime_error(path + ": only ASCII PLY supported");
    if (vertex_count < 0) fail_line(path, line_no, "no vertex element");
    if (xi < 0 || yi < 0 || zi < 0) fail_line(path, line_no, "vertex lacks x y z properties");

    std::vector<Point> cloud;
    cloud.reserve(static_cast<std::size_t>(vertex_count));
    for (long i = 0; i < vertex_count; ++i) {
        if (!next_line()) fail_line(path, line_no + 1, "truncated vertex data");
        const auto tokens = split_tokens(line);
        if (static_cast<int>(tokens.size()) <= std::max({xi, yi, zi}))
            fail_line(path, line_no, "short vertex row");
        cloud.push_back(Point::of3(
            parse_double(tokens[static_cast<std::size_t>(xi)], path, line_no),
            parse_double(tokens[static_cast<std::size_t>(yi)], path, line_no),
            parse_double(tokens[static_cast<std::size_t>(zi)], path, line_no)));
    }
    return cloud;
}

std::vector<Point> load_pcd(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int line_no = 0;
    long point_count = -1;
    int xi = -1, yi = -1, zi = -1;
    bool ascii = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens[0] == "FIELDS") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (tokens[i] == "x") xi = static_cast<int>(i - 1);
                if (tokens[i] == "y") yi = static_cast<int>(i - 1);
                if (tokens[i] == "z") zi = static_cast<int>(i - 1);
            }
        } else if (tokens[0] == "POINTS" && tokens.size() >= 2) {
            point_count = std::stol(tokens[1]);
        } else if (tokens[0] == "DATA") {
            ascii = tokens.size() >= 2 && tokens[1] == "ascii";
            break;
        }
    }
    if (!ascii) throw std::runtime_error(path + ": only DATA ascii PCD supported");
    if (point_count < 0) throw std::runtime_error(path + ": missing POINTS header");
    if (xi < 0 || yi < 0 || zi < 0)
        throw std::runtime_error(path + ": FIELDS lack x y z");

    std::vector<Point> cloud;
    cloud.reserve(static_cast<std::size_t>(point_count));
    for (long i = 0; i < point_count; ++i) {
        if (!std::getline(in, line)) fail_line(path, line_no + 1, "truncated point data");
        ++line_no;
        const auto tokens = split_tokens(line);
        if (static_cast<int>(tokens.size()) <= std::max({xi, yi, zi}))
            fail_line(path, line_no, "short point row");
        cloud.push_back(Point::of3(
            parse_double(tokens[static_cast<std::size_t>(xi)], path, line_no),
            parse_double(tokens[static_cast<std::size_t>(yi)], path, line_no),
            parse_double(tokens[static_cast<std::size_t>(zi)], path, line_no)));
    }
    return cloud;
}

std::vector<Point> load_xyz_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Point> cloud;
    std::string line;
    int line_no = 0;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2 && tokens.size() != 3)
            fail_line(path, line_no, "expected 2 or 3 coordinates");
        if (columns == 0) columns = tokens.size();
        if (tokens.size() != columns) fail_line(path, line_no, "inconsistent column count");
        if (columns == 2) {
            cloud.push_back(Point::of2(parse_double(tokens[0], path, line_no),
                                       parse_double(tokens[1], path, line_no)));
        } else {
            cloud.push_back(Point::of3(parse_double(tokens[0], path, line_no),
                                       parse_double(tokens[1], path, line_no),
                                       parse_double(tokens[2], path, line_no)));
        }
    }
    return cloud;
}

}  // namespace

std::vector<Point> load_cloud(const std::string& path) {
    const std::string ext = lower_ext(path);
    std::vector<Point> cloud;
    if (ext == "ply")
        cloud = load_ply(path);
    else if (ext == "pcd")
        cloud = load_pcd(path);
    else
        cloud = load_xyz_rows(path);
    if (cloud.size() < 4) throw std::runtime_error(path + ": fewer than 4 points");
    return cloud;
}

void save_cloud_csv(const std::vector<Point>& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const Point& p : cloud) {
        if (p.dim == 2)
            out << fmt::format("{},{}\n", p.x, p.y);
        else
            out << fmt::format("{},{},{}\n", p.x, p.y, p.z);
    }
    if (!out) throw std::runtime_error("cannot write " + path);
}

namespace {

DensityReport report_from_nn(const std::vector<double>& nn, double alpha,
                             double step_coeff) {
    const double n = static_cast<double>(nn.size());
    double sum = 0.0;
    for (double d : nn) sum += d;
    const double mean = sum / n;
    if (mean <= 0.0) throw std::invalid_argument("degenerate cloud: all points coincide");
    double var = 0.0;
    for (double d : nn) var += (d - mean) * (d - mean);
    DensityReport report;
    report.mean_nn_dist = mean;
    report.std_nn_dist = std::sqrt(var / n);
    report.step_size = step_coeff * mean;
    report.safe_dist = alpha * report.step_size;
    report.alpha = alpha;
    return report;
}

void check_density_args(const std::vector<Point>& cloud, double alpha,
                        double step_coeff) {
    if (cloud.size() < 2) throw std::invalid_argument("fewer than 2 points");
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in (0, 1]");
    if (step_coeff <= 0.0) throw std::invalid_argument("step_coeff must be positive");
}

}  // namespace

DensityReport analyze_density(const std::vector<Point>& cloud, double alpha,
                              double step_coeff) {
    check_density_args(cloud, alpha, step_coeff);
    const KdTree index(cloud);
    const auto n = static_cast<std::ptrdiff_t>(cloud.size());
    std::vector<double> nn(cloud.size());
    // Independent writes per point; the reduction below stays serial so the
    // result does not depend on the thread count.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        nn[static_cast<std::size_t>(i)] =
            index.nearest_excluding(cloud[static_cast<std::size_t>(i)],
                                    static_cast<std::size_t>(i))
                .dist;
    }
    return report_from_nn(nn, alpha, step_coeff);
}

DensityReport analyze_density_serial(const std::vector<Point>& cloud, double alpha,
                                     double step_coeff) {
    check_density_args(cloud, alpha, step_coeff);
    const KdTree index(cloud);
    std::vector<double> nn(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        nn[i] = index.nearest_excluding(cloud[i], i).dist;
    }
    return report_from_nn(nn, alpha, step_coeff);
}

std::string density_report_json(const DensityReport& report) {
    return fmt::format(
        "{{\"mean_nn_dist\": {}, \"std_nn_dist\": {}, \"step_size\": {}, "
        "\"safe_dist\": {}, \"alpha\": {}}}",
        report.mean_nn_dist, report.std_nn_dist, report.step_size, report.safe_dist,
        report.alpha);
}

CloudMap::CloudMap(std::vector<Point> cloud, double step_size, double safe_dist)
    : index_(std::make_unique<KdTree>(std::move(cloud))),
      step_size_(step_size),
      safe_dist_(safe_dist) {
    if (step_size_ <= 0.0) throw std::invalid_argument("step_size must be positive");
    if (safe_dist_ <= 0.0) throw std::invalid_argument("safe_dist must be positive");
    const auto& pts = index_->points();
    bounds_.lo = pts[0];
    bounds_.hi = pts[0];
    for (const Point& p : pts) {
        for (int a = 0; a < p.dim; ++a) {
            set_coord(bounds_.lo, a, std::min(coord(bounds_.lo, a), coord(p, a)));
            set_coord(bounds_.hi, a, std::max(coord(bounds_.hi, a), coord(p, a)));
        }
    }
}

CloudMap CloudMap::from_analysis(std::vector<Point> cloud, double alpha,
                                 double step_coeff) {
    const DensityReport report = analyze_density(cloud, alpha, step_coeff);
    return CloudMap(std::move(cloud), report.step_size, report.safe_dist);
}

bool CloudMap::point_free(const Point& p) const {
    if (p.dim != dim() || !bounds_.contains(p)) return false;
    return index_->nearest(p).dist > safe_dist_;
}

bool CloudMap::segment_free(const Point& a, const Point& b) const {
    if (a.dim != dim() || b.dim != dim()) return false;
    const double len = distance(a, b);
    const auto samples = static_cast<long>(std::ceil(len / (safe_dist_ / 2.0)));
    for (long k = 0; k <= samples; ++k) {
        const double t = samples == 0 ? 0.0 : static_cast<double>(k) / samples;
        if (!point_free(lerp(a, b, t))) return false;
    }
    return true;
}

}  // namespace btorrt
