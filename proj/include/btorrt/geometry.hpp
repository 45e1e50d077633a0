#ifndef BTORRT_GEOMETRY_HPP
#define BTORRT_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>

namespace btorrt {

/// A 2D or 3D point in map units. 2D points keep z = 0.
struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    int dim = 2;

    static Point of2(double x, double y) { return Point{x, y, 0.0, 2}; }
    static Point of3(double x, double y, double z) { return Point{x, y, z, 3}; }

    bool operator==(const Point& o) const {
        return dim == o.dim && x == o.x && y == o.y && z == o.z;
    }
};

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
}

inline Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    return Point{a.x + b.x, a.y + b.y, a.z + b.z, a.dim};
}

inline Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    return Point{a.x - b.x, a.y - b.y, a.z - b.z, a.dim};
}

inline Point operator*(const Point& a, double s) {
    return Point{a.x * s, a.y * s, a.z * s, a.dim};
}

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

/// Linear interpolation a + t*(b - a), t in [0,1].
inline Point lerp(const Point& a, const Point& b, double t) {
    require_same_dim(a, b);
    return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
                 a.z + t * (b.z - a.z), a.dim};
}

inline double coord(const Point& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

inline void set_coord(Point& p, int axis, double v) {
    if (axis == 0) p.x = v;
    else if (axis == 1) p.y = v;
    else p.z = v;
}

/// Axis-aligned bounding box; dimension follows lo.dim.
struct Aabb {
    Point lo;
    Point hi;

    int dim() const { return lo.dim; }

    bool contains(const Point& p) const {
        if (p.dim != lo.dim) return false;
        for (int a = 0; a < lo.dim; ++a) {
            const double c = coord(p, a);
            if (c < coord(lo, a) || c > coord(hi, a)) return false;
        }
        return true;
    }
};

}  // namespace btorrt

#endif  // BTORRT_GEOMETRY_HPP
