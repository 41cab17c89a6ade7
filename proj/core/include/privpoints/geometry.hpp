#ifndef PRIVPOINTS_GEOMETRY_HPP
#define PRIVPOINTS_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace privpoints {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

using PointSet2D = std::vector<Point2D>;

/// A point already rescaled into the unit square [0,1]^2.
struct UnitPoint2D {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangle, also used as the data domain for rescaling.
struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 1.0;
    double max_y = 1.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }

    bool contains(const Point2D& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }

    void validate() const {
        if (!(width() > 0.0) || !(height() > 0.0)) {
            throw std::invalid_argument("Rect: width and height must be strictly positive");
        }
        if (!std::isfinite(min_x) || !std::isfinite(min_y) || !std::isfinite(max_x) ||
            !std::isfinite(max_y)) {
            throw std::invalid_argument("Rect: coordinates must be finite");
        }
    }
};

inline UnitPoint2D to_unit(const Point2D& p, const Rect& domain) {
    return UnitPoint2D{(p.x - domain.min_x) / domain.width(),
                       (p.y - domain.min_y) / domain.height()};
}

inline Point2D to_domain(const UnitPoint2D& u, const Rect& domain) {
    return Point2D{domain.min_x + u.x * domain.width(),
                   domain.min_y + u.y * domain.height()};
}

}  // namespace privpoints

#endif  // PRIVPOINTS_GEOMETRY_HPP
