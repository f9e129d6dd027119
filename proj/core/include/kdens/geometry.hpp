#pragma once

#include <algorithm>
#include <cmath>

namespace kdens {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
  double norm_inf() const { return std::max(std::abs(x), std::abs(y)); }
};

/// Axis-aligned rectangle [x0,x1]x[y0,y1]. Membership tests are half-open
/// ([x0,x1) x [y0,y1)) so that adjacent rectangles partition the plane.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool valid() const { return x1 >= x0 && y1 >= y0; }
  bool degenerate() const { return x1 <= x0 || y1 <= y0; }

  bool contains_half_open(double x, double y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
  bool contains_closed(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }

  Rect intersect(const Rect& o) const {
    Rect r{std::max(x0, o.x0), std::max(y0, o.y0), std::min(x1, o.x1),
           std::min(y1, o.y1)};
    if (r.x1 < r.x0) r.x1 = r.x0;
    if (r.y1 < r.y0) r.y1 = r.y0;
    return r;
  }

  /// Closed regions share at least a point (edge or corner contact counts).
  bool touches(const Rect& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }

  bool operator==(const Rect& o) const {
    return x0 == o.x0 && y0 == o.y0 && x1 == o.x1 && y1 == o.y1;
  }
};

inline Rect square_at(double cx, double cy, double side) {
  const double h = side / 2.0;
  return Rect{cx - h, cy - h, cx + h, cy + h};
}

}  // namespace kdens
