#pragma once

#include <platfloer/rational.hpp>

#include <string>
#include <vector>

namespace platfloer::curve {

struct Point {
  Q x;
  Q y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  bool operator<(const Point& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Q& s, const Point& a) { return {s * a.x, s * a.y}; }

inline Q cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Q dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
// Sign of the turn a -> b -> c (positive: counter-clockwise).
inline int orient(const Point& a, const Point& b, const Point& c) { return sgn(cross(b - a, c - a)); }

using Polyline = std::vector<Point>;

std::string to_string(const Point& p);

// Removes consecutive duplicate vertices.
Polyline simplify(const Polyline& path);

bool on_segment(const Point& p, const Point& a, const Point& b);

// Parameters t in [0,1] along [a,b] where it meets [c,d]; for collinear
// overlaps both ends of the overlap are returned.
std::vector<Q> segment_hits(const Point& a, const Point& b, const Point& c, const Point& d);

// Signed winding number of the closed polyline `loop` (last vertex joined to
// the first) summed over `points`. Counter-clockwise is positive.
long winding_number(const Polyline& loop, const std::vector<Point>& points);

// Signed half revolutions of the tangent of `path`, starting from the
// direction `reference`, clockwise positive. The final segment must be
// parallel to the reference.
long turning_half_revolutions(const Polyline& path, const Point& reference);

// Sum over unordered pairs of the half turns swept by the difference vector.
// All paths are sampled on the same parameter grid; between samples they are
// affine. Counter-clockwise half turns are positive.
long pairwise_winding(const std::vector<Polyline>& samples);

std::string svg_path(const Polyline& path, bool closed = false);

}  // namespace platfloer::curve
