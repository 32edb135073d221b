#include <platfloer/curveengine/geometry.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <sstream>

namespace platfloer::curve {

std::string to_string(const Point& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

Polyline simplify(const Polyline& path) {
  Polyline out;
  out.reserve(path.size());
  for (const Point& p : path)
    if (out.empty() || out.back() != p) out.push_back(p);
  return out;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

std::vector<Q> segment_hits(const Point& a, const Point& b, const Point& c, const Point& d) {
  std::vector<Q> out;
  Point r = b - a, s = d - c;
  Q denom = cross(r, s);
  if (denom != 0) {
    Q t = cross(c - a, s) / denom;
    Q u = cross(c - a, r) / denom;
    if (t >= 0 && t <= 1 && u >= 0 && u <= 1) out.push_back(t);
    return out;
  }
  if (cross(c - a, r) != 0) return out;  // parallel, not collinear
  Q rr = dot(r, r);
  Q t0 = dot(c - a, r) / rr, t1 = dot(d - a, r) / rr;
  if (t0 > t1) std::swap(t0, t1);
  Q lo = std::max(t0, Q(0)), hi = std::min(t1, Q(1));
  if (lo <= hi) {
    out.push_back(lo);
    if (hi != lo) out.push_back(hi);
  }
  return out;
}

long winding_number(const Polyline& loop, const std::vector<Point>& points) {
  if (loop.size() < 2) return 0;
  long total = 0;
  const std::size_t m = loop.size();
  for (const Point& p : points) {
    long wn = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point& a = loop[i];
      const Point& b = loop[(i + 1) % m];
      if (a == b) continue;
      if (on_segment(p, a, b)) throw DegenerateInput("point " + to_string(p) + " lies on the loop");
      if (a.y <= p.y) {
        if (b.y > p.y && orient(a, b, p) > 0) ++wn;
      } else if (b.y <= p.y && orient(a, b, p) < 0) {
        --wn;
      }
    }
    total += wn;
  }
  return total;
}

namespace {

// Side of a direction with respect to the horizontal line, after an
// infinitesimal counter-clockwise rotation of the plane.
int vertical_side(const Point& d) { return d.y != 0 ? sgn(d.y) : sgn(d.x); }

}  // namespace

long turning_half_revolutions(const Polyline& path, const Point& reference) {
  Polyline p = simplify(path);
  std::vector<Point> dirs{reference};
  for (std::size_t i = 0; i + 1 < p.size(); ++i) dirs.push_back(p[i + 1] - p[i]);
  if (dirs.size() < 2) return 0;
  long ccw = 0, cw = 0;
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    const Point& a = dirs[i];
    const Point& b = dirs[i + 1];
    int turn = sgn(cross(a, b));
    if (turn == 0 && dot(a, b) < 0) throw ConventionViolation("path reverses direction at vertex " + std::to_string(i));
    if (vertical_side(a) == vertical_side(b)) continue;
    if (turn > 0)
      ++ccw;
    else
      ++cw;
  }
  if (cross(dirs.back(), reference) != 0)
    throw ConventionViolation("final tangent is not parallel to the reference direction");
  return cw - ccw;
}

namespace {

// Signed crossings of the vertical axis by a piecewise linear path that
// avoids the origin. Counter-clockwise crossings are positive.
long half_turns(const std::vector<Point>& d) {
  auto side = [](const Point& p) { return p.x >= 0 ? 1 : -1; };
  long count = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const Point& a = d[i];
    const Point& b = d[i + 1];
    int sa = side(a), sb = side(b);
    if (sa == sb) continue;
    Q t = a.x / (a.x - b.x);
    Q y = a.y + t * (b.y - a.y);
    if (y == 0) throw DegenerateInput("difference vector passes through zero");
    // Right to left above the origin, or left to right below it, is counter-clockwise.
    count += (sa > 0) == (y > 0) ? 1 : -1;
  }
  return count;
}

bool collides(const std::vector<Point>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].x == 0 && d[i].y == 0) return true;
    if (i + 1 < d.size() && on_segment(Point{0, 0}, d[i], d[i + 1])) return true;
  }
  return false;
}

}  // namespace

long pairwise_winding(const std::vector<Polyline>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) return 0;
  const std::size_t k = samples[0].size();
  for (const Polyline& s : samples)
    if (s.size() != k) throw DegenerateInput("paths are not sampled on a common grid");

  auto diffs = [&](std::size_t i, std::size_t j, const Q& offset) {
    std::vector<Point> d(k);
    for (std::size_t t = 0; t < k; ++t) d[t] = samples[j][t] - samples[i][t] + Point{0, offset};
    return d;
  };

  bool clash = false;
  for (std::size_t i = 0; i < n && !clash; ++i)
    for (std::size_t j = i + 1; j < n && !clash; ++j) clash = collides(diffs(i, j, 0));

  Q delta = 0;
  if (clash) {
    Z maxden = 1;
    for (const Polyline& s : samples)
      for (const Point& p : s) {
        if (p.x.get_den() > maxden) maxden = p.x.get_den();
        if (p.y.get_den() > maxden) maxden = p.y.get_den();
      }
    delta = Q(1) / Q(4 * maxden);
  }

  long total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Q offset = delta * Q(static_cast<long>(j) - static_cast<long>(i));
      std::vector<Point> d = diffs(i, j, offset);
      if (collides(d)) throw DegenerateInput("paths coincide after perturbation");
      if (d.front().x == 0 || d.back().x == 0)
        throw ConventionViolation("pairwise winding endpoints are vertically aligned");
      total += half_turns(d);
    }
  return total;
}

std::string svg_path(const Polyline& path, bool closed) {
  std::ostringstream out;
  for (std::size_t i = 0; i < path.size(); ++i)
    out << (i ? " L " : "M ") << path[i].x.get_d() << ' ' << -path[i].y.get_d();
  if (closed) out << " Z";
  return out.str();
}

}  // namespace platfloer::curve
