#include <platfloer/curveengine/halftwist.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>

namespace platfloer::curve {

namespace {

constexpr int kRings = 5;
constexpr int kSpokes = 8;

const Q& ring_radius(int j) {
  static const Q radii[] = {make_q(6, 8), make_q(7, 8), make_q(8, 8), make_q(9, 8), make_q(10, 8)};
  return radii[j];
}

Point ring_vertex(const Point& c, int j, int i) {
  static const int dx[kSpokes] = {1, 1, 0, -1, -1, -1, 0, 1};
  static const int dy[kSpokes] = {0, 1, 1, 1, 0, -1, -1, -1};
  i = ((i % kSpokes) + kSpokes) % kSpokes;
  Q r = ring_radius(j);
  return {c.x + r * dx[i], c.y + r * dy[i]};
}

Q linf(const Point& a, const Point& c) { return std::max(abs(a.x - c.x), abs(a.y - c.y)); }

}  // namespace

const Q& HalfTwist::inner_radius() {
  static const Q r(3, 4);
  return r;
}

const Q& HalfTwist::outer_radius() {
  static const Q r(5, 4);
  return r;
}

HalfTwist::HalfTwist(int k, int direction) : center_{Q(2 * k + 1, 2), Q(0)} {
  // Vertex P^j_i goes to P^j_{i + 4 - j}; ring 0 turns by pi, ring 4 is fixed.
  for (int j = 0; j + 1 < kRings; ++j) {
    int a = kSpokes / 2 - j;
    for (int i = 0; i < kSpokes; ++i) {
      Affine t1{{ring_vertex(center_, j, i), ring_vertex(center_, j, i + 1), ring_vertex(center_, j + 1, i + 1)},
                {ring_vertex(center_, j, i + a), ring_vertex(center_, j, i + 1 + a),
                 ring_vertex(center_, j + 1, i + a)}};
      Affine t2{{ring_vertex(center_, j, i), ring_vertex(center_, j + 1, i + 1), ring_vertex(center_, j + 1, i)},
                {ring_vertex(center_, j, i + a), ring_vertex(center_, j + 1, i + a),
                 ring_vertex(center_, j + 1, i + a - 1)}};
      for (Affine* t : {&t1, &t2}) {
        int so = orient(t->src[0], t->src[1], t->src[2]);
        int to = orient(t->dst[0], t->dst[1], t->dst[2]);
        if (so == 0 || so != to) throw InternalInconsistency("half twist triangulation is not orientation preserving");
        if (direction < 0) std::swap(t->src, t->dst);
        t->band = j;
        t->orientation = so;
        t->lo = t->hi = t->src[0];
        for (const Point& v : t->src) {
          t->lo = {std::min(t->lo.x, v.x), std::min(t->lo.y, v.y)};
          t->hi = {std::max(t->hi.x, v.x), std::max(t->hi.y, v.y)};
        }
        cells_.push_back(*t);
      }
    }
  }
  for (int j = 0; j < kRings; ++j)
    for (int i = 0; i < kSpokes; ++i) {
      edges_.push_back({ring_vertex(center_, j, i), ring_vertex(center_, j, i + 1)});
      if (j + 1 < kRings) {
        edges_.push_back({ring_vertex(center_, j, i), ring_vertex(center_, j + 1, i)});
        edges_.push_back({ring_vertex(center_, j, i), ring_vertex(center_, j + 1, i + 1)});
        // Edges of the image triangulation, needed for the inverse map.
        edges_.push_back({ring_vertex(center_, j, i), ring_vertex(center_, j + 1, i - 1)});
      }
    }
}

const HalfTwist::Affine* HalfTwist::locate(const Point& p, const Q& radius) const {
  for (const Affine& a : cells_) {
    if (radius < ring_radius(a.band) || radius > ring_radius(a.band + 1)) continue;
    if (p.x < a.lo.x || p.x > a.hi.x || p.y < a.lo.y || p.y > a.hi.y) continue;
    const int s = a.orientation;
    if (orient(a.src[0], a.src[1], p) * s >= 0 && orient(a.src[1], a.src[2], p) * s >= 0 &&
        orient(a.src[2], a.src[0], p) * s >= 0)
      return &a;
  }
  return nullptr;
}

Point HalfTwist::apply(const Affine& a, const Point& p) const {
  Q d = cross(a.src[1] - a.src[0], a.src[2] - a.src[0]);
  Q l1 = cross(p - a.src[0], a.src[2] - a.src[0]) / d;
  Q l2 = cross(a.src[1] - a.src[0], p - a.src[0]) / d;
  Q l0 = 1 - l1 - l2;
  return {l0 * a.dst[0].x + l1 * a.dst[1].x + l2 * a.dst[2].x, l0 * a.dst[0].y + l1 * a.dst[1].y + l2 * a.dst[2].y};
}

Point HalfTwist::map_point(const Point& p) const {
  Q r = linf(p, center_);
  if (r >= outer_radius()) return p;
  if (r <= inner_radius()) return {2 * center_.x - p.x, 2 * center_.y - p.y};
  const Affine* a = locate(p, r);
  if (!a) throw InternalInconsistency("half twist: point " + to_string(p) + " in no cell");
  return apply(*a, p);
}

Polyline HalfTwist::map(const Polyline& c) const {
  Polyline out;
  const Q reach = outer_radius();
  for (std::size_t s = 0; s + 1 < c.size(); ++s) {
    const Point& a = c[s];
    const Point& b = c[s + 1];
    std::vector<Q> ts{Q(0), Q(1)};
    bool near = std::min(a.x, b.x) < center_.x + reach && std::max(a.x, b.x) > center_.x - reach &&
                std::min(a.y, b.y) < center_.y + reach && std::max(a.y, b.y) > center_.y - reach;
    if (near) {
      Q x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x), y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
      for (const auto& e : edges_) {
        if (std::max(e[0].x, e[1].x) < x0 || std::min(e[0].x, e[1].x) > x1 || std::max(e[0].y, e[1].y) < y0 ||
            std::min(e[0].y, e[1].y) > y1)
          continue;
        for (const Q& t : segment_hits(a, b, e[0], e[1])) ts.push_back(t);
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      Point p = a + ts[i] * (b - a);
      Point q = a + ts[i + 1] * (b - a);
      Point mid = a + ((ts[i] + ts[i + 1]) / 2) * (b - a);
      Q r = linf(mid, center_);
      Point mp, mq;
      if (r >= reach) {
        mp = p;
        mq = q;
      } else if (r <= inner_radius()) {
        mp = {2 * center_.x - p.x, 2 * center_.y - p.y};
        mq = {2 * center_.x - q.x, 2 * center_.y - q.y};
      } else {
        const Affine* cell = locate(mid, r);
        if (!cell) throw InternalInconsistency("half twist: segment piece in no cell");
        mp = apply(*cell, p);
        mq = apply(*cell, q);
      }
      if (out.empty() || out.back() != mp) out.push_back(mp);
      if (out.back() != mq) out.push_back(mq);
    }
  }
  if (c.size() == 1) out.push_back(map_point(c[0]));
  return out;
}

Polyline apply_generator(const Polyline& c, int k, int sign) { return HalfTwist(k, sign).map(c); }

}  // namespace platfloer::curve
