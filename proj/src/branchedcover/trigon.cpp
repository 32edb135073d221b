#include <platfloer/branchedcover/trigon.hpp>
#include <platfloer/errors.hpp>

#include <array>

namespace platfloer::cover {

using curve::Point;
using curve::Polyline;

namespace {

Polyline outline(const TrigonPiece& p) {
  Polyline out;
  for (const Side& s : p.sides)
    for (const Point& q : s.path)
      if (out.empty() || out.back() != q) out.push_back(q);
  if (out.size() > 1 && out.back() == out.front()) out.pop_back();
  return out;
}

long multiplicity(const std::vector<TrigonPiece>& pieces, const Point& q) {
  long m = 0;
  for (const TrigonPiece& p : pieces) m += p.coefficient * curve::winding_number(outline(p), {q});
  return m;
}

struct Corner {
  Point at;
  Point in;   // direction arriving
  Point out;  // direction leaving
  Curve from, to;
};

std::vector<Corner> corners(const TrigonPiece& p) {
  std::vector<Corner> out;
  const std::size_t n = p.sides.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Side& a = p.sides[k];
    const Side& b = p.sides[(k + 1) % n];
    if (a.path.back() != b.path.front()) throw DegenerateInput("polygon sides do not join");
    if (a.curve == b.curve) continue;
    const Polyline& pa = a.path;
    out.push_back({b.path.front(), pa.back() - pa[pa.size() - 2], b.path[1] - b.path[0], a.curve, b.curve});
  }
  return out;
}

bool is_x(const Corner& c) {
  return (c.from == Curve::Alpha && c.to == Curve::Beta) || (c.from == Curve::Beta && c.to == Curve::Alpha);
}
bool is_y(const Corner& c) {
  return (c.from == Curve::Beta && c.to == Curve::Gamma) || (c.from == Curve::Gamma && c.to == Curve::Beta);
}

struct Segment {
  Point a, b;
  long weight;
};

std::vector<Segment> chain(const std::vector<TrigonPiece>& pieces, Curve which) {
  std::vector<Segment> out;
  for (const TrigonPiece& p : pieces)
    for (const Side& s : p.sides)
      if (s.curve == which)
        for (std::size_t k = 0; k + 1 < s.path.size(); ++k) out.push_back({s.path[k], s.path[k + 1], p.coefficient});
  return out;
}

// Signed count of transverse crossings; touching is degenerate.
long crossing(const Segment& s, const Segment& t) {
  const int o1 = curve::orient(s.a, s.b, t.a), o2 = curve::orient(s.a, s.b, t.b);
  const int o3 = curve::orient(t.a, t.b, s.a), o4 = curve::orient(t.a, t.b, s.b);
  if (o1 * o2 > 0 || o3 * o4 > 0) return 0;
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) throw DegenerateInput("pushed-off gamma chain touches alpha");
  return sgn(curve::cross(s.b - s.a, t.b - t.a)) * s.weight * t.weight;
}

}  // namespace

TrigonIndex trigon_index(const std::vector<TrigonPiece>& pieces, int genus, const Q& delta) {
  TrigonIndex r;
  r.genus = genus;
  long e4 = 0, mx = 0, my = 0;
  for (const TrigonPiece& p : pieces) {
    long convex = 0, reflex = 0;
    for (const Corner& c : corners(p)) {
      const int turn = sgn(curve::cross(c.in, c.out));
      if (turn == 0) throw DegenerateInput("corner without a turn");
      (turn > 0 ? convex : reflex) += 1;
    }
    e4 += p.coefficient * (4 - convex + reflex);
  }
  // Corner multiplicities: each point once, however many pieces touch it.
  std::vector<Point> seen;
  for (const TrigonPiece& p : pieces)
    for (const Corner& c : corners(p)) {
      if (!is_x(c) && !is_y(c)) continue;
      bool dup = false;
      for (const Point& s : seen) dup = dup || s == c.at;
      if (dup) continue;
      seen.push_back(c.at);
      long sum = 0;
      for (int su : {-1, 1})
        for (int sv : {-1, 1}) sum += multiplicity(pieces, c.at + delta * (Q(su) * c.in + Q(sv) * c.out));
      (is_x(c) ? mx : my) += sum;
    }
  r.euler = make_q(e4, 4);
  r.mu_x = make_q(mx, 4);
  r.mu_y = make_q(my, 4);

  const auto a = chain(pieces, Curve::Alpha), c = chain(pieces, Curve::Gamma);
  long ac = 0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) {
      const Point push{delta * sx, delta * sy};
      for (const Segment& s : a)
        for (const Segment& t : c) ac += crossing(s, {t.a + push, t.b + push, t.weight});
    }
  r.ac = make_q(ac, 4);
  return r;
}

namespace {

Point pt(long x, long y) { return {Q(x), Q(y)}; }

TrigonPiece triangle(long ox) {
  return {{{Curve::Alpha, {pt(ox, 0), pt(ox + 4, 0)}},
           {Curve::Beta, {pt(ox + 4, 0), pt(ox + 4, 4)}},
           {Curve::Gamma, {pt(ox + 4, 4), pt(ox, 4), pt(ox, 0)}}},
          1};
}

}  // namespace

std::vector<TrigonPiece> type_one_trigon(int g) {
  std::vector<TrigonPiece> out;
  for (int k = 0; k < g; ++k) out.push_back(triangle(6L * k));
  return out;
}

std::vector<TrigonPiece> type_two_trigon(int g, Curve reflex_after) {
  if (g < 2) throw DegenerateInput("a type II domain needs genus at least 2");
  std::vector<TrigonPiece> out;
  for (int k = 0; k < g - 2; ++k) out.push_back(triangle(6L * k));
  const long ox = 6L * (g - 2);
  const std::array<Point, 6> v{pt(ox, 0), pt(ox + 4, 0), pt(ox + 4, 2), pt(ox + 2, 2), pt(ox + 2, 4), pt(ox, 4)};
  // The reflex vertex v[3] sits between sides 2 and 3; side 2 lies on the
  // curve named by `reflex_after`.
  const std::array<Curve, 3> cycle{Curve::Alpha, Curve::Beta, Curve::Gamma};
  const int shift = (static_cast<int>(reflex_after) + 1) % 3;
  TrigonPiece hex;
  for (int k = 0; k < 6; ++k) hex.sides.push_back({cycle[(k + shift) % 3], {v[k], v[(k + 1) % 6]}});
  out.push_back(hex);
  return out;
}

}  // namespace platfloer::cover
