#pragma once

#include <platfloer/curveengine/geometry.hpp>

#include <vector>

namespace platfloer::cover {

enum class Curve { Alpha, Beta, Gamma };

struct Side {
  Curve curve;
  curve::Polyline path;
};

// A planar polygon with counter-clockwise boundary. Consecutive sides on
// different curves meet at a corner: alpha/beta at x, beta/gamma at y,
// gamma/alpha at w.
struct TrigonPiece {
  std::vector<Side> sides;
  long coefficient = 1;
};

struct TrigonIndex {
  Q euler;
  Q mu_x;
  Q mu_y;
  Q ac;  // a(psi) . c(psi)
  int genus = 0;

  Q total() const { return euler + mu_x + mu_y + ac - make_q(genus, 2); }
};

// e + mu_x + mu_y + a.c - g/2 for a domain drawn in a planar chart. Corner
// multiplicities average the four quadrants; a.c averages the four diagonal
// pushes of c by `delta`.
TrigonIndex trigon_index(const std::vector<TrigonPiece>& pieces, int genus, const Q& delta = make_q(1, 64));

// g disjoint triangles, each with one x, y and w corner.
std::vector<TrigonPiece> type_one_trigon(int g);
// g - 2 triangles and an L-shaped hexagon whose reflex corner is of the
// given kind: Alpha means x, Beta means y, Gamma means w.
std::vector<TrigonPiece> type_two_trigon(int g, Curve reflex_after);

}  // namespace platfloer::cover
