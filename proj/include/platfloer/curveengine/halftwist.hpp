#pragma once

#include <platfloer/curveengine/geometry.hpp>

#include <array>
#include <vector>

namespace platfloer::curve {

// Exact piecewise-linear model of the half twist exchanging punctures k and
// k+1. Support: the square of L-infinity radius 5/4 about (k + 1/2, 0). The
// inner square of radius 3/4 turns rigidly by pi; the square annulus between
// them is triangulated on five rings and interpolates back to the identity.
class HalfTwist {
public:
  // direction +1 turns the inner square counter-clockwise, -1 is the inverse map.
  HalfTwist(int k, int direction);

  Point map_point(const Point& p) const;
  Polyline map(const Polyline& c) const;

  const Point& center() const { return center_; }

  static const Q& inner_radius();
  static const Q& outer_radius();

private:
  struct Affine {
    std::array<Point, 3> src;
    std::array<Point, 3> dst;
    int band = 0;  // between rings band and band + 1
    int orientation = 1;
    Point lo{}, hi{};  // bounding box of src
  };

  const Affine* locate(const Point& p, const Q& radius) const;
  Point apply(const Affine& a, const Point& p) const;

  Point center_;
  std::vector<Affine> cells_;
  std::vector<std::array<Point, 2>> edges_;
};

Polyline apply_generator(const Polyline& c, int k, int sign);

}  // namespace platfloer::curve
