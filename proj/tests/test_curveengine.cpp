#include <doctest.h>

#include <platfloer/curveengine/curvesystem.hpp>
#include <platfloer/curveengine/halftwist.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <random>

using namespace platfloer;
using namespace platfloer::curve;

namespace doctest {
template <>
struct StringMaker<Point> {
  static String convert(const Point& p) { return to_string(p).c_str(); }
};
}  // namespace doctest

namespace {

Point P(long x, long y, long den = 1) { return {make_q(x, den), make_q(y, den)}; }

// alpha_k as a two-branch component: a low arch over [2k-1, 2k].
EmbeddedComponent arc(int k) {
  Point J{Q(4 * k - 1, 2), Q(1, 2)};
  EmbeddedComponent c;
  c.center = J;
  c.branches.push_back({J, {Q(2 * k - 1), Q(1, 2)}, {Q(2 * k - 1), Q(0)}});
  c.branches.push_back({J, {Q(2 * k), Q(1, 2)}, {Q(2 * k), Q(0)}});
  c.ends = {{EndKind::Puncture, 2 * k - 1}, {EndKind::Puncture, 2 * k}};
  return c;
}

EmbeddedComponent fork(int k, const PuncturedDisk& d) {
  EmbeddedComponent c = arc(k);
  c.branches.push_back({c.center, {c.center.x, d.height()}});
  c.ends.push_back({EndKind::Top, 0});
  return c;
}

std::vector<EmbeddedComponent> arcs(const PuncturedDisk& d) {
  std::vector<EmbeddedComponent> v;
  for (int k = 1; k <= d.n; ++k) v.push_back(arc(k));
  return v;
}

std::vector<EmbeddedComponent> forks(const PuncturedDisk& d) {
  std::vector<EmbeddedComponent> v;
  for (int k = 1; k <= d.n; ++k) v.push_back(fork(k, d));
  return v;
}

using Word = std::vector<std::pair<int, int>>;

CurveSystem run(const PuncturedDisk& d, std::vector<EmbeddedComponent> sys, const Word& w) {
  CurveSystem cs(d, sys);
  cs.tighten();
  for (const auto& [k, s] : w) {
    cs = push_through(d, cs.embed(), k, s);
  }
  return cs;
}

Word random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> gen(1, strands - 1), sg(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({gen(rng), sg(rng) ? 1 : -1});
  return w;
}

// Arcs are unoriented: compare them with the branch towards the smaller puncture first.
SystemRecord unoriented(const CurveSystem& cs) {
  SystemRecord r = cs.record();
  for (ComponentRecord& c : r.components) {
    if (c.branches.size() != 2 || c.branches[0].end.puncture < c.branches[1].end.puncture) continue;
    ComponentRecord flipped;
    flipped.center_half = c.branches[1].crossings.empty() ? c.center_half : flip(c.center_half);
    BranchRecord a = c.branches[1], b = c.branches[0];
    // The centre moves to the other end of the crossing list.
    b.crossings.insert(b.crossings.begin(), a.crossings.rbegin(), a.crossings.rend());
    a.crossings.clear();
    if (b.crossings.size() % 2 == 0) flipped.center_half = c.center_half;
    flipped.branches = {a, b};
    c = flipped;
  }
  std::sort(r.components.begin(), r.components.end(), [](const ComponentRecord& x, const ComponentRecord& y) {
    return x.branches[0].end.puncture < y.branches[0].end.puncture;
  });
  return r;
}

Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("half twist is the identity outside its support and a rotation inside") {
  HalfTwist t(2, 1);
  CHECK(t.center() == P(5, 0, 2));
  for (Point p : {P(0, 0), P(1, 0), P(4, 0), P(5, 3, 2), P(5, -3, 2), P(15, 0, 4)}) CHECK(t.map_point(p) == p);
  CHECK(t.map_point(P(2, 0)) == P(3, 0));
  CHECK(t.map_point(P(3, 0)) == P(2, 0));
  CHECK(t.map_point(P(9, 1, 4)) == P(11, -1, 4));
  HalfTwist inv(2, -1);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-40, 40);
  for (int i = 0; i < 500; ++i) {
    Point p{Q(5, 2) + make_q(coord(rng), 29), make_q(coord(rng), 31)};
    CHECK(inv.map_point(t.map_point(p)) == p);
    CHECK(t.map_point(inv.map_point(p)) == p);
  }
}

TEST_CASE("mapped polylines stay continuous") {
  HalfTwist t(1, 1);
  Polyline line{P(0, 1, 2), P(6, 1, 2)};
  Polyline img = t.map(line);
  CHECK(img.front() == line.front());
  CHECK(img.back() == line.back());
  HalfTwist inv(1, -1);
  CHECK(simplify(inv.map(img)).size() >= 2);
  for (const Point& p : inv.map(img)) CHECK(p.y == Q(1, 2));
}

TEST_CASE("standard arcs are already tight") {
  PuncturedDisk d{3};
  CurveSystem cs(d, arcs(d));
  cs.tighten();
  CHECK(cs.last_steps() == 0);
  CHECK(cs.record().crossings() == 0);
  CurveSystem again(d, cs.embed());
  CHECK(again.record() == cs.record());
}

TEST_CASE("a zig-zag bigon is removed") {
  PuncturedDisk d{1};
  EmbeddedComponent c = arc(1);
  Point J = c.center;
  c.branches[1] = {J, P(7, 1, 4), P(7, -1, 4), P(15, -1, 8), P(15, 1, 8), P(2, 1, 8), P(2, 0)};
  CurveSystem cs(d, {c});
  CHECK(cs.record().crossings() == 2);
  cs.tighten();
  CHECK(cs.record().crossings() == 0);
  CHECK(cs.last_steps() == 1);
}

TEST_CASE("a curve through a puncture is rejected") {
  PuncturedDisk d{1};
  EmbeddedComponent c = arc(1);
  c.branches[0] = {c.center, P(2, 1, 2), P(2, -1, 2), P(1, -1, 2), P(1, 0)};
  CHECK_THROWS_AS(CurveSystem(d, {c}), DegenerateInput);
}

TEST_CASE("a generator and its inverse cancel") {
  for (int n : {1, 2, 3}) {
    PuncturedDisk d{n};
    for (int k = 1; k < 2 * n; ++k)
      for (int s : {1, -1}) {
        CurveSystem a = run(d, arcs(d), {{k, s}, {k, -s}});
        CHECK(a.record() == run(d, arcs(d), {}).record());
        CurveSystem f = run(d, forks(d), {{k, s}, {k, -s}});
        CHECK(f.record() == run(d, forks(d), {}).record());
      }
  }
}

TEST_CASE("a twist exchanging the two ends of an arc fixes it") {
  PuncturedDisk d{2};
  for (int s : {1, -1}) {
    CHECK(unoriented(run(d, arcs(d), {{1, s}})) == unoriented(run(d, arcs(d), {})));
    CHECK(unoriented(run(d, arcs(d), {{3, s}})) == unoriented(run(d, arcs(d), {})));
  }
  // Exchanging the middle punctures joins 1 to 3 and 2 to 4 without crossings.
  SystemRecord r = run(d, arcs(d), {{2, 1}}).record();
  CHECK(r.crossings() == 0);
  CHECK(r.components[0].branches[1].end.puncture == 3);
  CHECK(r.components[1].branches[0].end.puncture == 2);
  CHECK(r.components[0].center_half != r.components[1].center_half);
}

TEST_CASE("braid relations hold on tightened systems") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2 + trial % 2;
    PuncturedDisk d{n};
    int strands = 2 * n;
    Word prefix = random_word(rng, strands, 3 + trial % 5);
    std::uniform_int_distribution<int> gen(1, strands - 2);
    int i = gen(rng);
    int s = (trial / 2) % 2 ? 1 : -1;
    Word lhs{{i, s}, {i + 1, s}, {i, s}};
    Word rhs{{i + 1, s}, {i, s}, {i + 1, s}};
    auto start = trial % 3 == 0 ? arcs(d) : forks(d);
    CurveSystem a = run(d, start, cat(prefix, lhs));
    CurveSystem b = run(d, start, cat(prefix, rhs));
    INFO(a.record().to_string(), "\n", b.record().to_string());
    CHECK(a.record() == b.record());
    if (strands >= 4) {
      std::uniform_int_distribution<int> g2(1, strands - 1);
      int p = g2(rng), q = g2(rng);
      if (std::abs(p - q) >= 2) {
        Word c1{{p, 1}, {q, -1}}, c2{{q, -1}, {p, 1}};
        CHECK(run(d, start, cat(prefix, c1)).record() == run(d, start, cat(prefix, c2)).record());
      }
    }
  }
}

TEST_CASE("re-reading a canonical embedding is stable") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    PuncturedDisk d{2 + trial % 2};
    CurveSystem cs = run(d, forks(d), random_word(rng, 2 * d.n, 6));
    CurveSystem again(d, cs.embed());
    again.tighten();
    CHECK(again.last_steps() == 0);
    CHECK(again.record() == cs.record());
  }
}

TEST_CASE("iteration cap is read from the environment") {
  setenv("PLATFLOER_ITER_CAP", "1", 1);
  CHECK(iteration_cap() == 1);
  PuncturedDisk d{2};
  CHECK_THROWS_AS(run(d, arcs(d), {{2, 1}, {2, 1}, {2, -1}, {2, -1}}), DegenerateInput);
  unsetenv("PLATFLOER_ITER_CAP");
  CHECK(iteration_cap() == 1000000);
}

TEST_CASE("winding numbers of a square") {
  Polyline sq{P(0, 0), P(2, 0), P(2, 2), P(0, 2)};
  CHECK(winding_number(sq, {P(1, 1)}) == 1);
  CHECK(winding_number(sq, {P(1, 1), P(3, 3)}) == 1);
  Polyline rev(sq.rbegin(), sq.rend());
  CHECK(winding_number(rev, {P(1, 1)}) == -1);
  CHECK_THROWS_AS(winding_number(sq, {P(1, 0)}), DegenerateInput);
}

TEST_CASE("tangent turning counts half revolutions") {
  // Right, up, left: a counter-clockwise half revolution.
  CHECK(turning_half_revolutions({P(0, 0), P(1, 0), P(1, 1), P(0, 1)}, P(1, 0)) == -1);
  CHECK(turning_half_revolutions({P(0, 1), P(1, 1), P(1, 0), P(0, 0)}, P(1, 0)) == 1);
  CHECK(turning_half_revolutions({P(0, 0), P(1, 0), P(2, 0)}, P(1, 0)) == 0);
  // A full loop.
  CHECK(turning_half_revolutions({P(0, 0), P(1, 0), P(1, 1), P(0, 1), P(0, -1), P(2, -1)}, P(1, 0)) == -2);
}

TEST_CASE("pairwise winding of two points swapping") {
  // Points exchange counter-clockwise: one half turn.
  std::vector<Polyline> s{{P(0, 0), P(1, -1), P(2, 0)}, {P(2, 0), P(1, 1), P(0, 0)}};
  CHECK(pairwise_winding(s) == 1);
  std::vector<Polyline> t{{P(0, 0), P(1, 1), P(2, 0)}, {P(2, 0), P(1, -1), P(0, 0)}};
  CHECK(pairwise_winding(t) == -1);
}
