#include <doctest.h>

#include <platfloer/braidcore/braid.hpp>
#include <platfloer/errors.hpp>

#include <random>

using namespace platfloer;
using namespace platfloer::braid;

namespace {

BraidWord random_word(std::mt19937& rng, int strands, int len) {
  BraidWord b;
  b.strands = strands;
  std::uniform_int_distribution<int> idx(1, strands - 1), coin(0, 1);
  for (int i = 0; i < len; ++i) b.letters.push_back({idx(rng), coin(rng) ? 1 : -1});
  return b;
}

}  // namespace

TEST_CASE("parse_braid expands powers") {
  CHECK(parse_braid("", 4).letters.empty());
  BraidWord t = parse_braid("s2^3", 4);
  CHECK(t.letters == std::vector<Letter>{{2, 1}, {2, 1}, {2, 1}});
  BraidWord u = parse_braid("s1^-1 s3", 4);
  CHECK(u.letters == std::vector<Letter>{{1, -1}, {3, 1}});
  CHECK(parse_braid("s1s2", 4).letters.size() == 2);
}

TEST_CASE("parse_braid rejects bad input") {
  CHECK_THROWS_AS(parse_braid("s4", 4), InvalidBraid);
  CHECK_THROWS_AS(parse_braid("s0", 4), InvalidBraid);
  CHECK_THROWS_AS(parse_braid("s1", 3), InvalidBraid);
  CHECK_THROWS_AS(parse_braid("x1", 4), ParseError);
  CHECK_THROWS_AS(parse_braid("s", 4), ParseError);
  CHECK_THROWS_AS(parse_braid("s1^", 4), ParseError);
  CHECK_THROWS_AS(parse_braid("s1q", 4), ParseError);
}

TEST_CASE("printer round trip") {
  CHECK(print_braid(parse_braid("s2 s2  s2", 4)) == "s2^3");
  CHECK(print_braid(parse_braid("s1^-2 s3 s3^-1", 4)) == "s1^-2 s3 s3^-1");
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    BraidWord b = random_word(rng, 6, i % 12);
    CHECK(parse_braid(print_braid(b), 6) == b);
    CHECK(braid_from_json(to_json(b)) == b);
  }
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(parse_braid("s2^3", 4)) == 3);
  CHECK(exponent_sum(parse_braid("", 4)) == 0);
  CHECK(exponent_sum(parse_braid("s1 s1^-1", 2)) == 0);
}

TEST_CASE("plat closures") {
  PlatDiagram t = plat_closure(parse_braid("s2^3", 4));
  CHECK(t.is_knot());
  CHECK(t.writhe == -3);
  PlatDiagram u = plat_closure(parse_braid("", 2));
  CHECK(u.is_knot());
  CHECK(u.writhe == 0);
  CHECK(plat_closure(parse_braid("", 4)).components == 2);
  CHECK(plat_closure(parse_braid("s2", 4)).components == 1);
  CHECK(plat_closure(parse_braid("s2^2", 4)).components == 2);
}

TEST_CASE("writhe does not depend on the traced orientation") {
  std::mt19937 rng(11);
  int knots = 0;
  for (int i = 0; i < 300; ++i) {
    BraidWord b = random_word(rng, i % 2 ? 4 : 6, 1 + i % 9);
    PlatDiagram d = plat_closure(b);
    PlatDiagram r = plat_closure_reversed(b);
    CHECK(d.components == r.components);
    if (!d.is_knot()) continue;
    ++knots;
    CHECK(d.writhe == r.writhe);
    for (std::size_t s = 0; s < d.strand_direction.size(); ++s)
      CHECK(d.strand_direction[s] == -r.strand_direction[s]);
  }
  CHECK(knots > 50);
}

TEST_CASE("s_R values") {
  CHECK(shift_sR(parse_braid("s2^3", 4)) == Q(1, 2));
  CHECK(shift_sR(parse_braid("", 2)) == Q(-1, 2));
  CHECK(shift_sR(parse_braid("s2^3 s4", 6)) == Q(1, 2));
  CHECK_THROWS_AS(shift_sR(parse_braid("", 4)), NotAKnot);
}

TEST_CASE("Birman moves") {
  BraidWord t = parse_braid("s2^3", 4);
  CHECK(birman_move(t, parse_move("A")) == parse_braid("s2^3 s1", 4));
  CHECK(birman_move(t, parse_move("B")) == parse_braid("s2^3 s2 s1^2 s2", 4));
  CHECK(birman_move(t, parse_move("B^-1")) == parse_braid("s2^3 s2^-1 s1^-2 s2^-1", 4));
  CHECK(birman_move(t, parse_move("C1")) == parse_braid("s2^3 s2 s1 s3 s2", 4));
  BraidWord st = birman_move(t, parse_move("stab"));
  CHECK(st == parse_braid("s2^3 s4", 6));
  CHECK(birman_move(st, parse_move("destab")) == t);
  CHECK_THROWS_AS(birman_move(t, parse_move("C2")), MoveError);
  CHECK_THROWS_AS(birman_move(t, parse_move("C0")), MoveError);
  CHECK_THROWS_AS(birman_move(t, parse_move("destab")), MoveError);
  CHECK_THROWS_AS(parse_move("D"), ParseError);
}

TEST_CASE("mirror") {
  CHECK(mirror_braid(parse_braid("s2^3", 4)) == parse_braid("s2^-3", 4));
  CHECK(mirror_braid(parse_braid("", 4)) == parse_braid("", 4));
  CHECK(mirror_braid(parse_braid("s1 s3^-1", 4)) == parse_braid("s3^-1 s1", 4));
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    BraidWord b = random_word(rng, 6, i % 10);
    CHECK(exponent_sum(mirror_braid(b)) == -exponent_sum(b));
    CHECK(mirror_braid(mirror_braid(b)) == b);
  }
}

TEST_CASE("s_R under Birman moves") {
  std::mt19937 rng(5);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 100; ++i) {
    int strands = i % 2 ? 4 : 6;
    BraidWord b = random_word(rng, strands, 1 + i % 8);
    if (!plat_closure(b).is_knot()) continue;
    ++tested;
    Q s = shift_sR(b);
    for (int p : {1, -1}) {
      CHECK(shift_sR(birman_move(b, {MoveKind::A, p, 1})) == s);
      CHECK(shift_sR(birman_move(b, {MoveKind::B, p, 1})) == s + p);
      for (int c = 1; c < b.n(); ++c) CHECK(shift_sR(birman_move(b, {MoveKind::C, p, c})) == s + p);
    }
    CHECK(shift_sR(birman_move(b, {MoveKind::Stabilize, 1, 1})) == s);
    CHECK(shift_sR(mirror_braid(b)) == -s - b.n());
  }
  CHECK(tested == 100);
}
