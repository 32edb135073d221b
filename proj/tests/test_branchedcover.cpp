#include <doctest.h>

#include <platfloer/branchedcover/differential.hpp>
#include <platfloer/branchedcover/trigon.hpp>
#include <platfloer/errors.hpp>
#include <platfloer/forkdiagram/grading.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace platfloer;
using namespace platfloer::cover;

namespace {

// Everything the tests need about one braid, built once.
struct Pipeline {
  fork::ForkDiagram F;
  HeegaardDiagram H;
  std::vector<LiftedGenerator> lifted;
  std::vector<Tuple> gens;
  std::vector<std::string> names;

  explicit Pipeline(const braid::BraidWord& b, bool swap = false) : F(b), H(build_heegaard(F)) {
    lifted = lift_generators(H, F, swap);
    for (const auto& l : lifted) {
      gens.push_back(l.vertices);
      names.push_back(l.name);
    }
  }
  int id(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), canon(name));
    REQUIRE_MESSAGE(it != names.end(), name);
    return static_cast<int>(it - names.begin());
  }

  // Reference names list the factors in any order; ours are ordered by tine.
  std::string canon(const std::string& name) const {
    for (const std::string& n : names) {
      std::multiset<std::string> a = factors(n), b = factors(name);
      if (a == b) return n;
    }
    return name;
  }
  static std::multiset<std::string> factors(const std::string& s) {
    std::multiset<std::string> out;
    for (std::size_t i = 0; i < s.size();) {
      std::size_t j = i + 1;
      while (j < s.size() && (s[j] == '\'' || std::isdigit(static_cast<unsigned char>(s[j])))) ++j;
      out.insert(s.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::set<std::string> named(const std::vector<int>& ids) const {
    std::set<std::string> out;
    for (int g : ids) out.insert(names[g]);
    return out;
  }
  std::set<std::string> canon_set(std::initializer_list<const char*> list) const {
    std::set<std::string> out;
    for (const char* s : list) out.insert(canon(s));
    return out;
  }
};

Pipeline trefoil() { return Pipeline(braid::parse_braid("s2^3", 4)); }

std::vector<braid::BraidWord> nice_knots(int count, int strands, int max_len, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> idx(1, strands - 1), len(1, max_len), coin(0, 1);
  std::vector<braid::BraidWord> out;
  while (static_cast<int>(out.size()) < count) {
    braid::BraidWord b{strands, {}};
    for (int i = len(rng); i > 0; --i) b.letters.push_back({idx(rng), coin(rng) ? 1 : -1});
    if (!braid::plat_closure(b).is_knot()) continue;
    if (build_heegaard(fork::ForkDiagram(b)).is_nice()) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("trefoil cover: genus, Euler measure, niceness") {
  Pipeline P = trefoil();
  CHECK(P.H.genus == 2);
  CHECK(P.H.euler_total() == -2);
  CHECK(P.H.is_nice());
  CHECK(P.H.alphas.size() == 2);
  CHECK(P.H.betas.size() == 2);
  CHECK(P.H.vertices.size() == 12);
}

TEST_CASE("lifted generators are in bijection with intersection tuples") {
  Pipeline P = trefoil();
  std::vector<Tuple> sorted = P.gens;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == P.H.intersection_tuples());
  CHECK(P.gens.size() == 18);
  for (std::size_t g = 0; g < P.lifted.size(); ++g) {
    const auto& L = P.lifted[g];
    CHECK(L.bigelow == static_cast<int>(g));
    const auto& points = P.F.generators()[g].points;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& z = P.F.zpoints()[points[k]];
      CHECK(P.H.vertices[L.vertices[k]].base == z.base);
      const bool branch = P.F.base_points()[z.base].puncture;
      CHECK((L.sheets[k] == -1) == branch);
    }
  }
  // e_x and e'_x land on the two different lifts of x.
  std::map<int, std::set<int>> lifts;
  for (const auto& L : P.lifted)
    for (int v : L.vertices) lifts[P.H.vertices[v].base].insert(v);
  for (const auto& [b, vs] : lifts) CHECK(vs.size() == (P.F.base_points()[b].puncture ? 1u : 2u));
}

TEST_CASE("identity braid on two strands") {
  Pipeline P(braid::parse_braid("", 2));
  CHECK(P.H.genus == 1);
  CHECK(P.gens.size() == 2);
  DomainSolver S(P.H);
  CHECK(S.periodic().size() == 1);
  check_periodic_rank(S);
  auto cls = spinc_partition(S, P.gens);
  CHECK(cls.size() == 1);
  CHECK(P.H.is_nice());
  // Two bigons from the same corner cancel: HF of the S^2 x S^1 summand.
  auto D = differential(S, P.gens, cls);
  CHECK(D.counted.size() == 2);
  CHECK(D.targets[0].empty());
  CHECK(D.targets[1].empty());
}

TEST_CASE("genus one sphere fixture and stabilization") {
  HeegaardDiagram S3 = genus_one_sphere();
  DomainSolver S(S3);
  CHECK(S.periodic().empty());
  CHECK(S.curve_rank() == 2);
  check_periodic_rank(S);

  Pipeline P = trefoil();
  HeegaardDiagram H2 = stabilize(P.H);
  CHECK(H2.genus == 3);
  CHECK(H2.euler_total() == -4);
  std::vector<Tuple> gens2;
  const int x0 = static_cast<int>(H2.vertices.size()) - 1;
  for (Tuple t : P.gens) {
    t.push_back(x0);
    gens2.push_back(t);
  }
  std::vector<Tuple> sorted = gens2;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == H2.intersection_tuples());
  DomainSolver S1(P.H), S2(H2);
  check_periodic_rank(S2);
  CHECK(S2.periodic().size() == S1.periodic().size());
  auto c1 = spinc_partition(S1, P.gens), c2 = spinc_partition(S2, gens2);
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c1[i].members == c2[i].members);
  CHECK(differential(S1, P.gens, c1) == differential(S2, gens2, c2));
  // R(x0 y) = R(y): the relative filtration is unchanged.
  auto T = fork::grade(P.F);
  std::vector<Q> R;
  for (const auto& r : T.rows) R.push_back(r.R);
  for (std::size_t i = 0; i < c1.size(); ++i)
    CHECK(relative_rho(S1, P.gens, c1[i], R, P.names) == relative_rho(S2, gens2, c2[i], R, P.names));
}

TEST_CASE("periodic domains: rank one with a sign change") {
  Pipeline P = trefoil();
  DomainSolver S(P.H);
  REQUIRE(S.periodic().size() == 1);
  check_periodic_rank(S);
  const Domain& p = S.periodic()[0];
  CHECK(p[P.H.z] == 0);
  CHECK(*std::min_element(p.begin(), p.end()) < 0);
  CHECK(*std::max_element(p.begin(), p.end()) > 0);
  for (const Tuple& x : P.gens) CHECK(S.maslov4(p, x, x) == 0);
}

TEST_CASE("trefoil Spin^c partition") {
  Pipeline P = trefoil();
  DomainSolver S(P.H);
  auto cls = spinc_partition(S, P.gens);
  REQUIRE(cls.size() == 3);
  std::set<std::set<std::string>> got;
  for (const auto& c : cls) {
    CHECK(c.members.size() == 6);
    got.insert(P.named(c.members));
  }
  std::set<std::set<std::string>> want{P.canon_set({"x2x3", "ut'", "u't", "s'v", "sv'", "x1x4"}),
                                       P.canon_set({"ut", "s'v'", "sx3", "vx2", "u'x1", "t'x4"}),
                                       P.canon_set({"u't'", "v'x2", "s'x3", "sv", "tx4", "ux1"})};
  CHECK(got == want);
}

TEST_CASE("trefoil differential") {
  Pipeline P = trefoil();
  DomainSolver S(P.H);
  auto cls = spinc_partition(S, P.gens);
  auto D = differential(S, P.gens, cls);
  auto d = [&](const char* x) { return P.named(D.targets[P.id(x)]); };
  CHECK(d("x2x3") == P.canon_set({"ut'", "u't"}));
  CHECK(d("ut") == P.canon_set({"sx3", "vx2"}));
  CHECK(d("ut'") == P.canon_set({"sv'", "s'v"}));
  CHECK(d("u't") == P.canon_set({"sv'", "s'v"}));
  CHECK(d("u't'") == P.canon_set({"s'x3", "v'x2"}));
  for (const char* x : {"s'v'", "sx3", "vx2"}) CHECK(d(x) == P.canon_set({"u'x1", "t'x4"}));
  for (const char* x : {"v'x2", "s'x3", "sv"}) CHECK(d(x) == P.canon_set({"tx4", "ux1"}));
  for (const char* x : {"s'v", "sv'", "u'x1", "t'x4", "x1x4", "tx4", "ux1"}) CHECK(d(x).empty());

  CHECK(D.square().empty());
  CHECK(D == differential_reference(S, P.gens));
  // s'v is hit by two rectangles into x1x4 that cancel.
  int into = 0;
  for (const auto& c : D.counted) into += c.x == P.id("s'v") && c.y == P.id("x1x4");
  CHECK(into == 2);
}

TEST_CASE("differential is independent of the sheet convention") {
  Pipeline A = trefoil();
  Pipeline B(braid::parse_braid("s2^3", 4), true);
  DomainSolver SA(A.H), SB(B.H);
  auto DA = differential(SA, A.gens, spinc_partition(SA, A.gens));
  auto DB = differential(SB, B.gens, spinc_partition(SB, B.gens));
  CHECK(DA == DB);
}

TEST_CASE("connecting domains and Maslov index") {
  Pipeline P = trefoil();
  DomainSolver S(P.H);
  const Tuple& x = P.gens[P.id("x2x3")];
  auto zero = S.connecting_domain(x, x);
  REQUIRE(zero);
  // The zero domain up to the periodic generator.
  CHECK(S.maslov(*zero, x, x) == 0);

  auto cls = spinc_partition(S, P.gens);
  auto D = differential(S, P.gens, cls);
  for (const auto& c : D.counted) {
    CHECK(S.maslov(c.domain, P.gens[c.x], P.gens[c.y]) == 1);
    auto sol = S.connecting_domain(P.gens[c.x], P.gens[c.y]);
    REQUIRE(sol);
    CHECK(S.maslov(*sol, P.gens[c.x], P.gens[c.y]) == 1);
  }
  const int y = P.id("ut'");
  bool counted = false;
  for (const auto& c : D.counted)
    if (c.x == P.id("x2x3") && c.y == y) {
      counted = true;
      CHECK(S.euler4(c.domain) == 0);  // both points move: a rectangle
    }
  CHECK(counted);
  CHECK_FALSE(S.connecting_domain(x, P.gens[P.id("ut")]));
}

TEST_CASE("trigon index vanishes on type I and type II domains") {
  for (int g = 1; g <= 4; ++g) {
    TrigonIndex t = trigon_index(type_one_trigon(g), g);
    CHECK(t.euler == make_q(g, 4));
    CHECK(t.mu_x == make_q(g, 4));
    CHECK(t.mu_y == make_q(g, 4));
    CHECK(t.ac == make_q(-g, 4));
    CHECK(t.total() == 0);
  }
  for (int g = 2; g <= 4; ++g)
    for (Curve c : {Curve::Alpha, Curve::Beta, Curve::Gamma}) {
      TrigonIndex t = trigon_index(type_two_trigon(g, c), g);
      CAPTURE(g);
      CAPTURE(static_cast<int>(c));
      CHECK(t.euler == make_q(g - 2, 4));
      CHECK(t.total() == 0);
    }
  // One triangle alone does not close up a genus-two class.
  CHECK(trigon_index(type_one_trigon(1), 2).total() == make_q(-1, 2));
}

TEST_CASE("anti-diagonal count") {
  CHECK(nabla_count(make_q(7, 2), make_q(5, 2), 1) == 0);
  CHECK(nabla_count(Q(3), Q(0), 1) == 1);
  CHECK(nabla_count(Q(0), Q(0), 0) == 0);
  CHECK_THROWS_AS(nabla_count(Q(1), Q(0), 0), InternalInconsistency);
  CHECK_THROWS_AS(nabla_count(make_q(1, 2), Q(0), 0), InternalInconsistency);
}

TEST_CASE("relative rho on the trefoil") {
  Pipeline P = trefoil();
  DomainSolver S(P.H);
  auto cls = spinc_partition(S, P.gens);
  auto T = fork::grade(P.F);
  std::vector<Q> R;
  for (const auto& r : T.rows) R.push_back(r.R);
  auto D = differential(S, P.gens, cls);
  for (const auto& c : cls) {
    auto rho = relative_rho(S, P.gens, c, R, P.names);
    int anchor = c.members.front();
    for (int g : c.members)
      if (P.names[g] < P.names[anchor]) anchor = g;
    CHECK(rho.at(anchor) == 0);
    // The differential lowers R by exactly the index, so rho is flat.
    for (const auto& [g, v] : rho) CHECK(v == 0);
  }
  for (const auto& c : D.counted) {
    const long k = nabla_count(R[c.x], R[c.y], 1);
    CHECK(k == 0);
  }
}

TEST_CASE("non-nice diagrams are refused with a census") {
  Pipeline P(braid::parse_braid("s4^-1 s2", 6));
  CHECK_FALSE(P.H.is_nice());
  CHECK(P.H.census().find("6 corners") != std::string::npos);
  for (int r : P.H.bad_regions()) CHECK(P.H.regions[r].corners == 6);
  DomainSolver S(P.H);
  check_periodic_rank(S);
  try {
    differential(S, P.gens, spinc_partition(S, P.gens));
    FAIL("expected NotNice");
  } catch (const NotNice& e) {
    CHECK(e.census() == P.H.census());
  }
}

TEST_CASE("random nice knots: parity, positivity, classes, rank") {
  for (int strands : {4, 6})
    for (const auto& b : nice_knots(15, strands, 8, 101u + strands)) {
      CAPTURE(braid::print_braid(b));
      Pipeline P(b);
      DomainSolver S(P.H);
      check_periodic_rank(S);
      CHECK(P.H.euler_total() == 2 - 2 * P.H.genus);
      auto cls = spinc_partition(S, P.gens);
      std::vector<int> class_of(P.gens.size());
      for (const auto& c : cls)
        for (int g : c.members) class_of[g] = c.id;
      auto D = differential(S, P.gens, cls);
      CHECK(D.square().empty());
      CHECK(D == differential_reference(S, P.gens));
      auto T = fork::grade(P.F);
      for (const auto& c : D.counted) {
        CHECK(class_of[c.x] == class_of[c.y]);
        const Q drop = T.rows[c.x].R - T.rows[c.y].R;
        CHECK(drop.get_den() == 1);
        CHECK(drop.get_num() % 2 != 0);
        CHECK(nabla_count(T.rows[c.x].R, T.rows[c.y].R, 1) >= 0);
      }
      Pipeline swapped(b, true);
      DomainSolver S2(swapped.H);
      CHECK(D == differential(S2, swapped.gens, spinc_partition(S2, swapped.gens)));
    }
}

TEST_CASE("JSON dump") {
  Pipeline P = trefoil();
  auto j = P.H.to_json();
  CHECK(j["genus"] == 2);
  CHECK(j["alpha"].size() == 2);
  CHECK(j["beta"].size() == 2);
  CHECK(j["regions"].size() == P.H.regions.size());
  CHECK(j["regions"][P.H.z]["name"] == "z");
}
