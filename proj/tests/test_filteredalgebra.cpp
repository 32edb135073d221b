#include <doctest.h>

#include <platfloer/errors.hpp>
#include <platfloer/filteredalgebra/complex.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace platfloer;
using namespace platfloer::filt;

namespace {

using Matrix = std::vector<std::vector<int>>;  // rows x cols over F_2

long rank2(Matrix m) {
  long r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<long>(m.size()); ++c) {
    std::size_t p = r;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != static_cast<std::size_t>(r) && m[i][c])
        for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
    ++r;
  }
  return r;
}

Matrix dense(const FilteredComplex& c) {
  Matrix m(c.size(), std::vector<int>(c.size(), 0));
  for (std::size_t x = 0; x < c.size(); ++x)
    for (int y : c.d[x]) m[y][x] ^= 1;
  return m;
}

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix s(rows.size(), std::vector<int>(cols.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s[i][j] = m[rows[i]][cols[j]];
  return s;
}

// E_1 from the level-preserving blocks, and E_infinity as the associated
// graded of H(C) filtered by images of H(F_p), both by plain rank counts.
std::map<Q, long> oracle_e1(const FilteredComplex& c) {
  const Matrix m = dense(c);
  std::map<Q, std::vector<int>> at;
  for (std::size_t x = 0; x < c.size(); ++x) at[c.level[x]].push_back(static_cast<int>(x));
  std::map<Q, long> out;
  for (const auto& [l, xs] : at) {
    long k = static_cast<long>(xs.size()) - 2 * rank2(submatrix(m, xs, xs));
    if (k) out[l] = k;
  }
  return out;
}

std::map<Q, long> oracle_infinity(const FilteredComplex& c) {
  const Matrix m = dense(c);
  std::vector<int> all(c.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  const long rank_d = rank2(m);
  std::set<Q> levels(c.level.begin(), c.level.end());
  std::map<Q, long> out;
  long prev = 0;
  for (const Q& p : levels) {
    std::vector<int> in, above;
    for (int x : all) (c.level[x] <= p ? in : above).push_back(x);
    const long cycles = static_cast<long>(in.size()) - rank2(submatrix(m, all, in));
    const long boundaries = rank_d - rank2(submatrix(m, above, all));
    const long image = cycles - boundaries;
    if (image != prev) out[p] = image - prev;
    prev = image;
  }
  return out;
}

// A filtered complex conjugated from a direct sum of pairs and singletons by
// level-preserving elementary changes of basis.
FilteredComplex random_complex(std::mt19937& rng, int n, const std::vector<Q>& grid) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(grid.size()) - 1), coin(0, 2);
  FilteredComplex c;
  for (int i = 0; i < n; ++i) {
    c.labels.push_back("g" + std::to_string(i));
    c.level.push_back(grid[pick(rng)]);
  }
  Matrix m(n, std::vector<int>(n, 0));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i + 1 < n; i += 2)
    if (coin(rng)) {
      int a = order[i], b = order[i + 1];
      if (c.level[a] < c.level[b]) std::swap(a, b);
      m[b][a] = 1;
    }
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int step = 0; step < 4 * n; ++step) {
    const int x = any(rng), y = any(rng);
    if (x == y || c.level[y] > c.level[x]) continue;
    // New basis vector e_x + e_y: column x gains column y, then row y gains row x.
    for (int r = 0; r < n; ++r) m[r][x] ^= m[r][y];
    for (int k = 0; k < n; ++k) m[y][k] ^= m[x][k];
  }
  c.d.assign(n, {});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (m[y][x]) c.d[x].push_back(y);
  return c;
}

FilteredComplex fixture(std::vector<Q> levels, std::vector<std::vector<int>> d) {
  FilteredComplex c;
  for (std::size_t i = 0; i < levels.size(); ++i) c.labels.push_back("g" + std::to_string(i));
  c.level = std::move(levels);
  c.d = std::move(d);
  return c;
}

}  // namespace

TEST_CASE("verification of filtered complexes") {
  CHECK_NOTHROW(verify_filtered(fixture({0, 1}, {{}, {0}})));
  CHECK_NOTHROW(verify_filtered(fixture({0, 0, 0}, {{}, {}, {}})));
  CHECK_THROWS_AS(verify_filtered(fixture({1, 0}, {{}, {0}})), FiltrationViolation);
  // d(g2) = g1, d(g1) = g0: d^2 != 0.
  CHECK_THROWS_AS(verify_filtered(fixture({0, 1, 2}, {{}, {0}, {1}})), NotADifferential);
}

TEST_CASE("level step and decomposition") {
  FilteredComplex c = fixture({make_q(1, 2), make_q(3, 2), make_q(5, 2)}, {{}, {}, {0}});
  CHECK(level_step(c) == 1);
  auto parts = decompose(c);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].drop == 2);
  CHECK(parts[0].entries == std::vector<std::pair<int, int>>{{2, 0}});

  FilteredComplex mixed = fixture({0, make_q(1, 3), 1}, {{}, {0}, {}});
  CHECK(level_step(mixed) == make_q(1, 3));
  CHECK(decompose(mixed).at(0).drop == 1);
  CHECK(level_step(fixture({2, 2}, {{}, {0}})) == 1);
}

TEST_CASE("pages of small complexes") {
  SUBCASE("zero differential") {
    FilteredComplex c = fixture({0, 1, 1}, {{}, {}, {}});
    SpectralSequence ss = pages(c);
    CHECK(ss.pages.front().dims == ss.infinity().dims);
    CHECK(ss.infinity().dims == std::map<Q, long>{{0, 1}, {1, 2}});
  }
  SUBCASE("acyclic pair at one level") {
    SpectralSequence ss = pages(fixture({1, 1}, {{}, {0}}));
    CHECK(ss.infinity().total() == 0);
    CHECK(ss.stable() == 1);
  }
  SUBCASE("a d_2 survives to E_2 only") {
    FilteredComplex c = fixture({0, 2}, {{}, {0}});
    SpectralSequence ss = pages(c);
    CHECK(ss.step == 2);
    CHECK(ss.pages[1].dims == std::map<Q, long>{{0, 1}, {2, 1}});
    CHECK(ss.infinity().total() == 0);
    CHECK_FALSE(is_rho_degenerate(c, ss));
  }
  SUBCASE("empty complex") {
    FilteredComplex c;
    SpectralSequence ss = pages(c);
    CHECK(ss.infinity().total() == 0);
    CHECK(fingerprint(ss) == fingerprint(pages(fixture({1, 1}, {{}, {0}}))));
    CHECK(homology_dim(c) == 0);
  }
}

TEST_CASE("degeneracy needs collapse at E_1 and a single level") {
  // Two cycles at different levels: collapses, but E_infinity spans two levels.
  FilteredComplex two = fixture({0, 1}, {{}, {}});
  CHECK_FALSE(is_rho_degenerate(two, pages(two)));
  // A cancelling pair plus a cycle, all at one level.
  FilteredComplex one = fixture({3, 3, 3}, {{}, {0}, {}});
  CHECK(is_rho_degenerate(one, pages(one)));
  // With Maslov gradings, d must lower them by one.
  one.maslov = std::vector<long>{0, 1, 5};
  CHECK(is_rho_degenerate(one, pages(one)));
  one.maslov = std::vector<long>{0, 2, 5};
  CHECK_THROWS_AS(is_rho_degenerate(one, pages(one)), InternalInconsistency);
}

TEST_CASE("pages agree with rank oracles on random complexes") {
  std::mt19937 rng(4242);
  const std::vector<std::vector<Q>> grids{{0, 1, 2, 3}, {make_q(1, 2), make_q(3, 2), make_q(7, 2)}, {0, make_q(2, 3), 2}};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 13;
    FilteredComplex c = random_complex(rng, n, grids[trial % grids.size()]);
    CAPTURE(trial);
    REQUIRE_NOTHROW(verify_filtered(c));
    SpectralSequence ss = pages(c);
    REQUIRE(ss.pages.size() == ss.ranks.size());
    CHECK(ss.pages[0].total() == n);
    if (ss.pages.size() > 1) CHECK(ss.pages[1].dims == oracle_e1(c));
    CHECK(ss.infinity().dims == oracle_infinity(c));
    CHECK(ss.infinity().total() == homology_dim(c));
    CHECK(homology_dim(c) == n - 2 * rank2(dense(c)));
    for (std::size_t r = 0; r + 1 < ss.pages.size(); ++r)
      CHECK(ss.pages[r].total() - ss.pages[r + 1].total() == 2 * ss.ranks[r]);
    CHECK(ss.ranks.back() == 0);
  }
}

TEST_CASE("fingerprints ignore relabelling and overall shifts") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    FilteredComplex c = random_complex(rng, 3 + trial % 8, {0, 1, 2});
    const std::string fp = fingerprint(pages(c));

    FilteredComplex shifted = c;
    for (auto& l : shifted.level) l += make_q(5, 2);
    CHECK(fingerprint(pages(shifted)) == fp);

    // Reverse the generator order.
    const int n = static_cast<int>(c.size());
    FilteredComplex rev;
    for (int x = n - 1; x >= 0; --x) {
      rev.labels.push_back(c.labels[x]);
      rev.level.push_back(c.level[x]);
      std::vector<int> t;
      for (int y : c.d[x]) t.push_back(n - 1 - y);
      rev.d.push_back(t);
    }
    CHECK(fingerprint(pages(rev)) == fp);

    FilteredComplex other = random_complex(rng, 4, {0, 1});
    const std::vector<SpectralSequence> ab{pages(c), pages(other)}, ba{pages(other), pages(shifted)};
    CHECK(fingerprint(ab) == fingerprint(ba));
  }
  CHECK(fingerprint(std::vector<SpectralSequence>{}).empty());
}

TEST_CASE("json form lists every page") {
  auto j = to_json(pages(fixture({0, 2}, {{}, {0}})));
  CHECK(j["step"] == "2");
  REQUIRE(j["pages"].size() >= 2);
  CHECK(j["pages"][0]["levels"].size() == 2);
  CHECK(j["pages"].back()["levels"].empty());
}
