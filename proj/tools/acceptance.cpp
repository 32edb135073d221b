// Runs every acceptance check and prints one PASS/FAIL line each.
#include <platfloer/branchedcover/trigon.hpp>
#include <platfloer/cli/pipeline.hpp>
#include <platfloer/errors.hpp>
#include <platfloer/forkdiagram/fork.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace platfloer;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Generator names are unordered products of point names; sort the factors.
std::string canon(const std::string& name) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < name.size();) {
    std::size_t j = i + 1;
    while (j < name.size() && (std::isdigit(static_cast<unsigned char>(name[j])) || name[j] == '\'')) ++j;
    parts.push_back(name.substr(i, j - i));
    i = j;
  }
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& p : parts) s += p;
  return s;
}

using NameTable = std::map<std::string, std::set<std::string>>;

NameTable table(std::initializer_list<std::pair<const char*, std::vector<const char*>>> rows) {
  NameTable out;
  for (const auto& [k, names] : rows)
    for (const char* n : names) out[k].insert(canon(n));
  return out;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Corpus {
  std::vector<braid::BraidWord> knots;   // every knotted braid drawn
  std::vector<braid::BraidWord> nice;    // those with nice diagrams
};

Corpus draw_corpus(int strands, int max_len, int nice_wanted, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> idx(1, strands - 1), len(1, max_len), coin(0, 1);
  Corpus c;
  while (static_cast<int>(c.nice.size()) < nice_wanted && c.knots.size() < 50u * nice_wanted) {
    braid::BraidWord b{strands, {}};
    for (int i = len(rng); i > 0; --i) b.letters.push_back({idx(rng), coin(rng) ? 1 : -1});
    if (!braid::plat_closure(b).is_knot()) continue;
    c.knots.push_back(b);
    if (cover::build_heegaard(fork::ForkDiagram(b)).is_nice()) c.nice.push_back(b);
  }
  return c;
}

std::string q(const Q& v) { return to_string(v); }

class Acceptance {
public:
  Acceptance() : trefoil_(braid::parse_braid("s2^3", 4)) {}

  int run() {
    report(1, "trefoil grading tables", [&] { return trefoil_tables(); });
    report(2, "trefoil s_R", [&] { return shift(); });
    report(3, "trefoil differential", [&] { return trefoil_differential(); });
    report(4, "trefoil Spin^c partition", [&] { return trefoil_classes(); });
    report(5, "trefoil homology and degeneracy", [&] { return trefoil_homology(); });
    report(6, "3-gon index formula", [&] { return trigons(); });
    draw();
    report(7, "R-drop parity and positivity", [&] { return parity(); });
    report(8, "R stability over doubled pairs", [&] { return stability(); });
    report(9, "move invariance of page fingerprints", [&] { return moves(); });
    report(10, "braid-relation fuzz on tightened records", [&] { return fuzz(); });
    report(11, "periodic-domain rank oracle", [&] { return periodic(); });
    std::cout << passed_ << "/11 criteria passed\n";
    return passed_ == 11 ? 0 : 1;
  }

private:
  void report(int n, const char* title, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    passed_ += v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << n << "] " << title << ": " << v.detail << std::endl;
  }

  app::Analysis& trefoil() {
    if (!trefoil_analysis_) trefoil_analysis_ = std::make_unique<app::Analysis>(trefoil_);
    return *trefoil_analysis_;
  }

  int id(const app::FloerData& f, const std::string& name) const {
    for (std::size_t g = 0; g < f.names.size(); ++g)
      if (canon(f.names[g]) == canon(name)) return static_cast<int>(g);
    throw std::runtime_error("no generator " + name);
  }

  Verdict trefoil_tables() {
    const auto t0 = Clock::now();
    fork::ForkDiagram F(trefoil_);
    const fork::GradingTable t = fork::grade(F);
    auto zt = [&](const std::vector<long>& v) {
      NameTable out;
      for (std::size_t z = 0; z < v.size(); ++z) out[std::to_string(v[z])].insert(F.zpoints()[z].name);
      return out;
    };
    auto gt = [&](auto field) {
      NameTable out;
      for (std::size_t g = 0; g < t.rows.size(); ++g) out[field(t.rows[g])].insert(canon(F.generators()[g].name));
      return out;
    };
    auto num = [](long v) { return std::to_string(v); };
    const NameTable qstar = table({{"0", {"x1", "v", "x4"}},
                                   {"1", {"v'"}},
                                   {"2", {"x3", "t", "u", "s"}},
                                   {"3", {"t'", "u'", "s'"}},
                                   {"4", {"x2"}}});
    const NameTable pstar =
        table({{"0", {"x1", "x4"}}, {"1", {"s", "v"}}, {"2", {"s'", "t", "u", "v'"}}, {"3", {"t'", "x2", "x3", "u'"}}});
    const NameTable T = table({{"0", {"x1x4", "x1u", "x1u'", "tx4", "t'x4"}},
                               {"1", {"x2v", "x2v'", "sx3", "s'x3", "sv", "s'v", "sv'", "s'v'"}},
                               {"2", {"tu", "t'u", "tu'", "t'u'"}},
                               {"3", {"x2x3"}}});
    const NameTable QP = table({{"0", {"x1x4"}},
                                {"2", {"x1u", "tx4", "sv"}},
                                {"3", {"x1u'", "t'x4", "s'v", "sv'"}},
                                {"4", {"x2v", "sx3", "s'v'", "tu"}},
                                {"5", {"x2v'", "s'x3", "t'u", "tu'"}},
                                {"6", {"x2x3", "t'u'"}}});
    std::map<std::string, int> R;
    for (const auto& r : t.rows) ++R[q(r.R)];
    const std::map<std::string, int> R_want{{"1/2", 5}, {"3/2", 8}, {"5/2", 4}, {"7/2", 1}};

    std::vector<std::string> bad;
    if (F.generators().size() != 18) bad.push_back("generator count");
    if (zt(t.q_star) != qstar) bad.push_back("Q*");
    if (zt(t.p_star) != pstar) bad.push_back("P*");
    if (gt([&](const auto& r) { return num(r.T); }) != T) bad.push_back("T");
    if (gt([&](const auto& r) { return num(r.Q); }) != QP) bad.push_back("Q");
    if (gt([&](const auto& r) { return num(r.P); }) != QP) bad.push_back("P");
    if (gt([&](const auto& r) { return num(r.Rtilde); }) != T) bad.push_back("R~");
    if (R != R_want) bad.push_back("R");
    if (t.rows[F.find_generator("x2x3")].R != make_q(7, 2)) bad.push_back("R(x2x3)");
    const double s = seconds_since(t0);
    if (s >= 5) bad.push_back("runtime");
    std::ostringstream d;
    d << "18 generators, Q*, P*, T, Q, P, R~, R tables";
    for (const auto& b : bad) d << " [" << b << " differs]";
    d << ", " << s << " s";
    return {bad.empty(), d.str()};
  }

  Verdict shift() {
    const Q s = fork::grade(fork::ForkDiagram(trefoil_)).sR;
    return {s == make_q(1, 2), "s_R = " + q(s)};
  }

  Verdict trefoil_differential() {
    const auto t0 = Clock::now();
    const app::FloerData& f = trefoil().floer();
    const std::map<std::string, std::vector<const char*>> want{
        {"x2x3", {"ut'", "u't"}},        {"ut", {"sx3", "vx2"}},          {"ut'", {"sv'", "s'v"}},
        {"u't", {"sv'", "s'v"}},         {"u't'", {"s'x3", "v'x2"}},      {"s'v'", {"u'x1", "t'x4"}},
        {"sx3", {"u'x1", "t'x4"}},       {"vx2", {"u'x1", "t'x4"}},       {"v'x2", {"tx4", "ux1"}},
        {"s'x3", {"tx4", "ux1"}},        {"sv", {"tx4", "ux1"}},          {"s'v", {}},
        {"sv'", {}},                     {"u'x1", {}},                    {"t'x4", {}},
        {"x1x4", {}},                    {"tx4", {}},                     {"ux1", {}}};
    int wrong = 0, nonzero = 0;
    for (const auto& [x, ys] : want) {
      std::set<std::string> got, exp;
      for (int y : f.d.targets[id(f, x)]) got.insert(canon(f.names[y]));
      for (const char* y : ys) exp.insert(canon(y));
      wrong += got != exp;
      nonzero += static_cast<int>(got.size());
    }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << 18 - wrong << "/18 rows match, " << nonzero << " nonzero entries, " << s << " s";
    return {wrong == 0 && want.size() == f.names.size() && s < 30, d.str()};
  }

  Verdict trefoil_classes() {
    const app::FloerData& f = trefoil().floer();
    std::set<std::set<std::string>> got, want;
    for (const auto& c : f.classes) {
      std::set<std::string> m;
      for (int g : c.members) m.insert(canon(f.names[g]));
      got.insert(m);
    }
    for (const auto& list : std::vector<std::vector<const char*>>{{"x2x3", "ut'", "u't", "s'v", "sv'", "x1x4"},
                                                                 {"ut", "s'v'", "sx3", "vx2", "u'x1", "t'x4"},
                                                                 {"u't'", "v'x2", "s'x3", "sv", "tx4", "ux1"}}) {
      std::set<std::string> m;
      for (const char* n : list) m.insert(canon(n));
      want.insert(m);
    }
    return {got == want, std::to_string(f.classes.size()) + " classes" + (got == want ? ", members match" : ", members differ")};
  }

  Verdict trefoil_homology() {
    const app::FloerData& f = trefoil().floer();
    const auto& inf = f.by_R.infinity().dims;
    const std::map<Q, long> want{{make_q(1, 2), 3}, {make_q(3, 2), 3}};
    std::ostringstream d;
    d << "total " << f.by_R.infinity().total() << ",";
    for (const auto& [l, k] : inf) d << " R " << q(l) << ": " << k;
    d << ", degenerate " << (f.degenerate ? "true" : "false");
    return {std::map<Q, long>(inf.begin(), inf.end()) == want && f.degenerate, d.str()};
  }

  Verdict trigons() {
    int bad = 0, count = 0;
    for (int g = 1; g <= 4; ++g) {
      bad += cover::trigon_index(cover::type_one_trigon(g), g).total() != 0, ++count;
      if (g < 2) continue;
      for (auto c : {cover::Curve::Alpha, cover::Curve::Beta, cover::Curve::Gamma})
        bad += cover::trigon_index(cover::type_two_trigon(g, c), g).total() != 0, ++count;
    }
    return {bad == 0, std::to_string(count - bad) + "/" + std::to_string(count) + " fixtures (genus 1..4) at index 0"};
  }

  void draw() {
    for (auto [strands, len, wanted, seed] : {std::tuple{4, 9, 60, 404u}, std::tuple{6, 7, 45, 606u}}) {
      Corpus c = draw_corpus(strands, len, wanted, seed);
      corpus_.knots.insert(corpus_.knots.end(), c.knots.begin(), c.knots.end());
      corpus_.nice.insert(corpus_.nice.end(), c.nice.begin(), c.nice.end());
    }
  }

  Verdict parity() {
    long pairs = 0, violations = 0;
    for (const auto& b : corpus_.nice) {
      app::Analysis a(b);
      const app::FloerData& f = a.floer();
      for (const auto& c : f.d.counted) {
        ++pairs;
        const Q drop = f.R[c.x] - f.R[c.y];
        bool ok = drop.get_den() == 1 && mpz_odd_p(drop.get_num_mpz_t()) && drop > 0;
        try {
          ok = ok && cover::nabla_count(f.R[c.x], f.R[c.y], 1) >= 0;
        } catch (const Error&) {
          ok = false;
        }
        violations += !ok;
      }
    }
    std::ostringstream d;
    d << corpus_.nice.size() << " nice knots, " << pairs << " counted disks, " << violations << " violations";
    return {corpus_.nice.size() >= 100 && violations == 0, d.str()};
  }

  Verdict stability() {
    long pairs = 0, violations = 0;
    for (const auto& b : corpus_.knots) {
      fork::ForkDiagram F(b);
      const fork::GradingTable t = fork::grade(F);
      const auto& zs = F.zpoints();
      const auto& gens = F.generators();
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t h = g + 1; h < gens.size(); ++h) {
          int diffs = 0, k = -1;
          for (std::size_t i = 0; i < gens[g].points.size(); ++i)
            if (gens[g].points[i] != gens[h].points[i]) ++diffs, k = static_cast<int>(i);
          if (diffs != 1 || zs[gens[g].points[k]].base != zs[gens[h].points[k]].base) continue;
          ++pairs;
          violations += t.rows[g].R != t.rows[h].R;
        }
    }
    std::ostringstream d;
    d << corpus_.knots.size() << " knots, " << pairs << " doubled pairs, " << violations << " violations";
    return {violations == 0 && pairs > 0, d.str()};
  }

  Verdict moves() {
    const auto t0 = Clock::now();
    std::vector<braid::BraidWord> subjects{trefoil_};
    for (const auto& b : corpus_.nice)
      if (subjects.size() < 13 && b.letters.size() <= 5) subjects.push_back(b);
    long compared = 0, skipped = 0, violations = 0, mirrors = 0;
    for (const auto& b : subjects) {
      std::vector<std::string> names{"A", "A^-1", "B", "B^-1", "stab"};
      for (int i = 1; i < b.strands / 2; ++i) {
        names.push_back("C" + std::to_string(i));
        names.push_back("C" + std::to_string(i) + "^-1");
      }
      for (const auto& m : names) {
        const app::MoveReport r = app::check_move(b, m);
        if (!r.fingerprints_compared) {
          ++skipped;
          continue;
        }
        ++compared;
        if (!r.fingerprints_equal) {
          ++violations;
          std::cerr << "  fingerprint differs: " << r.before << " --" << m << "--> " << r.after << '\n';
        }
      }
      std::multiset<Q> up, down;
      for (const auto& row : fork::grade(fork::ForkDiagram(b)).rows) up.insert(-row.R);
      for (const auto& row : fork::grade(fork::ForkDiagram(braid::mirror_braid(b))).rows) down.insert(row.R);
      ++mirrors;
      violations += up != down;
    }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << subjects.size() << " knots, " << compared << " fingerprint comparisons (" << skipped
      << " skipped as not nice), " << mirrors << " mirror checks, " << violations << " violations, " << s << " s";
    return {subjects.size() >= 11 && compared > 0 && violations == 0 && s < 600, d.str()};
  }

  Verdict fuzz() {
    std::mt19937 rng(1018);
    long violations = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
      const int strands = trial % 2 ? 6 : 4;
      std::uniform_int_distribution<int> idx(1, strands - 1), len(0, 6), coin(0, 1), kind(0, 2);
      auto word = [&](int n) {
        std::vector<braid::Letter> w;
        for (int i = 0; i < n; ++i) w.push_back({idx(rng), coin(rng) ? 1 : -1});
        return w;
      };
      const auto prefix = word(len(rng)), suffix = word(len(rng));
      std::vector<braid::Letter> lhs, rhs;
      const int s = coin(rng) ? 1 : -1;
      switch (kind(rng)) {
        case 0: {
          const int i = std::uniform_int_distribution<int>(1, strands - 2)(rng);
          lhs = {{i, s}, {i + 1, s}, {i, s}};
          rhs = {{i + 1, s}, {i, s}, {i + 1, s}};
          break;
        }
        case 1: {
          int i = idx(rng), j = idx(rng);
          while (std::abs(i - j) < 2) i = idx(rng), j = idx(rng);
          lhs = {{i, s}, {j, -s}};
          rhs = {{j, -s}, {i, s}};
          break;
        }
        default: {
          const int i = idx(rng);
          lhs = {{i, s}, {i, -s}};
          break;
        }
      }
      auto build = [&](const std::vector<braid::Letter>& mid) {
        braid::BraidWord b{strands, prefix};
        b.letters.insert(b.letters.end(), mid.begin(), mid.end());
        b.letters.insert(b.letters.end(), suffix.begin(), suffix.end());
        return fork::push_forks(b).record();
      };
      violations += !(build(lhs) == build(rhs));
    }
    return {violations == 0, std::to_string(trials) + " insertions, " + std::to_string(violations) + " violations"};
  }

  Verdict periodic() {
    long built = 0, violations = 0;
    std::vector<braid::BraidWord> all = corpus_.knots;
    all.push_back(trefoil_);
    for (const auto& b : corpus_.knots)
      if (b.letters.size() <= 5) {
        for (const char* m : {"A", "B", "stab"}) all.push_back(braid::birman_move(b, braid::parse_move(m)));
        all.push_back(braid::mirror_braid(b));
      }
    for (const auto& b : all) {
      ++built;
      try {
        cover::HeegaardDiagram H = cover::build_heegaard(fork::ForkDiagram(b));
        cover::DomainSolver S(H);
        cover::check_periodic_rank(S);
      } catch (const InternalInconsistency& e) {
        ++violations;
        std::cerr << "  " << braid::print_braid(b) << ": " << e.what() << '\n';
      }
    }
    return {violations == 0, std::to_string(built) + " diagrams, " + std::to_string(violations) + " violations"};
  }

  braid::BraidWord trefoil_;
  std::unique_ptr<app::Analysis> trefoil_analysis_;
  Corpus corpus_;
  int passed_ = 0;
};

}  // namespace

int main() { return Acceptance().run(); }
