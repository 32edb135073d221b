#include <platfloer/branchedcover/differential.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <exception>
#include <set>

namespace platfloer::cover {

namespace {

int moved_points(const Tuple& x, const Tuple& y) {
  int k = 0;
  for (std::size_t i = 0; i < x.size(); ++i) k += x[i] != y[i];
  return k;
}

bool nonnegative(const Domain& d) {
  return std::all_of(d.begin(), d.end(), [](long c) { return c >= 0; });
}

// The positive domains D0 + kP of index one, for the single periodic
// generator P (or none).
void count_pair(const DomainSolver& S, const Tuple& x, const Tuple& y, int xi, int yi, const Domain& d0,
                std::vector<CountedDomain>& out) {
  const auto& P = S.periodic();
  if (P.size() > 1) throw InternalInconsistency("more than one periodic domain; the count needs b1 <= 1");
  const long m0 = S.maslov4(d0, x, y);
  auto accept = [&](Domain d) {
    const int moved = moved_points(x, y);
    const long e = S.euler4(d);
    const bool unit = std::all_of(d.begin(), d.end(), [](long c) { return c == 0 || c == 1; });
    if (!unit || (moved == 1 && e != 2) || (moved == 2 && e != 0))
      throw InternalInconsistency("index-one positive domain that is neither a bigon nor a rectangle");
    out.push_back({xi, yi, std::move(d)});
  };
  if (P.empty()) {
    if (m0 == 4 && nonnegative(d0)) accept(d0);
    return;
  }
  const Domain& p = P[0];
  bool has_lo = false, has_hi = false;
  long lo = 0, hi = 0;
  for (std::size_t r = 0; r < p.size(); ++r) {
    if (p[r] > 0) {
      // d0 + k p >= 0  =>  k >= ceil(-d0 / p)
      long b = -d0[r] >= 0 ? (-d0[r] + p[r] - 1) / p[r] : -(d0[r] / p[r]);
      lo = has_lo ? std::max(lo, b) : b;
      has_lo = true;
    } else if (p[r] < 0) {
      const long q = -p[r];
      long b = d0[r] >= 0 ? d0[r] / q : -((-d0[r] + q - 1) / q);
      hi = has_hi ? std::min(hi, b) : b;
      has_hi = true;
    } else if (d0[r] < 0) {
      return;
    }
  }
  if (!has_lo || !has_hi) throw InternalInconsistency("periodic domain of one sign; the diagram is not admissible");
  const long mp = S.maslov4(p, x, x);
  for (long k = lo; k <= hi; ++k) {
    if (m0 + k * mp != 4) continue;
    Domain d = d0;
    for (std::size_t r = 0; r < d.size(); ++r) d[r] += k * p[r];
    accept(std::move(d));
  }
}

FloerDifferential assemble(std::size_t n, std::vector<CountedDomain> counted) {
  std::sort(counted.begin(), counted.end(),
            [](const CountedDomain& a, const CountedDomain& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  FloerDifferential D;
  D.targets.resize(n);
  for (std::size_t i = 0; i < counted.size();) {
    std::size_t j = i;
    while (j < counted.size() && counted[j].x == counted[i].x && counted[j].y == counted[i].y) ++j;
    if ((j - i) % 2 == 1) D.targets[counted[i].x].push_back(counted[i].y);
    i = j;
  }
  D.counted = std::move(counted);
  return D;
}

void require_nice(const DomainSolver& S) {
  if (!S.diagram().is_nice()) throw NotNice("the Heegaard diagram is not nice", S.diagram().census());
}

}  // namespace

std::vector<SpincClass> spinc_partition(const DomainSolver& S, const std::vector<Tuple>& gens) {
  std::map<std::vector<Z>, std::vector<int>> by_key;
  for (std::size_t g = 0; g < gens.size(); ++g) by_key[S.spinc_key(gens[g])].push_back(static_cast<int>(g));
  std::vector<SpincClass> out;
  for (auto& [key, members] : by_key) out.push_back({0, members, members.front()});
  std::sort(out.begin(), out.end(),
            [](const SpincClass& a, const SpincClass& b) { return a.members.front() < b.members.front(); });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

FloerDifferential differential(const DomainSolver& S, const std::vector<Tuple>& gens,
                               const std::vector<SpincClass>& classes) {
  require_nice(S);
  std::vector<std::vector<CountedDomain>> per(gens.size());
  for (const SpincClass& cls : classes) {
    const Tuple& rep = gens[cls.representative];
    const int m = static_cast<int>(cls.members.size());
    // Domains from the representative; D(x, y) = D(rep, y) - D(rep, x).
    std::vector<Domain> from_rep(m);
    for (int i = 0; i < m; ++i) {
      auto d = S.connecting_domain(rep, gens[cls.members[i]]);
      if (!d) throw InternalInconsistency("class member not joined to its representative");
      from_rep[i] = std::move(*d);
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
      const int xi = cls.members[i];
      Domain d0(from_rep[i].size());
      try {
        for (int j = 0; j < m; ++j) {
          const int yi = cls.members[j];
          if (i == j || moved_points(gens[xi], gens[yi]) > 2) continue;
          for (std::size_t r = 0; r < d0.size(); ++r) d0[r] = from_rep[j][r] - from_rep[i][r];
          count_pair(S, gens[xi], gens[yi], xi, yi, d0, per[xi]);
        }
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<CountedDomain> all;
  for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(all));
  return assemble(gens.size(), std::move(all));
}

FloerDifferential differential_reference(const DomainSolver& S, const std::vector<Tuple>& gens) {
  require_nice(S);
  std::vector<CountedDomain> all;
  for (std::size_t x = 0; x < gens.size(); ++x)
    for (std::size_t y = 0; y < gens.size(); ++y) {
      if (x == y || moved_points(gens[x], gens[y]) > 2) continue;
      auto d = S.connecting_domain(gens[x], gens[y]);
      if (d) count_pair(S, gens[x], gens[y], static_cast<int>(x), static_cast<int>(y), *d, all);
    }
  return assemble(gens.size(), std::move(all));
}

std::vector<std::pair<int, int>> FloerDifferential::square() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t x = 0; x < targets.size(); ++x) {
    std::map<int, int> hits;
    for (int y : targets[x])
      for (int w : targets[y]) hits[w] ^= 1;
    for (auto [w, odd] : hits)
      if (odd) out.emplace_back(static_cast<int>(x), w);
  }
  return out;
}

long nabla_count(const Q& Rx, const Q& Ry, long mu) {
  Q k = (Rx - Ry - mu) / 2;
  if (k.get_den() != 1)
    throw InternalInconsistency("R drop " + to_string(Rx - Ry) + " and index " + std::to_string(mu) +
                                " give a non-integral anti-diagonal count");
  return k.get_num().get_si();
}

std::map<int, Q> relative_rho(const DomainSolver& S, const std::vector<Tuple>& gens, const SpincClass& cls,
                              const std::vector<Q>& R, const std::vector<std::string>& names) {
  int anchor = cls.members.front();
  for (int g : cls.members)
    if (names[g] < names[anchor]) anchor = g;
  for (const Domain& p : S.periodic())
    if (S.maslov4(p, gens[anchor], gens[anchor]) != 0)
      throw GradingIndeterminate("a periodic domain has nonzero index in the class of " + names[anchor]);
  std::map<int, Q> rho;
  for (int g : cls.members) {
    auto d = S.connecting_domain(gens[anchor], gens[g]);
    if (!d) throw InternalInconsistency("class member " + names[g] + " not joined to " + names[anchor]);
    // gr(anchor) - gr(g) = mu(D(anchor, g)), gr(anchor) = 0.
    const long gr = -S.maslov(*d, gens[anchor], gens[g]);
    rho[g] = R[g] - R[anchor] - gr;
  }
  return rho;
}

}  // namespace platfloer::cover
