#pragma once

#include <platfloer/branchedcover/domains.hpp>

#include <map>
#include <string>
#include <vector>

namespace platfloer::cover {

struct SpincClass {
  int id = 0;
  std::vector<int> members;  // generator indices, ascending
  int representative = 0;
};

// Classes ordered by their smallest member.
std::vector<SpincClass> spinc_partition(const DomainSolver& S, const std::vector<Tuple>& gens);

// A bigon (one moved point) or rectangle (two) counted in the differential.
struct CountedDomain {
  int x = 0;
  int y = 0;
  Domain domain;
};

struct FloerDifferential {
  std::vector<std::vector<int>> targets;  // d(x) = sum of targets[x], each ascending
  std::vector<CountedDomain> counted;     // sorted by (x, y)

  bool operator==(const FloerDifferential& o) const { return targets == o.targets; }
  // d o d over F_2, as a list of (x, z) pairs with a nonzero entry.
  std::vector<std::pair<int, int>> square() const;
};

// Counts positive index-one domains avoiding z between generators that
// differ in at most two points. Requires a nice diagram.
FloerDifferential differential(const DomainSolver& S, const std::vector<Tuple>& gens,
                               const std::vector<SpincClass>& classes);
// Same count, one connecting-domain solve per pair and no threads.
FloerDifferential differential_reference(const DomainSolver& S, const std::vector<Tuple>& gens);

// k = (R(x) - R(y) - mu) / 2 for a domain of index mu from x to y.
long nabla_count(const Q& Rx, const Q& Ry, long mu);

// rho = R - gr relative to the lexicographically least name in the class,
// which is placed at 0. Throws GradingIndeterminate if some periodic domain
// has nonzero index.
std::map<int, Q> relative_rho(const DomainSolver& S, const std::vector<Tuple>& gens, const SpincClass& cls,
                              const std::vector<Q>& R, const std::vector<std::string>& names);

}  // namespace platfloer::cover
