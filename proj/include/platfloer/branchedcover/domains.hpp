#pragma once

#include <platfloer/branchedcover/heegaard.hpp>
#include <platfloer/branchedcover/lattice.hpp>

#include <optional>
#include <vector>

namespace platfloer::cover {

// Integer multiplicity per region; the basepoint entry stays zero.
using Domain = std::vector<long>;
// A generator as a vertex tuple, one per alpha circle.
using Tuple = std::vector<int>;

// Solves the corner conditions: along every alpha circle the boundary of a
// domain from x to y runs from x to y, along every beta circle back again.
class DomainSolver {
public:
  explicit DomainSolver(const HeegaardDiagram& H);

  const HeegaardDiagram& diagram() const { return *H_; }

  // Equal keys iff the two tuples are joined by a domain avoiding z.
  std::vector<Z> spinc_key(const Tuple& x) const;
  std::optional<Domain> connecting_domain(const Tuple& x, const Tuple& y) const;
  // Basis of domains with n_z = 0 whose boundary is a sum of full circles.
  const std::vector<Domain>& periodic() const { return periodic_; }
  // Rank of the span of the alpha and beta classes in H_1, from the
  // cellular chain complex of the surface minus the basepoint region.
  std::size_t curve_rank() const;

  // Four times the Maslov index e(D) + n_x(D) + n_y(D).
  long maslov4(const Domain& d, const Tuple& x, const Tuple& y) const;
  long maslov(const Domain& d, const Tuple& x, const Tuple& y) const;
  long euler4(const Domain& d) const;
  // Sum over the tuple of the four corner multiplicities at each point.
  long corner4(const Domain& d, const Tuple& x) const;

private:
  std::vector<Z> image_coords(const Tuple& x) const;
  Domain to_domain(const std::vector<Z>& columns) const;

  const HeegaardDiagram* H_;
  std::vector<int> column_;   // region -> column, -1 for z
  std::vector<int> region_;   // column -> region
  std::vector<std::size_t> alpha_row_, beta_row_;  // per vertex
  DiagonalForm form_;
  std::vector<std::vector<Z>> vertex_image_;  // U f(v) per vertex
  std::vector<Domain> periodic_;
};

// Throws InternalInconsistency unless periodic().size() == 2g - curve_rank().
void check_periodic_rank(const DomainSolver& S);

}  // namespace platfloer::cover
