#pragma once

#include <platfloer/rational.hpp>

#include <cstddef>
#include <vector>

namespace platfloer::cover {

using IntMatrix = std::vector<std::vector<Z>>;

// U * A * V = diag(d) with U, V unimodular. Entries d[0..rank) are nonzero;
// no divisibility chain is enforced, which is all lattice membership needs.
struct DiagonalForm {
  IntMatrix U;
  IntMatrix V;
  std::vector<Z> d;
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  // Solves A v = b over the integers; false when b is outside the image.
  bool solve(const std::vector<Z>& b, std::vector<Z>& v) const;
  // Coordinates of b in the cokernel Z^rows / A Z^cols. Two vectors lie in
  // the same coset iff their keys are equal.
  std::vector<Z> coset_key(const std::vector<Z>& b) const;
  // Integer basis of ker A.
  std::vector<std::vector<Z>> kernel() const;
};

DiagonalForm diagonalize(const IntMatrix& A, std::size_t cols);

// Rank over Q by fraction-free elimination.
std::size_t rank_over_q(IntMatrix A);

}  // namespace platfloer::cover
