#include <platfloer/branchedcover/lattice.hpp>
#include <platfloer/errors.hpp>

#include <utility>

namespace platfloer::cover {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix I(n, std::vector<Z>(n, Z(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

void add_row(IntMatrix& M, std::size_t dst, std::size_t src, const Z& q) {
  for (std::size_t k = 0; k < M[dst].size(); ++k)
    if (sgn(M[src][k]) != 0) M[dst][k] -= q * M[src][k];
}

void add_col(IntMatrix& M, std::size_t dst, std::size_t src, const Z& q) {
  for (auto& row : M)
    if (sgn(row[src]) != 0) row[dst] -= q * row[src];
}

void swap_cols(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

DiagonalForm diagonalize(const IntMatrix& input, std::size_t cols) {
  DiagonalForm f;
  f.rows = input.size();
  f.cols = cols;
  IntMatrix A = input;
  f.U = identity(f.rows);
  f.V = identity(cols);
  const std::size_t lim = std::min(f.rows, cols);

  std::size_t t = 0;
  for (; t < lim; ++t) {
    // Smallest nonzero entry of the remaining block as pivot.
    std::size_t pi = f.rows, pj = cols;
    for (std::size_t i = t; i < f.rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(A[i][j]) != 0 && (pi == f.rows || abs(A[i][j]) < abs(A[pi][pj]))) pi = i, pj = j;
    if (pi == f.rows) break;

    for (;;) {
      std::swap(A[t], A[pi]);
      std::swap(f.U[t], f.U[pi]);
      swap_cols(A, t, pj);
      swap_cols(f.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < f.rows; ++i) {
        if (sgn(A[i][t]) == 0) continue;
        Z q = A[i][t] / A[t][t];
        add_row(A, i, t, q);
        add_row(f.U, i, t, q);
        if (sgn(A[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(A[t][j]) == 0) continue;
        Z q = A[t][j] / A[t][t];
        add_col(A, j, t, q);
        add_col(f.V, j, t, q);
        if (sgn(A[t][j]) != 0) clean = false;
      }
      if (clean) break;
      pi = t, pj = t;
      for (std::size_t i = t + 1; i < f.rows; ++i)
        if (sgn(A[i][t]) != 0 && abs(A[i][t]) < abs(A[pi][pj])) pi = i, pj = t;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (sgn(A[t][j]) != 0 && abs(A[t][j]) < abs(A[pi][pj])) pi = t, pj = j;
    }
    f.d.push_back(A[t][t]);
  }
  f.rank = t;
  return f;
}

std::vector<Z> DiagonalForm::coset_key(const std::vector<Z>& b) const {
  std::vector<Z> c(rows, Z(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k)
      if (sgn(U[i][k]) != 0 && sgn(b[k]) != 0) c[i] += U[i][k] * b[k];
  for (std::size_t i = 0; i < rank; ++i) {
    Z m = abs(d[i]);
    c[i] %= m;
    if (sgn(c[i]) < 0) c[i] += m;
  }
  return c;
}

bool DiagonalForm::solve(const std::vector<Z>& b, std::vector<Z>& v) const {
  std::vector<Z> c(rows, Z(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k)
      if (sgn(U[i][k]) != 0 && sgn(b[k]) != 0) c[i] += U[i][k] * b[k];
  for (std::size_t i = rank; i < rows; ++i)
    if (sgn(c[i]) != 0) return false;
  std::vector<Z> w(cols, Z(0));
  for (std::size_t i = 0; i < rank; ++i) {
    if (sgn(c[i] % d[i]) != 0) return false;
    w[i] = c[i] / d[i];
  }
  v.assign(cols, Z(0));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < rank; ++k)
      if (sgn(V[j][k]) != 0) v[j] += V[j][k] * w[k];
  return true;
}

std::vector<std::vector<Z>> DiagonalForm::kernel() const {
  std::vector<std::vector<Z>> out;
  for (std::size_t k = rank; k < cols; ++k) {
    std::vector<Z> col(cols);
    for (std::size_t j = 0; j < cols; ++j) col[j] = V[j][k];
    out.push_back(std::move(col));
  }
  return out;
}

std::size_t rank_over_q(IntMatrix A) {
  if (A.empty()) return 0;
  const std::size_t m = A.size(), n = A[0].size();
  std::size_t r = 0;
  Z prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && sgn(A[p][c]) == 0) ++p;
    if (p == m) continue;
    std::swap(A[r], A[p]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        A[i][j] = A[r][c] * A[i][j] - A[i][c] * A[r][j];
        if (!mpz_divisible_p(A[i][j].get_mpz_t(), prev.get_mpz_t()))
          throw InternalInconsistency("Bareiss step lost exactness");
        A[i][j] /= prev;
      }
      A[i][c] = 0;
    }
    prev = A[r][c];
    ++r;
  }
  return r;
}

}  // namespace platfloer::cover
