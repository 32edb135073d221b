#include <platfloer/branchedcover/domains.hpp>
#include <platfloer/errors.hpp>

namespace platfloer::cover {

DomainSolver::DomainSolver(const HeegaardDiagram& H) : H_(&H) {
  column_.assign(H.regions.size(), -1);
  for (std::size_t r = 0; r < H.regions.size(); ++r)
    if (static_cast<int>(r) != H.z) {
      column_[r] = static_cast<int>(region_.size());
      region_.push_back(static_cast<int>(r));
    }

  IntMatrix A;
  alpha_row_.assign(H.vertices.size(), 0);
  beta_row_.assign(H.vertices.size(), 0);
  auto add_rows = [&](const std::vector<Circle>& cs, std::vector<std::size_t>& row_of) {
    for (const Circle& c : cs) {
      const std::size_t len = c.edges.size();
      for (std::size_t k = 0; k < len; ++k) {
        std::vector<Z> row(region_.size(), Z(0));
        auto put = [&](int region, long s) {
          if (column_[region] >= 0) row[column_[region]] += s;
        };
        // m(incoming edge) - m(outgoing edge), m = n(left) - n(right).
        const CircleEdge& in = c.edges[(k + len - 1) % len];
        const CircleEdge& out = c.edges[k];
        put(in.left, 1);
        put(in.right, -1);
        put(out.left, -1);
        put(out.right, 1);
        row_of[c.vertices[k]] = A.size();
        A.push_back(std::move(row));
      }
    }
  };
  add_rows(H.alphas, alpha_row_);
  add_rows(H.betas, beta_row_);
  form_ = diagonalize(A, region_.size());

  vertex_image_.resize(H.vertices.size());
  for (std::size_t v = 0; v < H.vertices.size(); ++v) {
    std::vector<Z> col(form_.rows);
    for (std::size_t i = 0; i < form_.rows; ++i) col[i] = form_.U[i][alpha_row_[v]] - form_.U[i][beta_row_[v]];
    vertex_image_[v] = std::move(col);
  }
  for (const auto& k : form_.kernel()) periodic_.push_back(to_domain(k));
}

Domain DomainSolver::to_domain(const std::vector<Z>& columns) const {
  Domain d(H_->regions.size(), 0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!columns[j].fits_slong_p()) throw InternalInconsistency("domain multiplicity overflow");
    d[region_[j]] = columns[j].get_si();
  }
  return d;
}

std::vector<Z> DomainSolver::image_coords(const Tuple& x) const {
  std::vector<Z> c(form_.rows, Z(0));
  for (int v : x)
    for (std::size_t i = 0; i < form_.rows; ++i) c[i] += vertex_image_[v][i];
  return c;
}

std::vector<Z> DomainSolver::spinc_key(const Tuple& x) const {
  std::vector<Z> c = image_coords(x);
  for (std::size_t i = 0; i < form_.rank; ++i) {
    Z m = abs(form_.d[i]);
    c[i] %= m;
    if (sgn(c[i]) < 0) c[i] += m;
  }
  return c;
}

std::optional<Domain> DomainSolver::connecting_domain(const Tuple& x, const Tuple& y) const {
  std::vector<Z> cx = image_coords(x), cy = image_coords(y);
  for (std::size_t i = form_.rank; i < form_.rows; ++i)
    if (cx[i] != cy[i]) return std::nullopt;
  std::vector<Z> w(form_.rank);
  for (std::size_t i = 0; i < form_.rank; ++i) {
    Z diff = cy[i] - cx[i];
    if (sgn(diff % form_.d[i]) != 0) return std::nullopt;
    w[i] = diff / form_.d[i];
  }
  std::vector<Z> cols(form_.cols, Z(0));
  for (std::size_t j = 0; j < form_.cols; ++j)
    for (std::size_t k = 0; k < form_.rank; ++k)
      if (sgn(form_.V[j][k]) != 0) cols[j] += form_.V[j][k] * w[k];
  return to_domain(cols);
}

long DomainSolver::euler4(const Domain& d) const {
  long e = 0;
  for (std::size_t r = 0; r < d.size(); ++r) e += d[r] * H_->regions[r].euler4();
  return e;
}

long DomainSolver::corner4(const Domain& d, const Tuple& x) const {
  long s = 0;
  for (int v : x)
    for (int q : H_->vertices[v].quad) s += d[q];
  return s;
}

long DomainSolver::maslov4(const Domain& d, const Tuple& x, const Tuple& y) const {
  return euler4(d) + corner4(d, x) + corner4(d, y);
}

long DomainSolver::maslov(const Domain& d, const Tuple& x, const Tuple& y) const {
  const long m4 = maslov4(d, x, y);
  if (m4 % 4 != 0) throw InternalInconsistency("Maslov index " + to_string(make_q(m4, 4)) + " is not an integer");
  return m4 / 4;
}

std::size_t DomainSolver::curve_rank() const {
  const HeegaardDiagram& H = *H_;
  for (std::size_t r = 0; r < H.regions.size(); ++r)
    if (static_cast<int>(r) != H.z && H.regions[r].chi != 1)
      throw InternalInconsistency("region " + H.regions[r].name + " is not a disc");
  // Rows: circle edges. Columns: boundaries of the 2-cells, then the curves.
  std::size_t edges = 0;
  for (const auto* cs : {&H.alphas, &H.betas})
    for (const Circle& c : *cs) edges += c.edges.size();
  const std::size_t cells = region_.size(), curves = H.alphas.size() + H.betas.size();
  IntMatrix M(edges, std::vector<Z>(cells + curves, Z(0)));
  std::size_t e = 0, curve = 0;
  for (const auto* cs : {&H.alphas, &H.betas})
    for (const Circle& c : *cs) {
      for (const CircleEdge& ed : c.edges) {
        if (column_[ed.left] >= 0) M[e][column_[ed.left]] += 1;
        if (column_[ed.right] >= 0) M[e][column_[ed.right]] -= 1;
        M[e][cells + curve] = 1;
        ++e;
      }
      ++curve;
    }
  IntMatrix boundary(edges, std::vector<Z>(cells));
  for (std::size_t i = 0; i < edges; ++i)
    for (std::size_t j = 0; j < cells; ++j) boundary[i][j] = M[i][j];
  return rank_over_q(M) - rank_over_q(boundary);
}

void check_periodic_rank(const DomainSolver& S) {
  const std::size_t expected = 2 * S.diagram().genus - S.curve_rank();
  if (S.periodic().size() != expected)
    throw InternalInconsistency("periodic domain rank " + std::to_string(S.periodic().size()) + " but homology gives " +
                                std::to_string(expected));
}

}  // namespace platfloer::cover
