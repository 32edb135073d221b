#pragma once

#include <platfloer/braidcore/braid.hpp>
#include <platfloer/curveengine/curvesystem.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace platfloer::fork {

using curve::Point;
using curve::Polyline;

// Orientation choices that are otherwise fixed only by pictures. The defaults
// reproduce the trefoil tables; tests flip them to show which ones matter.
struct Conventions {
  int twist = 1;               // HalfTwist direction used for a positive letter
  bool swap_primes = false;    // exchange e_x and e'_x after the loop test
};

// A point of alpha_i meeting beta_j: a puncture, or an interior crossing.
struct BasePoint {
  int tine = 0;
  int beta = 0;
  Q x;
  bool puncture = false;
};

// A point of alpha_i meeting the figure-eight bE_j.
struct ZPoint {
  int tine = 0;
  int eight = 0;
  Q x;             // position on the real axis
  int base = -1;   // index into ForkDiagram::base_points()
  bool primed = false;
  std::string name;
};

struct Generator {
  std::vector<int> points;  // ZPoint ids ordered by tine
  std::string name;
};

// A closed figure-eight with its vertex 0 and vertex `second_pass` at the
// centre. Vertices 0..second_pass run around the lobe of the tine+ end.
struct FigureEight {
  Polyline loop;
  std::size_t second_pass = 0;
  std::vector<std::size_t> axis_vertices;  // indices of vertices on the real axis, one per Z point
};

class ForkDiagram {
public:
  ForkDiagram(const braid::BraidWord& b, const Conventions& conv = {});

  const braid::BraidWord& braid() const { return braid_; }
  const curve::PuncturedDisk& disk() const { return disk_; }
  const Conventions& conventions() const { return conv_; }
  int n() const { return disk_.n; }

  // Tightened canonical picture: component k has branches (tine-, tine+, handle).
  const std::vector<curve::EmbeddedComponent>& forks() const { return forks_; }
  // beta_k from the end of tine- through the centre to the end of tine+.
  const Polyline& beta(int k) const { return betas_[k - 1]; }
  // b(h_k) from its end on the frame down to the centre.
  const Polyline& handle(int k) const { return handles_[k - 1]; }
  const FigureEight& eight(int k) const { return eights_[k - 1]; }
  Q epsilon() const { return eps_; }

  const std::vector<BasePoint>& base_points() const { return base_; }
  const std::vector<ZPoint>& zpoints() const { return z_; }
  const std::vector<Generator>& generators() const { return gens_; }

  // Vertex of eight(j) lying at Z point z.
  std::size_t vertex_of(int z) const { return z_vertex_[z]; }
  // Path from the centre of bE_j along its orientation to z, through the
  // tine+ lobe first.
  Polyline eight_path_to(int z) const;
  // Path along beta_j from the centre to the base point of z.
  Polyline beta_path_to(int base) const;

  // Per-pair Z counts; the number of generators is its permanent.
  std::vector<std::vector<long>> pair_counts() const;

  int find_z(const std::string& name) const;
  int find_generator(const std::string& name) const;

  nlohmann::json to_json() const;
  std::string svg() const;

private:
  void build_eights();
  void collect_points();
  void assign_primes();
  void name_points();
  void enumerate();

  braid::BraidWord braid_;
  Conventions conv_;
  curve::PuncturedDisk disk_;
  std::vector<curve::EmbeddedComponent> forks_;
  std::vector<Polyline> betas_;
  std::vector<std::size_t> beta_center_;  // index of the centre vertex in betas_
  std::vector<Polyline> handles_;
  std::vector<FigureEight> eights_;
  Q eps_;
  std::vector<BasePoint> base_;
  std::vector<ZPoint> z_;
  std::vector<std::size_t> z_vertex_;
  std::vector<Generator> gens_;
};

// The tightened fork system for b, before any figure-eight is drawn.
curve::CurveSystem push_forks(const braid::BraidWord& b, const Conventions& conv = {});

// Standard fork on 2n punctures: J_k slightly above the midpoint of alpha_k.
std::vector<curve::EmbeddedComponent> standard_fork(int n);

}  // namespace platfloer::fork
