#pragma once

#include <platfloer/forkdiagram/fork.hpp>

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace platfloer::cover {

// An intersection point of one alpha and one beta circle. `quad` lists the
// regions of its four corners; a region may appear more than once.
struct Vertex {
  int alpha = 0;
  int beta = 0;
  std::array<int, 4> quad{};
  int base = -1;   // fork base point below it, -1 for fixtures
  int sheet = -1;  // 0 or 1 for an interior lift, -1 for a branch point
};

// Edge k of a circle runs from vertices[k] to vertices[k+1] (cyclically).
struct CircleEdge {
  int left = 0;
  int right = 0;
};

struct Circle {
  std::vector<int> vertices;
  std::vector<CircleEdge> edges;
};

struct Region {
  int chi = 1;      // Euler characteristic of the open region
  int corners = 0;  // corner count, one per quadrant occurrence
  std::string name;

  // Euler measure chi - corners/4, scaled by 4.
  long euler4() const { return 4L * chi - corners; }
};

class HeegaardDiagram {
public:
  int genus = 0;
  std::vector<Vertex> vertices;
  std::vector<Circle> alphas;
  std::vector<Circle> betas;
  std::vector<Region> regions;
  int z = 0;  // basepoint region

  std::size_t size() const { return alphas.size(); }

  // Recomputes corner counts from the quadrants and checks the cell data:
  // consistent incidences and Euler measures summing to 2 - 2g.
  void validate();
  Q euler_total() const;

  // Regions off the basepoint with a corner count other than 2 or 4.
  std::vector<int> bad_regions() const;
  bool is_nice() const { return bad_regions().empty(); }
  std::string census() const;

  // All tuples with one vertex on every alpha and every beta, each sorted
  // by alpha index.
  std::vector<std::vector<int>> intersection_tuples() const;

  nlohmann::json to_json() const;
};

// Double cover of the disk branched along the tines, stabilized by a tube
// joining the two sheets inside the basepoint region.
HeegaardDiagram build_heegaard(const fork::ForkDiagram& F);

struct LiftedGenerator {
  std::vector<int> vertices;  // by alpha index
  int bigelow = -1;
  std::vector<int> sheets;    // per component, -1 at branch points
  std::string name;
};

// e_x lifts to sheet 0 and e'_x to sheet 1; `swap_sheets` exchanges the two
// everywhere, which is the deck involution.
std::vector<LiftedGenerator> lift_generators(const HeegaardDiagram& H, const fork::ForkDiagram& F,
                                             bool swap_sheets = false);

// Genus one, alpha and beta meeting once; the complement is one disk.
HeegaardDiagram genus_one_sphere();

// Connected sum with genus_one_sphere() inside the basepoint region. The
// new vertex is the last one; every old tuple extends by it.
HeegaardDiagram stabilize(const HeegaardDiagram& H);

}  // namespace platfloer::cover
