#pragma once

#include <platfloer/forkdiagram/fork.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace platfloer::fork {

struct GeneratorGrades {
  long Q = 0;
  long P = 0;
  long T = 0;
  long Rtilde = 0;  // P - Q + T
  platfloer::Q R;   // Rtilde + s_R
};

struct GradingTable {
  platfloer::Q sR;
  std::vector<long> q_star;  // per Z point
  std::vector<long> p_star;
  std::vector<GeneratorGrades> rows;  // per generator

  std::string markdown(const ForkDiagram& F) const;
  nlohmann::json to_json(const ForkDiagram& F) const;
};

// Loop d_j -> handle -> figure-eight -> x -> alpha -> m_i, then down to the
// lower frame, along it and up through m_j back to d_j.
Polyline q_loop(const ForkDiagram& F, int z);
long q_star(const ForkDiagram& F, int z);
// Tangent turning along b(h_j) then bE_j to z. Counter-clockwise half turns
// count positive: that is the sign the trefoil table uses.
long p_star(const ForkDiagram& F, int z);
// Pairwise winding of the beta-path system of a tuple of base points (one per tine).
long t_grading(const ForkDiagram& F, const std::vector<int>& bases);

GradingTable grade(const ForkDiagram& F);

}  // namespace platfloer::fork
