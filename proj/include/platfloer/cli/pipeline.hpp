#pragma once

#include <platfloer/branchedcover/differential.hpp>
#include <platfloer/filteredalgebra/complex.hpp>
#include <platfloer/forkdiagram/grading.hpp>

#include <memory>
#include <string>
#include <vector>

namespace platfloer::app {

// Floer-side data for a nice diagram. Every invariant the pipeline relies on
// is checked while it is built; a failure throws InternalInconsistency.
struct FloerData {
  std::vector<cover::Tuple> gens;
  std::vector<std::string> names;
  std::vector<Q> R;
  std::vector<cover::SpincClass> classes;
  std::vector<int> class_of;
  cover::FloerDifferential d;
  std::vector<long> nabla;             // per counted domain
  std::vector<Q> rho;                  // relative, per generator
  std::vector<long> maslov;            // relative, per generator
  std::vector<filt::FilteredComplex> complexes;  // per class, rho levels
  std::vector<filt::SpectralSequence> spectral;
  filt::SpectralSequence by_R;         // whole complex filtered by R
  bool degenerate = false;
  std::size_t periodic_rank = 0;
};

class Analysis {
public:
  explicit Analysis(const braid::BraidWord& b, const fork::Conventions& conv = {});

  const braid::BraidWord& braid() const { return braid_; }
  const fork::ForkDiagram& fork() const { return fork_; }
  const fork::GradingTable& gradings() const { return table_; }
  const cover::HeegaardDiagram& heegaard() const { return heegaard_; }
  const cover::DomainSolver& solver() const { return *solver_; }

  // Throws NotNice when the diagram is not nice.
  const FloerData& floer();

private:
  braid::BraidWord braid_;
  fork::ForkDiagram fork_;
  fork::GradingTable table_;
  cover::HeegaardDiagram heegaard_;
  std::unique_ptr<cover::DomainSolver> solver_;
  std::unique_ptr<FloerData> floer_;
};

// Page fingerprint of the rho-filtered complexes, all classes.
std::string fingerprint(Analysis& a);

struct MoveReport {
  std::string move;
  std::string before, after;  // braid words
  std::vector<std::string> deltas;  // e.g. "Q+2", "R preserved"
  bool fingerprints_compared = false;
  bool fingerprints_equal = false;
  std::string summary() const;
};

// `move` is a Birman move name or "mirror".
MoveReport check_move(const braid::BraidWord& b, const std::string& move);

}  // namespace platfloer::app
