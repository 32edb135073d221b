#pragma once

#include <platfloer/rational.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace platfloer::filt {

// A chain complex over F_2 with a rational filtration level per generator.
// d[x] lists the generators in the boundary of x.
struct FilteredComplex {
  std::vector<std::string> labels;
  std::vector<Q> level;
  std::vector<std::vector<int>> d;
  // Relative Maslov grading, when known; d lowers it by one.
  std::optional<std::vector<long>> maslov;

  std::size_t size() const { return labels.size(); }
};

// Throws FiltrationViolation if d raises a level, NotADifferential if d^2 != 0.
void verify_filtered(const FilteredComplex& c);

// Coarsest step such that every level difference is an integer multiple of it.
Q level_step(const FilteredComplex& c);

struct DifferentialPart {
  long drop = 0;  // in grid steps
  std::vector<std::pair<int, int>> entries;
};

// d = sum of parts, each dropping the level by a fixed number of steps.
std::vector<DifferentialPart> decompose(const FilteredComplex& c);

struct Page {
  std::map<Q, long> dims;  // level -> dimension, nonzero entries only
  long total() const;
};

struct SpectralSequence {
  Q step = 1;
  std::vector<Page> pages;  // E_0 .. E_stable; the last one is E_infinity
  std::vector<long> ranks;  // rank of d_r on E_r, same length as pages

  std::size_t stable() const { return pages.empty() ? 0 : pages.size() - 1; }
  const Page& infinity() const { return pages.back(); }
};

SpectralSequence pages(const FilteredComplex& c);

// Dimension of H(C, d) by plain elimination on the full matrix.
long homology_dim(const FilteredComplex& c);

// Collapse at E_1 with E_infinity in a single level. When the complex
// carries Maslov gradings, also checks that E_1 is bigraded with d_0 of
// degree -1 so that R = level + gr on every surviving class.
bool is_rho_degenerate(const FilteredComplex& c, const SpectralSequence& ss);

// Distinct pages from E_1 on, levels shifted so the least occupied one is 0.
std::string fingerprint(const SpectralSequence& ss);
// Fingerprints of several classes, sorted, so class order does not matter.
std::string fingerprint(const std::vector<SpectralSequence>& classes);

nlohmann::json to_json(const SpectralSequence& ss);

}  // namespace platfloer::filt
