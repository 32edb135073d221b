#pragma once

#include <platfloer/curveengine/geometry.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace platfloer::curve {

// The punctured disk: punctures at (1,0) .. (2n,0) inside the frame
// [0, 2n+1] x [-H, H], H = n + 1. The real axis cuts it into two half disks,
// so a system of disjoint arcs is determined up to isotopy by the order in
// which it crosses the axis.
struct PuncturedDisk {
  int n = 1;

  int punctures() const { return 2 * n; }
  Q height() const { return Q(n + 1); }
  Q width() const { return Q(2 * n + 1); }
  Point puncture(int j) const { return {Q(j), Q(0)}; }
  // Axis segment s is the open interval (s, s+1), s = 0 .. 2n.
  int segments() const { return 2 * n + 1; }
  // Tine alpha_i covers segment 2i - 1; other segments are gaps.
  static int tine_of_segment(int s) { return s % 2 == 1 ? (s + 1) / 2 : 0; }
};

enum class Half : std::uint8_t { Upper, Lower };

inline Half flip(Half h) { return h == Half::Upper ? Half::Lower : Half::Upper; }

enum class EndKind : std::uint8_t { Puncture, Top, Bottom };

struct Terminal {
  EndKind kind = EndKind::Puncture;
  int puncture = 0;

  bool operator==(const Terminal&) const = default;
};

// A tree with one centre and two or three branches. Arcs use two branches;
// forks use (tine-, tine+, handle).
struct EmbeddedComponent {
  Point center;
  std::vector<Polyline> branches;  // each starts at the centre
  std::vector<Terminal> ends;
};

struct BranchRecord {
  std::vector<std::pair<int, int>> crossings;  // (segment, rank within segment)
  Terminal end;

  bool operator==(const BranchRecord&) const = default;
};

struct ComponentRecord {
  Half center_half = Half::Upper;
  std::vector<BranchRecord> branches;

  bool operator==(const ComponentRecord&) const = default;
};

// Combinatorial description of a tightened system; equal records mean
// isotopic systems in canonical position.
struct SystemRecord {
  std::vector<ComponentRecord> components;

  bool operator==(const SystemRecord&) const = default;
  std::string to_string() const;
  std::size_t crossings() const;
};

class CurveSystem {
public:
  CurveSystem(PuncturedDisk disk, const std::vector<EmbeddedComponent>& comps);

  // Removes bigons and half bigons with the axis until none remain. The
  // iteration cap comes from PLATFLOER_ITER_CAP (default one million).
  void tighten();

  // Canonical rectilinear embedding of the current combinatorial state.
  std::vector<EmbeddedComponent> embed() const;

  SystemRecord record() const;
  const PuncturedDisk& disk() const { return disk_; }
  std::size_t size() const { return comps_.size(); }

  // Fixed-point check used by tests: reduction steps performed by the last tighten().
  long last_steps() const { return steps_; }

private:
  struct Branch {
    std::vector<int> pts;
    Terminal end;
  };
  struct Component {
    Half half = Half::Upper;
    std::vector<Branch> branches;
  };
  struct AxisPt {
    int segment = 0;
    int comp = -1;
    int branch = -1;
    bool alive = true;
  };

  bool reduce_once();
  int new_point(int segment, int comp, int branch);

  PuncturedDisk disk_;
  std::vector<Component> comps_;
  std::vector<AxisPt> pts_;
  std::vector<std::vector<int>> seg_;  // axis order per segment
  long steps_ = 0;
};

// Applies a braid letter (generator k, sign) to every curve of an embedded
// system, reads the image combinatorially and tightens it.
CurveSystem push_through(const PuncturedDisk& disk, const std::vector<EmbeddedComponent>& comps, int k, int sign);

long iteration_cap();

}  // namespace platfloer::curve
