#pragma once

#include <platfloer/rational.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace platfloer::braid {

struct Letter {
  int index = 1;  // sigma_index, 1 <= index <= strands - 1
  int sign = 1;   // +1 or -1

  bool operator==(const Letter&) const = default;
};

struct BraidWord {
  int strands = 2;
  std::vector<Letter> letters;

  int n() const { return strands / 2; }
  bool operator==(const BraidWord&) const = default;
};

// Throws InvalidBraid if the strand count or a letter index is illegal.
void validate(const BraidWord& b);

BraidWord parse_braid(const std::string& text, int strands);
std::string print_braid(const BraidWord& b);

nlohmann::json to_json(const BraidWord& b);
BraidWord braid_from_json(const nlohmann::json& j);

int exponent_sum(const BraidWord& b);

struct PlatCrossing {
  int level = 0;     // position of the letter in the word
  int position = 0;  // sigma index k
  int letter_sign = 1;
  int sign = 0;      // oriented crossing sign, 0 when not a knot
};

struct PlatDiagram {
  int strands = 0;
  int components = 0;
  std::vector<PlatCrossing> crossings;
  // Orientation of the strand that starts at top position p (0-based):
  // +1 when it is traversed downward, -1 upward. Empty for links.
  std::vector<int> strand_direction;
  int writhe = 0;

  bool is_knot() const { return components == 1; }
};

// Top position -> bottom position of each strand.
std::vector<int> strand_permutation(const BraidWord& b);

// Closure with the fixed orientation (leftmost top cap, moving down).
PlatDiagram plat_closure(const BraidWord& b);
// Same closure traced with the opposite orientation; used as a self-test.
PlatDiagram plat_closure_reversed(const BraidWord& b);

Q shift_sR(const BraidWord& b);

enum class MoveKind { A, B, C, Stabilize, Destabilize };

struct MoveSpec {
  MoveKind kind = MoveKind::A;
  int power = 1;  // +1 or -1 for A, B, C
  int index = 1;  // i for C_i
};

MoveSpec parse_move(const std::string& text);
std::string print_move(const MoveSpec& m);

BraidWord birman_move(const BraidWord& b, const MoveSpec& m);
BraidWord mirror_braid(const BraidWord& b);

}  // namespace platfloer::braid
