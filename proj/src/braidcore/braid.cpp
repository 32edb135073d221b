#include <platfloer/braidcore/braid.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace platfloer::braid {

void validate(const BraidWord& b) {
  if (b.strands < 2 || b.strands % 2 != 0)
    throw InvalidBraid("strand count must be even and at least 2, got " + std::to_string(b.strands));
  for (const Letter& l : b.letters) {
    if (l.index < 1 || l.index > b.strands - 1)
      throw InvalidBraid("generator s" + std::to_string(l.index) + " out of range for " +
                         std::to_string(b.strands) + " strands");
    if (l.sign != 1 && l.sign != -1) throw InvalidBraid("letter sign must be +1 or -1");
  }
}

namespace {

bool read_int(const std::string& s, std::size_t& i, long& out, bool allow_sign) {
  std::size_t start = i;
  bool neg = false;
  if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  std::size_t digits = i;
  long v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    v = v * 10 + (s[i] - '0');
    if (v > 1000000) return false;
    ++i;
  }
  if (i == digits) {
    i = start;
    return false;
  }
  out = neg ? -v : v;
  return true;
}

}  // namespace

BraidWord parse_braid(const std::string& text, int strands) {
  BraidWord b;
  b.strands = strands;
  if (strands < 2 || strands % 2 != 0)
    throw InvalidBraid("strand count must be even and at least 2, got " + std::to_string(strands));

  std::size_t i = 0;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t tok = i;
    if (text[i] != 's') throw ParseError("malformed token at offset " + std::to_string(tok));
    ++i;
    long k = 0;
    if (!read_int(text, i, k, false)) throw ParseError("missing generator index at offset " + std::to_string(tok));
    long m = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      if (!read_int(text, i, m, true)) throw ParseError("missing exponent at offset " + std::to_string(tok));
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != 's')
      throw ParseError("malformed token at offset " + std::to_string(tok));
    if (k < 1 || k > strands - 1)
      throw InvalidBraid("generator s" + std::to_string(k) + " out of range for " + std::to_string(strands) +
                         " strands");
    int sign = m < 0 ? -1 : 1;
    for (long r = 0; r < (m < 0 ? -m : m); ++r) b.letters.push_back({static_cast<int>(k), sign});
  }
  return b;
}

std::string print_braid(const BraidWord& b) {
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < b.letters.size()) {
    std::size_t j = i;
    while (j < b.letters.size() && b.letters[j] == b.letters[i]) ++j;
    long m = static_cast<long>(j - i) * b.letters[i].sign;
    if (!first) out << ' ';
    first = false;
    out << 's' << b.letters[i].index;
    if (m != 1) out << '^' << m;
    i = j;
  }
  return out.str();
}

nlohmann::json to_json(const BraidWord& b) {
  nlohmann::json letters = nlohmann::json::array();
  for (const Letter& l : b.letters) letters.push_back({l.index, l.sign});
  return {{"strands", b.strands}, {"letters", letters}};
}

BraidWord braid_from_json(const nlohmann::json& j) {
  BraidWord b;
  try {
    b.strands = j.at("strands").get<int>();
    for (const auto& l : j.at("letters")) b.letters.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad braid json: ") + e.what());
  }
  validate(b);
  return b;
}

int exponent_sum(const BraidWord& b) {
  int s = 0;
  for (const Letter& l : b.letters) s += l.sign;
  return s;
}

std::vector<int> strand_permutation(const BraidWord& b) {
  std::vector<int> at(b.strands);  // at[pos] = strand currently at pos
  for (int p = 0; p < b.strands; ++p) at[p] = p;
  for (const Letter& l : b.letters) std::swap(at[l.index - 1], at[l.index]);
  std::vector<int> perm(b.strands);
  for (int p = 0; p < b.strands; ++p) perm[at[p]] = p;
  return perm;
}

namespace {

int cross_sign(int ox, int oy, int ux, int uy) {
  long c = static_cast<long>(ox) * uy - static_cast<long>(oy) * ux;
  return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

// Traces the closure. For the component through top position `start`, the
// first strand is traversed from the top cap at `start` downward.
PlatDiagram trace(const BraidWord& b, int start) {
  validate(b);
  PlatDiagram d;
  d.strands = b.strands;
  const int m = b.strands;
  std::vector<int> perm = strand_permutation(b);
  std::vector<int> inv(m);
  for (int p = 0; p < m; ++p) inv[perm[p]] = p;

  std::vector<int> dir(m, 0);
  std::vector<int> comp(m, -1);
  auto walk = [&](int s0, int c) {
    int s = s0;
    while (comp[s] < 0) {
      comp[s] = c;
      dir[s] = 1;
      int bottom_partner = perm[s] ^ 1;
      int up = inv[bottom_partner];
      comp[up] = c;
      dir[up] = -1;
      s = up ^ 1;
    }
  };
  walk(start, 0);
  int comps = 1;
  for (int s = 0; s < m; ++s)
    if (comp[s] < 0) walk(s, comps++);
  d.components = comps;

  std::vector<int> at(m);
  for (int p = 0; p < m; ++p) at[p] = p;
  for (std::size_t lv = 0; lv < b.letters.size(); ++lv) {
    const Letter& l = b.letters[lv];
    int a = at[l.index - 1];  // moves right
    int c = at[l.index];      // moves left
    PlatCrossing x;
    x.level = static_cast<int>(lv);
    x.position = l.index;
    x.letter_sign = l.sign;
    if (comps == 1) {
      // Plane coordinates with y pointing up; the braid runs downward.
      int ax = dir[a], ay = -dir[a];
      int cx = -dir[c], cy = -dir[c];
      x.sign = l.sign > 0 ? cross_sign(ax, ay, cx, cy) : cross_sign(cx, cy, ax, ay);
      d.writhe += x.sign;
    }
    d.crossings.push_back(x);
    std::swap(at[l.index - 1], at[l.index]);
  }
  if (comps == 1) d.strand_direction = dir;
  return d;
}

}  // namespace

PlatDiagram plat_closure(const BraidWord& b) { return trace(b, 0); }

PlatDiagram plat_closure_reversed(const BraidWord& b) { return trace(b, 1); }

Q shift_sR(const BraidWord& b) {
  PlatDiagram d = plat_closure(b);
  if (!d.is_knot())
    throw NotAKnot("plat closure has " + std::to_string(d.components) + " components");
  Q s(exponent_sum(b) - d.writhe - b.strands, 4);
  s.canonicalize();
  return s;
}

MoveSpec parse_move(const std::string& text) {
  MoveSpec m;
  std::string t = text;
  auto strip_power = [&](std::string& s) {
    if (s.size() >= 3 && s.compare(s.size() - 3, 3, "^-1") == 0) {
      m.power = -1;
      s.resize(s.size() - 3);
    } else if (!s.empty() && s.back() == '-') {
      m.power = -1;
      s.pop_back();
    }
  };
  strip_power(t);
  if (t == "A") {
    m.kind = MoveKind::A;
  } else if (t == "B") {
    m.kind = MoveKind::B;
  } else if (t == "stab") {
    m.kind = MoveKind::Stabilize;
  } else if (t == "destab") {
    m.kind = MoveKind::Destabilize;
  } else if (t.size() >= 2 && t[0] == 'C') {
    m.kind = MoveKind::C;
    std::size_t i = 1;
    long v = 0;
    if (!read_int(t, i, v, false) || i != t.size()) throw ParseError("bad move '" + text + "'");
    m.index = static_cast<int>(v);
  } else {
    throw ParseError("unknown move '" + text + "'");
  }
  if (m.power != 1 && (m.kind == MoveKind::Stabilize || m.kind == MoveKind::Destabilize))
    throw ParseError("(de)stabilization takes no power");
  return m;
}

std::string print_move(const MoveSpec& m) {
  std::string s;
  switch (m.kind) {
    case MoveKind::A: s = "A"; break;
    case MoveKind::B: s = "B"; break;
    case MoveKind::C: s = "C" + std::to_string(m.index); break;
    case MoveKind::Stabilize: return "stab";
    case MoveKind::Destabilize: return "destab";
  }
  if (m.power < 0) s += "^-1";
  return s;
}

namespace {

void append_power(BraidWord& b, std::vector<Letter> word, int power) {
  if (power < 0) {
    std::reverse(word.begin(), word.end());
    for (Letter& l : word) l.sign = -l.sign;
  }
  b.letters.insert(b.letters.end(), word.begin(), word.end());
}

}  // namespace

BraidWord birman_move(const BraidWord& b, const MoveSpec& m) {
  validate(b);
  BraidWord out = b;
  const int n = b.n();
  switch (m.kind) {
    case MoveKind::A:
      append_power(out, {{1, 1}}, m.power);
      break;
    case MoveKind::B:
      if (b.strands < 4) throw MoveError("move B needs at least 4 strands");
      append_power(out, {{2, 1}, {1, 1}, {1, 1}, {2, 1}}, m.power);
      break;
    case MoveKind::C: {
      int i = m.index;
      if (i < 1 || i > n - 1)
        throw MoveError("C index " + std::to_string(i) + " out of range 1.." + std::to_string(n - 1));
      append_power(out, {{2 * i, 1}, {2 * i - 1, 1}, {2 * i + 1, 1}, {2 * i, 1}}, m.power);
      break;
    }
    case MoveKind::Stabilize:
      out.strands += 2;
      out.letters.push_back({b.strands, 1});
      break;
    case MoveKind::Destabilize: {
      if (b.strands < 4 || b.letters.empty() || b.letters.back() != Letter{b.strands - 2, 1})
        throw MoveError("destabilization needs a word ending in s" + std::to_string(b.strands - 2));
      out.letters.pop_back();
      out.strands -= 2;
      for (const Letter& l : out.letters)
        if (l.index > out.strands - 1) throw MoveError("destabilized word uses the removed strands");
      break;
    }
  }
  return out;
}

BraidWord mirror_braid(const BraidWord& b) {
  validate(b);
  BraidWord out = b;
  for (Letter& l : out.letters) {
    l.index = b.strands - l.index;
    l.sign = -l.sign;
  }
  return out;
}

}  // namespace platfloer::braid
