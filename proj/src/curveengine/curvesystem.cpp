#include <platfloer/curveengine/curvesystem.hpp>
#include <platfloer/curveengine/halftwist.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace platfloer::curve {

long iteration_cap() {
  if (const char* env = std::getenv("PLATFLOER_ITER_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1000000;
}

std::string SystemRecord::to_string() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const ComponentRecord& r = components[c];
    out << 'c' << c << (r.center_half == Half::Upper ? 'U' : 'L');
    for (const BranchRecord& b : r.branches) {
      out << " [";
      for (const auto& [s, i] : b.crossings) out << s << '.' << i << ' ';
      out << (b.end.kind == EndKind::Puncture ? "p" + std::to_string(b.end.puncture)
                                              : (b.end.kind == EndKind::Top ? std::string("top") : std::string("bot")))
          << ']';
    }
    out << '\n';
  }
  return out.str();
}

std::size_t SystemRecord::crossings() const {
  std::size_t n = 0;
  for (const ComponentRecord& c : components)
    for (const BranchRecord& b : c.branches) n += b.crossings.size();
  return n;
}

namespace {

Half side(const Point& p) { return p.y >= 0 ? Half::Upper : Half::Lower; }

struct RawCrossing {
  Q x0;
  Q x1;
  int comp;
  int branch;
  int order;
};

}  // namespace

CurveSystem::CurveSystem(PuncturedDisk disk, const std::vector<EmbeddedComponent>& comps) : disk_(disk) {
  seg_.assign(disk_.segments(), {});
  std::vector<RawCrossing> raw;
  comps_.resize(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const EmbeddedComponent& ec = comps[c];
    Component& comp = comps_[c];
    comp.half = side(ec.center);
    if (ec.branches.size() != ec.ends.size()) throw DegenerateInput("branch/terminal count mismatch");
    comp.branches.resize(ec.branches.size());
    for (std::size_t b = 0; b < ec.branches.size(); ++b) {
      Polyline p = simplify(ec.branches[b]);
      if (p.empty() || p.front() != ec.center) throw DegenerateInput("branch does not start at its centre");
      Terminal t = ec.ends[b];
      if (t.kind == EndKind::Puncture) {
        const Point& e = p.back();
        if (e.y != 0 || e.x.get_den() != 1 || e.x < 1 || e.x > disk_.punctures())
          throw DegenerateInput("branch end " + to_string(e) + " is not a puncture");
        t.puncture = static_cast<int>(e.x.get_num().get_si());
      } else {
        Q want = t.kind == EndKind::Top ? disk_.height() : -disk_.height();
        if (p.back().y != want) throw DegenerateInput("branch does not end on the frame");
      }
      comp.branches[b].end = t;
      Half cur = comp.half;
      int order = 0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (t.kind == EndKind::Puncture && i + 2 == p.size()) break;
        const Point& a = p[i];
        const Point& q = p[i + 1];
        Half hq = side(q);
        if (hq == cur) continue;
        Q dy = q.y - a.y;
        Q x0 = a.x + (q.x - a.x) * (-a.y) / dy;
        Q x1 = -(q.x - a.x) / dy;
        raw.push_back({x0, x1, static_cast<int>(c), static_cast<int>(b), order++});
        cur = hq;
      }
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawCrossing& a, const RawCrossing& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    return a.x1 < b.x1;
  });
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    if (raw[i].x0 == raw[i + 1].x0 && raw[i].x1 == raw[i + 1].x1)
      throw DegenerateInput("two curves cross the axis at the same point");
  // Branch order is traversal order; gather per branch first.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> per(comps_.size());
  for (std::size_t c = 0; c < comps_.size(); ++c) per[c].resize(comps_[c].branches.size());
  for (const RawCrossing& r : raw) {
    Z fl = r.x0.get_num() / r.x0.get_den();
    if (r.x0 < 0) fl -= 1;
    if (Q(fl) == r.x0 && fl >= 1 && fl <= disk_.punctures())
      throw DegenerateInput("curve passes through a puncture");
    if (fl < 0 || fl > disk_.punctures()) throw DegenerateInput("crossing outside the disk");
    int s = static_cast<int>(fl.get_si());
    int id = new_point(s, r.comp, r.branch);
    per[r.comp][r.branch].push_back({r.order, id});
  }
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (std::size_t b = 0; b < comps_[c].branches.size(); ++b) {
      auto& v = per[c][b];
      std::sort(v.begin(), v.end());
      for (const auto& [o, id] : v) comps_[c].branches[b].pts.push_back(id);
    }
}

int CurveSystem::new_point(int segment, int comp, int branch) {
  int id = static_cast<int>(pts_.size());
  pts_.push_back({segment, comp, branch, true});
  seg_[segment].push_back(id);
  return id;
}

bool CurveSystem::reduce_once() {
  const int np = static_cast<int>(pts_.size());
  std::vector<int> seg_pos(np, -1), br_pos(np, -1);
  for (auto& s : seg_)
    for (std::size_t i = 0; i < s.size(); ++i) seg_pos[s[i]] = static_cast<int>(i);
  for (auto& c : comps_)
    for (auto& b : c.branches)
      for (std::size_t i = 0; i < b.pts.size(); ++i) br_pos[b.pts[i]] = static_cast<int>(i);

  auto erase_pt = [&](int id) {
    auto& s = seg_[pts_[id].segment];
    s.erase(std::find(s.begin(), s.end(), id));
    auto& b = comps_[pts_[id].comp].branches[pts_[id].branch].pts;
    b.erase(std::find(b.begin(), b.end(), id));
    pts_[id].alive = false;
  };

  // Bigon between one branch and the axis.
  for (auto& s : seg_)
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      int p = s[i], q = s[i + 1];
      if (pts_[p].comp == pts_[q].comp && pts_[p].branch == pts_[q].branch && std::abs(br_pos[p] - br_pos[q]) == 1) {
        erase_pt(p);
        erase_pt(q);
        return true;
      }
    }

  auto next_to_puncture = [&](int id, int mu) {
    int s = pts_[id].segment;
    const auto& v = seg_[s];
    return (s == mu - 1 && v.back() == id) || (s == mu && v.front() == id);
  };

  // Half bigon at the puncture where a branch ends.
  for (auto& c : comps_)
    for (auto& b : c.branches) {
      if (b.end.kind != EndKind::Puncture || b.pts.empty()) continue;
      if (next_to_puncture(b.pts.back(), b.end.puncture)) {
        erase_pt(b.pts.back());
        return true;
      }
    }

  // Moving a centre across the axis.
  struct Item {
    int point = -1;     // first crossing, or
    int puncture = 0;   // direct end at a puncture
  };
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
      Component& c = comps_[ci];
      const int nb = static_cast<int>(c.branches.size());
      std::vector<Item> items(nb);
      for (int b = 0; b < nb; ++b) {
        if (!c.branches[b].pts.empty())
          items[b].point = c.branches[b].pts.front();
        else if (c.branches[b].end.kind == EndKind::Puncture)
          items[b].puncture = c.branches[b].end.puncture;
      }
      for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) {
          const Item& ia = items[a];
          const Item& ib = items[b];
          int seg = -1, at = -1;
          bool adjacent = false;
          if (ia.point >= 0 && ib.point >= 0) {
            if (pts_[ia.point].segment == pts_[ib.point].segment &&
                std::abs(seg_pos[ia.point] - seg_pos[ib.point]) == 1) {
              adjacent = true;
              seg = pts_[ia.point].segment;
              at = std::min(seg_pos[ia.point], seg_pos[ib.point]);
            }
          } else if (ia.point >= 0 && ib.puncture > 0) {
            adjacent = next_to_puncture(ia.point, ib.puncture);
            seg = pts_[ia.point].segment;
            at = seg_pos[ia.point];
          } else if (ib.point >= 0 && ia.puncture > 0) {
            adjacent = next_to_puncture(ib.point, ia.puncture);
            seg = pts_[ib.point].segment;
            at = seg_pos[ib.point];
          } else if (ia.puncture > 0 && ib.puncture > 0) {
            int lo = std::min(ia.puncture, ib.puncture);
            adjacent = std::abs(ia.puncture - ib.puncture) == 1 && seg_[lo].empty();
          }
          if (!adjacent) continue;
          int lost = (ia.point >= 0) + (ib.point >= 0);
          // A branch running straight to a puncture at the end of the
          // crossed interval needs no new crossing.
          std::vector<bool> free_end(nb, false);
          int gained = 0;
          for (int o = 0; o < nb; ++o) {
            if (o == a || o == b) continue;
            const int mu = items[o].puncture;
            if (mu > 0 && seg >= 0) {
              const int left = static_cast<int>(seg_[seg].size()) - lost;
              free_end[o] = (seg == mu - 1 && at == left) || (seg == mu && at == 0);
            }
            if (!free_end[o]) ++gained;
          }
          bool apply = false;
          if (pass == 0) {
            apply = gained < lost;
          } else if (gained == lost) {
            if (nb == 3) {
              // Trade a tine crossing for a handle crossing: only tine
              // crossings meet the alpha arcs.
              apply = lost == 1 && a != 2 && b != 2;
            } else if (nb == 2 && lost == 0) {
              apply = c.half == Half::Lower;
            }
          }
          if (!apply) continue;
          if (ia.point >= 0) erase_pt(ia.point);
          if (ib.point >= 0) erase_pt(ib.point);
          c.half = flip(c.half);
          for (int o = 0; o < nb; ++o) {
            if (o == a || o == b || free_end[o]) continue;
            int id = static_cast<int>(pts_.size());
            pts_.push_back({seg, static_cast<int>(ci), o, true});
            seg_[seg].insert(seg_[seg].begin() + at, id);
            c.branches[o].pts.insert(c.branches[o].pts.begin(), id);
          }
          return true;
        }
    }

  // The centre of an arc is not a vertex: slide it along branch 0 until that
  // branch meets no axis point.
  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    Component& c = comps_[ci];
    if (c.branches.size() != 2 || c.branches[0].pts.empty()) continue;
    int id = c.branches[0].pts.front();
    c.branches[0].pts.erase(c.branches[0].pts.begin());
    pts_[id].branch = 1;
    c.branches[1].pts.insert(c.branches[1].pts.begin(), id);
    c.half = flip(c.half);
    return true;
  }
  return false;
}

void CurveSystem::tighten() {
  const long cap = iteration_cap();
  steps_ = 0;
  while (reduce_once()) {
    if (++steps_ > cap) throw DegenerateInput("tightening exceeded the iteration cap");
  }
  // Compact dead points so ids stay small.
  std::vector<int> remap(pts_.size(), -1);
  std::vector<AxisPt> live;
  for (std::size_t i = 0; i < pts_.size(); ++i)
    if (pts_[i].alive) {
      remap[i] = static_cast<int>(live.size());
      live.push_back(pts_[i]);
    }
  pts_ = std::move(live);
  for (auto& s : seg_)
    for (int& id : s) id = remap[id];
  for (auto& c : comps_)
    for (auto& b : c.branches)
      for (int& id : b.pts) id = remap[id];
}

SystemRecord CurveSystem::record() const {
  std::vector<int> rank(pts_.size(), -1);
  for (const auto& s : seg_)
    for (std::size_t i = 0; i < s.size(); ++i) rank[s[i]] = static_cast<int>(i);
  SystemRecord r;
  for (const Component& c : comps_) {
    ComponentRecord cr;
    cr.center_half = c.half;
    for (const Branch& b : c.branches) {
      BranchRecord br;
      br.end = b.end;
      for (int id : b.pts) br.crossings.push_back({pts_[id].segment, rank[id]});
      cr.branches.push_back(br);
    }
    r.components.push_back(cr);
  }
  return r;
}

namespace {

struct PieceEnd {
  bool frame = false;
  Q x;
};

struct Piece {
  Half half = Half::Upper;
  std::vector<PieceEnd> ends;
  bool arch = false;
  Q lo, hi;
  int level = 0;
  bool center = false;
  bool stem = false;   // centre stem down to the middle end
  bool mast = false;   // a frame end
  Q xmast;             // x of the mast or stem
};

}  // namespace

std::vector<EmbeddedComponent> CurveSystem::embed() const {
  const Q H = disk_.height();
  std::vector<Q> X(pts_.size());
  for (int s = 0; s < disk_.segments(); ++s) {
    const auto& v = seg_[s];
    for (std::size_t i = 0; i < v.size(); ++i) X[v[i]] = Q(s) + make_q(static_cast<long>(i + 1), static_cast<long>(v.size() + 1));
  }

  auto item_end = [&](const Branch& b) -> PieceEnd {
    if (!b.pts.empty()) return {false, X[b.pts.front()]};
    if (b.end.kind == EndKind::Puncture) return {false, Q(b.end.puncture)};
    return {true, Q(0)};
  };
  auto half_after = [](Half h, std::size_t k) { return k % 2 ? flip(h) : h; };

  std::vector<Piece> pieces;
  // index of the centre piece per component, and of the pieces along each branch
  std::vector<int> center_piece(comps_.size());
  std::vector<std::vector<std::vector<int>>> branch_pieces(comps_.size());

  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    const Component& c = comps_[ci];
    Piece cp;
    cp.half = c.half;
    cp.center = true;
    for (const Branch& b : c.branches) cp.ends.push_back(item_end(b));
    center_piece[ci] = static_cast<int>(pieces.size());
    pieces.push_back(cp);
    branch_pieces[ci].resize(c.branches.size());
    for (std::size_t bi = 0; bi < c.branches.size(); ++bi) {
      const Branch& b = c.branches[bi];
      for (std::size_t i = 0; i < b.pts.size(); ++i) {
        Piece p;
        p.half = half_after(c.half, i + 1);
        p.ends.push_back({false, X[b.pts[i]]});
        if (i + 1 < b.pts.size())
          p.ends.push_back({false, X[b.pts[i + 1]]});
        else if (b.end.kind == EndKind::Puncture)
          p.ends.push_back({false, Q(b.end.puncture)});
        else
          p.ends.push_back({true, Q(0)});
        branch_pieces[ci][bi].push_back(static_cast<int>(pieces.size()));
        pieces.push_back(p);
      }
      Half last = half_after(c.half, b.pts.size());
      if (b.end.kind == EndKind::Top && last != Half::Upper) throw InternalInconsistency("handle reaches the top from below");
      if (b.end.kind == EndKind::Bottom && last != Half::Lower) throw InternalInconsistency("handle reaches the bottom from above");
    }
  }

  for (Piece& p : pieces) {
    std::vector<Q> xs;
    for (const PieceEnd& e : p.ends) {
      if (e.frame)
        p.mast = true;
      else
        xs.push_back(e.x);
    }
    std::sort(xs.begin(), xs.end());
    if (xs.size() >= 2) {
      p.arch = true;
      p.lo = xs.front();
      p.hi = xs.back();
    }
    if (xs.size() == 3) {
      p.stem = true;
      p.xmast = xs[1];
    } else if (p.mast) {
      if (xs.size() == 2)
        p.xmast = (p.lo + p.hi) / 2;
      else if (xs.size() == 1)
        p.xmast = xs[0];
      else
        throw InternalInconsistency("piece with no axis end");
    } else if (xs.size() < 2) {
      throw InternalInconsistency("degenerate piece");
    }
  }

  int max_level = 0;
  for (Half h : {Half::Upper, Half::Lower}) {
    std::vector<int> arches;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].half == h && pieces[i].arch) arches.push_back(static_cast<int>(i));
    std::sort(arches.begin(), arches.end(),
              [&](int a, int b) { return pieces[a].hi - pieces[a].lo < pieces[b].hi - pieces[b].lo; });
    for (std::size_t i = 0; i < arches.size(); ++i) {
      Piece& A = pieces[arches[i]];
      int lvl = 1;
      for (std::size_t j = 0; j < i; ++j) {
        const Piece& B = pieces[arches[j]];
        bool inside = A.lo < B.lo && B.hi < A.hi;
        bool apart = B.hi < A.lo || A.hi < B.lo;
        if (!inside && !apart) throw InternalInconsistency("arches interleave");
        if (inside) lvl = std::max(lvl, B.level + 1);
      }
      A.level = lvl;
      max_level = std::max(max_level, lvl);
    }
    // Vertical stems and masts must not pass through another arch.
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Piece& P = pieces[i];
      if (P.half != h || !(P.stem || P.mast)) continue;
      for (int a : arches) {
        if (a == static_cast<int>(i)) continue;
        const Piece& B = pieces[a];
        if (!(B.lo < P.xmast && P.xmast < B.hi)) continue;
        bool blocks = P.mast ? (!P.arch || B.level > P.level) : (B.level < P.level && P.arch && B.lo > P.lo && B.hi < P.hi);
        if (P.mast && P.arch && B.level < P.level) blocks = false;
        if (blocks) throw InternalInconsistency("vertical segment crosses an arch");
      }
    }
  }

  const Q delta = H / Q(max_level + 1);
  auto ylevel = [&](const Piece& p) -> Q { return (p.half == Half::Upper ? 1 : -1) * Q(p.level) * delta; };
  auto yframe = [&](Half h) -> Q { return h == Half::Upper ? H : -H; };

  std::vector<EmbeddedComponent> out(comps_.size());
  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    const Component& c = comps_[ci];
    const Piece& cp = pieces[center_piece[ci]];
    EmbeddedComponent& ec = out[ci];
    Point J;
    if (cp.arch)
      J = {cp.stem ? cp.xmast : (cp.mast ? cp.xmast : (cp.lo + cp.hi) / 2), ylevel(cp)};
    else
      J = {cp.xmast, yframe(cp.half) / 2};
    ec.center = J;
    for (std::size_t bi = 0; bi < c.branches.size(); ++bi) {
      const Branch& b = c.branches[bi];
      Polyline path{J};
      PieceEnd e = item_end(b);
      if (e.frame) {
        path.push_back({J.x, yframe(cp.half)});
      } else if (cp.stem && e.x == cp.xmast) {
        path.push_back({e.x, 0});
      } else {
        path.push_back({e.x, J.y});
        path.push_back({e.x, 0});
      }
      for (std::size_t i = 0; i < b.pts.size(); ++i) {
        const Piece& p = pieces[branch_pieces[ci][bi][i]];
        Q x0 = X[b.pts[i]];
        if (p.ends[1].frame) {
          path.push_back({x0, yframe(p.half)});
        } else {
          Q y = ylevel(p);
          path.push_back({x0, y});
          path.push_back({p.ends[1].x, y});
          path.push_back({p.ends[1].x, 0});
        }
      }
      ec.branches.push_back(simplify(path));
      ec.ends.push_back(b.end);
    }
  }
  return out;
}

CurveSystem push_through(const PuncturedDisk& disk, const std::vector<EmbeddedComponent>& comps, int k, int sign) {
  HalfTwist tw(k, sign);
  std::vector<EmbeddedComponent> mapped;
  mapped.reserve(comps.size());
  for (const EmbeddedComponent& c : comps) {
    EmbeddedComponent m;
    m.center = tw.map_point(c.center);
    for (const Polyline& b : c.branches) m.branches.push_back(tw.map(b));
    m.ends = c.ends;
    mapped.push_back(std::move(m));
  }
  CurveSystem sys(disk, mapped);
  sys.tighten();
  return sys;
}

}  // namespace platfloer::curve
