#include <platfloer/forkdiagram/fork.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace platfloer::fork {

using curve::EmbeddedComponent;
using curve::EndKind;
using curve::PuncturedDisk;

std::vector<EmbeddedComponent> standard_fork(int n) {
  const PuncturedDisk disk{n};
  const Q h = make_q(1, 2);
  std::vector<EmbeddedComponent> out;
  for (int k = 1; k <= n; ++k) {
    Point J{make_q(4 * k - 1, 2), h};
    EmbeddedComponent c;
    c.center = J;
    c.branches.push_back({J, {Q(2 * k - 1), h}, {Q(2 * k - 1), Q(0)}});
    c.branches.push_back({J, {Q(2 * k), h}, {Q(2 * k), Q(0)}});
    c.branches.push_back({J, {J.x, disk.height()}});
    c.ends = {{EndKind::Puncture, 2 * k - 1}, {EndKind::Puncture, 2 * k}, {EndKind::Top, 0}};
    out.push_back(std::move(c));
  }
  return out;
}

curve::CurveSystem push_forks(const braid::BraidWord& b, const Conventions& conv) {
  const PuncturedDisk disk{b.n()};
  curve::CurveSystem cs(disk, standard_fork(disk.n));
  cs.tighten();
  for (const braid::Letter& l : b.letters) cs = curve::push_through(disk, cs.embed(), l.index, l.sign * conv.twist);
  return cs;
}

namespace {

Point unit(const Point& d) { return {Q(sgn(d.x)), Q(sgn(d.y))}; }
Point left_normal(const Point& d) { return {-d.y, d.x}; }
Point right_normal(const Point& d) { return {d.y, -d.x}; }

// Offset of a rectilinear path (first vertex the centre, last a puncture) on
// one side. Starts 2 eps out along the first segment, ends level with the puncture.
Polyline offset_branch(const Polyline& p, const Q& eps, bool left) {
  auto normal = [&](const Point& d) { return left ? left_normal(d) : right_normal(d); };
  Polyline out;
  Point d0 = unit(p[1] - p[0]);
  out.push_back(p[0] + (2 * eps) * d0 + eps * normal(d0));
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    Point din = unit(p[i] - p[i - 1]);
    Point dout = unit(p[i + 1] - p[i]);
    if (din == dout)
      continue;
    if (dot(din, dout) != 0) throw InternalInconsistency("beta doubles back on itself");
    out.push_back(p[i] + eps * (normal(din) + normal(dout)));
  }
  Point dl = unit(p.back() - p[p.size() - 2]);
  out.push_back(p.back() + eps * normal(dl));
  return out;
}

// Out along one side of the branch, round the puncture, back along the other.
Polyline lobe(const Polyline& branch, const Q& eps, bool out_left) {
  Polyline go = offset_branch(branch, eps, out_left);
  Polyline back = offset_branch(branch, eps, !out_left);
  Point dl = unit(branch.back() - branch[branch.size() - 2]);
  Polyline l = go;
  l.push_back(go.back() + eps * dl);
  l.push_back(back.back() + eps * dl);
  l.insert(l.end(), back.rbegin(), back.rend());
  return l;
}

Q min_gap(std::vector<Q> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  Q g(1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) g = std::min(g, Q(v[i + 1] - v[i]));
  return g;
}

int segment_of(const Q& x) {
  Z f = x.get_num() / x.get_den();
  return static_cast<int>(f.get_si());
}

}  // namespace

ForkDiagram::ForkDiagram(const braid::BraidWord& b, const Conventions& conv)
    : braid_(b), conv_(conv), disk_{b.n()} {
  braid::PlatDiagram plat = braid::plat_closure(b);
  if (!plat.is_knot()) throw NotAKnot("plat closure has " + std::to_string(plat.components) + " components");
  curve::CurveSystem cs = push_forks(b, conv);
  forks_ = cs.embed();

  std::vector<Q> xs{Q(0), disk_.width()}, ys{Q(0), disk_.height()};
  for (int p = 1; p <= disk_.punctures(); ++p) xs.push_back(Q(p));
  for (const EmbeddedComponent& c : forks_)
    for (const Polyline& br : c.branches)
      for (const Point& q : br) {
        xs.push_back(q.x);
        ys.push_back(abs(q.y));
      }
  eps_ = std::min(min_gap(xs), min_gap(ys)) / 8;

  Q last_top = -1;
  for (const EmbeddedComponent& c : forks_) {
    if (c.ends.size() != 3 || c.ends[0].kind != EndKind::Puncture || c.ends[1].kind != EndKind::Puncture ||
        c.ends[2].kind != EndKind::Top)
      throw InternalInconsistency("fork component lost its shape");
    Polyline beta(c.branches[0].rbegin(), c.branches[0].rend());
    beta_center_.push_back(beta.size() - 1);
    beta.insert(beta.end(), c.branches[1].begin() + 1, c.branches[1].end());
    betas_.push_back(std::move(beta));
    handles_.emplace_back(c.branches[2].rbegin(), c.branches[2].rend());
    if (handles_.back().front().x <= last_top) throw InternalInconsistency("handles reach the frame out of order");
    last_top = handles_.back().front().x;
  }

  // alpha and beta arcs together must trace the plat closure.
  std::vector<int> parent(disk_.punctures() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int k = 1; k <= n(); ++k) {
    parent[find(2 * k - 1)] = find(2 * k);
    parent[find(forks_[k - 1].ends[0].puncture)] = find(forks_[k - 1].ends[1].puncture);
  }
  std::set<int> roots;
  for (int p = 1; p <= disk_.punctures(); ++p) roots.insert(find(p));
  if (static_cast<int>(roots.size()) != plat.components)
    throw InternalInconsistency("fork diagram does not close up to the plat closure");

  build_eights();
  collect_points();
  assign_primes();
  name_points();
  enumerate();
}

void ForkDiagram::build_eights() {
  for (int k = 0; k < n(); ++k) {
    const EmbeddedComponent& c = forks_[k];
    const Polyline& tine_minus = c.branches[0];
    const Polyline& tine_plus = c.branches[1];
    FigureEight e;
    Polyline raw{c.center};
    // The lobe round the tine+ end turns counter-clockwise: out on the right.
    Polyline a = lobe(tine_plus, eps_, false);
    raw.insert(raw.end(), a.begin(), a.end());
    std::size_t second = raw.size();
    raw.push_back(c.center);
    Polyline bl = lobe(tine_minus, eps_, true);
    raw.insert(raw.end(), bl.begin(), bl.end());

    // Insert the crossings with the real axis as vertices.
    Polyline loop;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (i == second) e.second_pass = loop.size();
      const Point& p = raw[i];
      const Point& q = raw[(i + 1) % raw.size()];
      loop.push_back(p);
      if (sgn(p.y) * sgn(q.y) < 0) loop.push_back({p.x + (q.x - p.x) * (-p.y) / (q.y - p.y), Q(0)});
    }
    for (std::size_t i = 0; i < loop.size(); ++i)
      if (loop[i].y == 0) e.axis_vertices.push_back(i);
    e.loop = std::move(loop);
    eights_.push_back(std::move(e));
  }
}

void ForkDiagram::collect_points() {
  for (int j = 1; j <= n(); ++j) {
    const Polyline& B = betas_[j - 1];
    for (std::size_t i = 1; i + 1 < B.size(); ++i) {
      if (B[i].y != 0) continue;
      if (sgn(B[i - 1].y) * sgn(B[i + 1].y) >= 0 || B[i - 1].x != B[i].x || B[i + 1].x != B[i].x)
        throw DegenerateInput("beta meets the axis without crossing it vertically");
      int s = segment_of(B[i].x);
      if (s % 2 == 1) base_.push_back({(s + 1) / 2, j, B[i].x, false});
    }
    for (const Point& end : {B.front(), B.back()}) {
      int p = segment_of(end.x);
      base_.push_back({(p + 1) / 2, j, end.x, true});
    }
  }
  std::sort(base_.begin(), base_.end(), [](const BasePoint& a, const BasePoint& b) { return a.x < b.x; });

  struct Found {
    Q x;
    int eight;
    std::size_t vertex;
  };
  std::vector<Found> found;
  for (int j = 1; j <= n(); ++j)
    for (std::size_t v : eights_[j - 1].axis_vertices) {
      const Q& x = eights_[j - 1].loop[v].x;
      if (segment_of(x) % 2 == 1) found.push_back({x, j, v});
    }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.x < b.x; });
  for (const Found& f : found) {
    ZPoint z;
    z.x = f.x;
    z.eight = f.eight;
    z.tine = (segment_of(f.x) + 1) / 2;
    for (std::size_t b = 0; b < base_.size(); ++b)
      if (base_[b].beta == f.eight && base_[b].tine == z.tine && abs(base_[b].x - f.x) == eps_) {
        if (z.base >= 0) throw InternalInconsistency("figure-eight point over two base points");
        z.base = static_cast<int>(b);
      }
    if (z.base < 0) throw InternalInconsistency("figure-eight point with no base point");
    z_.push_back(z);
    z_vertex_.push_back(f.vertex);
  }
  std::vector<int> count(base_.size(), 0);
  for (const ZPoint& z : z_) ++count[z.base];
  for (std::size_t b = 0; b < base_.size(); ++b)
    if (count[b] != (base_[b].puncture ? 1 : 2))
      throw InternalInconsistency("doubling failed at x = " + to_string(base_[b].x));
}

void ForkDiagram::assign_primes() {
  std::vector<Point> punctures;
  for (int p = 1; p <= disk_.punctures(); ++p) punctures.push_back(disk_.puncture(p));
  std::map<int, std::vector<int>> by_base;
  for (std::size_t i = 0; i < z_.size(); ++i) by_base[z_[i].base].push_back(static_cast<int>(i));
  for (auto& [b, ids] : by_base) {
    if (ids.size() != 2) continue;
    int a = ids[0], c = ids[1];
    const Polyline& loop = eights_[z_[a].eight - 1].loop;
    std::size_t from = z_vertex_[a], to = z_vertex_[c];
    Polyline path;
    for (std::size_t i = from;; i = (i + 1) % loop.size()) {
      path.push_back(loop[i]);
      if (i == to) break;
    }
    long w = curve::winding_number(path, punctures);
    if (w != 1 && w != -1) throw InternalInconsistency("loop test gave winding " + std::to_string(w));
    bool c_primed = (w == 1) != conv_.swap_primes;
    z_[c_primed ? c : a].primed = true;
  }
}

void ForkDiagram::name_points() {
  static const std::string letters = "stuvwabcdefghijklmnopqr";
  std::map<int, std::string> pair_name;
  for (std::size_t b = 0; b < base_.size(); ++b) {
    if (base_[b].puncture) continue;
    std::size_t k = pair_name.size();
    pair_name[static_cast<int>(b)] = k < letters.size() ? std::string(1, letters[k]) : "z" + std::to_string(k);
  }
  for (ZPoint& z : z_) {
    const BasePoint& b = base_[z.base];
    if (b.puncture)
      z.name = "x" + to_string(b.x);
    else
      z.name = pair_name[z.base] + (z.primed ? "'" : "");
  }
}

void ForkDiagram::enumerate() {
  const int m = n();
  std::vector<std::vector<std::vector<int>>> on(m, std::vector<std::vector<int>>(m));
  for (std::size_t i = 0; i < z_.size(); ++i) on[z_[i].tine - 1][z_[i].eight - 1].push_back(static_cast<int>(i));
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> tuples;
  do {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == m) {
        tuples.push_back(cur);
        return;
      }
      for (int z : on[i][perm[i]]) {
        cur.push_back(z);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(tuples.begin(), tuples.end());
  for (auto& t : tuples) {
    Generator g;
    g.points = t;
    for (int z : t) g.name += z_[z].name;
    gens_.push_back(std::move(g));
  }
}

std::vector<std::vector<long>> ForkDiagram::pair_counts() const {
  std::vector<std::vector<long>> c(n(), std::vector<long>(n(), 0));
  for (const ZPoint& z : z_) ++c[z.tine - 1][z.eight - 1];
  return c;
}

Polyline ForkDiagram::eight_path_to(int z) const {
  const FigureEight& e = eights_[z_[z].eight - 1];
  std::size_t v = z_vertex_[z];
  return Polyline(e.loop.begin(), e.loop.begin() + static_cast<std::ptrdiff_t>(v) + 1);
}

Polyline ForkDiagram::beta_path_to(int base) const {
  const BasePoint& b = base_[base];
  const Polyline& B = betas_[b.beta - 1];
  const std::size_t c = beta_center_[b.beta - 1];
  Point target{b.x, Q(0)};
  auto it = std::find(B.begin(), B.end(), target);
  if (it == B.end()) throw InternalInconsistency("base point not found on its beta arc");
  const std::size_t at = static_cast<std::size_t>(it - B.begin());
  Polyline out;
  if (at >= c) {
    for (std::size_t i = c; i <= at; ++i) out.push_back(B[i]);
  } else {
    for (std::size_t i = c + 1; i-- > at;) out.push_back(B[i]);
  }
  return out;
}

int ForkDiagram::find_z(const std::string& name) const {
  for (std::size_t i = 0; i < z_.size(); ++i)
    if (z_[i].name == name) return static_cast<int>(i);
  return -1;
}

int ForkDiagram::find_generator(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

nlohmann::json ForkDiagram::to_json() const {
  nlohmann::json j;
  j["braid"] = braid::to_json(braid_);
  nlohmann::json zs = nlohmann::json::array();
  for (const ZPoint& z : z_)
    zs.push_back({{"name", z.name},
                  {"tine", z.tine},
                  {"eight", z.eight},
                  {"x", to_string(base_[z.base].x)},
                  {"puncture", base_[z.base].puncture},
                  {"primed", z.primed}});
  j["z"] = zs;
  nlohmann::json gs = nlohmann::json::array();
  for (const Generator& g : gens_) gs.push_back(g.name);
  j["generators"] = gs;
  return j;
}

std::string ForkDiagram::svg() const {
  std::ostringstream out;
  const double W = disk_.width().get_d(), H = disk_.height().get_d();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -0.1 << ' ' << -H - 0.1 << ' ' << W + 0.2 << ' '
      << 2 * H + 0.2 << "\">\n<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"0.02\">\n";
  out << "<rect x=\"0\" y=\"" << -H << "\" width=\"" << W << "\" height=\"" << 2 * H << "\" stroke=\"gray\"/>\n";
  for (int k = 1; k <= n(); ++k) {
    out << "<path stroke=\"black\" d=\"M " << 2 * k - 1 << " 0 L " << 2 * k << " 0\"/>\n";
    out << "<path stroke=\"blue\" stroke-dasharray=\"0.05\" d=\"" << curve::svg_path(betas_[k - 1]) << "\"/>\n";
    out << "<path stroke=\"green\" d=\"" << curve::svg_path(handles_[k - 1]) << "\"/>\n";
    out << "<path stroke=\"red\" stroke-width=\"0.01\" d=\"" << curve::svg_path(eights_[k - 1].loop, true) << "\"/>\n";
  }
  for (int p = 1; p <= disk_.punctures(); ++p) out << "<circle cx=\"" << p << "\" cy=\"0\" r=\"0.04\" fill=\"black\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace platfloer::fork
