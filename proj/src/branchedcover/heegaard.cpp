#include <platfloer/branchedcover/heegaard.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace platfloer::cover {

using curve::Point;
using curve::Polyline;

namespace {

// Planar graph alpha u beta downstairs. Vertices are the fork base points;
// half-edge h belongs to edge h/2, even h runs along the stored path.
struct Graph {
  struct Edge {
    int u = 0, v = 0;
    Polyline path;
    bool tine = false;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> rot;  // outgoing half-edges, counter-clockwise
  std::vector<int> face;              // face on the left of each half-edge
  int faces = 0;
  int outer = -1;

  int origin(int h) const { return h % 2 == 0 ? edges[h / 2].u : edges[h / 2].v; }
  int dest(int h) const { return origin(h ^ 1); }
  Point out_dir(int h) const {
    const Polyline& p = edges[h / 2].path;
    return h % 2 == 0 ? p[1] - p[0] : p[p.size() - 2] - p.back();
  }
  Point in_dir(int h) const { return Point{Q(0), Q(0)} - out_dir(h ^ 1); }
  int add(int u, int v, Polyline path, bool tine) {
    edges.push_back({u, v, curve::simplify(path), tine});
    return 2 * static_cast<int>(edges.size()) - 2;
  }
};

bool ccw_less(const Point& a, const Point& b) {
  auto half = [](const Point& p) { return sgn(p.y) < 0 || (sgn(p.y) == 0 && sgn(p.x) < 0); };
  if (half(a) != half(b)) return half(b);
  return sgn(curve::cross(a, b)) > 0;
}

bool on_tine(const Q& x) {
  Z f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Q(f) != x && f.get_si() % 2 == 1;
}

void trace_faces(Graph& G, int vertices) {
  G.rot.assign(vertices, {});
  for (int h = 0; h < 2 * static_cast<int>(G.edges.size()); ++h) G.rot[G.origin(h)].push_back(h);
  std::vector<std::vector<int>> pos(vertices);
  for (auto& r : G.rot) {
    std::sort(r.begin(), r.end(), [&](int a, int b) { return ccw_less(G.out_dir(a), G.out_dir(b)); });
    for (std::size_t k = 1; k < r.size(); ++k)
      if (sgn(curve::cross(G.out_dir(r[k - 1]), G.out_dir(r[k]))) == 0 &&
          sgn(curve::dot(G.out_dir(r[k - 1]), G.out_dir(r[k]))) > 0)
        throw DegenerateInput("two edges leave a vertex in the same direction");
  }
  std::vector<int> at(2 * G.edges.size());
  for (auto& r : G.rot)
    for (std::size_t k = 0; k < r.size(); ++k) at[r[k]] = static_cast<int>(k);

  G.face.assign(2 * G.edges.size(), -1);
  std::vector<Q> area;
  for (int start = 0; start < static_cast<int>(G.face.size()); ++start) {
    if (G.face[start] >= 0) continue;
    Q a2 = 0;
    int h = start;
    do {
      G.face[h] = G.faces;
      const Polyline& p = G.edges[h / 2].path;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) a2 += curve::cross(p[k], p[k + 1]) * (h % 2 == 0 ? 1 : -1);
      const auto& r = G.rot[G.dest(h)];
      h = r[(at[h ^ 1] + r.size() - 1) % r.size()];
    } while (h != start);
    area.push_back(a2);
    ++G.faces;
  }
  for (int f = 0; f < G.faces; ++f) {
    if (sgn(area[f]) > 0) continue;
    if (G.outer >= 0) throw InternalInconsistency("alpha and beta curves do not form a connected graph");
    G.outer = f;
  }
  if (G.outer < 0) throw InternalInconsistency("no unbounded face");
}

}  // namespace

HeegaardDiagram build_heegaard(const fork::ForkDiagram& F) {
  const int n = F.n();
  const auto& base = F.base_points();
  std::map<Q, int> at_x;
  for (std::size_t b = 0; b < base.size(); ++b) at_x[base[b].x] = static_cast<int>(b);
  if (at_x.size() != base.size()) throw DegenerateInput("two base points share a position");

  Graph G;
  std::vector<std::vector<int>> tine_chain(n), beta_chain(n);
  for (int i = 1; i <= n; ++i) {
    std::vector<int> on;
    for (std::size_t b = 0; b < base.size(); ++b)
      if (base[b].x >= 2 * i - 1 && base[b].x <= 2 * i) on.push_back(static_cast<int>(b));
    std::sort(on.begin(), on.end(), [&](int a, int b) { return base[a].x < base[b].x; });
    if (on.size() < 2 || !base[on.front()].puncture || !base[on.back()].puncture)
      throw InternalInconsistency("tine without its two punctures");
    for (std::size_t k = 0; k + 1 < on.size(); ++k)
      tine_chain[i - 1].push_back(
          G.add(on[k], on[k + 1], {{base[on[k]].x, Q(0)}, {base[on[k + 1]].x, Q(0)}}, true));
  }
  for (int j = 1; j <= n; ++j) {
    const Polyline& B = F.beta(j);
    Polyline piece{B.front()};
    int from = at_x.at(B.front().x);
    for (std::size_t k = 1; k < B.size(); ++k) {
      piece.push_back(B[k]);
      const bool stop = k + 1 == B.size() || (sgn(B[k].y) == 0 && on_tine(B[k].x));
      if (!stop) continue;
      int to = at_x.at(B[k].x);
      beta_chain[j - 1].push_back(G.add(from, to, piece, false));
      piece = {B[k]};
      from = to;
    }
  }
  trace_faces(G, static_cast<int>(base.size()));

  HeegaardDiagram H;
  H.genus = n;
  std::vector<int> bounded(G.faces, -1);
  for (int f = 0; f < G.faces; ++f)
    if (f != G.outer) {
      int k = static_cast<int>(H.regions.size()) / 2;
      bounded[f] = k;
      H.regions.push_back({1, 0, "F" + std::to_string(k) + ".0"});
      H.regions.push_back({1, 0, "F" + std::to_string(k) + ".1"});
    }
  H.z = static_cast<int>(H.regions.size());
  // The two discs round the lifts of infinity joined by the tube.
  H.regions.push_back({0, 0, "z"});
  auto region = [&](int face, int sheet) { return face == G.outer ? H.z : 2 * bounded[face] + sheet; };

  std::vector<std::array<int, 2>> lift(base.size(), {-1, -1});
  for (std::size_t b = 0; b < base.size(); ++b) {
    const int sheets = base[b].puncture ? 1 : 2;
    for (int s = 0; s < sheets; ++s) {
      Vertex v;
      v.base = static_cast<int>(b);
      v.sheet = base[b].puncture ? -1 : s;
      v.alpha = base[b].tine - 1;
      v.beta = base[b].beta - 1;
      const auto& r = G.rot[b];
      if (base[b].puncture) {
        if (r.size() != 2) throw InternalInconsistency("branch point of degree " + std::to_string(r.size()));
        v.quad = {region(G.face[r[0]], 0), region(G.face[r[0]], 1), region(G.face[r[1]], 0),
                  region(G.face[r[1]], 1)};
      } else {
        if (r.size() != 4) throw DegenerateInput("crossing of degree " + std::to_string(r.size()));
        for (int k = 0; k < 4; ++k) {
          const Point d = G.out_dir(r[k]);
          // Sectors after the east and north directions lie above the tine.
          const bool upper = sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0);
          v.quad[k] = region(G.face[r[k]], upper ? s : 1 - s);
        }
      }
      lift[b][s] = static_cast<int>(H.vertices.size());
      H.vertices.push_back(v);
    }
  }

  for (int i = 0; i < n; ++i) {
    Circle c;
    const auto& chain = tine_chain[i];
    // Sheet-0 copy eastwards, sheet-1 copy back westwards.
    for (int h : chain) {
      const int b = G.origin(h);
      c.vertices.push_back(lift[b][0]);
      c.edges.push_back({region(G.face[h], 0), region(G.face[h ^ 1], 1)});
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const int h = *it ^ 1;
      const int b = G.origin(h);
      c.vertices.push_back(lift[b][base[b].puncture ? 0 : 1]);
      c.edges.push_back({region(G.face[h], 0), region(G.face[h ^ 1], 1)});
    }
    H.alphas.push_back(std::move(c));
  }

  for (int j = 0; j < n; ++j) {
    const auto& chain = beta_chain[j];
    const std::size_t r = chain.size();
    std::vector<int> edge_sheet(r), vertex_sheet(r, -1);
    int sigma = 0;
    for (std::size_t t = 0; t < r; ++t) {
      if (t > 0) {
        const bool from_above = sgn(G.in_dir(chain[t - 1]).y) < 0;
        vertex_sheet[t] = from_above ? sigma : 1 - sigma;
        sigma = 1 - sigma;
      }
      edge_sheet[t] = sigma;
    }
    Circle c;
    for (std::size_t t = 0; t < r; ++t) {
      const int h = chain[t];
      const int b = G.origin(h);
      c.vertices.push_back(t == 0 ? lift[b][0] : lift[b][vertex_sheet[t]]);
      c.edges.push_back({region(G.face[h], edge_sheet[t]), region(G.face[h ^ 1], edge_sheet[t])});
    }
    for (std::size_t t = r; t-- > 0;) {
      const int h = chain[t] ^ 1;
      const int b = G.origin(h);
      c.vertices.push_back(t + 1 == r ? lift[b][0] : lift[b][1 - vertex_sheet[t + 1]]);
      c.edges.push_back({region(G.face[h], 1 - edge_sheet[t]), region(G.face[h ^ 1], 1 - edge_sheet[t])});
    }
    H.betas.push_back(std::move(c));
  }

  H.validate();
  return H;
}

void HeegaardDiagram::validate() {
  for (Region& r : regions) r.corners = 0;
  for (const Vertex& v : vertices)
    for (int q : v.quad) {
      if (q < 0 || q >= static_cast<int>(regions.size())) throw InternalInconsistency("corner outside the regions");
      ++regions[q].corners;
    }
  if (alphas.size() != static_cast<std::size_t>(genus) || betas.size() != alphas.size())
    throw InternalInconsistency("need one alpha and one beta circle per handle");
  std::vector<int> seen_a(vertices.size(), 0), seen_b(vertices.size(), 0);
  auto walk = [&](const std::vector<Circle>& cs, std::vector<int>& seen, bool alpha) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].vertices.size() != cs[i].edges.size() || cs[i].vertices.empty())
        throw InternalInconsistency("malformed circle");
      for (int v : cs[i].vertices) {
        ++seen[v];
        if ((alpha ? vertices[v].alpha : vertices[v].beta) != static_cast<int>(i))
          throw InternalInconsistency("vertex listed on the wrong circle");
      }
    }
  };
  walk(alphas, seen_a, true);
  walk(betas, seen_b, false);
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (seen_a[v] != 1 || seen_b[v] != 1) throw InternalInconsistency("vertex not on exactly one alpha and one beta");
  long total = 0;
  for (const Region& r : regions) total += r.euler4();
  if (total != 4L * (2 - 2 * genus))
    throw InternalInconsistency("Euler measures sum to " + to_string(make_q(total, 4)));
}

Q HeegaardDiagram::euler_total() const {
  long total = 0;
  for (const Region& r : regions) total += r.euler4();
  return make_q(total, 4);
}

std::vector<int> HeegaardDiagram::bad_regions() const {
  std::vector<int> out;
  for (std::size_t r = 0; r < regions.size(); ++r)
    if (static_cast<int>(r) != z && regions[r].corners != 2 && regions[r].corners != 4)
      out.push_back(static_cast<int>(r));
  return out;
}

std::string HeegaardDiagram::census() const {
  std::map<int, int> count;
  for (std::size_t r = 0; r < regions.size(); ++r)
    if (static_cast<int>(r) != z) ++count[regions[r].corners];
  std::ostringstream out;
  bool first = true;
  for (auto [c, k] : count) {
    out << (first ? "" : ", ") << k << " region" << (k == 1 ? "" : "s") << " with " << c << " corners";
    first = false;
  }
  return out.str();
}

std::vector<std::vector<int>> HeegaardDiagram::intersection_tuples() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(betas.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == alphas.size()) {
      out.push_back(cur);
      return;
    }
    for (int v : alphas[i].vertices) {
      const int b = vertices[v].beta;
      if (used[b]) continue;
      used[b] = true;
      cur.push_back(v);
      rec(i + 1);
      cur.pop_back();
      used[b] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json HeegaardDiagram::to_json() const {
  nlohmann::json j;
  j["genus"] = genus;
  j["z"] = z;
  auto circles = [](const std::vector<Circle>& cs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Circle& c : cs) {
      nlohmann::json word = nlohmann::json::array();
      for (std::size_t k = 0; k < c.edges.size(); ++k)
        word.push_back({{"from", c.vertices[k]}, {"left", c.edges[k].left}, {"right", c.edges[k].right}});
      arr.push_back(word);
    }
    return arr;
  };
  j["alpha"] = circles(alphas);
  j["beta"] = circles(betas);
  nlohmann::json rs = nlohmann::json::array();
  for (const Region& r : regions)
    rs.push_back({{"name", r.name}, {"chi", r.chi}, {"corners", r.corners}, {"euler", to_string(make_q(r.euler4(), 4))}});
  j["regions"] = rs;
  nlohmann::json vs = nlohmann::json::array();
  for (const Vertex& v : vertices)
    vs.push_back({{"alpha", v.alpha}, {"beta", v.beta}, {"quadrants", v.quad}, {"sheet", v.sheet}});
  j["vertices"] = vs;
  return j;
}

std::vector<LiftedGenerator> lift_generators(const HeegaardDiagram& H, const fork::ForkDiagram& F, bool swap_sheets) {
  std::map<std::pair<int, int>, int> by_lift;
  for (std::size_t v = 0; v < H.vertices.size(); ++v)
    by_lift[{H.vertices[v].base, H.vertices[v].sheet}] = static_cast<int>(v);
  const auto& base = F.base_points();
  std::vector<LiftedGenerator> out;
  for (std::size_t g = 0; g < F.generators().size(); ++g) {
    const fork::Generator& gen = F.generators()[g];
    LiftedGenerator L;
    L.bigelow = static_cast<int>(g);
    L.name = gen.name;
    for (int zi : gen.points) {
      const fork::ZPoint& zp = F.zpoints()[zi];
      const fork::BasePoint& b = base[zp.base];
      int sheet = -1;
      if (!b.puncture) sheet = zp.primed != swap_sheets ? 1 : 0;
      auto it = by_lift.find({zp.base, sheet});
      if (it == by_lift.end()) throw InternalInconsistency("Z point " + zp.name + " has no lift");
      L.vertices.push_back(it->second);
      L.sheets.push_back(sheet);
    }
    std::vector<int> sorted = L.vertices;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return H.vertices[a].alpha < H.vertices[b].alpha; });
    if (sorted != L.vertices) throw InternalInconsistency("generator not ordered by tine");
    out.push_back(std::move(L));
  }
  return out;
}

HeegaardDiagram genus_one_sphere() {
  HeegaardDiagram H;
  H.genus = 1;
  H.regions.push_back({1, 0, "z"});
  H.z = 0;
  Vertex v;
  v.quad = {0, 0, 0, 0};
  H.vertices.push_back(v);
  H.alphas.push_back({{0}, {{0, 0}}});
  H.betas.push_back({{0}, {{0, 0}}});
  H.validate();
  return H;
}

HeegaardDiagram stabilize(const HeegaardDiagram& H) {
  HeegaardDiagram out = H;
  const int v = static_cast<int>(out.vertices.size());
  Vertex x;
  x.alpha = static_cast<int>(out.alphas.size());
  x.beta = static_cast<int>(out.betas.size());
  x.quad = {out.z, out.z, out.z, out.z};
  out.vertices.push_back(x);
  out.alphas.push_back({{v}, {{out.z, out.z}}});
  out.betas.push_back({{v}, {{out.z, out.z}}});
  out.regions[out.z].chi -= 1;
  ++out.genus;
  out.validate();
  return out;
}

}  // namespace platfloer::cover
