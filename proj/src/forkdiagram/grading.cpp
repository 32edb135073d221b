#include <platfloer/forkdiagram/grading.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace platfloer::fork {

namespace {

Point top_point(const ForkDiagram& F, int j) { return {make_q(4 * j - 1, 2), F.disk().height()}; }
Point midpoint(int i) { return {make_q(4 * i - 1, 2), Q(0)}; }

void append(Polyline& path, const Polyline& more) {
  for (const Point& p : more)
    if (path.empty() || path.back() != p) path.push_back(p);
}

// Closes gamma_x from m_i back to d_j: down to the lower frame, along it,
// and up the vertical through m_j. For i == j this is just h_i.
Polyline closing_route(const ForkDiagram& F, int i, int j) {
  if (i == j) return {midpoint(i), top_point(F, i)};
  const Q H = F.disk().height();
  return {midpoint(i), {midpoint(i).x, -H}, {midpoint(j).x, -H}, top_point(F, j)};
}

std::vector<Point> punctures(const ForkDiagram& F) {
  std::vector<Point> out;
  for (int p = 1; p <= F.disk().punctures(); ++p) out.push_back(F.disk().puncture(p));
  return out;
}

// Resamples a polyline onto `segments` equal-time steps; each step stays
// inside one original segment so the motion between samples is affine.
Polyline resample(const Polyline& raw, std::size_t segments) {
  Polyline p = curve::simplify(raw);
  if (p.size() == 1) return Polyline(segments + 1, p[0]);
  const std::size_t m = p.size() - 1;
  Polyline out;
  for (std::size_t s = 0; s < m; ++s) {
    std::size_t pieces = 1 + (s + 1 == m ? segments - m : 0);
    for (std::size_t t = 0; t < pieces; ++t)
      out.push_back(p[s] + make_q(static_cast<long>(t), static_cast<long>(pieces)) * (p[s + 1] - p[s]));
  }
  out.push_back(p[m]);
  return out;
}

}  // namespace

Polyline q_loop(const ForkDiagram& F, int z) {
  const ZPoint& zp = F.zpoints()[z];
  const int i = zp.tine, j = zp.eight;
  Polyline loop{top_point(F, j)};
  append(loop, F.handle(j));
  append(loop, F.eight_path_to(z));
  append(loop, closing_route(F, i, j));
  if (loop.size() > 1 && loop.back() == loop.front()) loop.pop_back();
  return loop;
}

long q_star(const ForkDiagram& F, int z) { return curve::winding_number(q_loop(F, z), punctures(F)); }

long p_star(const ForkDiagram& F, int z) {
  Polyline path = F.handle(F.zpoints()[z].eight);
  append(path, F.eight_path_to(z));
  return -curve::turning_half_revolutions(path, {Q(0), Q(-1)});
}

long t_grading(const ForkDiagram& F, const std::vector<int>& bases) {
  const std::size_t m = bases.size();
  std::vector<std::vector<Polyline>> phases(m);
  for (std::size_t k = 0; k < m; ++k) {
    const BasePoint& b = F.base_points()[bases[k]];
    const Polyline& h = F.handle(b.beta);
    const Point x{b.x, Q(0)};
    phases[k] = {{top_point(F, b.beta), h.front()},
                 h,
                 F.beta_path_to(bases[k]),
                 {x, midpoint(b.tine)},
                 {midpoint(b.tine), top_point(F, b.tine)}};
  }
  std::vector<Polyline> samples(m);
  for (std::size_t ph = 0; ph < 5; ++ph) {
    std::size_t steps = 1;
    for (std::size_t k = 0; k < m; ++k)
      steps = std::max(steps, curve::simplify(phases[k][ph]).size() - 1);
    for (std::size_t k = 0; k < m; ++k) {
      Polyline r = resample(phases[k][ph], steps);
      samples[k].insert(samples[k].end(), r.begin() + (samples[k].empty() ? 0 : 1), r.end());
    }
  }
  return curve::pairwise_winding(samples);
}

GradingTable grade(const ForkDiagram& F) {
  GradingTable t;
  t.sR = braid::shift_sR(F.braid());
  const auto& zs = F.zpoints();
  for (std::size_t z = 0; z < zs.size(); ++z) {
    t.q_star.push_back(q_star(F, static_cast<int>(z)));
    t.p_star.push_back(p_star(F, static_cast<int>(z)));
  }
  std::map<std::vector<int>, long> t_cache;
  for (const Generator& g : F.generators()) {
    GeneratorGrades r;
    std::vector<int> bases;
    for (int z : g.points) {
      r.Q += t.q_star[z];
      r.P += t.p_star[z];
      bases.push_back(zs[z].base);
    }
    auto it = t_cache.find(bases);
    if (it == t_cache.end()) it = t_cache.emplace(bases, t_grading(F, bases)).first;
    r.T = it->second;
    r.Rtilde = r.P - r.Q + r.T;
    r.R = Q(r.Rtilde) + t.sR;
    t.rows.push_back(r);
  }
  return t;
}

namespace {

template <class Key>
std::string distribution(const std::string& title, const std::map<Key, std::vector<std::string>>& groups) {
  std::ostringstream out;
  out << "| " << title << " | elements |\n|---|---|\n";
  for (const auto& [k, names] : groups) {
    out << "| " << to_string(k) << " | ";
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
    out << " |\n";
  }
  return out.str();
}

}  // namespace

std::string GradingTable::markdown(const ForkDiagram& F) const {
  std::map<Z, std::vector<std::string>> qs, ps, T, P, Qg, Rt;
  std::map<platfloer::Q, std::vector<std::string>> R;
  const auto& zs = F.zpoints();
  for (std::size_t z = 0; z < zs.size(); ++z) {
    qs[Z(q_star[z])].push_back(zs[z].name);
    ps[Z(p_star[z])].push_back(zs[z].name);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    const std::string& name = F.generators()[g].name;
    T[Z(rows[g].T)].push_back(name);
    P[Z(rows[g].P)].push_back(name);
    Qg[Z(rows[g].Q)].push_back(name);
    Rt[Z(rows[g].Rtilde)].push_back(name);
    R[rows[g].R].push_back(name);
  }
  std::ostringstream out;
  out << distribution("T", T) << '\n'
      << distribution("P*", ps) << '\n'
      << distribution("P", P) << '\n'
      << distribution("Q*", qs) << '\n'
      << distribution("Q", Qg) << '\n'
      << distribution("R~", Rt) << '\n'
      << distribution("R", R) << "\ns_R = " << to_string(sR) << '\n';
  return out.str();
}

nlohmann::json GradingTable::to_json(const ForkDiagram& F) const {
  nlohmann::json j;
  j["s_R"] = to_string(sR);
  nlohmann::json zs = nlohmann::json::object();
  for (std::size_t z = 0; z < q_star.size(); ++z)
    zs[F.zpoints()[z].name] = {{"Q*", q_star[z]}, {"P*", p_star[z]}};
  j["z"] = zs;
  nlohmann::json gs = nlohmann::json::object();
  for (std::size_t g = 0; g < rows.size(); ++g)
    gs[F.generators()[g].name] = {{"Q", rows[g].Q},
                                  {"P", rows[g].P},
                                  {"T", rows[g].T},
                                  {"R~", rows[g].Rtilde},
                                  {"R", to_string(rows[g].R)}};
  j["generators"] = gs;
  return j;
}

}  // namespace platfloer::fork
