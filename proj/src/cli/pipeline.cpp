#include <platfloer/cli/pipeline.hpp>
#include <platfloer/errors.hpp>

#include <map>
#include <set>
#include <sstream>

namespace platfloer::app {

Analysis::Analysis(const braid::BraidWord& b, const fork::Conventions& conv)
    : braid_(b), fork_(b, conv), table_(fork::grade(fork_)), heegaard_(cover::build_heegaard(fork_)) {
  solver_ = std::make_unique<cover::DomainSolver>(heegaard_);
  cover::check_periodic_rank(*solver_);
}

const FloerData& Analysis::floer() {
  if (floer_) return *floer_;
  if (!heegaard_.is_nice()) throw NotNice("the Heegaard diagram is not nice", heegaard_.census());
  auto f = std::make_unique<FloerData>();
  f->periodic_rank = solver_->periodic().size();
  for (const auto& l : cover::lift_generators(heegaard_, fork_)) {
    f->gens.push_back(l.vertices);
    f->names.push_back(l.name);
  }
  for (const auto& r : table_.rows) f->R.push_back(r.R);
  const std::size_t n = f->gens.size();

  f->classes = cover::spinc_partition(*solver_, f->gens);
  f->class_of.assign(n, -1);
  for (const auto& c : f->classes)
    for (int g : c.members) f->class_of[g] = c.id;
  f->d = cover::differential(*solver_, f->gens, f->classes);
  if (!f->d.square().empty()) throw InternalInconsistency("d^2 != 0");
  for (const auto& c : f->d.counted) {
    if (f->class_of[c.x] != f->class_of[c.y])
      throw InternalInconsistency("differential crosses Spin^c classes at " + f->names[c.x]);
    const long k = cover::nabla_count(f->R[c.x], f->R[c.y], 1);
    if (k < 0)
      throw InternalInconsistency("negative anti-diagonal count from " + f->names[c.x] + " to " + f->names[c.y]);
    f->nabla.push_back(k);
  }

  f->rho.assign(n, Q(0));
  f->maslov.assign(n, 0);
  for (const auto& cls : f->classes) {
    auto rho = cover::relative_rho(*solver_, f->gens, cls, f->R, f->names);
    int anchor = cls.members.front();
    for (int g : cls.members)
      if (f->names[g] < f->names[anchor]) anchor = g;
    filt::FilteredComplex cx;
    std::map<int, int> local;
    for (int g : cls.members) local[g] = static_cast<int>(local.size());
    std::vector<long> gr;
    for (int g : cls.members) {
      f->rho[g] = rho.at(g);
      const Q m = f->R[g] - f->R[anchor] - rho.at(g);
      f->maslov[g] = m.get_num().get_si();
      cx.labels.push_back(f->names[g]);
      cx.level.push_back(rho.at(g));
      gr.push_back(f->maslov[g]);
      std::vector<int> targets;
      for (int y : f->d.targets[g]) targets.push_back(local.at(y));
      cx.d.push_back(std::move(targets));
    }
    cx.maslov = std::move(gr);
    filt::verify_filtered(cx);
    f->spectral.push_back(filt::pages(cx));
    f->complexes.push_back(std::move(cx));
  }
  f->degenerate = true;
  for (std::size_t i = 0; i < f->complexes.size(); ++i)
    f->degenerate = filt::is_rho_degenerate(f->complexes[i], f->spectral[i]) && f->degenerate;

  filt::FilteredComplex whole{f->names, f->R, f->d.targets, std::nullopt};
  filt::verify_filtered(whole);
  f->by_R = filt::pages(whole);
  floer_ = std::move(f);
  return *floer_;
}

std::string fingerprint(Analysis& a) { return filt::fingerprint(a.floer().spectral); }

namespace {

template <class T>
std::string shift_verdict(const std::string& name, const std::multiset<T>& before, const std::multiset<T>& after) {
  if (before == after) return name + " preserved";
  if (before.size() == after.size() && !before.empty()) {
    const T c = *after.begin() - *before.begin();
    std::multiset<T> moved;
    for (const T& v : before) moved.insert(v + c);
    if (moved == after) {
      std::ostringstream out;
      out << name << (c > 0 ? "+" : "") << c;
      return out.str();
    }
  }
  if (std::includes(after.begin(), after.end(), before.begin(), before.end()))
    return name + " extended (" + std::to_string(before.size()) + " -> " + std::to_string(after.size()) + ")";
  return name + " changed";
}

template <class T>
std::multiset<T> column(const fork::GradingTable& t, T fork::GeneratorGrades::*field) {
  std::multiset<T> out;
  for (const auto& r : t.rows) out.insert(r.*field);
  return out;
}

}  // namespace

MoveReport check_move(const braid::BraidWord& b, const std::string& move) {
  MoveReport rep;
  rep.move = move;
  const braid::BraidWord after =
      move == "mirror" ? braid::mirror_braid(b) : braid::birman_move(b, braid::parse_move(move));
  rep.before = braid::print_braid(b);
  rep.after = braid::print_braid(after);
  Analysis A(b), B(after);
  const auto& ta = A.gradings();
  const auto& tb = B.gradings();
  if (move == "mirror") {
    std::multiset<Q> negated;
    for (const auto& r : ta.rows) negated.insert(-r.R);
    rep.deltas.push_back(negated == column(tb, &fork::GeneratorGrades::R) ? "R negated" : "R not negated");
    return rep;
  }
  rep.deltas.push_back(shift_verdict("Q", column(ta, &fork::GeneratorGrades::Q), column(tb, &fork::GeneratorGrades::Q)));
  rep.deltas.push_back(shift_verdict("P", column(ta, &fork::GeneratorGrades::P), column(tb, &fork::GeneratorGrades::P)));
  rep.deltas.push_back(shift_verdict("T", column(ta, &fork::GeneratorGrades::T), column(tb, &fork::GeneratorGrades::T)));
  const Q ds = tb.sR - ta.sR;
  rep.deltas.push_back(sgn(ds) == 0 ? "s_R equal" : std::string("s_R") + (sgn(ds) > 0 ? "+" : "") + to_string(ds));
  rep.deltas.push_back(shift_verdict("R", column(ta, &fork::GeneratorGrades::R), column(tb, &fork::GeneratorGrades::R)));
  if (A.heegaard().is_nice() && B.heegaard().is_nice()) {
    rep.fingerprints_compared = true;
    rep.fingerprints_equal = fingerprint(A) == fingerprint(B);
  }
  return rep;
}

std::string MoveReport::summary() const {
  std::string out;
  for (std::size_t i = 0; i < deltas.size(); ++i) out += (i ? ", " : "") + deltas[i];
  if (fingerprints_compared) out += fingerprints_equal ? "; fingerprints equal" : "; fingerprints differ";
  else if (move != "mirror") out += "; fingerprints not compared (diagram not nice)";
  return out;
}

}  // namespace platfloer::app
