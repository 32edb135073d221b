#include <platfloer/filteredalgebra/complex.hpp>
#include <platfloer/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace platfloer::filt {

namespace {

// Dense F_2 vector.
class Bits {
public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void flip(std::size_t i) { w_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  Bits& operator^=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  long lowest() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<long>(64 * k + __builtin_ctzll(w_[k]));
    return -1;
  }

private:
  std::vector<std::uint64_t> w_;
};

// Incremental echelon basis keyed by pivot.
class Span {
public:
  bool add(Bits v) {
    for (;;) {
      long p = v.lowest();
      if (p < 0) return false;
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        rows_.emplace(p, std::move(v));
        return true;
      }
      v ^= it->second;
    }
  }
  long dim() const { return static_cast<long>(rows_.size()); }

private:
  std::map<long, Bits> rows_;
};

class Engine {
public:
  Engine(const FilteredComplex& c, const Q& step) : c_(c), n_(c.size()) {
    min_ = n_ ? *std::min_element(c.level.begin(), c.level.end()) : Q(0);
    idx_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Q k = (c.level[i] - min_) / step;
      idx_[i] = k.get_num().get_si();
      top_ = std::max(top_, idx_[i]);
    }
  }

  long top() const { return top_; }
  long index(std::size_t i) const { return idx_[i]; }

  Bits boundary(const Bits& v) const {
    Bits out(n_);
    for (std::size_t x = 0; x < n_; ++x)
      if (v.test(x))
        for (int y : c_.d[x]) out.flip(y);
    return out;
  }

  // Basis of {v in F_p : d v in F_q}.
  std::vector<Bits> cycles_into(long p, long q) const {
    // Each row: the part of d(x) above q, with the combination tracked.
    struct Row {
      Bits image, combo;
    };
    std::vector<Row> rows;
    for (std::size_t x = 0; x < n_; ++x) {
      if (idx_[x] > p) continue;
      Row r{Bits(n_), Bits(n_)};
      for (int y : c_.d[x])
        if (idx_[y] > q) r.image.flip(y);
      r.combo.flip(x);
      rows.push_back(std::move(r));
    }
    std::map<long, std::size_t> pivots;
    std::vector<Bits> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (;;) {
        long pv = rows[i].image.lowest();
        if (pv < 0) {
          out.push_back(rows[i].combo);
          break;
        }
        auto it = pivots.find(pv);
        if (it == pivots.end()) {
          pivots.emplace(pv, i);
          break;
        }
        rows[i].image ^= rows[it->second].image;
        rows[i].combo ^= rows[it->second].combo;
      }
    }
    return out;
  }

  // dim E_r at filtration index p.
  long page_dim(long r, long p) const {
    Span num;
    for (Bits& v : cycles_into(p, p - r)) num.add(std::move(v));
    Span den;
    for (Bits& v : cycles_into(p - 1, p - r)) den.add(std::move(v));
    for (const Bits& v : cycles_into(p + r - 1, p)) den.add(boundary(v));
    return num.dim() - den.dim();
  }

  Page page(long r, const Q& step) const {
    Page pg;
    for (long p = 0; p <= top_; ++p) {
      long k = page_dim(r, p);
      if (k < 0) throw InternalInconsistency("negative page dimension");
      if (k) pg.dims[min_ + step * p] = k;
    }
    return pg;
  }

private:
  const FilteredComplex& c_;
  std::size_t n_;
  Q min_;
  std::vector<long> idx_;
  long top_ = 0;
};

Q rational_gcd(Q a, Q b) {
  a = abs(a);
  b = abs(b);
  while (sgn(b) != 0) {
    Q q = a / b;
    Z f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Q r = a - b * Q(f);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

long Page::total() const {
  long t = 0;
  for (const auto& [l, k] : dims) t += k;
  return t;
}

void verify_filtered(const FilteredComplex& c) {
  if (c.level.size() != c.size() || c.d.size() != c.size()) throw DegenerateInput("complex arrays disagree in length");
  for (std::size_t x = 0; x < c.size(); ++x)
    for (int y : c.d[x]) {
      if (y < 0 || static_cast<std::size_t>(y) >= c.size()) throw DegenerateInput("boundary entry out of range");
      if (c.level[y] > c.level[x])
        throw FiltrationViolation("d(" + c.labels[x] + ") contains " + c.labels[y] + " at higher level " +
                                  to_string(c.level[y]) + " > " + to_string(c.level[x]));
    }
  for (std::size_t x = 0; x < c.size(); ++x) {
    std::map<int, int> hits;
    for (int y : c.d[x])
      for (int w : c.d[y]) hits[w] ^= 1;
    for (auto [w, odd] : hits)
      if (odd) throw NotADifferential("d^2(" + c.labels[x] + ") contains " + c.labels[w]);
  }
}

Q level_step(const FilteredComplex& c) {
  std::set<Q> levels(c.level.begin(), c.level.end());
  Q g = 0;
  for (const Q& l : levels) g = rational_gcd(g, l - *levels.begin());
  return sgn(g) == 0 ? Q(1) : g;
}

std::vector<DifferentialPart> decompose(const FilteredComplex& c) {
  const Q step = level_step(c);
  std::map<long, DifferentialPart> parts;
  for (std::size_t x = 0; x < c.size(); ++x)
    for (int y : c.d[x]) {
      Q m = (c.level[x] - c.level[y]) / step;
      if (m.get_den() != 1) throw InternalInconsistency("level drop off the grid");
      const long k = m.get_num().get_si();
      parts[k].drop = k;
      parts[k].entries.emplace_back(static_cast<int>(x), y);
    }
  std::vector<DifferentialPart> out;
  for (auto& [k, p] : parts) out.push_back(std::move(p));
  return out;
}

SpectralSequence pages(const FilteredComplex& c) {
  SpectralSequence ss;
  ss.step = level_step(c);
  Engine E(c, ss.step);
  // d_r vanishes once r exceeds the spread of indices.
  const long last = E.top() + 1;
  std::vector<Page> all;
  for (long r = 0; r <= last; ++r) all.push_back(E.page(r, ss.step));
  std::size_t stable = all.size() - 1;
  while (stable > 0 && all[stable - 1].dims == all.back().dims) --stable;
  ss.pages.assign(all.begin(), all.begin() + static_cast<long>(stable) + 1);
  for (std::size_t r = 0; r < ss.pages.size(); ++r) {
    const long next = r + 1 < all.size() ? all[r + 1].total() : all[r].total();
    ss.ranks.push_back((all[r].total() - next) / 2);
  }
  if (ss.infinity().total() != homology_dim(c))
    throw InternalInconsistency("E_infinity has dimension " + std::to_string(ss.infinity().total()) +
                                " but the homology has " + std::to_string(homology_dim(c)));
  return ss;
}

long homology_dim(const FilteredComplex& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<char>> M(n, std::vector<char>(n, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (int y : c.d[x]) M[x][y] ^= 1;
  long rank = 0;
  std::vector<bool> used(n, false);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = 0; r < n; ++r)
      if (!used[r] && M[r][col]) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    used[piv] = true;
    ++rank;
    for (std::size_t r = 0; r < n; ++r)
      if (r != piv && M[r][col])
        for (std::size_t k = 0; k < n; ++k) M[r][k] ^= M[piv][k];
  }
  return static_cast<long>(n) - 2 * rank;
}

bool is_rho_degenerate(const FilteredComplex& c, const SpectralSequence& ss) {
  if (ss.stable() > 1) return false;
  if (ss.infinity().dims.size() > 1) return false;
  if (!c.maslov) return true;
  const auto& gr = *c.maslov;
  // E_1 split by (level, gr): d_0 must have gr-degree -1 on level-preserving entries.
  std::map<std::pair<Q, long>, std::vector<int>> blocks;
  for (std::size_t x = 0; x < c.size(); ++x) {
    blocks[{c.level[x], gr[x]}].push_back(static_cast<int>(x));
    for (int y : c.d[x])
      if (c.level[y] == c.level[x] && gr[y] != gr[x] - 1)
        throw InternalInconsistency("d_0 from " + c.labels[x] + " to " + c.labels[y] + " is not of degree -1");
  }
  // Homology of d_0 per bigrading; every surviving class sits at the one level.
  long total = 0;
  std::set<Q> levels;
  for (const auto& [key, members] : blocks) {
    std::set<int> inside(members.begin(), members.end());
    const long here = static_cast<long>(members.size());
    // Rank of d_0 out of this block, and of d_0 into it from (level, gr + 1).
    long out_rank = 0, in_rank = 0;
    Span out, in;
    for (int x : members) {
      Bits v(c.size());
      for (int y : c.d[x])
        if (c.level[y] == key.first) v.flip(y);
      out_rank += out.add(std::move(v));
    }
    auto above = blocks.find({key.first, key.second + 1});
    if (above != blocks.end())
      for (int x : above->second) {
        Bits v(c.size());
        for (int y : c.d[x])
          if (inside.count(y)) v.flip(y);
        in_rank += in.add(std::move(v));
      }
    const long h = here - out_rank - in_rank;
    if (h > 0) levels.insert(key.first);
    total += h;
  }
  if (total != ss.pages.back().total() || levels.size() > 1)
    throw InternalInconsistency("E_1 bigrading disagrees with the collapsed page");
  return true;
}

namespace {

std::string page_key(const Page& p, const Q& base) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [l, k] : p.dims) {
    out << (first ? "" : ",") << to_string(l - base) << ':' << k;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

std::string fingerprint(const SpectralSequence& ss) {
  if (ss.pages.empty()) return "";
  std::vector<const Page*> distinct;
  for (std::size_t r = std::min<std::size_t>(1, ss.pages.size() - 1); r < ss.pages.size(); ++r)
    if (distinct.empty() || distinct.back()->dims != ss.pages[r].dims) distinct.push_back(&ss.pages[r]);
  Q base = 0;
  bool have = false;
  for (const Page* p : distinct)
    for (const auto& [l, k] : p->dims)
      if (!have || l < base) base = l, have = true;
  std::string out;
  for (const Page* p : distinct) out += page_key(*p, base);
  return out;
}

std::string fingerprint(const std::vector<SpectralSequence>& classes) {
  std::vector<std::string> parts;
  for (const auto& ss : classes) parts.push_back(fingerprint(ss));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += "[" + p + "]";
  return out;
}

nlohmann::json to_json(const SpectralSequence& ss) {
  nlohmann::json j;
  j["step"] = to_string(ss.step);
  nlohmann::json ps = nlohmann::json::array();
  for (std::size_t r = 0; r < ss.pages.size(); ++r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& [l, k] : ss.pages[r].dims) levels.push_back({{"level", to_string(l)}, {"dim", k}});
    ps.push_back({{"page", r}, {"levels", levels}, {"rank_d", ss.ranks[r]}});
  }
  j["pages"] = ps;
  return j;
}

}  // namespace platfloer::filt
