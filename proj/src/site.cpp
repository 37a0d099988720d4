#include "decalage/site.hpp"

#include <algorithm>

#include "decalage/bockstein.hpp"
#include "decalage/decalage.hpp"
#include "decalage/errors.hpp"

namespace decalage {

PosetSite::PosetSite(std::vector<std::string> names,
                     const std::vector<std::pair<std::string, std::string>>& leq, std::size_t max_elements)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (n == 0) throw Error("a site needs at least one element");
  if (n > max_elements)
    throw Error("site has " + std::to_string(n) + " elements, more than the cap of " + std::to_string(max_elements));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw Error("duplicate element '" + names_[i] + "'");
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : leq) leq_[index(a)][index(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i]) throw Error("'" + names_[i] + "' and '" + names_[j] + "' form a cycle");

  std::vector<std::vector<std::size_t>> level;
  for (std::size_t i = 0; i < n; ++i) level.push_back({i});
  while (!level.empty()) {
    chains_.push_back(level);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : level)
      for (std::size_t j = 0; j < n; ++j)
        if (lt(c.back(), j)) {
          next.push_back(c);
          next.back().push_back(j);
        }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
}

PosetSite PosetSite::builtin(const std::string& name) {
  if (name == "point") return PosetSite({"pt"}, {});
  if (name == "pseudo-circle")
    return PosetSite({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  if (name == "chain3") return PosetSite({"x0", "x1", "x2"}, {{"x0", "x1"}, {"x1", "x2"}});
  if (name == "pseudo-sphere")
    return PosetSite({"a1", "a2", "b1", "b2", "c1", "c2"},
                     {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"},
                      {"b1", "c1"}, {"b1", "c2"}, {"b2", "c1"}, {"b2", "c2"}});
  throw Error("unknown builtin site '" + name + "'");
}

std::size_t PosetSite::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("unknown site element '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> PosetSite::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : chains(1)) {
    bool between = false;
    for (std::size_t z = 0; z < size() && !between; ++z) between = lt(c[0], z) && lt(z, c[1]);
    if (!between) out.emplace_back(c[0], c[1]);
  }
  return out;
}

const std::vector<std::vector<std::size_t>>& PosetSite::chains(std::size_t n) const {
  static const std::vector<std::vector<std::size_t>> none;
  return n < chains_.size() ? chains_[n] : none;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<FreeComplex> widen_all(std::vector<FreeComplex> stalks) {
  if (stalks.empty()) throw Error("a sheaf needs stalks");
  int lo = stalks.front().lo(), hi = stalks.front().hi();
  for (const auto& s : stalks) {
    if (s.ring() != stalks.front().ring()) throw Error("stalks live over different rings");
    lo = std::min(lo, s.lo());
    hi = std::max(hi, s.hi());
  }
  for (auto& s : stalks) s = s.widened(lo, hi);
  return stalks;
}

}  // namespace

SheafComplex::SheafComplex(PosetSite site, std::vector<FreeComplex> stalks, const Restrictions& given)
    : site_(std::move(site)), stalks_(widen_all(std::move(stalks))) {
  const std::size_t n = site_.size();
  if (stalks_.size() != n)
    throw ShapeMismatch("site has " + std::to_string(n) + " elements but " + std::to_string(stalks_.size()) +
                        " stalks were given");
  for (const auto& s : stalks_) s.validate();
  for (const auto& [pair, maps] : given) {
    auto [x, y] = pair;
    if (!site_.leq(x, y)) throw InvalidSheaf(site_.name(x), site_.name(y), "restriction given for a non-relation");
    ChainMap f{stalks_[x], stalks_[y], {}, 0};
    for (const auto& [i, m] : maps)
      if (i >= lo() && i <= hi()) f.maps.emplace(i, m);
    try {
      f.validate();
    } catch (const Error& e) {
      throw InvalidSheaf(site_.name(x), site_.name(y), e.what());
    }
    res_.emplace(pair, std::move(f));
  }
  for (std::size_t x = 0; x < n; ++x) res_.try_emplace({x, x}, identity_map(stalks_[x]));
  // fill by composition, shortest gaps first
  for (std::size_t len = 1; len <= site_.dimension(); ++len)
    for (const auto& c : site_.chains(len)) {
      const std::size_t x = c.front(), y = c.back();
      if (res_.count({x, y})) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (site_.lt(x, z) && site_.lt(z, y) && res_.count({x, z}) && res_.count({z, y})) {
          res_.emplace(std::make_pair(x, y), compose(res_.at({z, y}), res_.at({x, z})));
          break;
        }
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (site_.leq(x, y) && !res_.count({x, y}))
        throw InvalidSheaf(site_.name(x), site_.name(y), "missing restriction");
  for (const auto& c : site_.chains(2)) {
    const ChainMap direct = res_.at({c[0], c[2]});
    const ChainMap via = compose(res_.at({c[1], c[2]}), res_.at({c[0], c[1]}));
    for (int i = lo(); i <= hi(); ++i)
      if (direct.at(i) != via.at(i))
        throw InvalidSheaf(site_.name(c[0]), site_.name(c[2]),
                           "restriction differs from the composite through '" + site_.name(c[1]) +
                               "' in degree " + std::to_string(i));
  }
}

SheafComplex SheafComplex::constant(const PosetSite& site, const FreeComplex& k) {
  Restrictions given;
  for (const auto& [x, y] : site.covers()) {
    std::map<int, Matrix> m;
    for (int i = k.lo(); i <= k.hi(); ++i) m.emplace(i, Matrix::identity(k.ring(), k.rank(i)));
    given.emplace(std::make_pair(x, y), std::move(m));
  }
  return SheafComplex(site, std::vector<FreeComplex>(site.size(), k), given);
}

const ChainMap& SheafComplex::restriction(std::size_t x, std::size_t y) const {
  auto it = res_.find({x, y});
  if (it == res_.end()) throw Error("no restriction " + site_.name(x) + " <= " + site_.name(y));
  return it->second;
}

void SheafMap::validate() const {
  const PosetSite& s = source.site();
  if (!(s == target.site()) || maps.size() != s.size()) throw ShapeMismatch("sheaf map over mismatched sites");
  for (const auto& m : maps) m.validate();
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.lt(x, y))
        for (int i = source.lo(); i <= source.hi(); ++i)
          if (maps[y].at(i) * source.restriction(x, y).at(i) != target.restriction(x, y).at(i) * maps[x].at(i))
            throw InvalidSheaf(s.name(x), s.name(y), "sheaf map is not natural in degree " + std::to_string(i));
}

// ---------------------------------------------------------------------------

namespace {

// Offsets of the (n, chain) blocks in every total degree.
class ChainLayout {
 public:
  explicit ChainLayout(const SheafComplex& f) {
    const PosetSite& s = f.site();
    lo_ = f.lo();
    hi_ = f.hi() + static_cast<int>(s.dimension());
    for (std::size_t n = 0; n <= s.dimension(); ++n)
      for (std::size_t c = 0; c < s.chains(n).size(); ++c) index_.emplace(s.chains(n)[c], c);
    for (int t = lo_; t <= hi_; ++t) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> off;
      std::size_t total = 0;
      for (std::size_t n = 0; n <= s.dimension(); ++n) {
        const int q = t - static_cast<int>(n);
        for (std::size_t c = 0; c < s.chains(n).size(); ++c) {
          off.emplace(std::make_pair(n, c), total);
          total += q < f.lo() || q > f.hi() ? 0 : f.stalk(s.chains(n)[c].back()).rank(q);
        }
      }
      offsets_.push_back(std::move(off));
      ranks_.push_back(total);
    }
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t rank(int t) const { return t < lo_ || t > hi_ ? 0 : ranks_[t - lo_]; }
  std::size_t offset(int t, std::size_t n, std::size_t c) const { return offsets_[t - lo_].at({n, c}); }
  std::size_t chain_index(const std::vector<std::size_t>& c) const { return index_.at(c); }
  std::vector<std::size_t> ranks() const { return ranks_; }

 private:
  int lo_, hi_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> offsets_;
  std::vector<std::size_t> ranks_;
};

}  // namespace

FreeComplex global_sections(const SheafComplex& f) {
  const PosetSite& s = f.site();
  const Ring& R = f.ring();
  ChainLayout lay(f);
  std::vector<Matrix> diffs;
  for (int t = lay.lo(); t < lay.hi(); ++t) {
    Matrix d(R, lay.rank(t + 1), lay.rank(t));
    for (std::size_t n = 0; n <= s.dimension(); ++n) {
      const int q = t - static_cast<int>(n);
      if (q < f.lo() || q > f.hi()) continue;
      const Elem sign = R.from_int(n % 2 == 0 ? 1 : -1);
      for (std::size_t c = 0; c < s.chains(n).size(); ++c) {
        const auto& chain = s.chains(n)[c];
        const FreeComplex& k = f.stalk(chain.back());
        if (k.rank(q) == 0) continue;
        const std::size_t col = lay.offset(t, n, c);
        if (q + 1 <= f.hi() && k.rank(q + 1) > 0)
          d.set_block(lay.offset(t + 1, n, c), col, k.d(q).scaled(sign));
      }
    }
    // cochain differential: into every chain one step longer
    for (std::size_t n = 1; n <= s.dimension(); ++n) {
      const int q = t + 1 - static_cast<int>(n);
      if (q < f.lo() || q > f.hi()) continue;
      for (std::size_t c2 = 0; c2 < s.chains(n).size(); ++c2) {
        const auto& longer = s.chains(n)[c2];
        const std::size_t top = longer.back();
        if (f.stalk(top).rank(q) == 0) continue;
        const std::size_t row = lay.offset(t + 1, n, c2);
        for (std::size_t j = 0; j <= n; ++j) {
          std::vector<std::size_t> shorter = longer;
          shorter.erase(shorter.begin() + static_cast<long>(j));
          const std::size_t c = lay.chain_index(shorter);
          const std::size_t src = shorter.back();
          if (f.stalk(src).rank(q) == 0) continue;
          const Elem sign = R.from_int(j % 2 == 0 ? 1 : -1);
          Matrix block = j < n ? Matrix::identity(R, f.stalk(top).rank(q))
                               : f.restriction(src, top).at(q);
          Matrix cur = d.block(row, lay.offset(t, n - 1, c), block.rows(), block.cols());
          d.set_block(row, lay.offset(t, n - 1, c), cur + block.scaled(sign));
        }
      }
    }
    diffs.push_back(std::move(d));
  }
  return FreeComplex(R, lay.lo(), lay.ranks(), std::move(diffs));
}

ChainMap global_sections_map(const SheafMap& f) {
  const PosetSite& s = f.source.site();
  ChainLayout ls(f.source), lt(f.target);
  if (ls.lo() != lt.lo() || ls.hi() != lt.hi()) throw ShapeMismatch("sheaf map between different degree ranges");
  FreeComplex src = global_sections(f.source), tgt = global_sections(f.target);
  ChainMap out{src, tgt, {}, 0};
  for (int t = ls.lo(); t <= ls.hi(); ++t) {
    Matrix m(f.source.ring(), lt.rank(t), ls.rank(t));
    for (std::size_t n = 0; n <= s.dimension(); ++n) {
      const int q = t - static_cast<int>(n);
      if (q < f.source.lo() || q > f.source.hi()) continue;
      for (std::size_t c = 0; c < s.chains(n).size(); ++c) {
        Matrix b = f.maps[s.chains(n)[c].back()].at(q);
        if (b.rows() > 0 && b.cols() > 0) m.set_block(lt.offset(t, n, c), ls.offset(t, n, c), b);
      }
    }
    out.maps.emplace(t, std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

SheafEmbedding induced_subsheaf(const SheafComplex& f, const std::vector<std::map<int, Matrix>>& bases) {
  const PosetSite& s = f.site();
  std::vector<FreeComplex> stalks;
  std::vector<ChainMap> incl;
  for (std::size_t x = 0; x < s.size(); ++x) {
    SubcomplexEmbedding e = embed_subcomplex(f.stalk(x), bases[x], {});
    stalks.push_back(e.complex);
    incl.push_back(e.iota);
  }
  SheafComplex::Restrictions given;
  for (const auto& [x, y] : s.covers()) {
    std::map<int, Matrix> m;
    for (int i = f.lo(); i <= f.hi(); ++i) {
      SpanCoordinates target(bases[y].at(i));
      auto c = target.coords(f.restriction(x, y).at(i) * bases[x].at(i));
      if (!c) throw InvalidSheaf(s.name(x), s.name(y), "restriction leaves the subsheaf in degree " + std::to_string(i));
      m.emplace(i, std::move(*c));
    }
    given.emplace(std::make_pair(x, y), std::move(m));
  }
  SheafComplex sub(s, std::move(stalks), given);
  SheafMap iota{sub, f, std::move(incl)};
  return SheafEmbedding{std::move(sub), std::move(iota)};
}

SheafEmbedding sheaf_eta_m(const SheafComplex& f, int m) {
  std::vector<std::map<int, Matrix>> bases;
  for (const auto& k : f.stalks()) bases.push_back(eta_m(k, m).iota.maps);
  return induced_subsheaf(f, bases);
}

SheafMap sheaf_eta_inclusion(const SheafEmbedding& small, const SheafEmbedding& big) {
  std::vector<ChainMap> maps;
  for (std::size_t x = 0; x < small.sheaf.site().size(); ++x) {
    ChainMap m{small.sheaf.stalk(x), big.sheaf.stalk(x), {}, 0};
    for (int i = small.sheaf.lo(); i <= small.sheaf.hi(); ++i) {
      auto c = SpanCoordinates(big.iota.maps[x].at(i)).coords(small.iota.maps[x].at(i));
      if (!c) throw Error("subsheaf is not contained in degree " + std::to_string(i));
      m.maps.emplace(i, std::move(*c));
    }
    maps.push_back(std::move(m));
  }
  return SheafMap{small.sheaf, big.sheaf, std::move(maps)};
}

SheafComplex sheaf_reduce(const SheafComplex& f) {
  const PosetSite& s = f.site();
  std::vector<FreeComplex> stalks;
  for (const auto& k : f.stalks()) stalks.push_back(k.reduce_mod_xi());
  SheafComplex::Restrictions given;
  for (const auto& [x, y] : s.covers()) {
    std::map<int, Matrix> m;
    for (int i = f.lo(); i <= f.hi(); ++i) m.emplace(i, f.restriction(x, y).at(i).residue());
    given.emplace(std::make_pair(x, y), std::move(m));
  }
  return SheafComplex(s, std::move(stalks), given);
}

SheafMap reduce_map(const SheafMap& f) {
  SheafComplex src = sheaf_reduce(f.source), tgt = sheaf_reduce(f.target);
  std::vector<ChainMap> maps;
  for (std::size_t x = 0; x < f.maps.size(); ++x) {
    ChainMap m{src.stalk(x), tgt.stalk(x), {}, 0};
    for (int i = f.source.lo(); i <= f.source.hi(); ++i) m.maps.emplace(i, f.maps[x].at(i).residue());
    maps.push_back(std::move(m));
  }
  return SheafMap{std::move(src), std::move(tgt), std::move(maps)};
}

SheafEmbedding sheaf_truncate_leq(const SheafComplex& f, int m) {
  std::vector<std::map<int, Matrix>> bases;
  for (const auto& k : f.stalks()) {
    Truncation t = truncate_leq(k, m);
    std::map<int, Matrix> b;
    for (int i = f.lo(); i <= f.hi(); ++i) b.emplace(i, t.inclusion.at(i));
    bases.push_back(std::move(b));
  }
  return induced_subsheaf(f, bases);
}

SheafEmbedding sheaf_hodge(const SheafComplex& f, int m) {
  std::vector<std::map<int, Matrix>> bases;
  for (const auto& k : f.stalks()) {
    Truncation t = hodge_filtration(k, m);
    std::map<int, Matrix> b;
    for (int i = f.lo(); i <= f.hi(); ++i) b.emplace(i, t.inclusion.at(i));
    bases.push_back(std::move(b));
  }
  return induced_subsheaf(f, bases);
}

SheafComplex sheaf_bockstein(const SheafComplex& f) {
  const PosetSite& s = f.site();
  std::vector<BocksteinComplex> bs;
  std::vector<FreeComplex> stalks;
  for (const auto& k : f.stalks()) {
    bs.push_back(bockstein_complex(k));
    stalks.push_back(bs.back().as_complex());
  }
  SheafComplex::Restrictions given;
  for (const auto& [x, y] : s.covers()) {
    std::map<int, Matrix> m;
    for (int i = f.lo(); i <= f.hi(); ++i)
      m.emplace(i, bs[y].at(i).classes(f.restriction(x, y).at(i).residue() * bs[x].at(i).representatives()));
    given.emplace(std::make_pair(x, y), std::move(m));
  }
  return SheafComplex(s, std::move(stalks), given);
}

SheafComplex sheaf_cohomology_sheaf(const SheafComplex& f, int q, int place) {
  const PosetSite& s = f.site();
  std::vector<ResidueCohomology> hs;
  std::vector<FreeComplex> stalks;
  for (const auto& k : f.stalks()) {
    hs.emplace_back(k, q);
    stalks.push_back(FreeComplex::concentrated(k.ring(), place, hs.back().dim())
                         .widened(std::min(place, f.lo()), std::max(place, f.hi())));
  }
  SheafComplex::Restrictions given;
  for (const auto& [x, y] : s.covers())
    given[{x, y}].emplace(place, hs[y].classes(f.restriction(x, y).at(q) * hs[x].representatives()));
  return SheafComplex(s, std::move(stalks), given);
}

}  // namespace decalage
