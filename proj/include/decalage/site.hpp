#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "decalage/complexes.hpp"

namespace decalage {

/// A finite poset; elements are referred to by index.
class PosetSite {
 public:
  static constexpr std::size_t kDefaultMaxElements = 8;

  /// `leq` lists generating pairs (a, b) meaning a <= b; the reflexive
  /// transitive closure is taken. Throws if the result is not antisymmetric.
  PosetSite(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& leq,
            std::size_t max_elements = kDefaultMaxElements);

  /// point, pseudo-circle, chain3, pseudo-sphere.
  static PosetSite builtin(const std::string& name);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index(const std::string& name) const;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }
  /// Pairs a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  /// Strictly increasing chains x_0 < ... < x_n, lexicographic in the indices.
  const std::vector<std::vector<std::size_t>>& chains(std::size_t n) const;
  /// Largest n with a chain of n+1 elements.
  std::size_t dimension() const { return chains_.size() - 1; }

  friend bool operator==(const PosetSite& a, const PosetSite& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::vector<std::size_t>>> chains_;
};

/// Complex of sheaves on a poset: a free complex per element and chain maps
/// K(x) -> K(y) for x <= y. All stalks share one degree range.
class SheafComplex {
 public:
  using Restrictions = std::map<std::pair<std::size_t, std::size_t>, std::map<int, Matrix>>;

  /// Missing restrictions are filled with identities (x <= x) and composites
  /// along chains; a pair with no given or composable restriction is an error.
  /// Throws InvalidSheaf if a restriction is not a chain map or functoriality fails.
  SheafComplex(PosetSite site, std::vector<FreeComplex> stalks, const Restrictions& given);

  /// The same complex at every element with identity restrictions.
  static SheafComplex constant(const PosetSite& site, const FreeComplex& k);

  const PosetSite& site() const { return site_; }
  const Ring& ring() const { return stalks_.front().ring(); }
  int lo() const { return stalks_.front().lo(); }
  int hi() const { return stalks_.front().hi(); }
  const FreeComplex& stalk(std::size_t x) const { return stalks_.at(x); }
  const std::vector<FreeComplex>& stalks() const { return stalks_; }
  /// Restriction K(x) -> K(y) for x <= y.
  const ChainMap& restriction(std::size_t x, std::size_t y) const;

 private:
  PosetSite site_;
  std::vector<FreeComplex> stalks_;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> res_;
};

/// A morphism of sheaf complexes on one site: a chain map per element,
/// commuting with the restrictions.
struct SheafMap {
  SheafComplex source;
  SheafComplex target;
  std::vector<ChainMap> maps;

  /// Throws InvalidSheaf if some naturality square fails.
  void validate() const;
};

/// A subsheaf given by subcomplexes of each stalk, with the inclusion.
struct SheafEmbedding {
  SheafComplex sheaf;
  SheafMap iota;
};

/// Total complex of the ordered-chain cochains: in total degree t, the sum over
/// n and chains x_0 < ... < x_n (in that order) of K(x_n)^{t-n}; differential
/// sum_{j<=n} (-1)^j (drop x_j) + (-1)^{n+1} res(x_n <= x_{n+1}) (drop x_{n+1})
/// plus (-1)^n d.
FreeComplex global_sections(const SheafComplex& f);
ChainMap global_sections_map(const SheafMap& f);

/// The subsheaf cut out by the given per-element bases (columns in each stalk
/// term); restrictions are induced. Throws if they do not preserve it.
SheafEmbedding induced_subsheaf(const SheafComplex& f, const std::vector<std::map<int, Matrix>>& bases);

SheafEmbedding sheaf_eta_m(const SheafComplex& f, int m);
/// eta_{m+1} F inside eta_m F.
SheafMap sheaf_eta_inclusion(const SheafEmbedding& small, const SheafEmbedding& big);
SheafComplex sheaf_reduce(const SheafComplex& f);
SheafEmbedding sheaf_truncate_leq(const SheafComplex& f, int m);
SheafEmbedding sheaf_hodge(const SheafComplex& f, int m);
SheafMap reduce_map(const SheafMap& f);
/// Stalkwise Bockstein complexes H^*(K(x)/xi) with induced restrictions (over k).
SheafComplex sheaf_bockstein(const SheafComplex& f);
/// For a sheaf over a field: x |-> H^q(F(x)) placed in degree `place`, on the
/// degree range of F widened to contain `place`.
SheafComplex sheaf_cohomology_sheaf(const SheafComplex& f, int q, int place);

/// Random sheaf complex assembled from pieces R_S[-q] (R on an up-set, a
/// down-set or the whole site S, zero elsewhere) joined by natural maps c * id,
/// then conjugated by random unimodular base changes at every element. Degrees
/// lie in [0, max_degree], each stalk term has rank <= max_rank. With
/// `xi_multiples` the maps may be xi, xi^2 or xi times a unit-at-xi non-unit.
SheafComplex random_sheaf(const PosetSite& site, const Ring& r, std::mt19937_64& rng, int max_degree,
                          std::size_t max_rank, bool xi_multiples);

/// Base change by per-element unimodular matrices.
SheafComplex conjugate_sheaf(const SheafComplex& f, std::mt19937_64& rng);

}  // namespace decalage
