#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decalage/report.hpp"
#include "decalage/site.hpp"

namespace decalage {

/// A complex over a field with a decreasing filtration by subcomplexes:
/// F^p = everything for p <= p_lo and F^p = 0 for p > p_hi.
class FilteredComplex {
 public:
  /// levels[p - p_lo] holds, per degree, a basis of F^p (columns); F^{p_lo}
  /// should be the whole complex.
  FilteredComplex(FreeComplex ambient, int p_lo, std::vector<std::map<int, Matrix>> levels);

  const FreeComplex& ambient() const { return ambient_; }
  int p_lo() const { return p_lo_; }
  int p_hi() const { return p_lo_ + static_cast<int>(levels_.size()) - 1; }
  const Subspace& at(int p, int n) const;

  /// Throws unless each F^p is a subcomplex and the family decreases.
  void validate() const;

 private:
  FreeComplex ambient_;
  int p_lo_;
  std::vector<std::map<int, Subspace>> levels_;
  std::map<int, Subspace> full_, zero_;
};

/// One page. Entries are keyed (p, q) with total degree p + q; d maps (p, q)
/// to (p + r, q - r + 1) in the page's own indexing.
struct SSPage {
  int r = 0;
  std::map<std::pair<int, int>, std::size_t> dims;
  std::map<std::pair<int, int>, Matrix> d;  // keyed by source

  std::size_t dim(int p, int q) const;
  bool differentials_vanish() const;
  /// First (p, q) whose outgoing differential is nonzero.
  std::optional<std::pair<int, int>> first_nonzero() const;
};

/// Pages r_min .. r_max of the spectral sequence of a filtered complex, from
/// E_r^p = Z_r^p / (Z_{r-1}^{p+1} + F^p n d F^{p-r+1}).
std::vector<SSPage> ss_pages(const FilteredComplex& fc, int r_min, int r_max);
/// dim of (F^p n ker d) / (F^{p+1} n ker d + F^p n im d), keyed (p, q).
std::map<std::pair<int, int>, std::size_t> abutment_graded_dims(const FilteredComplex& fc);

/// tau_{<=m} of K/xi on global sections, as the decreasing filtration F^{-m}.
FilteredComplex tau_filtration(const SheafComplex& kbar);
/// Brutal filtration of the global sections of a complex of sheaves.
FilteredComplex hodge_filtered(const SheafComplex& c);

/// Hodge-Tate-type pages r >= 2, entries (a, b) with E_2^{a,b} = H^a(S, H^b(K/xi)).
std::vector<SSPage> ht_spectral_sequence(const SheafComplex& k, int r_max);
/// Hodge-de Rham-type pages r >= 1 of the Bockstein sheaf, E_1^{p,q} = H^q(S, Omega^p).
std::vector<SSPage> hdr_spectral_sequence(const SheafComplex& k, int r_max);

struct Degeneration {
  bool degenerates = true;
  std::string witness;
  int i = 0, m = 0;  // first failure
};
/// Every H^i(RGamma tau_{<=m}(K/xi)) -> H^i(RGamma(K/xi)) is injective.
Degeneration degeneration_check_HT(const SheafComplex& k);
/// All differentials of the Hodge-de Rham-type pages vanish from E_1 on.
Degeneration degeneration_check_HdR(const SheafComplex& k);

/// The two images in H^i(RGamma(Omega^m[-m])): from tau_{<=m}(K/xi) (coker f)
/// and from the Hodge piece F_m of the Bockstein sheaf (coker g).
struct CokerComparison {
  int i = 0, m = 0;
  Subspace coker_f, coker_g;
  bool equal = false;
};
CokerComparison compare_degeneration(const SheafComplex& k, int i, int m);

/// Every H^i(RGamma K) is xi-torsion-free; returns the first bad degree.
std::optional<int> first_torsion_degree(const FreeComplex& rgamma);

Json page_to_json(const SSPage& page);
/// Text grid of a page: columns p, rows q (highest first).
std::string render_page(const SSPage& page);

}  // namespace decalage
