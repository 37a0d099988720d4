#pragma once

#include <map>
#include <optional>
#include <vector>

#include "decalage/complexes.hpp"

namespace decalage {

/// A subcomplex E of K given by bases of its terms inside K, together with the
/// power of xi each term was scaled by.
struct SubcomplexEmbedding {
  FreeComplex complex;
  ChainMap iota;            // E -> K, injective in every degree
  std::vector<int> twists;  // indexed by degree - lo

  int twist(int i) const { return twists.at(i - complex.lo()); }
};

/// Basis of {x in K^i : dx in xi K^{i+1}}; square, since it contains xi K^i.
Matrix eta_module_basis(const FreeComplex& k, int i);

/// Subcomplex spanned by the given columns in each degree; throws if d does not
/// preserve it.
SubcomplexEmbedding embed_subcomplex(const FreeComplex& k, const std::map<int, Matrix>& bases,
                                     std::vector<int> twists);

/// Degree-i term xi^i {x : dx in xi K^{i+1}}.
SubcomplexEmbedding eta(const FreeComplex& k);
/// Degree-i term xi^i {x : dx in xi K^{i+1}} for i >= m and xi^m K^i for i < m.
SubcomplexEmbedding eta_m(const FreeComplex& k, int m);

/// Coordinates of `small` inside `big` as a chain map small -> big, when each
/// term of small lies in the corresponding term of big.
std::optional<ChainMap> relative_inclusion(const SubcomplexEmbedding& small,
                                           const SubcomplexEmbedding& big);

/// H / H[xi]: every invariant factor divisible by xi loses one factor of xi.
FGModule quotient_by_xi_torsion(const FGModule& h, const Ring& r);
/// k^dim viewed as an R-module.
FGModule residue_module(const Ring& r, std::size_t dim);

struct EtaFiltration {
  std::vector<SubcomplexEmbedding> levels;  // eta_m for m = 0 .. m_max
  std::vector<ChainMap> inclusions;         // inclusions[m]: levels[m+1] -> levels[m]
};
EtaFiltration eta_filtration(const FreeComplex& k, int m_max);

/// eta_m / eta_{m+1}, together with its comparison to the canonical truncation
/// of K/xi: x |-> (x / xi^m mod xi).
struct GradedPiece {
  FPComplex quotient;
  ResidueQuotient over_k;
  Truncation truncation;  // tau_{<=m}(K/xi) inside K/xi
  ChainMap comparison;    // over_k.complex -> truncation.complex
};
GradedPiece graded_piece(const FreeComplex& k, int m);

/// eta_{m+1} / (xi * eta_m).
struct ModXiSubquotient {
  FPComplex quotient;
  ResidueQuotient over_k;
};
ModXiSubquotient modI_subquotient(const FreeComplex& k, int m);

/// Throws DegreeBelowZero / NegativeM for inputs the construction does not cover.
void require_decalage_input(const FreeComplex& k, int m);

}  // namespace decalage
