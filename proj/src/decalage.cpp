#include "decalage/decalage.hpp"

#include <algorithm>

#include "decalage/errors.hpp"

namespace decalage {

void require_decalage_input(const FreeComplex& k, int m) {
  if (k.lo() < 0) throw DegreeBelowZero(k.lo());
  if (m < 0) throw NegativeM(m);
  if (k.ring().is_field()) throw Error("decalage needs a ring with a prime xi, not a field");
}

Matrix eta_module_basis(const FreeComplex& k, int i) {
  const Ring& R = k.ring();
  const std::size_t n = k.rank(i);
  const Matrix& d = k.d(i);
  if (min_valuation(d) >= 1) return Matrix::identity(R, n);
  Matrix a = hstack(d, Matrix::scalar(R, d.rows(), R.neg(R.xi())));
  Matrix proj = kernel_basis(a).rows_range(0, n);
  Matrix basis = image_basis(proj);
  if (basis.cols() != n) throw Error("eta_module_basis: expected a full-rank submodule");
  return basis;
}

SubcomplexEmbedding embed_subcomplex(const FreeComplex& k, const std::map<int, Matrix>& bases,
                                     std::vector<int> twists) {
  const Ring& R = k.ring();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = k.lo(); i <= k.hi(); ++i) ranks.push_back(bases.at(i).cols());
  for (int i = k.lo(); i < k.hi(); ++i) {
    auto c = SpanCoordinates(bases.at(i + 1)).coords(k.d(i) * bases.at(i));
    if (!c) throw Error("embed_subcomplex: d does not preserve the submodules in degree " + std::to_string(i));
    d.push_back(std::move(*c));
  }
  FreeComplex e(R, k.lo(), std::move(ranks), std::move(d), k.twist());
  ChainMap iota{e, k, bases, 0};
  return SubcomplexEmbedding{std::move(e), std::move(iota), std::move(twists)};
}

SubcomplexEmbedding eta(const FreeComplex& k) { return eta_m(k, 0); }

SubcomplexEmbedding eta_m(const FreeComplex& k, int m) {
  require_decalage_input(k, m);
  const Ring& R = k.ring();
  std::map<int, Matrix> bases;
  std::vector<int> twists;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    const int t = std::max(i, m);
    Elem scale = R.xi_power(t);
    if (i < m)
      bases.emplace(i, Matrix::scalar(R, k.rank(i), scale));
    else
      bases.emplace(i, eta_module_basis(k, i).scaled(scale));
    twists.push_back(t);
  }
  return embed_subcomplex(k, bases, std::move(twists));
}

std::optional<ChainMap> relative_inclusion(const SubcomplexEmbedding& small,
                                           const SubcomplexEmbedding& big) {
  ChainMap f{small.complex, big.complex, {}, 0};
  for (int i = small.complex.lo(); i <= small.complex.hi(); ++i) {
    auto c = SpanCoordinates(big.iota.at(i)).coords(small.iota.at(i));
    if (!c) return std::nullopt;
    f.maps.emplace(i, std::move(*c));
  }
  return f;
}

FGModule quotient_by_xi_torsion(const FGModule& h, const Ring& r) {
  FGModule out{h.free_rank, {}};
  for (const auto& f : h.factors) {
    auto q = r.divide_exact(f, r.xi());
    Elem g = q ? *q : f;
    if (!r.is_unit(g)) out.factors.push_back(r.normalize(g));
  }
  return out;
}

FGModule residue_module(const Ring& r, std::size_t dim) {
  return FGModule{0, std::vector<Elem>(dim, r.xi())};
}

EtaFiltration eta_filtration(const FreeComplex& k, int m_max) {
  require_decalage_input(k, m_max);
  EtaFiltration out;
  for (int m = 0; m <= m_max; ++m) out.levels.push_back(eta_m(k, m));
  for (int m = 0; m < m_max; ++m) {
    auto inc = relative_inclusion(out.levels[m + 1], out.levels[m]);
    if (!inc) throw Error("eta filtration is not decreasing at m = " + std::to_string(m));
    out.inclusions.push_back(std::move(*inc));
  }
  return out;
}

namespace {

// FP complex whose generators are the basis of `gens` and whose relations are
// the columns of `rels` (a subcomplex of gens, given inside K).
FPComplex quotient_complex(const SubcomplexEmbedding& gens, const std::map<int, Matrix>& rels) {
  const FreeComplex& e = gens.complex;
  std::vector<FPModule> terms;
  std::vector<Matrix> d;
  for (int i = e.lo(); i <= e.hi(); ++i) {
    auto c = SpanCoordinates(gens.iota.at(i)).coords(rels.at(i));
    if (!c) throw Error("quotient_complex: relations leave the generators in degree " + std::to_string(i));
    terms.push_back(FPModule{e.rank(i), std::move(*c)});
    if (i < e.hi()) d.push_back(e.d(i));
  }
  return FPComplex(e.ring(), e.lo(), std::move(terms), std::move(d));
}

}  // namespace

GradedPiece graded_piece(const FreeComplex& k, int m) {
  require_decalage_input(k, m);
  const Ring& R = k.ring();
  SubcomplexEmbedding em = eta_m(k, m);
  SubcomplexEmbedding em1 = eta_m(k, m + 1);
  FPComplex q = quotient_complex(em, em1.iota.maps);
  ResidueQuotient over_k = quotient_over_residue_field(q);
  FreeComplex kbar = k.reduce_mod_xi();
  Truncation trunc = truncate_leq(kbar, m);
  ChainMap cmp{over_k.complex, trunc.complex, {}, -m};
  const Elem scale = R.xi_power(m);
  for (int i = k.lo(); i <= std::min(m, k.hi()); ++i) {
    Matrix raw = em.iota.at(i).divided(scale).residue();
    if (i == m) raw = coordinates(trunc.inclusion.at(i), raw);
    cmp.maps.emplace(i, raw * over_k.section.at(i));
  }
  return GradedPiece{std::move(q), std::move(over_k), std::move(trunc), std::move(cmp)};
}

ModXiSubquotient modI_subquotient(const FreeComplex& k, int m) {
  require_decalage_input(k, m);
  const Ring& R = k.ring();
  SubcomplexEmbedding em = eta_m(k, m);
  SubcomplexEmbedding em1 = eta_m(k, m + 1);
  std::map<int, Matrix> rels;
  for (int i = k.lo(); i <= k.hi(); ++i) rels.emplace(i, em.iota.at(i).scaled(R.xi()));
  FPComplex q = quotient_complex(em1, rels);
  ResidueQuotient over_k = quotient_over_residue_field(q);
  return ModXiSubquotient{std::move(q), std::move(over_k)};
}

}  // namespace decalage
