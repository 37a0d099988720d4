#include "decalage/complexes.hpp"

#include <algorithm>

#include "decalage/errors.hpp"

namespace decalage {

bool FGModule::xi_torsion_free(const Ring& r) const { return xi_torsion_dim(r) == 0; }

std::size_t FGModule::xi_torsion_dim(const Ring& r) const {
  std::size_t n = 0;
  for (const auto& f : factors)
    if (r.divides(r.xi(), f)) ++n;
  return n;
}

std::string FGModule::to_string(const Ring& r) const {
  std::string out;
  if (free_rank > 0) out = r.is_field() ? "k^" : "R^";
  if (free_rank > 0) out += std::to_string(free_rank);
  for (const auto& f : factors) {
    if (!out.empty()) out += " + ";
    out += "R/(" + r.to_string(f) + ")";
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

FreeComplex::FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks,
                         std::vector<Matrix> differentials, int twist)
    : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), empty_(ring_, 0, 0), twist_(twist) {
  if (ranks_.empty()) throw ShapeMismatch("complex needs lo <= hi");
  if (differentials.size() + 1 != ranks_.size())
    throw ShapeMismatch("expected " + std::to_string(ranks_.size() - 1) + " differentials, got " +
                        std::to_string(differentials.size()));
  diffs_.reserve(ranks_.size() + 1);
  diffs_.emplace_back(ring_, ranks_.front(), 0);
  for (std::size_t k = 0; k < differentials.size(); ++k) {
    Matrix& m = differentials[k];
    if (m.ring() != ring_) throw ShapeMismatch("differential over a different ring");
    if (m.rows() != ranks_[k + 1] || m.cols() != ranks_[k])
      throw ShapeMismatch("d(" + std::to_string(lo_ + static_cast<int>(k)) + ") has shape " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                          std::to_string(ranks_[k + 1]) + "x" + std::to_string(ranks_[k]));
    diffs_.push_back(std::move(m));
  }
  diffs_.emplace_back(ring_, 0, ranks_.back());
}

FreeComplex FreeComplex::zero(const Ring& ring, int lo, int hi) {
  std::vector<Matrix> d;
  for (int i = lo; i < hi; ++i) d.emplace_back(ring, 0, 0);
  return FreeComplex(ring, lo, std::vector<std::size_t>(hi - lo + 1, 0), std::move(d));
}

FreeComplex FreeComplex::concentrated(const Ring& ring, int degree, std::size_t rank) {
  return FreeComplex(ring, degree, {rank}, {});
}

std::size_t FreeComplex::rank(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return ranks_[i - lo_];
}

const Matrix& FreeComplex::d(int i) const {
  if (i < lo_ - 1 || i > hi()) return empty_;
  return diffs_[i - lo_ + 1];
}

void FreeComplex::validate() const {
  for (int i = lo_; i + 1 < hi(); ++i) {
    Matrix sq = d(i + 1) * d(i);
    for (std::size_t c = 0; c < sq.cols(); ++c)
      for (std::size_t r = 0; r < sq.rows(); ++r)
        if (!sq.at(r, c).is_zero()) throw DifferentialSquareNonzero(i, c);
  }
}

FreeComplex FreeComplex::reduce_mod_xi() const {
  std::vector<Matrix> d;
  for (int i = lo_; i < hi(); ++i) d.push_back(this->d(i).residue());
  return FreeComplex(ring_.residue_field(), lo_, ranks_, std::move(d), twist_);
}

FreeComplex FreeComplex::widened(int lo, int hi) const {
  if (lo > lo_ || hi < this->hi()) throw ShapeMismatch("widened: range must contain the complex");
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(rank(i));
    if (i < hi) d.push_back(i >= lo_ && i < this->hi() ? this->d(i) : Matrix(ring_, rank(i + 1), rank(i)));
  }
  return FreeComplex(ring_, lo, std::move(ranks), std::move(d), twist_);
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
  return a.ring_ == b.ring_ && a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_ &&
         a.twist_ == b.twist_;
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::max(a.hi(), b.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(a.rank(i) + b.rank(i));
    if (i < hi) {
      Matrix da = i >= a.lo() && i < a.hi() ? a.d(i) : Matrix(a.ring(), a.rank(i + 1), a.rank(i));
      Matrix db = i >= b.lo() && i < b.hi() ? b.d(i) : Matrix(b.ring(), b.rank(i + 1), b.rank(i));
      d.push_back(direct_sum(da, db));
    }
  }
  return FreeComplex(a.ring(), lo, std::move(ranks), std::move(d), a.twist());
}

// ---------------------------------------------------------------------------

Matrix ChainMap::at(int i) const {
  auto it = maps.find(i);
  if (it != maps.end()) return it->second;
  return Matrix(source.ring(), target.rank(i), source.rank(i));
}

void ChainMap::validate() const {
  for (const auto& [i, m] : maps)
    if (m.rows() != target.rank(i) || m.cols() != source.rank(i))
      throw ShapeMismatch("chain map component in degree " + std::to_string(i) + " has wrong shape");
  const int lo = std::min(source.lo(), target.lo()) - 1;
  const int hi = std::max(source.hi(), target.hi());
  for (int i = lo; i <= hi; ++i) {
    if (at(i + 1) * source.d(i) != target.d(i) * at(i))
      throw Error("chain map does not commute with d in degree " + std::to_string(i));
  }
}

bool ChainMap::injective() const {
  for (int i = source.lo(); i <= source.hi(); ++i)
    if (rank(at(i)) != source.rank(i)) return false;
  return true;
}

ChainMap identity_map(const FreeComplex& k) { return scalar_map(k, k.ring().one()); }

ChainMap scalar_map(const FreeComplex& k, const Elem& c) {
  ChainMap f{k, k, {}, 0};
  for (int i = k.lo(); i <= k.hi(); ++i) f.maps.emplace(i, Matrix::scalar(k.ring(), k.rank(i), c));
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h{f.source, g.target, {}, f.twist_shift + g.twist_shift};
  for (int i = f.source.lo(); i <= f.source.hi(); ++i) h.maps.emplace(i, g.at(i) * f.at(i));
  return h;
}

// ---------------------------------------------------------------------------

SpanCoordinates::SpanCoordinates(const Matrix& basis) : basis_(basis), snf_(snf(basis)) {
  if (snf_.rank != basis.cols()) throw Error("SpanCoordinates: columns are linearly dependent");
}

std::optional<Matrix> SpanCoordinates::coords(const Matrix& v) const {
  const Ring& R = basis_.ring();
  Matrix w = snf_.U * v;
  const std::size_t z = basis_.cols();
  Matrix y(R, z, v.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (i >= z) {
        if (!w.at(i, j).is_zero()) return std::nullopt;
        continue;
      }
      auto q = R.divide_exact(w.at(i, j), snf_.D.at(i, i));
      if (!q) return std::nullopt;
      y.at(i, j) = std::move(*q);
    }
  return snf_.V * y;
}

SubquotientPresentation::SubquotientPresentation(const Matrix& cycle_basis, const Matrix& relations)
    : cycles_(cycle_basis), P_(cycle_basis.ring(), 0, 0), generators_(cycle_basis.ring(), 0, 0) {
  const Ring& R = cycle_basis.ring();
  auto x = cycles_.coords(relations);
  if (!x) throw Error("relations are not contained in the cycle module");
  SNFResult s = snf(*x);
  P_ = s.U;
  const std::size_t z = cycle_basis.cols();
  for (std::size_t j = 0; j < s.rank; ++j) {
    const Elem& dj = s.D.at(j, j);
    if (R.is_unit(dj)) continue;
    kept_.push_back(j);
    orders_.push_back(dj);
    module_.factors.push_back(dj);
  }
  for (std::size_t j = s.rank; j < z; ++j) {
    kept_.push_back(j);
    orders_.push_back(R.zero());
  }
  module_.free_rank = z - s.rank;
  generators_ = cycle_basis * s.U_inv.select_cols(kept_);
}

Matrix SubquotientPresentation::classes(const Matrix& cycles) const {
  const Ring& R = P_.ring();
  auto c = cycles_.coords(cycles);
  if (!c) throw Error("element is not in the cycle module");
  Matrix y = P_ * *c;
  Matrix out(R, kept_.size(), cycles.cols());
  for (std::size_t g = 0; g < kept_.size(); ++g)
    for (std::size_t j = 0; j < cycles.cols(); ++j) {
      const Elem& v = y.at(kept_[g], j);
      out.at(g, j) = orders_[g].is_zero() ? v : R.divmod(v, orders_[g]).second;
    }
  return out;
}

Matrix cocycles(const FreeComplex& k, int i) { return kernel_basis(k.d(i)); }

Matrix boundaries(const FreeComplex& k, int i) { return k.d(i - 1); }

SubquotientPresentation present_cohomology(const FreeComplex& k, int i) {
  return SubquotientPresentation(cocycles(k, i), k.d(i - 1));
}

FGModule cohomology(const FreeComplex& k, int i) {
  if (k.ring().is_field()) return FGModule{betti(k, i), {}};
  Matrix z = cocycles(k, i);
  SpanCoordinates sc(z);
  auto x = sc.coords(k.d(i - 1));
  if (!x) throw Error("boundaries outside cocycles: d*d != 0?");
  FGModule m;
  std::vector<Elem> f = invariant_factors(*x);
  m.free_rank = z.cols() - rank(*x);
  m.factors = std::move(f);
  return m;
}

std::size_t betti(const FreeComplex& k, int i) {
  return k.rank(i) - rank(k.d(i)) - rank(k.d(i - 1));
}

Matrix induced_map(const ChainMap& f, int i) {
  return induced_map(f, present_cohomology(f.source, i), present_cohomology(f.target, i), i);
}

Matrix induced_map(const ChainMap& f, const SubquotientPresentation& src,
                   const SubquotientPresentation& tgt, int i) {
  return tgt.classes(f.at(i) * src.generators());
}

// ---------------------------------------------------------------------------

Truncation truncate_leq(const FreeComplex& k, int m) {
  const Ring& R = k.ring();
  if (m >= k.hi()) return Truncation{k, identity_map(k)};
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  Matrix z = m >= k.lo() ? cocycles(k, m) : Matrix(R, 0, 0);
  for (int i = k.lo(); i <= k.hi(); ++i) ranks.push_back(i < m ? k.rank(i) : i == m ? z.cols() : 0);
  auto rk = [&](int i) { return i < k.lo() || i > k.hi() ? 0 : ranks[i - k.lo()]; };
  for (int i = k.lo(); i < k.hi(); ++i) {
    if (i < m - 1) {
      d.push_back(k.d(i));
    } else if (i == m - 1) {
      auto c = SpanCoordinates(z).coords(k.d(i));
      if (!c) throw Error("truncate_leq: boundaries are not cocycles");
      d.push_back(*c);
    } else {
      d.emplace_back(R, rk(i + 1), rk(i));
    }
  }
  FreeComplex t(R, k.lo(), std::move(ranks), std::move(d), k.twist());
  ChainMap inc{t, k, {}, 0};
  for (int i = k.lo(); i <= k.hi(); ++i) {
    if (i < m)
      inc.maps.emplace(i, Matrix::identity(R, k.rank(i)));
    else if (i == m)
      inc.maps.emplace(i, z);
  }
  return Truncation{std::move(t), std::move(inc)};
}

Truncation hodge_filtration(const FreeComplex& k, int m) {
  const Ring& R = k.ring();
  if (m <= k.lo()) return Truncation{k, identity_map(k)};
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = k.lo(); i <= k.hi(); ++i) ranks.push_back(i >= m ? k.rank(i) : 0);
  for (int i = k.lo(); i < k.hi(); ++i)
    d.push_back(i >= m ? k.d(i) : Matrix(R, i + 1 >= m ? k.rank(i + 1) : 0, 0));
  FreeComplex h(R, k.lo(), std::move(ranks), std::move(d), k.twist());
  ChainMap inc{h, k, {}, 0};
  for (int i = std::max(m, k.lo()); i <= k.hi(); ++i)
    inc.maps.emplace(i, Matrix::identity(R, k.rank(i)));
  return Truncation{std::move(h), std::move(inc)};
}

FreeComplex cone(const ChainMap& f) {
  const FreeComplex& s = f.source;
  const FreeComplex& t = f.target;
  const Ring& R = s.ring();
  const int lo = std::min(s.lo() - 1, t.lo());
  const int hi = std::max(s.hi() - 1, t.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(s.rank(i + 1) + t.rank(i));
    if (i == hi) break;
    Matrix m(R, s.rank(i + 2) + t.rank(i + 1), s.rank(i + 1) + t.rank(i));
    m.set_block(0, 0, s.d(i + 1).scaled(R.neg(R.one())));
    m.set_block(s.rank(i + 2), 0, f.at(i + 1));
    m.set_block(s.rank(i + 2), s.rank(i + 1), t.d(i));
    d.push_back(std::move(m));
  }
  return FreeComplex(R, lo, std::move(ranks), std::move(d), t.twist());
}

// ---------------------------------------------------------------------------

FPComplex::FPComplex(Ring ring, int lo, std::vector<FPModule> terms, std::vector<Matrix> differentials)
    : ring_(std::move(ring)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(differentials)) {
  if (terms_.empty()) throw ShapeMismatch("FP complex needs lo <= hi");
  if (diffs_.size() + 1 != terms_.size()) throw ShapeMismatch("FP complex: wrong number of differentials");
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k].rels.rows() != terms_[k].gens) throw ShapeMismatch("FP module relation shape");
  for (std::size_t k = 0; k < diffs_.size(); ++k)
    if (diffs_[k].rows() != terms_[k + 1].gens || diffs_[k].cols() != terms_[k].gens)
      throw ShapeMismatch("FP complex differential shape");
}

std::size_t FPComplex::gens(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return terms_[i - lo_].gens;
}

Matrix FPComplex::rels(int i) const {
  if (i < lo_ || i > hi()) return Matrix(ring_, 0, 0);
  return terms_[i - lo_].rels;
}

Matrix FPComplex::d(int i) const {
  if (i < lo_ || i >= hi()) return Matrix(ring_, gens(i + 1), gens(i));
  return diffs_[i - lo_];
}

void FPComplex::validate() const {
  for (int i = lo_; i < hi(); ++i) {
    if (!solve(rels(i + 1), d(i) * rels(i)))
      throw Error("FP differential in degree " + std::to_string(i) + " does not preserve relations");
    if (!solve(rels(i + 2), d(i + 1) * d(i)))
      throw DifferentialSquareNonzero(i, 0);
  }
}

SubquotientPresentation present_cohomology(const FPComplex& c, int i) {
  const Ring& R = c.ring();
  const std::size_t n = c.gens(i);
  Matrix rel_next = c.rels(i + 1);
  Matrix a = hstack(c.d(i), rel_next.scaled(R.neg(R.one())));
  Matrix ker = kernel_basis(a).rows_range(0, n);
  Matrix cyc = ker.cols() ? image_basis(ker) : Matrix(R, n, 0);
  return SubquotientPresentation(cyc, hstack(c.d(i - 1), c.rels(i)));
}

FGModule cohomology(const FPComplex& c, int i) { return present_cohomology(c, i).module(); }

ResidueQuotient quotient_over_residue_field(const FPComplex& c) {
  const Ring& R = c.ring();
  const Ring k = R.residue_field();
  ResidueQuotient out{FreeComplex::zero(k, c.lo(), c.hi()), {}, {}};
  std::vector<std::size_t> ranks;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const std::size_t n = c.gens(i);
    if (!solve(c.rels(i), Matrix::scalar(R, n, R.xi())))
      throw Error("quotient_over_residue_field: term " + std::to_string(i) + " is not killed by xi");
    Subspace w = Subspace::span(c.rels(i).residue());
    Matrix comp = complement_basis(w, Subspace::full(k, n));
    Matrix t = hstack(w.basis(), comp);
    Matrix t_inv = *solve(t, Matrix::identity(k, n));
    out.project.emplace(i, t_inv.rows_range(w.dim(), n));
    out.section.emplace(i, comp);
    ranks.push_back(comp.cols());
  }
  std::vector<Matrix> d;
  for (int i = c.lo(); i < c.hi(); ++i)
    d.push_back(out.project.at(i + 1) * c.d(i).residue() * out.section.at(i));
  out.complex = FreeComplex(k, c.lo(), std::move(ranks), std::move(d));
  return out;
}

}  // namespace decalage
