#include "decalage/lattice.hpp"

#include <algorithm>

#include "decalage/errors.hpp"
#include "decalage/io.hpp"

namespace decalage {

Lattice::Lattice(Matrix basis, int shift) : basis_(std::move(basis)), shift_(shift) {
  if (basis_.rows() != basis_.cols()) throw SingularBasis("lattice basis must be square");
  if (rank(basis_) != basis_.rows()) throw SingularBasis("lattice basis is singular");
}

Lattice Lattice::from_columns(const Matrix& columns, int shift) {
  Matrix b = image_basis(columns);
  if (b.cols() != columns.rows()) throw SingularBasis("columns do not span a full-rank lattice");
  return Lattice(std::move(b), shift);
}

Flag::Flag(const Ring& k, std::size_t n, int lo, std::vector<Subspace> levels)
    : k_(k), n_(n), lo_(lo), levels_(std::move(levels)) {
  // trim stationary ends so equal flags compare equal
  while (!levels_.empty() && levels_.front().dim() == 0) {
    levels_.erase(levels_.begin());
    ++lo_;
  }
  while (!levels_.empty() && levels_.back().dim() == n_) levels_.pop_back();
  if (n_ == 0) lo_ = 0;
}

Subspace Flag::at(int m) const {
  if (m < lo_) return Subspace(k_, n_);
  if (m >= hi()) return Subspace::full(k_, n_);
  return levels_[m - lo_];
}

std::vector<int> Flag::jumps() const {
  std::vector<int> out;
  for (int m = lo_; m <= hi(); ++m)
    for (std::size_t j = dim(m - 1); j < dim(m); ++j) out.push_back(m);
  std::sort(out.rbegin(), out.rend());
  return out;
}

Flag Flag::shifted(int c) const {
  Flag out = *this;
  out.lo_ += c;
  return out;
}

Flag Flag::mapped(const Matrix& f) const {
  std::vector<Subspace> lv;
  for (const auto& s : levels_) lv.push_back(s.image(f));
  return Flag(f.ring(), f.rows(), lo_, std::move(lv));
}

void Flag::validate() const {
  for (int m = lo_; m <= hi(); ++m)
    if (!at(m).contains(at(m - 1))) throw Error("flag is not increasing at " + std::to_string(m));
}

bool operator==(const Flag& a, const Flag& b) {
  if (a.n_ != b.n_) return false;
  const int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi(), b.hi());
  for (int m = lo - 1; m <= hi; ++m)
    if (a.at(m) != b.at(m)) return false;
  return true;
}

namespace {

// L in L0 coordinates, locally at xi: span of xi^{a_j} u_j with u_j the columns
// of a unimodular matrix.
struct LocalForm {
  Matrix u;
  std::vector<int> a;
};

LocalForm local_form(const Lattice& l, const Lattice& l0) {
  if (l.dim() != l0.dim() || l.ring() != l0.ring()) throw SingularBasis("lattices of different shapes");
  const Ring& R = l.ring();
  // Delta * L0^{-1} = V diag(Delta / d_j) U with U L0 V = D
  SNFResult s0 = snf(l0.basis());
  const std::size_t n = l.dim();
  Elem delta = R.one();
  for (std::size_t j = 0; j < n; ++j) delta = R.mul(delta, s0.D.at(j, j));
  Matrix scaled(R, n, n);
  for (std::size_t j = 0; j < n; ++j) scaled.at(j, j) = *R.divide_exact(delta, s0.D.at(j, j));
  Matrix y = s0.V * scaled * s0.U * l.basis();
  SNFResult s = snf(y);
  LocalForm out{s.U_inv, {}};
  const int base = -R.xi_valuation(delta) + l0.shift() - l.shift();
  for (std::size_t j = 0; j < n; ++j) out.a.push_back(R.xi_valuation(s.D.at(j, j)) + base);
  return out;
}

}  // namespace

std::vector<int> relative_position(const Lattice& l, const Lattice& l0) {
  std::vector<int> a = local_form(l, l0).a;
  std::sort(a.rbegin(), a.rend());
  return a;
}

Flag bb_filtration(const Lattice& l, const Lattice& l0) {
  LocalForm f = local_form(l, l0);
  const Ring k = l.ring().residue_field();
  const std::size_t n = l.dim();
  Matrix ubar = f.u.residue();
  if (n == 0) return Flag(k, 0, 0, {});
  const int lo = *std::min_element(f.a.begin(), f.a.end());
  const int hi = *std::max_element(f.a.begin(), f.a.end());
  std::vector<Subspace> levels;
  for (int m = lo; m <= hi; ++m) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (f.a[j] <= m) cols.push_back(j);
    levels.push_back(Subspace::span(ubar.select_cols(cols)));
  }
  return Flag(k, n, lo, std::move(levels));
}

Json flag_to_json(const Flag& f) {
  Json levels = Json::array();
  for (int m = f.lo(); m < f.hi(); ++m)
    levels.push_back({{"m", m}, {"dim", f.dim(m)}, {"basis", matrix_to_json(f.at(m).basis())}});
  return Json{{"ambient_dim", f.ambient_dim()}, {"zero_below", f.lo()}, {"full_from", f.hi()}, {"levels", levels}};
}

}  // namespace decalage
