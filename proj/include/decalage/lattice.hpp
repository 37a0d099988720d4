#pragma once

#include <vector>

#include "decalage/linalg.hpp"
#include "decalage/report.hpp"

namespace decalage {

/// xi^{-shift} times the R-span of the columns of a square basis with nonzero
/// determinant. Only xi-adic data is meaningful: primes other than xi are
/// treated as units.
class Lattice {
 public:
  /// Throws SingularBasis.
  Lattice(Matrix basis, int shift = 0);
  /// Full-rank lattice spanned by any number of columns.
  static Lattice from_columns(const Matrix& columns, int shift = 0);
  static Lattice standard(const Ring& r, std::size_t n) { return Lattice(Matrix::identity(r, n)); }

  const Ring& ring() const { return basis_.ring(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  int shift() const { return shift_; }
  /// xi^c times this lattice.
  Lattice scaled(int c) const { return Lattice(basis_, shift_ - c); }

 private:
  Matrix basis_;
  int shift_;
};

/// Increasing flag of subspaces of k^n indexed by integers: zero below lo(),
/// everything from hi() on.
class Flag {
 public:
  Flag(const Ring& k, std::size_t n, int lo, std::vector<Subspace> levels);

  std::size_t ambient_dim() const { return n_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(levels_.size()); }
  Subspace at(int m) const;
  std::size_t dim(int m) const { return at(m).dim(); }
  /// Each m repeated dim(m) - dim(m-1) times, descending.
  std::vector<int> jumps() const;
  /// The flag m |-> at(m - c).
  Flag shifted(int c) const;
  /// Image under an invertible linear map.
  Flag mapped(const Matrix& f) const;
  /// Throws unless the family increases and ends at k^n.
  void validate() const;

  friend bool operator==(const Flag& a, const Flag& b);
  friend bool operator!=(const Flag& a, const Flag& b) { return !(a == b); }

 private:
  Ring k_;
  std::size_t n_;
  int lo_;
  std::vector<Subspace> levels_;  // levels_[j] = at(lo + j)
};

/// xi-valuations of the elementary divisors of L relative to L0, descending.
std::vector<int> relative_position(const Lattice& l, const Lattice& l0);

/// Fil_m = image of (L n xi^m L0) in xi^m L0 / xi^{m+1} L0 = k^n, in the
/// coordinates of the basis of L0.
Flag bb_filtration(const Lattice& l, const Lattice& l0);

Json flag_to_json(const Flag& f);

}  // namespace decalage
