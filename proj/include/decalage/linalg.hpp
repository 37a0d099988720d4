#pragma once

#include <optional>
#include <vector>

#include "decalage/matrix.hpp"

namespace decalage {

/// U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SNFResult {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inv;
  Matrix V_inv;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d_1 | ... | d_rank, normalized.
  std::vector<Elem> diagonal() const;
};

SNFResult snf(const Matrix& m);

/// Nonzero SNF diagonal entries with units dropped.
std::vector<Elem> invariant_factors(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of ker(m). Over a field this is the reduced-echelon
/// nullspace basis (one vector per free column), which is deterministic.
Matrix kernel_basis(const Matrix& m);
/// Columns form a basis of the column space of m.
Matrix image_basis(const Matrix& m);
/// Some X with a * X = b, if one exists over the ring.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// Fraction-free (Bareiss) determinant.
Elem determinant(const Matrix& m);
bool is_unimodular(const Matrix& m);
/// Minimum xi-valuation over all entries; kInfiniteValuation for zero.
int min_valuation(const Matrix& m);

// ---------------------------------------------------------------------------
// Linear algebra over a field

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon rref(const Matrix& m);
/// Basis of the null space, one column per non-pivot column, in increasing order.
Matrix nullspace(const Matrix& m);

/// A subspace of k^n stored by its canonical basis (transpose of the reduced row
/// echelon form of any spanning set), so equality is a data comparison.
class Subspace {
 public:
  Subspace(const Ring& k, std::size_t n);  // zero subspace
  static Subspace span(const Matrix& columns);
  static Subspace full(const Ring& k, std::size_t n);

  const Ring& field() const { return basis_.ring(); }
  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  /// Canonical basis as columns.
  const Matrix& basis() const { return basis_; }

  bool contains(const Matrix& vectors) const;
  bool contains(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Image under a linear map (rows = target dim).
  Subspace image(const Matrix& f) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  explicit Subspace(Matrix canonical) : basis_(std::move(canonical)) {}
  Matrix basis_;
};

/// Splits `sub` inside `whole` (sub contained in whole, both as column spans in
/// k^n): returns columns completing a basis of `sub` to one of `whole`, chosen
/// greedily from the columns of `whole`'s canonical basis.
Matrix complement_basis(const Subspace& sub, const Subspace& whole);

/// Coordinates of `v` (columns) with respect to the linearly independent columns
/// of `basis`; throws if some column is not in the span.
Matrix coordinates(const Matrix& basis, const Matrix& v);

}  // namespace decalage
