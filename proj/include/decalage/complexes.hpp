#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decalage/linalg.hpp"

namespace decalage {

/// Isomorphism type of a finitely generated module over a PID:
/// R^free_rank + sum R/(f) over the invariant factors (normalized non-units,
/// each dividing the next).
struct FGModule {
  std::size_t free_rank = 0;
  std::vector<Elem> factors;

  bool is_zero() const { return free_rank == 0 && factors.empty(); }
  bool xi_torsion_free(const Ring& r) const;
  /// The submodule killed by xi is a k-vector space of this dimension.
  std::size_t xi_torsion_dim(const Ring& r) const;
  std::string to_string(const Ring& r) const;

  friend bool operator==(const FGModule& a, const FGModule& b) {
    return a.free_rank == b.free_rank && a.factors == b.factors;
  }
  friend bool operator!=(const FGModule& a, const FGModule& b) { return !(a == b); }
};

/// Bounded cochain complex of finite free modules, nonzero at most in [lo, hi].
/// d(i) is the rank(i+1) x rank(i) matrix of K^i -> K^{i+1}.
class FreeComplex {
 public:
  FreeComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> differentials,
              int twist = 0);
  static FreeComplex zero(const Ring& ring, int lo, int hi);
  /// Single term R^rank in degree `degree`.
  static FreeComplex concentrated(const Ring& ring, int degree, std::size_t rank);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  int twist() const { return twist_; }
  void set_twist(int t) { twist_ = t; }

  std::size_t rank(int i) const;
  /// Zero-shaped matrices outside [lo, hi].
  const Matrix& d(int i) const;

  /// Throws ShapeMismatch or DifferentialSquareNonzero.
  void validate() const;
  FreeComplex reduce_mod_xi() const;
  /// Same complex with the degree range widened to [lo, hi] (zero padding).
  FreeComplex widened(int lo, int hi) const;

  friend bool operator==(const FreeComplex& a, const FreeComplex& b);

 private:
  Ring ring_;
  int lo_;
  std::vector<std::size_t> ranks_;
  std::vector<Matrix> diffs_;  // degrees lo-1 .. hi
  Matrix empty_;
  int twist_;
};

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);

/// Degreewise maps f(i): source^i -> target^i commuting with the differentials.
struct ChainMap {
  FreeComplex source;
  FreeComplex target;
  std::map<int, Matrix> maps;
  int twist_shift = 0;

  /// Zero of the right shape where no map is stored.
  Matrix at(int i) const;
  /// Throws ShapeMismatch on bad shapes and Error if a square fails to commute.
  void validate() const;
  bool injective() const;
};

ChainMap identity_map(const FreeComplex& k);
ChainMap scalar_map(const FreeComplex& k, const Elem& c);
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// Coordinates with respect to a full-column-rank basis of a submodule of R^n.
class SpanCoordinates {
 public:
  explicit SpanCoordinates(const Matrix& basis);
  const Matrix& basis() const { return basis_; }
  /// x with basis * x = v, when v lies in the span.
  std::optional<Matrix> coords(const Matrix& v) const;

 private:
  Matrix basis_;
  SNFResult snf_;
};

/// A subquotient C / Rel (Rel inside the span of C) brought to normal form:
/// torsion generators first (orders d_1 | d_2 | ...), then free generators.
class SubquotientPresentation {
 public:
  SubquotientPresentation(const Matrix& cycle_basis, const Matrix& relations);

  const FGModule& module() const { return module_; }
  /// Representatives in the ambient free module, one column per generator.
  const Matrix& generators() const { return generators_; }
  /// Order of each generator; zero for free generators.
  const std::vector<Elem>& orders() const { return orders_; }
  std::size_t size() const { return orders_.size(); }
  /// Normal-form coordinates of elements of the cycle module (one column each),
  /// torsion coordinates reduced modulo the order.
  Matrix classes(const Matrix& cycles) const;
  bool contains(const Matrix& v) const { return cycles_.coords(v).has_value(); }

 private:
  SpanCoordinates cycles_;
  Matrix P_;
  std::vector<std::size_t> kept_;
  std::vector<Elem> orders_;
  Matrix generators_;
  FGModule module_;
};

Matrix cocycles(const FreeComplex& k, int i);
Matrix boundaries(const FreeComplex& k, int i);
SubquotientPresentation present_cohomology(const FreeComplex& k, int i);
FGModule cohomology(const FreeComplex& k, int i);
/// dim H^i for complexes over a field.
std::size_t betti(const FreeComplex& k, int i);

/// Matrix of H^i(f) in the normal-form presentations of source and target.
Matrix induced_map(const ChainMap& f, int i);
Matrix induced_map(const ChainMap& f, const SubquotientPresentation& src,
                   const SubquotientPresentation& tgt, int i);

struct Truncation {
  FreeComplex complex;
  ChainMap inclusion;
};

/// Canonical truncation: K^i for i < m, Z^m in degree m, zero above.
Truncation truncate_leq(const FreeComplex& k, int m);
/// Brutal truncation: K^i for i >= m, zero below.
Truncation hodge_filtration(const FreeComplex& k, int m);
/// cone(f)^i = source^{i+1} + target^i, d = [[-d_src, 0], [f, d_tgt]].
FreeComplex cone(const ChainMap& f);

// ---------------------------------------------------------------------------
// Finitely presented modules and complexes

struct FPModule {
  std::size_t gens = 0;
  Matrix rels;  // gens x (#relations)
};

class FPComplex {
 public:
  FPComplex(Ring ring, int lo, std::vector<FPModule> terms, std::vector<Matrix> differentials);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  std::size_t gens(int i) const;
  Matrix rels(int i) const;
  /// Differential on generators, gens(i+1) x gens(i).
  Matrix d(int i) const;

  /// Throws if a differential fails to preserve relations or d*d leaves them.
  void validate() const;

 private:
  Ring ring_;
  int lo_;
  std::vector<FPModule> terms_;
  std::vector<Matrix> diffs_;
};

SubquotientPresentation present_cohomology(const FPComplex& c, int i);
FGModule cohomology(const FPComplex& c, int i);

/// An FPComplex killed by xi, rewritten as a complex of k-vector spaces.
struct ResidueQuotient {
  FreeComplex complex;
  std::map<int, Matrix> project;  // k^{gens(i)} -> complex^i
  std::map<int, Matrix> section;  // complex^i -> k^{gens(i)}, project * section = 1
};
ResidueQuotient quotient_over_residue_field(const FPComplex& c);

}  // namespace decalage
