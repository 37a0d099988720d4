#pragma once

#include <random>
#include <vector>

#include "decalage/complexes.hpp"
#include "decalage/report.hpp"

namespace decalage {

/// H^i of a complex over a field with a deterministic basis: representatives
/// complete the canonical basis of the boundaries to one of the cocycles.
class ResidueCohomology {
 public:
  ResidueCohomology(const FreeComplex& c, int i);

  std::size_t dim() const { return reps_.cols(); }
  std::size_t ambient_dim() const { return reps_.rows(); }
  const Matrix& representatives() const { return reps_; }
  const Subspace& cocycles() const { return cocycles_; }
  const Subspace& boundaries() const { return boundaries_; }
  /// Coordinates of the classes of the given cocycles (one per column).
  Matrix classes(const Matrix& cocycles) const;

 private:
  Subspace cocycles_;
  Subspace boundaries_;
  Matrix reps_;
  Matrix frame_;  // [boundary basis | reps]
};

/// The complex H^*(K/xi) with the Bockstein differential.
struct BocksteinComplex {
  Ring field;
  int lo = 0;
  std::vector<ResidueCohomology> h;  // degrees lo .. hi
  std::vector<Matrix> beta;          // beta(i): H^i -> H^{i+1}, degrees lo .. hi-1

  int hi() const { return lo + static_cast<int>(h.size()) - 1; }
  std::size_t dim(int i) const { return i < lo || i > hi() ? 0 : h[i - lo].dim(); }
  const ResidueCohomology& at(int i) const { return h.at(i - lo); }
  Matrix beta_at(int i) const;
  FreeComplex as_complex() const;
};

BocksteinComplex bockstein_complex(const FreeComplex& k);

/// beta(i) recomputed with random lifts: each representative is moved by a
/// random boundary mod xi and lifted with a random multiple of xi added.
Matrix bockstein_with_random_lifts(const FreeComplex& k, const BocksteinComplex& b, int i,
                                   std::mt19937_64& rng);

/// Over a field: every induced map on cohomology is an isomorphism.
bool is_quasi_isomorphism(const ChainMap& f, std::string* witness = nullptr);

/// Connecting map H^m(C) -> H^{m+1}(A) of a degreewise exact 0 -> A -a-> B -b-> C -> 0
/// over a field, in the normal-form presentations of H(C) and H(A).
Matrix connecting_map(const ChainMap& a, const ChainMap& b, int m);

CheckResult check_bockstein_lifts(const FreeComplex& k, int rounds, std::uint64_t seed);
/// (eta K) / xi -> Bockstein complex, x |-> [x / xi^i mod xi], is a quasi-isomorphism.
CheckResult verify_eta_bockstein_comparison(const FreeComplex& k);
CheckResult connecting_factorization(const FreeComplex& k, int m);

}  // namespace decalage
