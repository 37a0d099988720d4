#pragma once

#include <vector>

#include "decalage/complexes.hpp"
#include "decalage/report.hpp"

namespace decalage {

/// H^i(eta_m K) = H^i(K) / H^i(K)[xi] for i > m and H^i(K) for i <= m.
CheckResult verify_eta_m_cohomology(const FreeComplex& k, int m);

/// eta_m / eta_{m+1} maps isomorphically, term by term, onto tau_{<=m}(K/xi).
CheckResult verify_graded_piece(const FreeComplex& k, int m);

/// eta_{m+1} / xi eta_m is quasi-isomorphic to the Hodge piece F_{m+1} of the
/// Bockstein complex via x |-> [x / xi^i mod xi]; its H^m vanishes.
CheckResult verify_modI_subquotient(const FreeComplex& k, int m);

/// The reduction of eta_{m+1} splits in cohomology as tau_{<=m}(K/xi) plus
/// F_{m+1} of the Bockstein complex.
CheckResult verify_split_mod_xi(const FreeComplex& k, int m);

/// Every check above, the connecting-map factorization and the Bockstein
/// comparison, for all 0 <= m <= hi + 2.
std::vector<CheckResult> run_lemma_suite(const FreeComplex& k, int lift_rounds, std::uint64_t seed);

}  // namespace decalage
