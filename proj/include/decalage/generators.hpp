#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "decalage/complexes.hpp"

namespace decalage {

/// Small random ring element: integers in [-2, 2], or polynomials of degree <= 1
/// with small coefficients.
Elem random_small(const Ring& r, std::mt19937_64& rng);

/// A random unimodular matrix and its inverse, as a product of elementary moves.
std::pair<Matrix, Matrix> random_unimodular(const Ring& r, std::size_t n, std::mt19937_64& rng);

/// A few non-unit elements used as shell differentials: xi, xi^2, a prime
/// coprime to xi, and xi times that prime.
std::vector<Elem> shell_factors(const Ring& r);

/// Random valid complex in degrees [0, hi] with hi <= max_degree and ranks <=
/// max_rank: a sum of free terms and two-term shells [R --c--> R], conjugated
/// degreewise by random unimodular matrices.
FreeComplex random_free_complex(const Ring& r, std::mt19937_64& rng, int max_degree,
                                std::size_t max_rank);

/// Applies random unimodular base changes A_i in every degree: d_i -> A_{i+1} d_i A_i^{-1}.
FreeComplex conjugate_randomly(const FreeComplex& k, std::mt19937_64& rng);

}  // namespace decalage
