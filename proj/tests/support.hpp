#pragma once

#include <random>

#include "decalage/complexes.hpp"
#include "decalage/generators.hpp"

namespace decalage {

/// [R --c--> R] in degrees 0, 1.
inline FreeComplex shell(const Ring& r, long c) {
  return FreeComplex(r, 0, {1, 1}, {Matrix::from_ints(r, {{c}})});
}

inline FreeComplex shell(const Ring& r, const Elem& c) {
  Matrix m(r, 1, 1);
  m.at(0, 0) = c;
  return FreeComplex(r, 0, {1, 1}, {m});
}

inline FreeComplex random_complex(const Ring& r, std::mt19937_64& rng, int max_degree,
                                  std::size_t max_rank) {
  return random_free_complex(r, rng, max_degree, max_rank);
}

}  // namespace decalage
