#include <random>

#include "decalage/decalage.hpp"
#include "decalage/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace decalage;

TEST_CASE("eta of a shell with a single xi") {
  Ring z = Ring::integers(3);
  SubcomplexEmbedding e = eta(shell(z, 3));
  e.iota.validate();
  CHECK(e.complex.d(0) == Matrix::from_ints(z, {{1}}));
  CHECK(cohomology(e.complex, 0).is_zero());
  CHECK(cohomology(e.complex, 1).is_zero());
  CHECK(e.twist(0) == 0);
  CHECK(e.twist(1) == 1);
}

TEST_CASE("eta halves the xi-adic part of the torsion") {
  Ring z = Ring::integers(2);
  FreeComplex k = shell(z, 4);
  SubcomplexEmbedding e = eta(k);
  CHECK(cohomology(e.complex, 1) == FGModule{0, {z.from_int(2)}});
  CHECK(quotient_by_xi_torsion(cohomology(k, 1), z) == FGModule{0, {z.from_int(2)}});
}

TEST_CASE("eta_m and torsion prime to xi") {
  Ring z = Ring::integers(5);
  FreeComplex k = shell(z, 5);
  SubcomplexEmbedding e1 = eta_m(k, 1);
  CHECK(cohomology(e1.complex, 1) == FGModule{0, {z.from_int(5)}});
  CHECK(cohomology(e1.complex, 0).is_zero());

  Ring z3 = Ring::integers(3);
  FreeComplex prime_to = shell(z3, 2);
  CHECK(cohomology(eta(prime_to).complex, 1) == cohomology(prime_to, 1));
}

TEST_CASE("input guards") {
  Ring z = Ring::integers(3);
  CHECK_THROWS_AS(eta_m(shell(z, 3), -1), NegativeM);
  FreeComplex below(z, -1, {1, 1}, {Matrix::from_ints(z, {{3}})});
  CHECK_THROWS_AS(eta(below), DegreeBelowZero);
}

TEST_CASE("graded piece of a single-xi shell") {
  Ring z = Ring::integers(3);
  GradedPiece g = graded_piece(shell(z, 3), 0);
  CHECK(g.over_k.complex.rank(0) == 1);
  CHECK(g.over_k.complex.rank(1) == 0);
  g.comparison.validate();
  CHECK(induced_map(g.comparison, 0).rows() == 1);
}

TEST_CASE("the eta filtration is decreasing and eta_0 = eta") {
  std::mt19937_64 rng(11);
  for (const Ring& r : {Ring::integers(3), Ring::poly_fp(5, 0), Ring::poly_q(0)}) {
    for (int trial = 0; trial < 6; ++trial) {
      FreeComplex k = random_complex(r, rng, 3, 3);
      EtaFiltration f = eta_filtration(k, 3);
      for (const auto& inc : f.inclusions) CHECK_NOTHROW(inc.validate());
      CHECK(f.levels[0].complex == eta(k).complex);
      for (int i = k.lo(); i <= k.hi(); ++i) {
        // xi eta_m sits inside eta_{m+1}
        for (int m = 0; m < 3; ++m) {
          Matrix scaled = f.levels[m].iota.at(i).scaled(r.xi());
          CHECK(SpanCoordinates(f.levels[m + 1].iota.at(i)).coords(scaled).has_value());
        }
      }
    }
  }
}

TEST_CASE("cohomology of eta is H / H[xi] on random complexes") {
  std::mt19937_64 rng(7);
  for (const Ring& r : {Ring::integers(2), Ring::integers(3), Ring::poly_fp(3, 1), Ring::poly_q(0)}) {
    for (int trial = 0; trial < 10; ++trial) {
      FreeComplex k = random_complex(r, rng, 3, 3);
      SubcomplexEmbedding e = eta(k);
      CHECK(e.iota.injective());
      for (int i = k.lo(); i <= k.hi(); ++i)
        CHECK(cohomology(e.complex, i) == quotient_by_xi_torsion(cohomology(k, i), r));
    }
  }
}
