#include <random>

#include "decalage/errors.hpp"
#include "decalage/generators.hpp"
#include "decalage/lattice.hpp"
#include "doctest.h"
#include "lattice_pairs.hpp"
#include "oracles/truncated.hpp"

using namespace decalage;

namespace {

std::vector<Ring> rings() { return lattice_rings(); }

}  // namespace

TEST_CASE("relative position: trivial and scalar cases") {
  Ring z = Ring::integers(3);
  Lattice l0 = Lattice::standard(z, 3);
  CHECK(relative_position(l0, l0) == std::vector<int>{0, 0, 0});
  CHECK(relative_position(l0.scaled(1), l0) == std::vector<int>{1, 1, 1});
  Lattice two = Lattice(Matrix::identity(Ring::integers(2), 2)).scaled(1);
  CHECK(relative_position(two, Lattice::standard(Ring::integers(2), 2)) == std::vector<int>{1, 1});
}

TEST_CASE("relative position and flag of span(e1, t^-1 e2) over F_5[t]") {
  Ring r = Ring::poly_fp(5);
  // t^-1 * span(t e1, e2)
  Matrix b(r, 2, 2);
  b.at(0, 0) = r.variable();
  b.at(1, 1) = r.one();
  Lattice l(b, 1), l0 = Lattice::standard(r, 2);
  CHECK(relative_position(l, l0) == std::vector<int>{0, -1});
  Flag f = bb_filtration(l, l0);
  Ring k = r.residue_field();
  CHECK(f.dim(-2) == 0);
  CHECK(f.at(-1) == Subspace::span(Matrix::from_ints(k, {{0}, {1}})));
  CHECK(f.dim(0) == 2);
  CHECK(f.jumps() == std::vector<int>{0, -1});
}

TEST_CASE("flag of L = L0 and of L = xi L0") {
  Ring z = Ring::integers(2);
  Lattice l0 = Lattice::standard(z, 1);
  Flag same = bb_filtration(l0, l0);
  CHECK(same.dim(-1) == 0);
  CHECK(same.dim(0) == 1);
  CHECK(same.dim(5) == 1);
  Flag scaled = bb_filtration(l0.scaled(1), l0);
  CHECK(scaled.dim(0) == 0);
  CHECK(scaled.dim(1) == 1);
}

TEST_CASE("non-xi primes are units") {
  Ring z = Ring::integers(2);
  Lattice l(Matrix::from_ints(z, {{3, 0}, {0, 12}}));
  CHECK(relative_position(l, Lattice::standard(z, 2)) == std::vector<int>{2, 0});
}

TEST_CASE("singular bases are rejected") {
  Ring z = Ring::integers(2);
  CHECK_THROWS_AS(Lattice(Matrix::from_ints(z, {{1, 2}, {2, 4}})), SingularBasis);
  CHECK_THROWS_AS(Lattice(Matrix::zeros(z, 2, 3)), SingularBasis);
  CHECK_THROWS_AS(relative_position(Lattice::standard(z, 2), Lattice::standard(z, 3)), SingularBasis);
}

TEST_CASE("flags: jumps, shifts, equality") {
  Ring k = Ring::prime_field(3);
  Subspace line = Subspace::span(Matrix::from_ints(k, {{1}, {1}}));
  Flag f(k, 2, -1, {line, line});
  CHECK(f.lo() == -1);
  CHECK(f.hi() == 1);
  CHECK(f.jumps() == std::vector<int>{1, -1});
  CHECK(f.shifted(2).jumps() == std::vector<int>{3, 1});
  CHECK(f.shifted(2).shifted(-2) == f);
  CHECK(f != f.shifted(1));
  // padding with stationary levels does not change the flag
  Flag g(k, 2, -3, {Subspace(k, 2), Subspace(k, 2), line, line, Subspace::full(k, 2)});
  CHECK(f == g);
  f.validate();
  Flag bad(k, 2, 0, {line, Subspace::span(Matrix::from_ints(k, {{1}, {0}}))});
  CHECK_THROWS(bad.validate());
}

TEST_CASE("random lattice pairs: relative position, oracle, known flag") {
  std::mt19937_64 rng(20260);
  int checked = 0;
  for (const Ring& r : rings()) {
    for (int trial = 0; trial < 125; ++trial) {
      KnownPair p = random_pair(r, rng);
      std::vector<int> expect = p.shifted;
      std::sort(expect.rbegin(), expect.rend());
      const std::vector<int> pos = relative_position(p.l, p.l0);
      REQUIRE(pos == expect);

      Flag f = bb_filtration(p.l, p.l0);
      f.validate();
      CHECK(f.jumps() == pos);

      auto orc = oracle::lattice_oracle(p.l.basis(), p.l.shift(), p.l0.basis(), p.l0.shift());
      CHECK(orc.positions() == pos);
      for (int m = -5; m <= 5; ++m) {
        CHECK(f.at(m) == known_fil(p, m));
        CHECK(oracle::same_span(orc.fil(m), f.at(m).basis()));
      }
      ++checked;
    }
  }
  CHECK(checked == 500);
}

TEST_CASE("scaling L by xi^c shifts the flag by c") {
  std::mt19937_64 rng(77);
  for (const Ring& r : rings()) {
    for (int trial = 0; trial < 30; ++trial) {
      KnownPair p = random_pair(r, rng);
      Flag f = bb_filtration(p.l, p.l0);
      for (int c = -3; c <= 3; ++c) {
        CHECK(bb_filtration(p.l.scaled(c), p.l0) == f.shifted(c));
        CHECK(bb_filtration(p.l, p.l0.scaled(c)) == f.shifted(-c));
      }
    }
  }
}

TEST_CASE("invariance under base changes of either lattice") {
  std::mt19937_64 rng(5);
  for (const Ring& r : rings()) {
    for (int trial = 0; trial < 30; ++trial) {
      KnownPair p = random_pair(r, rng);
      const std::size_t n = p.l.dim();
      Matrix g = random_unimodular(r, n, rng).first;
      Lattice l2(p.l.basis() * g, p.l.shift());
      CHECK(relative_position(l2, p.l0) == relative_position(p.l, p.l0));
      CHECK(bb_filtration(l2, p.l0) == bb_filtration(p.l, p.l0));
      Lattice l02(p.l0.basis() * random_unimodular(r, n, rng).first, p.l0.shift());
      CHECK(relative_position(p.l, l02) == relative_position(p.l, p.l0));
    }
  }
}
