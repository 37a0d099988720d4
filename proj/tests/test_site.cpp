#include <random>

#include "decalage/decalage.hpp"
#include "decalage/errors.hpp"
#include "doctest.h"
#include "oracles/simplicial.hpp"
#include "support.hpp"
#include "decalage/site.hpp"

using namespace decalage;

namespace {

std::vector<std::size_t> rgamma_betti(const SheafComplex& f) {
  FreeComplex g = global_sections(f);
  std::vector<std::size_t> out;
  for (int i = g.lo(); i <= g.hi(); ++i) out.push_back(betti(g, i));
  return out;
}

std::vector<std::size_t> oracle_betti(const PosetSite& s, long p) {
  auto lt = [&](std::size_t a, std::size_t b) { return s.lt(a, b); };
  return oracle::betti(s.size(), lt, p);
}

// Subposets of a small ambient order, by bitmask.
PosetSite subposet(const std::vector<std::vector<bool>>& lt, unsigned mask) {
  std::vector<std::string> names;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < lt.size(); ++i)
    if (mask >> i & 1u) {
      names.push_back("v" + std::to_string(i));
      keep.push_back(i);
    }
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (lt[keep[a]][keep[b]]) rel.emplace_back(names[a], names[b]);
  return PosetSite(names, rel);
}

}  // namespace

TEST_CASE("builtin sites") {
  PosetSite c = PosetSite::builtin("pseudo-circle");
  CHECK(c.size() == 4);
  CHECK(c.dimension() == 1);
  CHECK(c.chains(1).size() == 4);
  CHECK(c.covers().size() == 4);
  PosetSite s = PosetSite::builtin("pseudo-sphere");
  CHECK(s.dimension() == 2);
  CHECK(s.chains(2).size() == 8);
  CHECK(PosetSite::builtin("chain3").covers().size() == 2);
  CHECK_THROWS(PosetSite::builtin("torus"));
  CHECK_THROWS(PosetSite({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
  CHECK_THROWS(PosetSite({"1", "2", "3", "4", "5", "6", "7", "8", "9"}, {}));
}

TEST_CASE("global sections on a point is the stalk") {
  Ring z = Ring::integers(3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    FreeComplex k = random_complex(z, rng, 3, 3);
    SheafComplex f = SheafComplex::constant(PosetSite::builtin("point"), k);
    CHECK(global_sections(f) == k);
  }
}

TEST_CASE("constant sheaves recover the cohomology of the order complex") {
  Ring z = Ring::integers(2);
  FreeComplex unit = FreeComplex::concentrated(z, 0, 1);
  SheafComplex circle = SheafComplex::constant(PosetSite::builtin("pseudo-circle"), unit);
  FreeComplex g = global_sections(circle);
  CHECK(cohomology(g, 0) == FGModule{1, {}});
  CHECK(cohomology(g, 1) == FGModule{1, {}});
  FreeComplex chain = global_sections(SheafComplex::constant(PosetSite::builtin("chain3"), unit));
  CHECK(cohomology(chain, 0) == FGModule{1, {}});
  for (int i = 1; i <= chain.hi(); ++i) CHECK(cohomology(chain, i).is_zero());
  FreeComplex sphere = global_sections(SheafComplex::constant(PosetSite::builtin("pseudo-sphere"), unit));
  CHECK(cohomology(sphere, 0) == FGModule{1, {}});
  CHECK(cohomology(sphere, 1).is_zero());
  CHECK(cohomology(sphere, 2) == FGModule{1, {}});
}

TEST_CASE("constant coefficients match the simplicial oracle on subposets") {
  // ambient: a1,a2 < b1,b2 < c1,c2 (indices 0..5)
  std::vector<std::vector<bool>> lt(6, std::vector<bool>(6, false));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) lt[i][j] = j / 2 > i / 2;
  Ring f3 = Ring::prime_field(3);
  for (unsigned mask = 1; mask < 64; ++mask) {
    PosetSite s = subposet(lt, mask);
    SheafComplex f = SheafComplex::constant(s, FreeComplex::concentrated(f3, 0, 1));
    std::vector<std::size_t> got = rgamma_betti(f);
    std::vector<std::size_t> want = oracle_betti(s, 3);
    want.resize(got.size(), 0);
    CHECK(got == want);
  }
}

TEST_CASE("sheaf validation") {
  Ring z = Ring::integers(3);
  PosetSite c = PosetSite::builtin("chain3");
  FreeComplex unit = FreeComplex::concentrated(z, 0, 1);
  SheafComplex::Restrictions bad;
  bad[{0, 1}].emplace(0, Matrix::from_ints(z, {{1}}));
  bad[{1, 2}].emplace(0, Matrix::from_ints(z, {{1}}));
  bad[{0, 2}].emplace(0, Matrix::from_ints(z, {{2}}));
  try {
    SheafComplex f(c, {unit, unit, unit}, bad);
    FAIL("expected InvalidSheaf");
  } catch (const InvalidSheaf& e) {
    CHECK(e.from() == "x0");
    CHECK(e.to() == "x2");
  }
  SheafComplex::Restrictions missing;
  missing[{0, 1}].emplace(0, Matrix::from_ints(z, {{1}}));
  CHECK_THROWS_AS(SheafComplex(c, {unit, unit, unit}, missing), InvalidSheaf);
  FreeComplex sh = shell(z, 3);
  SheafComplex::Restrictions not_chain;
  not_chain[{0, 1}] = {{0, Matrix::from_ints(z, {{1}})}, {1, Matrix::from_ints(z, {{0}})}};
  not_chain[{1, 2}] = {{0, Matrix::from_ints(z, {{1}})}, {1, Matrix::from_ints(z, {{1}})}};
  CHECK_THROWS_AS(SheafComplex(c, {sh, sh, sh}, not_chain), InvalidSheaf);
}

TEST_CASE("random sheaves: Euler characteristic and H^0 as a limit") {
  std::mt19937_64 rng(17);
  Ring f5 = Ring::prime_field(5);
  for (const char* name : {"point", "chain3", "pseudo-circle", "pseudo-sphere"}) {
    PosetSite s = PosetSite::builtin(name);
    for (int t = 0; t < 8; ++t) {
      SheafComplex f = random_sheaf(s, f5, rng, 2, 3, false);
      FreeComplex g = global_sections(f);
      g.validate();
      long chi_terms = 0, chi_h = 0;
      for (std::size_t n = 0; n <= s.dimension(); ++n)
        for (const auto& c : s.chains(n))
          for (int q = f.lo(); q <= f.hi(); ++q)
            chi_terms += ((n + q) % 2 == 0 ? 1 : -1) * static_cast<long>(f.stalk(c.back()).rank(q));
      for (int i = g.lo(); i <= g.hi(); ++i) chi_h += (i % 2 == 0 ? 1 : -1) * static_cast<long>(betti(g, i));
      CHECK(chi_terms == chi_h);

      // H^0(RGamma) = compatible families of degree-0 cocycles
      std::vector<Matrix> z0;
      std::size_t total = 0;
      for (std::size_t x = 0; x < s.size(); ++x) {
        z0.push_back(cocycles(f.stalk(x), f.lo()));
        total += z0.back().cols();
      }
      std::vector<Matrix> eqs;
      std::size_t rows = 0;
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y)
          if (s.lt(x, y)) rows += f.stalk(y).rank(f.lo());
      Matrix a(f5, rows, total);
      std::size_t r0 = 0;
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y) {
          if (!s.lt(x, y)) continue;
          std::size_t cx = 0, cy = 0;
          for (std::size_t w = 0; w < x; ++w) cx += z0[w].cols();
          for (std::size_t w = 0; w < y; ++w) cy += z0[w].cols();
          if (z0[x].cols() > 0) a.set_block(r0, cx, f.restriction(x, y).at(f.lo()) * z0[x]);
          if (z0[y].cols() > 0) {
            Matrix cur = a.block(r0, cy, z0[y].rows(), z0[y].cols());
            a.set_block(r0, cy, cur - z0[y]);
          }
          r0 += f.stalk(y).rank(f.lo());
        }
      CHECK(betti(g, f.lo()) == total - rank(a));
    }
  }
}

TEST_CASE("global sections is exact on split sequences and functorial") {
  std::mt19937_64 rng(23);
  Ring z = Ring::integers(3);
  PosetSite s = PosetSite::builtin("pseudo-circle");
  for (int t = 0; t < 5; ++t) {
    SheafComplex a = random_sheaf(s, z, rng, 2, 2, true);
    SheafComplex b = random_sheaf(s, z, rng, 2, 2, true);
    FreeComplex ga = global_sections(a), gb = global_sections(b);
    std::vector<FreeComplex> sums;
    for (std::size_t x = 0; x < s.size(); ++x) sums.push_back(direct_sum(a.stalk(x), b.stalk(x)));
    SheafComplex::Restrictions res;
    for (const auto& [x, y] : s.covers())
      for (int q = std::min(a.lo(), b.lo()); q <= std::max(a.hi(), b.hi()); ++q)
        res[{x, y}].emplace(q, direct_sum(a.restriction(x, y).at(q), b.restriction(x, y).at(q)));
    SheafComplex sum(s, sums, res);
    FreeComplex gs = global_sections(sum);
    for (int i = gs.lo(); i <= gs.hi(); ++i) {
      FGModule h = cohomology(gs, i), ha = cohomology(ga, i), hb = cohomology(gb, i);
      CHECK(h.free_rank == ha.free_rank + hb.free_rank);
      CHECK(h.factors.size() == ha.factors.size() + hb.factors.size());
    }
  }
}

TEST_CASE("objectwise eta and the induced maps on global sections") {
  std::mt19937_64 rng(31);
  Ring z = Ring::integers(2);
  for (const char* name : {"point", "pseudo-circle", "chain3"}) {
    PosetSite s = PosetSite::builtin(name);
    for (int t = 0; t < 4; ++t) {
      SheafComplex f = random_sheaf(s, z, rng, 2, 2, true);
      SheafEmbedding e0 = sheaf_eta_m(f, 0);
      SheafEmbedding e1 = sheaf_eta_m(f, 1);
      e0.iota.validate();
      SheafMap inc = sheaf_eta_inclusion(e1, e0);
      inc.validate();
      ChainMap g = global_sections_map(e0.iota);
      g.validate();
      CHECK(g.injective());
      for (std::size_t x = 0; x < s.size(); ++x)
        CHECK(e0.sheaf.stalk(x) == eta(f.stalk(x)).complex);
      // reduction commutes with global sections
      CHECK(global_sections(sheaf_reduce(f)) == global_sections(f).reduce_mod_xi());
      SheafComplex b = sheaf_bockstein(f);
      CHECK(b.stalk(0).lo() == f.lo());
      SheafEmbedding tr = sheaf_truncate_leq(sheaf_reduce(f), 0);
      tr.iota.validate();
      SheafEmbedding hd = sheaf_hodge(b, 1);
      hd.iota.validate();
    }
  }
}

TEST_CASE("constant sheaf [Z --3--> Z] on the pseudo-circle") {
  Ring z = Ring::integers(3);
  SheafComplex f = SheafComplex::constant(PosetSite::builtin("pseudo-circle"), shell(z, 3));
  FreeComplex g = global_sections(f);
  CHECK(cohomology(g, 1) == FGModule{0, {z.from_int(3)}});
  CHECK(cohomology(g, 2) == FGModule{0, {z.from_int(3)}});
  SheafEmbedding e = sheaf_eta_m(f, 0);
  FreeComplex ge = global_sections(e.sheaf);
  for (int i = ge.lo(); i <= ge.hi(); ++i) CHECK(cohomology(ge, i).is_zero());
}
