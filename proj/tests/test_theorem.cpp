#include <random>

#include "decalage/errors.hpp"
#include "decalage/io.hpp"
#include "decalage/ss.hpp"
#include "decalage/theorem.hpp"
#include "doctest.h"
#include "oracles/truncated.hpp"
#include "support.hpp"

using namespace decalage;

namespace {

SheafComplex on_point(const FreeComplex& k) { return SheafComplex::constant(PosetSite::builtin("point"), k); }

FreeComplex zero_diff(const Ring& r, std::vector<std::size_t> ranks) {
  std::vector<Matrix> d;
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) d.push_back(Matrix::zeros(r, ranks[j + 1], ranks[j]));
  return FreeComplex(r, 0, std::move(ranks), std::move(d));
}

// Coordinate-free summary of a report: verdicts, relative positions, flag and
// graded dimensions, torsion-table modules.
Json summary(const TheoremReport& r, int m_hi) {
  Json flags = Json::array();
  for (const auto& f : r.flags) {
    Json dims = Json::array();
    for (int m = -1; m <= m_hi; ++m) dims.push_back({f.bb.dim(m), f.image.dim(m)});
    flags.push_back({{"i", f.i}, {"position", f.relative_position}, {"dims", dims}, {"equal", f.equal}});
  }
  Json table = Json::array();
  for (const auto& t : r.table) table.push_back(t.module);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({c.id, c.pass});
  return Json{{"h1", r.h1}, {"h3", r.h3}, {"flags", flags}, {"table", table}, {"checks", checks}};
}

}  // namespace

TEST_CASE("zero-differential ranks (1, 1): Fil_0 = 0 and Fil_1 full in degree 1") {
  // eta_0 has xi K^1 in degree 1, which vanishes mod xi after dividing by xi^0;
  // eta_1 has xi K^1 in degree 1, which gives all of K^1 / xi after dividing by xi.
  Ring z = Ring::integers(2);
  SheafComplex k = on_point(zero_diff(z, {1, 1}));
  TheoremReport r = verify_main_theorem(k);
  CHECK(r.h1);
  CHECK(r.h3);
  CHECK(r.exit_code() == 0);
  REQUIRE(r.flags.size() == 2);
  const FlagComparison& f1 = r.flags[1];
  CHECK(f1.i == 1);
  CHECK(f1.relative_position == std::vector<int>{1});
  CHECK(f1.bb.dim(0) == 0);
  CHECK(f1.bb.dim(1) == 1);
  CHECK(f1.image.dim(0) == 0);
  CHECK(f1.image.dim(1) == 1);
  CHECK(f1.equal);
  CHECK(r.flags[0].relative_position == std::vector<int>{0});
  CHECK(oracle::audit_flags(k, r).empty());
}

TEST_CASE("lattice pairs on the point site") {
  Ring z = Ring::integers(3);
  LatticePair zero = lattice_pair_from_complex(on_point(zero_diff(z, {2, 3})), 1);
  CHECK(relative_position(zero.l, zero.l0) == std::vector<int>{1, 1, 1});
  CHECK(zero.residue_iso);
  LatticePair deg0 = lattice_pair_from_complex(on_point(FreeComplex::concentrated(z, 0, 2)), 0);
  CHECK(relative_position(deg0.l, deg0.l0) == std::vector<int>{0, 0});
  CHECK_THROWS_AS(lattice_pair_from_complex(on_point(shell(z, 3)), 1), TorsionObstruction);
}

TEST_CASE("acyclic summands do not change the report") {
  Ring z = Ring::integers(2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 6; ++t) {
    GenerationOptions o;
    o.site = PosetSite::builtin("pseudo-circle");
    SheafComplex k = generate_instance("h1", 100 + t, o);
    // add [R --1--> R] in degrees 0, 1 at every element
    std::vector<FreeComplex> stalks;
    SheafComplex::Restrictions res;
    const FreeComplex sh = shell(z, 1).widened(k.lo(), k.hi());
    for (std::size_t x = 0; x < k.site().size(); ++x) stalks.push_back(direct_sum(k.stalk(x), sh));
    for (const auto& [a, b] : k.site().covers()) {
      std::map<int, Matrix> maps;
      for (int i = k.lo(); i <= k.hi(); ++i)
        maps.emplace(i, direct_sum(k.restriction(a, b).at(i), Matrix::identity(z, sh.rank(i))));
      res.emplace(std::make_pair(a, b), std::move(maps));
    }
    SheafComplex bigger(k.site(), std::move(stalks), res);
    TheoremReport r1 = verify_main_theorem(k), r2 = verify_main_theorem(bigger);
    CHECK(summary(r1, k.hi() + 1) == summary(r2, k.hi() + 1));
    CHECK(r2.exit_code() == 0);
  }
}

TEST_CASE("[Z --p--> Z] fails H1 and shows torsion in eta_1") {
  for (long p : {2L, 3L, 5L}) {
    Ring z = Ring::integers(p);
    TheoremReport r = verify_main_theorem(on_point(shell(z, p)));
    CHECK_FALSE(r.h1);
    CHECK(r.exit_code() == 3);
    bool found = false;
    for (const auto& t : r.table)
      if (t.i == 1 && t.m == 1) {
        CHECK_FALSE(t.torsion_free);
        CHECK(t.module == "R/(" + std::to_string(p) + ")");
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("zero-differential complexes pass the whole table") {
  Ring r = Ring::poly_fp(5);
  TheoremReport rep = verify_main_theorem(on_point(zero_diff(r, {1, 2, 1})));
  for (const auto& t : rep.table) CHECK(t.torsion_free);
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("generated torsion-free instances satisfy the comparison, checked by the oracle") {
  int n = 0;
  for (std::string site : {"point", "pseudo-circle", "chain3", "pseudo-sphere"})
    for (const Ring& ring : {Ring::integers(2), Ring::integers(3), Ring::integers(5), Ring::poly_fp(5)})
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        GenerationOptions o;
        o.site = PosetSite::builtin(site);
        o.ring = ring;
        o.max_degree = 3;
        SheafComplex k = generate_instance("h1", seed, o);
        TheoremReport r = verify_main_theorem(k);
        INFO(site << " " << ring.describe() << " seed " << seed);
        CHECK(r.h1);
        CHECK(r.h3);
        for (const auto& c : r.checks) {
          INFO(c.id << ": " << c.witness);
          CHECK(c.pass);
        }
        CHECK(r.exit_code() == 0);
        CHECK(oracle::audit_flags(k, r) == "");
        ++n;
      }
  CHECK(n == 48);
}

TEST_CASE("torsion-free RGamma cohomology without Hodge-Tate injectivity") {
  SheafComplex w = ht_failure_witness();
  CHECK(w.site() == PosetSite::builtin("pseudo-sphere"));
  TheoremReport r = verify_main_theorem(w);
  CHECK(r.h1);
  CHECK_FALSE(r.h3);
  CHECK(r.exit_code() == 3);
  // the torsion-freeness conclusion fails here, so it needs more than H1
  CHECK_FALSE(r.find("eta-m.torsion-free")->pass);
  CHECK_FALSE(r.find("degeneration.coker-equality")->pass);
  CHECK(degeneration_check_HdR(w).degenerates);
}

TEST_CASE("instance generation") {
  GenerationOptions o;
  o.site = PosetSite::builtin("chain3");
  CHECK(instance_to_json(generate_instance("h1", 9, o)) == instance_to_json(generate_instance("h1", 9, o)));
  CHECK(instance_to_json(generate_instance("free", 9, o)) != instance_to_json(generate_instance("free", 10, o)));
  for (std::uint64_t s = 0; s < 5; ++s) {
    SheafComplex k = generate_instance("h1", s, o);
    CHECK_FALSE(first_torsion_degree(global_sections(k)).has_value());
  }
  // on the point site Hodge-Tate injectivity cannot fail
  GenerationOptions pt;
  pt.budget = 30;
  CHECK_THROWS_AS(generate_instance("adversarial", 0, pt), GenerationBudgetExceeded);
  CHECK_THROWS_AS(generate_instance("nonsense", 0, pt), Error);
  GenerationOptions sphere;
  sphere.site = PosetSite::builtin("pseudo-sphere");
  sphere.budget = 2000;
  SheafComplex adv = generate_instance("adversarial", 0, sphere);
  CHECK_FALSE(first_torsion_degree(global_sections(adv)).has_value());
  CHECK_FALSE(degeneration_check_HT(adv).degenerates);
}

TEST_CASE("report JSON is stable") {
  Ring z = Ring::integers(2);
  SheafComplex k = on_point(zero_diff(z, {1, 1}));
  const std::string a = report_to_json(verify_main_theorem(k)).dump();
  CHECK(a == report_to_json(verify_main_theorem(k)).dump());
  Json j = Json::parse(a);
  CHECK(j.begin().key() == "hypotheses");
  CHECK(j["exit_code"] == 0);
}
