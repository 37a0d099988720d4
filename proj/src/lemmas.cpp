#include "decalage/lemmas.hpp"

#include "decalage/bockstein.hpp"
#include "decalage/decalage.hpp"
#include "decalage/errors.hpp"

namespace decalage {

namespace {

std::string deg(int i) { return std::to_string(i); }

Json dims_of(const FreeComplex& c) {
  Json out = Json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) out.push_back(betti(c, i));
  return out;
}

}  // namespace

CheckResult verify_eta_m_cohomology(const FreeComplex& k, int m) {
  CheckResult res("eta-m.cohomology");
  const Ring& R = k.ring();
  SubcomplexEmbedding e = eta_m(k, m);
  Json rows = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    FGModule h = cohomology(k, i);
    FGModule expected = i > m ? quotient_by_xi_torsion(h, R) : h;
    FGModule got = cohomology(e.complex, i);
    rows.push_back({{"degree", i}, {"twist", e.twist(i)}, {"computed", got.to_string(R)},
                    {"expected", expected.to_string(R)}});
    if (got != expected)
      res.fail("H^" + deg(i) + " is " + got.to_string(R) + ", expected " + expected.to_string(R));
  }
  res.data["m"] = m;
  res.data["degrees"] = rows;
  return res;
}

CheckResult verify_graded_piece(const FreeComplex& k, int m) {
  CheckResult res("eta-m.graded-piece");
  GradedPiece g = graded_piece(k, m);
  const FreeComplex& src = g.over_k.complex;
  const FreeComplex& tgt = g.truncation.complex;
  try {
    g.comparison.validate();
  } catch (const Error& ex) {
    res.fail(std::string("comparison is not a chain map: ") + ex.what());
  }
  for (int i = k.lo(); i <= k.hi(); ++i) {
    Matrix f = g.comparison.at(i);
    if (f.rows() != f.cols() || rank(f) != f.rows()) {
      res.fail("comparison is not an isomorphism in degree " + deg(i));
      break;
    }
    if (i > m && src.rank(i) != 0) res.fail("graded piece is nonzero in degree " + deg(i));
  }
  for (int i = k.lo(); i <= k.hi(); ++i)
    if (betti(src, i) != betti(tgt, i)) res.fail("cohomology differs in degree " + deg(i));
  res.data["m"] = m;
  res.data["graded"] = dims_of(src);
  res.data["truncation"] = dims_of(tgt);
  return res;
}

CheckResult verify_modI_subquotient(const FreeComplex& k, int m) {
  CheckResult res("eta-m.mod-xi-subquotient");
  const Ring& R = k.ring();
  ModXiSubquotient sub = modI_subquotient(k, m);
  SubcomplexEmbedding em1 = eta_m(k, m + 1);
  BocksteinComplex b = bockstein_complex(k);
  Truncation hodge = hodge_filtration(b.as_complex(), m + 1);
  const FreeComplex& src = sub.over_k.complex;

  if (m >= k.lo() && m <= k.hi() && betti(src, m) != 0) res.fail("H^" + deg(m) + " of the subquotient is nonzero");
  ChainMap phi{src, hodge.complex, {}, 0};
  for (int i = std::max(k.lo(), m + 1); i <= k.hi(); ++i)
    phi.maps.emplace(i, b.at(i).classes(em1.iota.at(i).divided(R.xi_power(i)).residue() *
                                        sub.over_k.section.at(i)));
  for (int i = k.lo(); i <= k.hi(); ++i)
    if (betti(src, i) != betti(hodge.complex, i)) res.fail("cohomology differs in degree " + deg(i));
  try {
    phi.validate();
    std::string why;
    if (res.pass && !is_quasi_isomorphism(phi, &why)) res.fail("comparison is not a quasi-isomorphism: " + why);
  } catch (const Error& ex) {
    res.fail(std::string("comparison is not a chain map: ") + ex.what());
  }
  res.data["m"] = m;
  res.data["subquotient"] = dims_of(src);
  res.data["hodge_piece"] = dims_of(hodge.complex);
  return res;
}

CheckResult verify_split_mod_xi(const FreeComplex& k, int m) {
  CheckResult res("eta-m.splitting");
  SubcomplexEmbedding em1 = eta_m(k, m + 1);
  FreeComplex reduced = em1.complex.reduce_mod_xi();
  FreeComplex trunc = truncate_leq(k.reduce_mod_xi(), m).complex;
  BocksteinComplex b = bockstein_complex(k);
  FreeComplex hodge = hodge_filtration(b.as_complex(), m + 1).complex;
  ModXiSubquotient sub = modI_subquotient(k, m);

  // reduction of eta_{m+1} -> eta_{m+1} / xi eta_m; the splitting makes it onto in cohomology
  ChainMap q{reduced, sub.over_k.complex, {}, 0};
  for (int i = k.lo(); i <= k.hi(); ++i) q.maps.emplace(i, sub.over_k.project.at(i));
  Json rows = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    std::size_t whole = betti(reduced, i), a = betti(trunc, i), c = betti(hodge, i);
    rows.push_back(Json::array({whole, a, c}));
    if (whole != a + c) res.fail("dimensions do not add up in degree " + deg(i));
  }
  try {
    q.validate();
    for (int i = k.lo(); i <= k.hi(); ++i)
      if (rank(induced_map(q, i)) != betti(sub.over_k.complex, i)) {
        res.fail("projection onto the subquotient is not onto in H^" + deg(i));
        break;
      }
  } catch (const Error& ex) {
    res.fail(std::string("projection is not a chain map: ") + ex.what());
  }
  res.data["m"] = m;
  res.data["dims"] = rows;
  return res;
}

std::vector<CheckResult> run_lemma_suite(const FreeComplex& k, int lift_rounds, std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_bockstein_lifts(k, lift_rounds, seed));
  out.push_back(verify_eta_bockstein_comparison(k));
  for (int m = 0; m <= k.hi() + 2; ++m) {
    out.push_back(verify_eta_m_cohomology(k, m));
    out.push_back(verify_graded_piece(k, m));
    out.push_back(verify_modI_subquotient(k, m));
    out.push_back(verify_split_mod_xi(k, m));
    out.push_back(connecting_factorization(k, m));
    for (std::size_t j = out.size() - 5; j < out.size(); ++j) out[j].data["m"] = m;
  }
  return out;
}

}  // namespace decalage
