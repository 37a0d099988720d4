#include "decalage/bockstein.hpp"

#include "decalage/decalage.hpp"
#include "decalage/errors.hpp"
#include "decalage/generators.hpp"

namespace decalage {

ResidueCohomology::ResidueCohomology(const FreeComplex& c, int i)
    : cocycles_(Subspace::span(nullspace(c.d(i)))),
      boundaries_(Subspace::span(c.d(i - 1))),
      reps_(complement_basis(boundaries_, cocycles_)),
      frame_(hstack(boundaries_.basis(), reps_)) {}

Matrix ResidueCohomology::classes(const Matrix& cocycles) const {
  Matrix all = coordinates(frame_, cocycles);
  return all.rows_range(boundaries_.dim(), all.rows());
}

Matrix BocksteinComplex::beta_at(int i) const {
  if (i < lo || i >= hi()) return Matrix(field, dim(i + 1), dim(i));
  return beta[i - lo];
}

FreeComplex BocksteinComplex::as_complex() const {
  std::vector<std::size_t> ranks;
  for (int i = lo; i <= hi(); ++i) ranks.push_back(dim(i));
  return FreeComplex(field, lo, std::move(ranks), beta);
}

namespace {

// class of (d x) / xi in H^{i+1}(K/xi) for lifts x (columns over R)
Matrix beta_of_lifts(const FreeComplex& k, const BocksteinComplex& b, int i, const Matrix& lifts) {
  const Ring& R = k.ring();
  Matrix dx = k.d(i) * lifts;
  return b.at(i + 1).classes(dx.divided(R.xi()).residue());
}

}  // namespace

BocksteinComplex bockstein_complex(const FreeComplex& k) {
  const Ring& R = k.ring();
  FreeComplex kbar = k.reduce_mod_xi();
  BocksteinComplex b{kbar.ring(), k.lo(), {}, {}};
  for (int i = k.lo(); i <= k.hi(); ++i) b.h.emplace_back(kbar, i);
  for (int i = k.lo(); i < k.hi(); ++i)
    b.beta.push_back(beta_of_lifts(k, b, i, b.at(i).representatives().lifted(R)));
  return b;
}

Matrix bockstein_with_random_lifts(const FreeComplex& k, const BocksteinComplex& b, int i,
                                   std::mt19937_64& rng) {
  const Ring& R = k.ring();
  const Ring& kf = b.field;
  const Matrix& reps = b.at(i).representatives();
  Matrix moved = reps;
  if (k.rank(i - 1) > 0 && reps.cols() > 0) {
    Matrix r(kf, k.rank(i - 1), reps.cols());
    for (std::size_t a = 0; a < r.rows(); ++a)
      for (std::size_t c = 0; c < r.cols(); ++c) r.at(a, c) = R.residue(random_small(R, rng));
    moved = reps + k.d(i - 1).residue() * r;
  }
  Matrix lifts = moved.lifted(R);
  for (std::size_t a = 0; a < lifts.rows(); ++a)
    for (std::size_t c = 0; c < lifts.cols(); ++c)
      lifts.at(a, c) = R.add(lifts.at(a, c), R.mul(R.xi(), random_small(R, rng)));
  return beta_of_lifts(k, b, i, lifts);
}

bool is_quasi_isomorphism(const ChainMap& f, std::string* witness) {
  const int lo = std::min(f.source.lo(), f.target.lo());
  const int hi = std::max(f.source.hi(), f.target.hi());
  for (int i = lo; i <= hi; ++i) {
    Matrix h = induced_map(f, i);
    if (h.rows() != h.cols() || rank(h) != h.rows()) {
      if (witness)
        *witness = "H^" + std::to_string(i) + " map " + std::to_string(h.rows()) + "x" +
                   std::to_string(h.cols()) + " of rank " + std::to_string(rank(h));
      return false;
    }
  }
  return true;
}

Matrix connecting_map(const ChainMap& a, const ChainMap& b, int m) {
  const FreeComplex& mid = b.source;
  SubquotientPresentation hc = present_cohomology(b.target, m);
  SubquotientPresentation ha = present_cohomology(a.source, m + 1);
  Matrix out(mid.ring(), ha.size(), hc.size());
  if (hc.size() == 0) return out;
  auto x = solve(b.at(m), hc.generators());
  if (!x) throw Error("connecting_map: b is not surjective in degree " + std::to_string(m));
  auto y = solve(a.at(m + 1), mid.d(m) * *x);
  if (!y) throw Error("connecting_map: d(lift) is not in the image of a");
  return ha.classes(*y);
}

CheckResult check_bockstein_lifts(const FreeComplex& k, int rounds, std::uint64_t seed) {
  CheckResult res("bockstein.lift-independence");
  BocksteinComplex b = bockstein_complex(k);
  std::mt19937_64 rng(seed);
  for (int i = k.lo(); i < k.hi(); ++i) {
    for (int r = 0; r < rounds; ++r)
      if (bockstein_with_random_lifts(k, b, i, rng) != b.beta_at(i)) {
        res.fail("beta(" + std::to_string(i) + ") changed under a random lift");
        break;
      }
    if (i + 1 < k.hi() && !(b.beta_at(i + 1) * b.beta_at(i)).is_zero())
      res.fail("beta(" + std::to_string(i + 1) + ") * beta(" + std::to_string(i) + ") != 0");
  }
  Json dims = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) dims.push_back(b.dim(i));
  res.data["dims"] = dims;
  res.data["rounds"] = rounds;
  return res;
}

CheckResult verify_eta_bockstein_comparison(const FreeComplex& k) {
  CheckResult res("eta.bockstein-comparison");
  const Ring& R = k.ring();
  SubcomplexEmbedding e = eta(k);
  FreeComplex ebar = e.complex.reduce_mod_xi();
  BocksteinComplex b = bockstein_complex(k);
  FreeComplex bc = b.as_complex();
  ChainMap phi{ebar, bc, {}, 0};
  for (int i = k.lo(); i <= k.hi(); ++i)
    phi.maps.emplace(i, b.at(i).classes(e.iota.at(i).divided(R.xi_power(i)).residue()));
  Json lhs = Json::array(), rhs = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    lhs.push_back(betti(ebar, i));
    rhs.push_back(betti(bc, i));
    if (betti(ebar, i) != betti(bc, i)) res.fail("dimension mismatch in degree " + std::to_string(i));
  }
  try {
    phi.validate();
    std::string why;
    if (!is_quasi_isomorphism(phi, &why)) res.fail("comparison map is not a quasi-isomorphism: " + why);
  } catch (const Error& ex) {
    res.fail(std::string("comparison map is not a chain map: ") + ex.what());
  }
  res.data["eta_mod_xi"] = lhs;
  res.data["bockstein"] = rhs;
  return res;
}

CheckResult connecting_factorization(const FreeComplex& k, int m) {
  CheckResult res("eta-m.connecting-map");
  const Ring& R = k.ring();
  const auto deg = [](int i) { return std::to_string(i); };
  BocksteinComplex b = bockstein_complex(k);
  FreeComplex bc = b.as_complex();

  // 0 -> Z^m -> B^m --beta--> Z^{m+1} -> H^{m+1} -> 0
  const Matrix bm = b.beta_at(m);
  const Matrix bm1 = b.beta_at(m + 1);
  const std::size_t z_m = b.dim(m) - rank(bm);
  const std::size_t z_m1 = b.dim(m + 1) - rank(bm1);
  const std::size_t img = rank(bm);
  if (!(bm1 * bm).is_zero()) res.fail("beta does not land in the cocycles");
  if (z_m1 < img || z_m1 - img != betti(bc, m + 1)) res.fail("four-term sequence is not exact at Z^{m+1}");
  res.data["four_term"] = Json::array({z_m, b.dim(m), z_m1, betti(bc, m + 1)});

  // H^i(eta_m K / xi) by the three-case formula
  SubcomplexEmbedding em = eta_m(k, m);
  SubcomplexEmbedding em1 = eta_m(k, m + 1);
  FreeComplex ebar = em.complex.reduce_mod_xi();
  FreeComplex kbar = k.reduce_mod_xi();
  Json dims = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    std::size_t expected = i >= m + 1 ? betti(bc, i) : i == m ? z_m : betti(kbar, i);
    std::size_t got = betti(ebar, i);
    dims.push_back({{"degree", i}, {"computed", got}, {"expected", expected}});
    if (got != expected) res.fail("H^" + deg(i) + "(eta_m K / xi) has the wrong dimension");
  }
  res.data["eta_m_mod_xi"] = dims;

  // connecting map of 0 -> eta_{m+1}/xi eta_m -> eta_m/xi eta_m -> eta_m/eta_{m+1} -> 0
  GradedPiece gr = graded_piece(k, m);
  ModXiSubquotient sub = modI_subquotient(k, m);
  ChainMap a{sub.over_k.complex, ebar, {}, 0};
  ChainMap p{ebar, gr.over_k.complex, {}, 0};
  auto inc = relative_inclusion(em1, em);
  for (int i = k.lo(); i <= k.hi(); ++i) {
    a.maps.emplace(i, inc->at(i).residue() * sub.over_k.section.at(i));
    p.maps.emplace(i, gr.over_k.project.at(i));
  }
  try {
    a.validate();
    p.validate();
  } catch (const Error& ex) {
    res.fail(std::string("triangle maps: ") + ex.what());
    return res;
  }
  if (m < k.lo() || m + 1 > k.hi()) return res;
  Matrix delta = connecting_map(a, p, m);
  SubquotientPresentation hg = present_cohomology(gr.over_k.complex, m);
  SubquotientPresentation hq = present_cohomology(sub.over_k.complex, m + 1);
  Matrix to_bm = b.at(m).classes(em.iota.at(m).divided(R.xi_power(m)).residue() * gr.over_k.section.at(m));
  Matrix to_bm1 =
      b.at(m + 1).classes(em1.iota.at(m + 1).divided(R.xi_power(m + 1)).residue() * sub.over_k.section.at(m + 1));
  Matrix lhs = to_bm1 * hq.generators() * delta;
  Matrix rhs = bm * to_bm * hg.generators();
  if (lhs != rhs) res.fail("connecting map differs from the Bockstein map in degree " + deg(m));
  res.data["connecting_rank"] = rank(delta);
  return res;
}

}  // namespace decalage
