#pragma once

// Brute-force lattice computations over the truncated ring R / xi^N.
//
// A finite set of vectors is brought to a xi-adically reduced form: each vector
// v has a valuation a(v) and a leading residue r(v) = (v / xi^a) mod xi, and the
// set is reduced once the leading residues are linearly independent over k.
// Then sum c_j v_j has valuation min(v(c_j) + a_j), so the part of the span
// divisible by xi^m has leading residues span{r_j : a_j <= m}. This is exact
// for every m < N. No Smith normal form is involved.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "decalage/bockstein.hpp"
#include "decalage/matrix.hpp"
#include "decalage/site.hpp"
#include "decalage/theorem.hpp"

namespace oracle {

using decalage::Elem;
using decalage::Matrix;
using decalage::Ring;

// --- small exact linear algebra over the residue field -------------------------

// Row-reduces a copy; returns rank, and pivot columns through `pivots`.
inline std::size_t field_rank(Matrix m, std::vector<std::size_t>* pivots = nullptr) {
  const Ring& k = m.ring();
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    Elem inv = k.inverse(m.at(row, c));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, c).is_zero()) continue;
      Elem f = k.mul(m.at(r, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = k.sub(m.at(r, j), k.mul(f, m.at(row, j)));
    }
    if (pivots) pivots->push_back(c);
    ++row;
  }
  return row;
}

// Coefficients x with basis * x = v when v is in the column span of the
// independent columns of basis.
inline std::optional<std::vector<Elem>> field_solve(const Matrix& basis, const Matrix& v) {
  const Ring& k = basis.ring();
  const std::size_t n = basis.rows(), c = basis.cols();
  Matrix aug = decalage::hstack(basis, v);
  // forward elimination tracking pivots
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < n; ++col) {
    std::size_t p = row;
    while (p < n && aug.at(p, col).is_zero()) ++p;
    if (p == n) return std::nullopt;  // columns dependent: not expected
    aug.swap_rows(p, row);
    Elem inv = k.inverse(aug.at(row, col));
    for (std::size_t j = 0; j <= c; ++j) aug.at(row, j) = k.mul(aug.at(row, j), inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || aug.at(r, col).is_zero()) continue;
      Elem f = aug.at(r, col);
      for (std::size_t j = 0; j <= c; ++j) aug.at(r, j) = k.sub(aug.at(r, j), k.mul(f, aug.at(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (!aug.at(r, c).is_zero()) return std::nullopt;
  std::vector<Elem> x(c, k.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, c);
  return x;
}

// Null space over a field, by elimination on the transpose-free augmented form.
inline Matrix field_kernel(const Matrix& m) {
  const Ring& k = m.ring();
  Matrix a = m;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a.at(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, row);
    Elem inv = k.inverse(a.at(row, c));
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(row, j) = k.mul(a.at(row, j), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a.at(r, c).is_zero()) continue;
      Elem f = a.at(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) = k.sub(a.at(r, j), k.mul(f, a.at(row, j)));
    }
    piv.push_back(c);
    ++row;
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0, p = 0; c < a.cols(); ++c) {
    if (p < piv.size() && piv[p] == c)
      ++p;
    else
      free.push_back(c);
  }
  Matrix out(k, a.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    out.at(free[f], f) = k.one();
    for (std::size_t r = 0; r < piv.size(); ++r) out.at(piv[r], f) = k.neg(a.at(r, free[f]));
  }
  return out;
}

// Subspaces given by spanning columns, compared by ranks.
inline bool same_span(const Matrix& a, const Matrix& b) {
  const std::size_t ra = field_rank(a), rb = field_rank(b);
  return ra == rb && field_rank(decalage::hstack(a, b)) == ra;
}

// --- xi-adically reduced generating sets -------------------------------------

struct ReducedVector {
  std::vector<Elem> v;  // entries reduced mod xi^N
  int a = 0;            // valuation (< N)
  Matrix residue;       // (v / xi^a) mod xi, a column over k
};

class TruncatedModule {
 public:
  // The span of the columns of `gens` inside (R / xi^N)^rows.
  TruncatedModule(const Matrix& gens, int precision) : R_(gens.ring()), k_(R_.residue_field()), N_(precision) {
    std::vector<std::vector<Elem>> vs;
    for (std::size_t c = 0; c < gens.cols(); ++c) {
      std::vector<Elem> v(gens.rows());
      for (std::size_t r = 0; r < gens.rows(); ++r) v[r] = R_.reduce_mod_xi_power(gens.at(r, c), N_);
      vs.push_back(std::move(v));
    }
    rows_ = gens.rows();
    reduce(std::move(vs));
  }

  const std::vector<ReducedVector>& basis() const { return basis_; }
  int precision() const { return N_; }

  // Leading residues of the elements divisible by xi^m, divided by xi^m
  // (columns over k); exact for m < N.
  Matrix level(int m) const {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (basis_[j].a <= m) idx.push_back(j);
    Matrix out(k_, rows_, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) out.set_block(0, c, basis_[idx[c]].residue);
    return out;
  }

  std::vector<int> valuations() const {
    std::vector<int> out;
    for (const auto& b : basis_) out.push_back(b.a);
    std::sort(out.rbegin(), out.rend());
    return out;
  }

 private:
  int valuation(const std::vector<Elem>& v) const {
    int a = N_;
    for (const auto& e : v)
      if (!e.is_zero()) a = std::min(a, R_.xi_valuation(e));
    return a;
  }

  Matrix leading(const std::vector<Elem>& v, int a) const {
    Matrix out(k_, rows_, 1);
    const Elem s = R_.xi_power(a);
    for (std::size_t r = 0; r < rows_; ++r)
      if (!v[r].is_zero()) out.at(r, 0) = R_.residue(*R_.divide_exact(v[r], s));
    return out;
  }

  void reduce(std::vector<std::vector<Elem>> vs) {
    for (;;) {
      std::vector<ReducedVector> cur;
      for (auto& v : vs) {
        const int a = valuation(v);
        if (a >= N_) continue;
        cur.push_back(ReducedVector{v, a, leading(v, a)});
      }
      std::stable_sort(cur.begin(), cur.end(), [](const ReducedVector& x, const ReducedVector& y) { return x.a < y.a; });
      bool changed = false;
      for (std::size_t j = 0; j < cur.size() && !changed; ++j) {
        if (j == 0) continue;
        Matrix prev(k_, rows_, j);
        for (std::size_t i = 0; i < j; ++i) prev.set_block(0, i, cur[i].residue);
        auto c = field_solve(prev, cur[j].residue);
        if (!c) continue;
        // v_j -= sum lift(c_i) xi^{a_j - a_i} v_i raises the valuation of v_j
        for (std::size_t i = 0; i < j; ++i) {
          if ((*c)[i].is_zero()) continue;
          const Elem f = R_.mul(R_.lift((*c)[i]), R_.xi_power(cur[j].a - cur[i].a));
          for (std::size_t r = 0; r < rows_; ++r)
            cur[j].v[r] = R_.reduce_mod_xi_power(R_.sub(cur[j].v[r], R_.mul(f, cur[i].v[r])), N_);
        }
        changed = true;
      }
      if (!changed) {
        basis_ = std::move(cur);
        return;
      }
      vs.clear();
      for (auto& r : cur) vs.push_back(std::move(r.v));
    }
  }

  Ring R_, k_;
  int N_;
  std::size_t rows_ = 0;
  std::vector<ReducedVector> basis_;
};

// --- lattice pairs --------------------------------------------------------------

inline Elem laplace_det(const Matrix& m) {
  const Ring& R = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return R.one();
  if (n == 1) return m.at(0, 0);
  Elem out = R.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (m.at(0, c).is_zero()) continue;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) keep.push_back(j);
    Elem minor = laplace_det(m.rows_range(1, n).select_cols(keep));
    Elem term = R.mul(m.at(0, c), minor);
    out = c % 2 ? R.sub(out, term) : R.add(out, term);
  }
  return out;
}

inline Matrix adjugate(const Matrix& m) {
  const Ring& R = m.ring();
  const std::size_t n = m.rows();
  Matrix out(R, n, n);
  if (n == 1) {
    out.at(0, 0) = R.one();
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t a = 0; a < n; ++a) {
        if (a != i) rows.push_back(a);
        if (a != j) cols.push_back(a);
      }
      Elem minor = laplace_det(m.transpose().select_cols(rows).transpose().select_cols(cols));
      out.at(j, i) = (i + j) % 2 ? R.neg(minor) : minor;
    }
  return out;
}

// Fil_m of L = xi^{-s} span(B) against L0 = xi^{-s0} span(B0), in the
// coordinates of B0. Non-xi factors of det(B0) are units locally and dropped.
struct LatticeFlagOracle {
  int offset = 0;  // Fil_m = level(m - offset)
  TruncatedModule module;

  Matrix fil(int m) const { return module.level(m - offset); }
  std::vector<int> positions() const {
    std::vector<int> v = module.valuations();
    for (auto& a : v) a += offset;
    return v;
  }
};

inline LatticeFlagOracle lattice_oracle(const Matrix& b, int s, const Matrix& b0, int s0) {
  const Ring& R = b.ring();
  const Matrix d = adjugate(b0) * b;
  const int v0 = R.xi_valuation(laplace_det(b0));
  const int vd = R.xi_valuation(laplace_det(d));
  return LatticeFlagOracle{s0 - s - v0, TruncatedModule(d, 2 * vd + 2)};
}

// --- the two flags of a sheaf complex, from first principles -----------------

// Flag A in cochain coordinates of RGamma(K/xi): cocycles w mod xi with xi^m w in
// Z^i(RGamma eta K) + B^i(RGamma K). Spanning columns, boundaries included.
// `eta_cocycles` and `boundaries` are columns in RGamma(K)^i.
inline Matrix oracle_flag_a(const Matrix& eta_cocycles, const Matrix& boundaries, const Matrix& residue_boundaries,
                            int m, int precision) {
  TruncatedModule mod(decalage::hstack(eta_cocycles, boundaries), precision);
  return decalage::hstack(mod.level(m), residue_boundaries);
}

// Flag B: image of H^i(RGamma tau_{<=m}(K/xi)) in H^i(RGamma(K/xi)), as cochains
// plus boundaries.
inline Matrix oracle_flag_b(const decalage::SheafComplex& kbar, int i, int m, const Matrix& residue_boundaries) {
  using namespace decalage;
  ChainMap inc = global_sections_map(sheaf_truncate_leq(kbar, m).iota);
  Matrix z = field_kernel(inc.source.d(i));
  return hstack(inc.at(i) * z, residue_boundaries);
}

// Recomputes both flags of every degree of a report and the graded dimensions;
// returns the first disagreement, or an empty string.
inline std::string audit_flags(const decalage::SheafComplex& k, const decalage::TheoremReport& rep) {
  using namespace decalage;
  FreeComplex g = global_sections(k);
  FreeComplex gbar = g.reduce_mod_xi();
  SheafComplex kbar = sheaf_reduce(k);
  ChainMap eta = global_sections_map(sheaf_eta_m(k, 0).iota);
  const int precision = 2 * (k.hi() + 1) + 2;
  if (rep.flags.size() != static_cast<std::size_t>(g.hi() - g.lo() + 1)) return "missing flag comparisons";
  for (const auto& fc : rep.flags) {
    const int i = fc.i;
    const std::string at = " in degree " + std::to_string(i);
    Matrix bbar = gbar.d(i - 1);
    ResidueCohomology rc(gbar, i);
    Matrix eta_cocycles = eta.at(i) * kernel_basis(eta.source.d(i));
    std::size_t prev = 0;
    for (int m = -1; m <= k.hi() + 1; ++m) {
      Matrix a = m < 0 ? bbar : oracle_flag_a(eta_cocycles, g.d(i - 1), bbar, m, precision);
      Matrix b = m < 0 ? bbar : oracle_flag_b(kbar, i, m, bbar);
      Matrix engine_a = hstack(rc.representatives() * fc.bb.at(m).basis(), bbar);
      Matrix engine_b = hstack(rc.representatives() * fc.image.at(m).basis(), bbar);
      const std::string lvl = " at m = " + std::to_string(m) + at;
      if (!same_span(a, engine_a)) return "flag A differs from the oracle" + lvl;
      if (!same_span(b, engine_b)) return "flag B differs from the oracle" + lvl;
      if (!same_span(a, b)) return "oracle flags differ" + lvl;
      const std::size_t dim = field_rank(a) - field_rank(bbar);
      if (m >= 0 && dim - prev != omega_dim(k, i, m)) return "graded dimension mismatch" + lvl;
      prev = dim;
    }
    if (prev != rc.dim()) return "oracle flag not full at the top" + at;
  }
  return "";
}

}  // namespace oracle
