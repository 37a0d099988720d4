#pragma once

// Cohomology at xi of a subcomplex E of a free complex K, from lengths alone.
//
// Each E^i is a full-rank lattice inside K^i given by spanning columns. With
// Q = E^i / d(E^{i-1}), the torsion of H^i(E) is the torsion of Q (the cocycles
// are saturated in E^i), and dim_k xi^j Q / xi^{j+1} Q = rank Q + #{torsion
// summands of valuation > j}. Those dimensions are differences of the lengths
// len K^i / (xi^j E^i + d E^{i-1}), read off xi-adically reduced generating
// sets over R / xi^N. No Smith normal form and no module presentation is used.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "decalage/complexes.hpp"
#include "decalage/linalg.hpp"
#include "oracles/truncated.hpp"

namespace oracle {

using decalage::Elem;
using decalage::FGModule;
using decalage::FreeComplex;
using decalage::Matrix;
using decalage::Ring;

struct LocalModule {
  std::size_t rank = 0;
  std::vector<int> torsion;  // xi-valuations of the torsion summands, descending

  std::size_t torsion_count() const { return torsion.size(); }
  std::size_t count_valuation(int v) const {
    return static_cast<std::size_t>(std::count(torsion.begin(), torsion.end(), v));
  }
  /// M / M[xi]: every torsion summand loses one factor of xi.
  LocalModule modulo_xi_torsion() const {
    LocalModule out{rank, {}};
    for (int v : torsion)
      if (v > 1) out.torsion.push_back(v - 1);
    return out;
  }
  std::string str() const {
    std::ostringstream s;
    s << "rank " << rank << " torsion [";
    for (std::size_t j = 0; j < torsion.size(); ++j) s << (j ? " " : "") << torsion[j];
    s << "]";
    return s.str();
  }
  friend bool operator==(const LocalModule& a, const LocalModule& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
};

/// The xi-primary part of a library module (factors prime to xi are units locally).
inline LocalModule local_part(const FGModule& m, const Ring& r) {
  LocalModule out{m.free_rank, {}};
  for (const auto& f : m.factors) {
    const int v = r.xi_valuation(f);
    if (v > 0) out.torsion.push_back(v);
  }
  std::sort(out.torsion.rbegin(), out.torsion.rend());
  return out;
}

/// len (R^n) / span(gens), assuming the span contains xi^(N-1) R^n.
inline int colength(const Matrix& gens, int precision) {
  TruncatedModule mod(gens, precision);
  if (mod.basis().size() != gens.rows()) throw std::logic_error("colength: precision too low");
  int total = 0;
  for (int a : mod.valuations()) total += a;
  return total;
}

inline Matrix scale(const Matrix& m, const Elem& c) {
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(r, j) = m.ring().mul(m.at(r, j), c);
  return out;
}

/// A subcomplex of `k`: spanning columns of each term inside k^i, and an
/// exponent t with xi^t k^i contained in every term.
struct LatticeSubcomplex {
  const FreeComplex* k = nullptr;
  std::map<int, Matrix> gens;
  int depth = 0;

  Matrix at(int i) const {
    auto it = gens.find(i);
    return it == gens.end() ? Matrix(k->ring(), k->rank(i), 0) : it->second;
  }
};

inline LatticeSubcomplex whole(const FreeComplex& k) {
  LatticeSubcomplex e{&k, {}, 0};
  for (int i = k.lo(); i <= k.hi(); ++i) e.gens.insert_or_assign(i, Matrix::identity(k.ring(), k.rank(i)));
  return e;
}

/// xi^i {x : dx in xi K^{i+1}} for i >= m and xi^m K^i for i < m, built from a
/// kernel over the residue field.
inline LatticeSubcomplex eta_m_terms(const FreeComplex& k, int m) {
  const Ring& R = k.ring();
  LatticeSubcomplex e{&k, {}, std::max(k.hi(), m) + 1};
  for (int i = k.lo(); i <= k.hi(); ++i) {
    const std::size_t n = k.rank(i);
    if (i < m) {
      e.gens.insert_or_assign(i, scale(Matrix::identity(R, n), R.xi_power(m)));
      continue;
    }
    Matrix ker = field_kernel(k.d(i).residue());
    Matrix lifted(R, n, ker.cols());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < ker.cols(); ++c) lifted.at(r, c) = R.lift(ker.at(r, c));
    Matrix g = decalage::hstack(scale(Matrix::identity(R, n), R.xi()), lifted);
    e.gens.insert_or_assign(i, scale(g, R.xi_power(i)));
  }
  return e;
}

/// The xi-local structure of H^i(E). Ranks over the fraction field come from
/// the library's rank(), which is checked against minors elsewhere.
inline LocalModule local_cohomology(const LatticeSubcomplex& e, int i) {
  const FreeComplex& k = *e.k;
  const Ring& R = k.ring();
  const std::size_t n = k.rank(i);
  if (n == 0) return {};
  const Matrix g = e.at(i);
  const Matrix d_prev = i - 1 >= k.lo() ? k.d(i - 1) * e.at(i - 1) : Matrix(R, n, 0);
  const std::size_t rank_prev = d_prev.cols() ? decalage::rank(d_prev) : 0;
  const std::size_t rank_cur = i + 1 <= k.hi() ? decalage::rank(k.d(i)) : 0;

  LocalModule out;
  out.rank = n - rank_cur - rank_prev;
  const std::size_t rank_q = n - rank_prev;
  // colength of xi^j E^i + d E^{i-1}; that lattice contains xi^(j + depth) K^i
  auto len = [&](int j) {
    return colength(decalage::hstack(scale(g, R.xi_power(j)), d_prev), j + e.depth + 2);
  };
  std::vector<std::size_t> above;  // above[j] = #{torsion valuations > j}
  int prev_len = len(0);
  for (int j = 0;; ++j) {
    if (j > 200) throw std::logic_error("local_cohomology: torsion valuations do not terminate");
    const int next_len = len(j + 1);
    const std::size_t dim = static_cast<std::size_t>(next_len - prev_len);
    if (dim < rank_q) throw std::logic_error("local_cohomology: inconsistent lengths");
    above.push_back(dim - rank_q);
    prev_len = next_len;
    if (dim == rank_q) break;
  }
  for (std::size_t j = 1; j < above.size(); ++j)
    for (std::size_t c = above[j]; c < above[j - 1]; ++c) out.torsion.push_back(static_cast<int>(j));
  std::sort(out.torsion.rbegin(), out.torsion.rend());
  return out;
}

/// dim_k H^i(E / xi E) by the universal coefficient formula.
inline std::size_t residue_dim(const LocalModule& hi, const LocalModule& hi_next) {
  return hi.rank + hi.torsion_count() + hi_next.torsion_count();
}

}  // namespace oracle
