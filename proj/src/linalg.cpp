#include "decalage/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

#include "decalage/errors.hpp"

namespace decalage {

std::vector<Elem> SNFResult::diagonal() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D.at(i, i));
  return out;
}

namespace {

struct SNFWork {
  const Ring& R;
  Matrix A;
  Matrix U, U_inv, V, V_inv;
  bool track_u;
  bool track_inverses;

  SNFWork(const Matrix& m, bool want_u, bool want_inv)
      : R(m.ring()),
        A(m),
        U(Matrix::identity(m.ring(), want_u ? m.rows() : 0)),
        U_inv(Matrix::identity(m.ring(), want_inv ? m.rows() : 0)),
        V(Matrix::identity(m.ring(), m.cols())),
        V_inv(Matrix::identity(m.ring(), want_inv ? m.cols() : 0)),
        track_u(want_u),
        track_inverses(want_inv) {}

  void swap_rows(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    if (track_u) U.swap_rows(a, b);
    if (track_inverses) U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
    if (track_inverses) V_inv.swap_rows(a, b);
  }

  // Clear A(i, t) using row t.
  void clear_below(std::size_t t, std::size_t i) {
    const Elem a = A.at(t, t);
    const Elem b = A.at(i, t);
    if (auto q = R.divide_exact(b, a)) {
      Elem nq = R.neg(*q);
      A.add_row_multiple(i, t, nq);
      if (track_u) U.add_row_multiple(i, t, nq);
      if (track_inverses) U_inv.add_col_multiple(t, i, *q);
      return;
    }
    auto [g, s, tt] = R.xgcd(a, b);
    Elem ag = *R.divide_exact(a, g);
    Elem bg = *R.divide_exact(b, g);
    Elem nbg = R.neg(bg);
    A.combine_rows(t, i, s, tt, nbg, ag);
    if (track_u) U.combine_rows(t, i, s, tt, nbg, ag);
    if (track_inverses) U_inv.combine_cols(t, i, ag, bg, R.neg(tt), s);
  }

  // Clear A(t, j) using column t.
  void clear_right(std::size_t t, std::size_t j) {
    const Elem a = A.at(t, t);
    const Elem b = A.at(t, j);
    if (auto q = R.divide_exact(b, a)) {
      Elem nq = R.neg(*q);
      A.add_col_multiple(j, t, nq);
      V.add_col_multiple(j, t, nq);
      if (track_inverses) V_inv.add_row_multiple(t, j, *q);
      return;
    }
    auto [g, s, tt] = R.xgcd(a, b);
    Elem ag = *R.divide_exact(a, g);
    Elem bg = *R.divide_exact(b, g);
    Elem nbg = R.neg(bg);
    A.combine_cols(t, j, s, tt, nbg, ag);
    V.combine_cols(t, j, s, tt, nbg, ag);
    if (track_inverses) V_inv.combine_rows(t, j, ag, bg, R.neg(tt), s);
  }

  // Pivot: smallest Euclidean size, then smallest xi-valuation, then lowest index.
  bool choose_pivot(std::size_t t, std::size_t* pi, std::size_t* pj) {
    bool found = false;
    int best_val = 0;
    for (std::size_t i = t; i < A.rows(); ++i)
      for (std::size_t j = t; j < A.cols(); ++j) {
        const Elem& x = A.at(i, j);
        if (x.is_zero()) continue;
        if (!found) {
          found = true;
          *pi = i;
          *pj = j;
          best_val = -1;
          continue;
        }
        int c = R.compare_size(x, A.at(*pi, *pj));
        if (c > 0) continue;
        if (c == 0 && !R.is_field()) {
          if (best_val < 0) best_val = R.xi_valuation(A.at(*pi, *pj));
          int v = R.xi_valuation(x);
          if (v >= best_val) continue;
          best_val = v;
        } else if (c == 0) {
          continue;
        } else {
          best_val = -1;
        }
        *pi = i;
        *pj = j;
      }
    return found;
  }

  std::size_t run() {
    const std::size_t n = std::min(A.rows(), A.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!choose_pivot(t, &pi, &pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        for (std::size_t i = t + 1; i < A.rows(); ++i)
          if (!A.at(i, t).is_zero()) clear_below(t, i);
        bool row_clean = true;
        for (std::size_t j = t + 1; j < A.cols(); ++j)
          if (!A.at(t, j).is_zero()) {
            clear_right(t, j);
            row_clean = false;
          }
        if (!row_clean) {
          bool col_clean = true;
          for (std::size_t i = t + 1; i < A.rows(); ++i)
            if (!A.at(i, t).is_zero()) col_clean = false;
          if (!col_clean) continue;
        }
        // Divisibility: the pivot must divide the remaining block.
        std::size_t bad_row = A.rows();
        for (std::size_t i = t + 1; i < A.rows() && bad_row == A.rows(); ++i)
          for (std::size_t j = t + 1; j < A.cols(); ++j)
            if (!A.at(i, j).is_zero() && !R.divides(A.at(t, t), A.at(i, j))) {
              bad_row = i;
              break;
            }
        if (bad_row == A.rows()) break;
        A.add_row_multiple(t, bad_row, R.one());
        if (track_u) U.add_row_multiple(t, bad_row, R.one());
        if (track_inverses) U_inv.add_col_multiple(bad_row, t, R.neg(R.one()));
      }
      Elem u = R.unit_part(A.at(t, t));
      if (u != R.one()) {
        Elem ui = R.inverse(u);
        A.scale_row(t, ui);
        if (track_u) U.scale_row(t, ui);
        if (track_inverses) U_inv.scale_col(t, u);
      }
    }
    return t;
  }
};

}  // namespace

SNFResult snf(const Matrix& m) {
  SNFWork w(m, true, true);
  std::size_t r = w.run();
  return SNFResult{std::move(w.U), std::move(w.A), std::move(w.V), std::move(w.U_inv),
                   std::move(w.V_inv), r};
}

std::vector<Elem> invariant_factors(const Matrix& m) {
  SNFWork w(m, false, false);
  std::size_t r = w.run();
  std::vector<Elem> out;
  for (std::size_t i = 0; i < r; ++i)
    if (!m.ring().is_unit(w.A.at(i, i))) out.push_back(w.A.at(i, i));
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.ring().is_field()) return rref(m).pivots.size();
  SNFWork w(m, false, false);
  return w.run();
}

Matrix kernel_basis(const Matrix& m) {
  if (m.ring().is_field()) return nullspace(m);
  SNFWork w(m, false, false);
  std::size_t r = w.run();
  return w.V.cols_range(r, m.cols());
}

Matrix image_basis(const Matrix& m) {
  if (m.ring().is_field()) {
    Echelon e = rref(m);
    return m.select_cols(e.pivots);
  }
  SNFResult s = snf(m);
  Matrix out = s.U_inv.cols_range(0, s.rank);
  for (std::size_t j = 0; j < s.rank; ++j) out.scale_col(j, s.D.at(j, j));
  return out;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("solve: row counts differ");
  const Ring& R = a.ring();
  if (R.is_field()) {
    Echelon e = rref(hstack(a, b));
    Matrix x(R, a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.pivots[r] >= a.cols()) return std::nullopt;
      for (std::size_t j = 0; j < b.cols(); ++j) x.at(e.pivots[r], j) = e.reduced.at(r, a.cols() + j);
    }
    return x;
  }
  SNFWork w(a, true, false);
  std::size_t r = w.run();
  Matrix y = w.U * b;
  Matrix z(R, a.cols(), b.cols());
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      if (i < r) {
        auto q = R.divide_exact(y.at(i, j), w.A.at(i, i));
        if (!q) return std::nullopt;
        z.at(i, j) = std::move(*q);
      } else if (!y.at(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  return w.V * z;
}

Elem determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("determinant of a non-square matrix");
  const Ring& R = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return R.one();
  Matrix a = m;
  bool negate = false;
  Elem prev = R.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k).is_zero()) ++p;
      if (p == n) return R.zero();
      a.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Elem v = R.sub(R.mul(a.at(i, j), a.at(k, k)), R.mul(a.at(i, k), a.at(k, j)));
        a.at(i, j) = *R.divide_exact(v, prev);
      }
    prev = a.at(k, k);
  }
  Elem d = a.at(n - 1, n - 1);
  return negate ? R.neg(d) : d;
}

bool is_unimodular(const Matrix& m) {
  return m.rows() == m.cols() && m.ring().is_unit(determinant(m));
}

int min_valuation(const Matrix& m) {
  int best = kInfiniteValuation;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      best = std::min(best, m.ring().xi_valuation(m.at(i, j)));
  return best;
}

// ---------------------------------------------------------------------------

namespace {

// Word-sized elimination for F_p; p <= 2^16 keeps products inside 64 bits.
Echelon rref_prime_field(const Matrix& m) {
  const Ring& k = m.ring();
  const std::uint64_t p = k.characteristic();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i * cols + j] = m.at(i, j).is_zero() ? 0 : m.at(i, j).constant().get_num().get_ui();
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1U) r = r * x % p;
      x = x * x % p;
      e >>= 1U;
    }
    return r;
  };
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[row * cols + j]);
    std::uint64_t s = inv(a[row * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[row * cols + j] = a[row * cols + j] * s % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row) continue;
      std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = (a[i * cols + j] + (p - f) * a[row * cols + j]) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  Matrix out(k, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i * cols + j]) out.at(i, j) = Elem(mpq_class(static_cast<unsigned long>(a[i * cols + j])));
  return Echelon{std::move(out), std::move(pivots)};
}

}  // namespace

Echelon rref(const Matrix& m) {
  const Ring& k = m.ring();
  if (!k.is_field()) throw Error("rref needs a field");
  if (k.kind() == RingKind::PrimeField) return rref_prime_field(m);
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a.at(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(row, p);
    if (a.at(row, c) != k.one()) a.scale_row(row, k.inverse(a.at(row, c)));
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != row && !a.at(i, c).is_zero()) a.add_row_multiple(i, row, k.neg(a.at(i, c)));
    pivots.push_back(c);
    ++row;
  }
  return Echelon{std::move(a), std::move(pivots)};
}

Matrix nullspace(const Matrix& m) {
  const Ring& k = m.ring();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix out(k, m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    out.at(free_cols[f], f) = k.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      out.at(e.pivots[r], f) = k.neg(e.reduced.at(r, free_cols[f]));
  }
  return out;
}

Subspace::Subspace(const Ring& k, std::size_t n) : basis_(k, n, 0) {}

Subspace Subspace::span(const Matrix& columns) {
  Echelon e = rref(columns.transpose());
  return Subspace(e.reduced.rows_range(0, e.pivots.size()).transpose());
}

Subspace Subspace::full(const Ring& k, std::size_t n) {
  return Subspace(Matrix::identity(k, n));
}

bool Subspace::contains(const Matrix& vectors) const {
  if (vectors.cols() == 0) return true;
  return span(hstack(basis_, vectors)).dim() == dim();
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis_); }

Subspace Subspace::operator+(const Subspace& other) const {
  return span(hstack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (dim() == 0 || other.dim() == 0) return Subspace(field(), ambient_dim());
  Matrix neg_b = other.basis_.scaled(field().neg(field().one()));
  Matrix ker = nullspace(hstack(basis_, neg_b));
  return span(basis_ * ker.rows_range(0, dim()));
}

Subspace Subspace::image(const Matrix& f) const {
  if (f.cols() != ambient_dim()) throw ShapeMismatch("image: map does not start at this space");
  return span(f * basis_);
}

Matrix complement_basis(const Subspace& sub, const Subspace& whole) {
  Subspace cur = sub;
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < whole.dim() && cur.dim() < whole.dim(); ++j) {
    Matrix c = whole.basis().col(j);
    if (cur.contains(c)) continue;
    cur = cur + Subspace::span(c);
    chosen.push_back(j);
  }
  return whole.basis().select_cols(chosen);
}

Matrix coordinates(const Matrix& basis, const Matrix& v) {
  const Ring& k = basis.ring();
  const std::size_t nb = basis.cols();
  Echelon e = rref(hstack(basis, v));
  Matrix out(k, nb, v.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= nb) throw Error("vector outside the span of the given basis");
    for (std::size_t j = 0; j < v.cols(); ++j) out.at(e.pivots[r], j) = e.reduced.at(r, nb + j);
  }
  if (e.pivots.size() < nb) throw Error("coordinates: basis columns are dependent");
  return out;
}

}  // namespace decalage
