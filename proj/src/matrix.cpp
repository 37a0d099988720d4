#include "decalage/matrix.hpp"

#include "decalage/errors.hpp"

namespace decalage {

namespace {

void require_same_ring(const Matrix& a, const Matrix& b, const char* op) {
  if (a.ring() != b.ring()) throw ShapeMismatch(std::string(op) + ": matrices over different rings");
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix Matrix::identity(const Ring& r, std::size_t n) { return scalar(r, n, r.one()); }

Matrix Matrix::scalar(const Ring& r, std::size_t n, const Elem& c) {
  Matrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Matrix Matrix::from_ints(const Ring& r, const std::vector<std::vector<long>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(r, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw ShapeMismatch("ragged matrix literal");
    for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = r.from_int(rows[i][j]);
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::col(std::size_t j) const { return cols_range(j, j + 1); }

Matrix Matrix::cols_range(std::size_t begin, std::size_t end) const {
  return block(0, begin, rows_, end - begin);
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix out(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) out.at(i, k) = at(i, idx[k]);
  return out;
}

Matrix Matrix::rows_range(std::size_t begin, std::size_t end) const {
  return block(begin, 0, end - begin, cols_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range of " + shape(*this));
  Matrix out(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw ShapeMismatch("set_block: " + shape(b) + " does not fit in " + shape(*this));
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Matrix Matrix::scaled(const Elem& c) const {
  Matrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.mul(c, data_[k]);
  return out;
}

Matrix Matrix::divided(const Elem& c) const {
  Matrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    auto q = ring_.divide_exact(data_[k], c);
    if (!q) throw Error("entry " + ring_.to_string(data_[k]) + " not divisible by " + ring_.to_string(c));
    out.data_[k] = std::move(*q);
  }
  return out;
}

Matrix Matrix::residue() const {
  Ring k = ring_.residue_field();
  Matrix out(k, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.residue(data_[i]);
  return out;
}

Matrix Matrix::lifted(const Ring& target) const {
  Matrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = target.lift(data_[i]);
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void Matrix::add_row_multiple(std::size_t a, std::size_t b, const Elem& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!at(b, j).is_zero()) at(a, j) = ring_.add(at(a, j), ring_.mul(c, at(b, j)));
}

void Matrix::add_col_multiple(std::size_t a, std::size_t b, const Elem& c) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!at(i, b).is_zero()) at(i, a) = ring_.add(at(i, a), ring_.mul(c, at(i, b)));
}

void Matrix::scale_row(std::size_t a, const Elem& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(a, j) = ring_.mul(c, at(a, j));
}

void Matrix::scale_col(std::size_t a, const Elem& c) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, a) = ring_.mul(c, at(i, a));
}

void Matrix::combine_rows(std::size_t a, std::size_t b, const Elem& s, const Elem& t,
                          const Elem& u, const Elem& v) {
  for (std::size_t j = 0; j < cols_; ++j) {
    const Elem& x = at(a, j);
    const Elem& y = at(b, j);
    if (x.is_zero() && y.is_zero()) continue;
    Elem nx = ring_.add(ring_.mul(s, x), ring_.mul(t, y));
    Elem ny = ring_.add(ring_.mul(u, x), ring_.mul(v, y));
    at(a, j) = std::move(nx);
    at(b, j) = std::move(ny);
  }
}

void Matrix::combine_cols(std::size_t a, std::size_t b, const Elem& s, const Elem& t,
                          const Elem& u, const Elem& v) {
  // Columns (a, b) <- (a, b) * [[s, u], [t, v]], i.e. new a = s*a + t*b, new b = u*a + v*b.
  for (std::size_t i = 0; i < rows_; ++i) {
    const Elem& x = at(i, a);
    const Elem& y = at(i, b);
    if (x.is_zero() && y.is_zero()) continue;
    Elem nx = ring_.add(ring_.mul(s, x), ring_.mul(t, y));
    Elem ny = ring_.add(ring_.mul(u, x), ring_.mul(v, y));
    at(i, a) = std::move(nx);
    at(i, b) = std::move(ny);
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "product");
  if (a.cols_ != b.rows_) throw ShapeMismatch("product of " + shape(a) + " and " + shape(b));
  const Ring& r = a.ring_;
  Matrix out(r, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Elem& y = b.at(k, j);
        if (y.is_zero()) continue;
        out.at(i, j) = r.add(out.at(i, j), r.mul(x, y));
      }
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "sum");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ShapeMismatch("sum of " + shape(a) + " and " + shape(b));
  Matrix out(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.ring_.add(a.data_[k], b.data_[k]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "difference");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ShapeMismatch("difference of " + shape(a) + " and " + shape(b));
  Matrix out(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.ring_.sub(a.data_[k], b.data_[k]);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ && a.data_ == b.data_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("hstack: row counts differ");
  Matrix out(a.ring(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("vstack: column counts differ");
  Matrix out(a.ring(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace decalage
