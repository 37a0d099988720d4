#pragma once

#include <cstddef>
#include <vector>

#include "decalage/ring.hpp"

namespace decalage {

/// Dense row-major matrix over a Ring.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix zeros(const Ring& r, std::size_t rows, std::size_t cols) {
    return Matrix(r, rows, cols);
  }
  static Matrix identity(const Ring& r, std::size_t n);
  static Matrix scalar(const Ring& r, std::size_t n, const Elem& c);
  static Matrix from_ints(const Ring& r, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix col(std::size_t j) const;
  Matrix cols_range(std::size_t begin, std::size_t end) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix rows_range(std::size_t begin, std::size_t end) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix scaled(const Elem& c) const;
  /// Entrywise exact division; throws if some entry is not divisible.
  Matrix divided(const Elem& c) const;
  /// Entrywise image under a ring map R -> S (residue or lift).
  Matrix residue() const;
  Matrix lifted(const Ring& target) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row a += c * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Elem& c);
  void add_col_multiple(std::size_t a, std::size_t b, const Elem& c);
  void scale_row(std::size_t a, const Elem& c);
  void scale_col(std::size_t a, const Elem& c);
  /// Rows (a, b) <- [[s, t], [u, v]] * rows (a, b).
  void combine_rows(std::size_t a, std::size_t b, const Elem& s, const Elem& t, const Elem& u,
                    const Elem& v);
  void combine_cols(std::size_t a, std::size_t b, const Elem& s, const Elem& t, const Elem& u,
                    const Elem& v);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

}  // namespace decalage
