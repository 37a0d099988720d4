#pragma once

#include <stdexcept>
#include <string>

namespace decalage {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DifferentialSquareNonzero : public Error {
 public:
  DifferentialSquareNonzero(int degree, std::size_t witness_column)
      : Error("d(" + std::to_string(degree + 1) + ") * d(" + std::to_string(degree) +
              ") is nonzero on basis column " + std::to_string(witness_column)),
        degree_(degree),
        column_(witness_column) {}
  int degree() const { return degree_; }
  std::size_t witness_column() const { return column_; }

 private:
  int degree_;
  std::size_t column_;
};

class DegreeBelowZero : public Error {
 public:
  explicit DegreeBelowZero(int lo)
      : Error("complex starts in degree " + std::to_string(lo) + " < 0") {}
};

class NegativeM : public Error {
 public:
  explicit NegativeM(int m) : Error("filtration index m = " + std::to_string(m) + " < 0") {}
};

class InvalidSheaf : public Error {
 public:
  InvalidSheaf(std::string from, std::string to, const std::string& what)
      : Error("invalid sheaf at " + from + " <= " + to + ": " + what),
        from_(std::move(from)),
        to_(std::move(to)) {}
  const std::string& from() const { return from_; }
  const std::string& to() const { return to_; }

 private:
  std::string from_;
  std::string to_;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class TorsionObstruction : public Error {
 public:
  TorsionObstruction(int degree, const std::string& group)
      : Error(group + " in degree " + std::to_string(degree) + " has xi-torsion"),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class GenerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace decalage
