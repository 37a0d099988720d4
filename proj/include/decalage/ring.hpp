#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace decalage {

/// Valuation of zero.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// A ring element, stored as rational coefficients in increasing degree.
///
/// Every supported ring fits this shape: integers and prime-field residues are
/// constants with integral values, polynomials carry one entry per degree. The
/// owning Ring decides what the coefficients mean, so an Elem is only meaningful
/// together with its Ring.
class Elem {
 public:
  using Coeffs = boost::container::small_vector<mpq_class, 1>;

  Elem() = default;
  explicit Elem(mpq_class constant) {
    if (sgn(constant) != 0) coeffs_.push_back(std::move(constant));
  }
  explicit Elem(Coeffs coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const { return coeffs_; }
  const mpq_class& constant() const;
  const mpq_class& coeff(std::size_t k) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  friend bool operator==(const Elem& a, const Elem& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }
  Coeffs coeffs_;
};

enum class RingKind { Integers, PolyFp, PolyQ, PrimeField, Rationals };

/// An exact principal ideal domain with a distinguished prime xi, or one of the
/// residue fields R/(xi).
///
/// Supported coefficient rings: Z with xi a rational prime; F_p[t] and Q[t]
/// with xi = t - a (a in the coefficient field); and the fields F_p and Q used
/// as residue fields. Ring is a cheap handle; copies share state.
class Ring {
 public:
  static Ring integers(const mpz_class& xi);
  static Ring poly_fp(unsigned long p, const mpq_class& root = 0);
  static Ring poly_q(const mpq_class& root = 0);
  static Ring prime_field(unsigned long p);
  static Ring rationals();

  RingKind kind() const { return data_->kind; }
  bool is_field() const {
    return data_->kind == RingKind::PrimeField || data_->kind == RingKind::Rationals;
  }
  bool is_polynomial() const {
    return data_->kind == RingKind::PolyFp || data_->kind == RingKind::PolyQ;
  }
  /// p for F_p and F_p[t]; 0 otherwise.
  unsigned long characteristic() const;
  /// The distinguished prime. Zero for fields.
  const Elem& xi() const { return data_->xi; }
  /// Root a of xi = t - a for polynomial rings.
  const mpq_class& root() const { return data_->root; }
  /// k = R/(xi). Only defined for non-field rings.
  Ring residue_field() const;
  std::string describe() const;

  friend bool operator==(const Ring& a, const Ring& b);
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

  Elem zero() const { return Elem(); }
  Elem one() const { return Elem(mpq_class(1)); }
  Elem from_int(long v) const;
  Elem from_rational(const mpq_class& v) const;
  /// The polynomial variable t.
  Elem variable() const;
  /// Element with the given coefficients (increasing degree), normalized.
  Elem from_coeffs(Elem::Coeffs c) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, unsigned e) const;

  bool is_unit(const Elem& a) const;
  Elem inverse(const Elem& unit) const;
  /// Euclidean division: a = q*b + r with r = 0 or size(r) < size(b).
  /// For Z the remainder carries the sign of b.
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const;
  std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const;
  bool divides(const Elem& d, const Elem& a) const;

  struct Bezout {
    Elem g;
    Elem s;
    Elem t;
  };
  /// s*a + t*b = g with g the normalized gcd. Prefers (s, t) = (u, 0) when a | b.
  Bezout xgcd(const Elem& a, const Elem& b) const;
  Elem gcd(const Elem& a, const Elem& b) const;

  /// Canonical associate: |a| for Z, monic for polynomials, 1 for nonzero field elements.
  Elem normalize(const Elem& a) const;
  /// The unit u with a = u * normalize(a). One for zero.
  Elem unit_part(const Elem& a) const;
  /// Sign of size(a) - size(b) for the Euclidean size (|.| or degree).
  int compare_size(const Elem& a, const Elem& b) const;

  /// Largest e with xi^e | a; kInfiniteValuation for zero.
  int xi_valuation(const Elem& a) const;
  Elem xi_power(int e) const;
  /// Image in the residue field.
  Elem residue(const Elem& a) const;
  /// Canonical lift of a residue-field element.
  Elem lift(const Elem& k) const;
  /// Canonical representative of a modulo xi^n.
  Elem reduce_mod_xi_power(const Elem& a, int n) const;

  std::string to_string(const Elem& a) const;
  Elem parse(const std::string& text) const;

 private:
  struct Data {
    RingKind kind;
    mpz_class prime;  // xi for Z, characteristic for F_p kinds
    mpq_class root;   // xi = t - root for polynomial rings
    Elem xi;
  };
  explicit Ring(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  // Coefficient-field helpers for F_p / Q coefficients.
  bool modular() const {
    return data_->kind == RingKind::PolyFp || data_->kind == RingKind::PrimeField;
  }
  mpq_class cnorm(const mpq_class& c) const;
  mpq_class cinv(const mpq_class& c) const;
  Elem make_poly(Elem::Coeffs c) const;
  Elem synthetic_divide(const Elem& a, mpq_class* remainder) const;

  std::shared_ptr<const Data> data_;
};

}  // namespace decalage
