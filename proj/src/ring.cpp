#include "decalage/ring.hpp"

#include <algorithm>
#include <regex>

#include "decalage/errors.hpp"

namespace decalage {

namespace {

const mpq_class& zero_q() {
  static const mpq_class z(0);
  return z;
}

bool is_integral(const mpq_class& q) { return q.get_den() == 1; }

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

const mpq_class& Elem::constant() const { return coeffs_.empty() ? zero_q() : coeffs_[0]; }

const mpq_class& Elem::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : zero_q();
}

// ---------------------------------------------------------------------------
// Construction

Ring Ring::integers(const mpz_class& xi) {
  if (xi < 2 || mpz_probab_prime_p(xi.get_mpz_t(), 30) == 0)
    throw Error("xi = " + xi.get_str() + " is not a prime integer");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Integers;
  d->prime = xi;
  d->xi = Elem(mpq_class(xi));
  return Ring(std::move(d));
}

Ring Ring::poly_fp(unsigned long p, const mpq_class& root) {
  if (p < 2 || p > 65536 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw Error("coefficient field F_" + std::to_string(p) + " needs a prime p <= 2^16");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::PolyFp;
  d->prime = p;
  Ring tmp(d);
  d->root = tmp.cnorm(root);
  Elem::Coeffs c;
  c.push_back(tmp.cnorm(-d->root));
  c.push_back(mpq_class(1));
  d->xi = Elem(std::move(c));
  return Ring(std::move(d));
}

Ring Ring::poly_q(const mpq_class& root) {
  auto d = std::make_shared<Data>();
  d->kind = RingKind::PolyQ;
  d->root = root;
  Elem::Coeffs c;
  c.push_back(-root);
  c.push_back(mpq_class(1));
  d->xi = Elem(std::move(c));
  return Ring(std::move(d));
}

Ring Ring::prime_field(unsigned long p) {
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw Error("F_" + std::to_string(p) + " is not a prime field");
  auto d = std::make_shared<Data>();
  d->kind = RingKind::PrimeField;
  d->prime = p;
  return Ring(std::move(d));
}

Ring Ring::rationals() {
  auto d = std::make_shared<Data>();
  d->kind = RingKind::Rationals;
  return Ring(std::move(d));
}

unsigned long Ring::characteristic() const {
  return modular() ? data_->prime.get_ui() : 0UL;
}

Ring Ring::residue_field() const {
  switch (kind()) {
    case RingKind::Integers:
      return prime_field(data_->prime.get_ui());
    case RingKind::PolyFp:
      return prime_field(data_->prime.get_ui());
    case RingKind::PolyQ:
      return rationals();
    default:
      throw Error("a field has no residue field");
  }
}

std::string Ring::describe() const {
  switch (kind()) {
    case RingKind::Integers:
      return "Z (xi = " + data_->prime.get_str() + ")";
    case RingKind::PolyFp:
      return "F_" + data_->prime.get_str() + "[t] (xi = " + to_string(xi()) + ")";
    case RingKind::PolyQ:
      return "Q[t] (xi = " + to_string(xi()) + ")";
    case RingKind::PrimeField:
      return "F_" + data_->prime.get_str();
    case RingKind::Rationals:
      return "Q";
  }
  return "?";
}

bool operator==(const Ring& a, const Ring& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->kind == b.data_->kind && a.data_->prime == b.data_->prime &&
         a.data_->root == b.data_->root;
}

// ---------------------------------------------------------------------------
// Coefficient helpers

mpq_class Ring::cnorm(const mpq_class& c) const {
  if (!modular()) return c;
  const mpz_class& p = data_->prime;
  mpz_class num = c.get_num() % p;
  if (num < 0) num += p;
  if (c.get_den() == 1) return mpq_class(num);
  mpz_class den = c.get_den() % p;
  if (den < 0) den += p;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error("denominator divisible by the characteristic");
  mpz_class r = (num * inv) % p;
  return mpq_class(r);
}

mpq_class Ring::cinv(const mpq_class& c) const {
  if (sgn(c) == 0) throw Error("inverse of zero");
  if (!modular()) return 1 / c;
  mpz_class inv;
  mpz_class num = c.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), data_->prime.get_mpz_t());
  return mpq_class(inv);
}

Elem Ring::make_poly(Elem::Coeffs c) const {
  if (modular())
    for (auto& x : c) x = cnorm(x);
  return Elem(std::move(c));
}

Elem Ring::from_int(long v) const { return from_rational(mpq_class(v)); }

Elem Ring::from_rational(const mpq_class& v) const {
  if ((kind() == RingKind::Integers) && !is_integral(v))
    throw Error("non-integral value in Z");
  return Elem(cnorm(v));
}

Elem Ring::from_coeffs(Elem::Coeffs c) const {
  if (!is_polynomial() && c.size() > 1) {
    Elem e(std::move(c));
    if (e.degree() > 0) throw Error("polynomial coefficients in a ring without a variable");
    return from_rational(e.constant());
  }
  if (kind() == RingKind::Integers && !c.empty()) return from_rational(c[0]);
  return make_poly(std::move(c));
}

Elem Ring::variable() const {
  if (!is_polynomial()) throw Error("ring has no variable");
  Elem::Coeffs c;
  c.push_back(mpq_class(0));
  c.push_back(mpq_class(1));
  return Elem(std::move(c));
}

// ---------------------------------------------------------------------------
// Arithmetic

Elem Ring::add(const Elem& a, const Elem& b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  Elem::Coeffs c(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = (i < x.size() ? x[i] : zero_q()) + (i < y.size() ? y[i] : zero_q());
    if (modular()) c[i] = cnorm(c[i]);
  }
  return Elem(std::move(c));
}

Elem Ring::neg(const Elem& a) const {
  Elem::Coeffs c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x = modular() ? cnorm(-x) : mpq_class(-x);
  return Elem(std::move(c));
}

Elem Ring::sub(const Elem& a, const Elem& b) const {
  if (b.is_zero()) return a;
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  Elem::Coeffs c(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = (i < x.size() ? x[i] : zero_q()) - (i < y.size() ? y[i] : zero_q());
    if (modular()) c[i] = cnorm(c[i]);
  }
  return Elem(std::move(c));
}

Elem Ring::mul(const Elem& a, const Elem& b) const {
  if (a.is_zero() || b.is_zero()) return Elem();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  if (x.size() == 1 && y.size() == 1) {
    mpq_class v = x[0] * y[0];
    return Elem(modular() ? cnorm(v) : v);
  }
  Elem::Coeffs c(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
  }
  return make_poly(std::move(c));
}

Elem Ring::pow(const Elem& a, unsigned e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool Ring::is_unit(const Elem& a) const {
  if (a.is_zero()) return false;
  switch (kind()) {
    case RingKind::Integers:
      return a.degree() == 0 && abs(a.constant()) == 1;
    case RingKind::PolyFp:
    case RingKind::PolyQ:
      return a.degree() == 0;
    default:
      return true;
  }
}

Elem Ring::inverse(const Elem& unit) const {
  if (!is_unit(unit)) throw Error("inverse of non-unit " + to_string(unit));
  return Elem(cinv(unit.constant()));
}

std::pair<Elem, Elem> Ring::divmod(const Elem& a, const Elem& b) const {
  if (b.is_zero()) throw Error("division by zero");
  switch (kind()) {
    case RingKind::Integers: {
      mpz_class q, r;
      mpz_class an = a.constant().get_num();
      mpz_class bn = b.constant().get_num();
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
      return {Elem(mpq_class(q)), Elem(mpq_class(r))};
    }
    case RingKind::PrimeField:
    case RingKind::Rationals:
      return {mul(a, inverse(b)), Elem()};
    default:
      break;
  }
  if (a.degree() < b.degree()) return {Elem(), a};
  Elem::Coeffs rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  Elem::Coeffs quo(a.degree() - db + 1);
  const mpq_class lead_inv = cinv(b.leading());
  for (int k = a.degree() - db; k >= 0; --k) {
    mpq_class c = rem[k + db] * lead_inv;
    if (modular()) c = cnorm(c);
    quo[k] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[k + j] -= c * b.coeffs()[j];
      if (modular()) rem[k + j] = cnorm(rem[k + j]);
    }
  }
  return {Elem(std::move(quo)), Elem(std::move(rem))};
}

std::optional<Elem> Ring::divide_exact(const Elem& a, const Elem& b) const {
  if (b.is_zero()) {
    if (a.is_zero()) return Elem();
    return std::nullopt;
  }
  if (a.is_zero()) return Elem();
  if (kind() == RingKind::Integers) {
    const mpz_class& an = a.constant().get_num();
    const mpz_class& bn = b.constant().get_num();
    if (!mpz_divisible_p(an.get_mpz_t(), bn.get_mpz_t())) return std::nullopt;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
    return Elem(mpq_class(q));
  }
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

bool Ring::divides(const Elem& d, const Elem& a) const { return divide_exact(a, d).has_value(); }

Ring::Bezout Ring::xgcd(const Elem& a, const Elem& b) const {
  if (a.is_zero() && b.is_zero()) return {Elem(), one(), Elem()};
  if (!a.is_zero()) {
    if (auto q = divide_exact(b, a)) {
      (void)q;
      Elem u = inverse(unit_part(a));
      return {mul(a, u), u, Elem()};
    }
  }
  if (a.is_zero()) {
    Elem u = inverse(unit_part(b));
    return {mul(b, u), Elem(), u};
  }
  if (kind() == RingKind::Integers) {
    mpz_class g, s, t;
    mpz_class an = a.constant().get_num();
    mpz_class bn = b.constant().get_num();
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
    return {Elem(mpq_class(g)), Elem(mpq_class(s)), Elem(mpq_class(t))};
  }
  // Extended Euclid over a field of coefficients.
  Elem r0 = a, r1 = b, s0 = one(), s1 = Elem(), t0 = Elem(), t1 = one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Elem s2 = sub(s0, mul(q, s1));
    Elem t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Elem u = inverse(unit_part(r0));
  return {mul(r0, u), mul(s0, u), mul(t0, u)};
}

Elem Ring::gcd(const Elem& a, const Elem& b) const { return xgcd(a, b).g; }

Elem Ring::normalize(const Elem& a) const {
  if (a.is_zero()) return a;
  return mul(a, inverse(unit_part(a)));
}

Elem Ring::unit_part(const Elem& a) const {
  if (a.is_zero()) return one();
  switch (kind()) {
    case RingKind::Integers:
      return Elem(mpq_class(sgn(a.constant()) < 0 ? -1 : 1));
    case RingKind::PolyFp:
    case RingKind::PolyQ:
      return Elem(a.leading());
    default:
      return a;
  }
}

int Ring::compare_size(const Elem& a, const Elem& b) const {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return 0;
    return a.is_zero() ? -1 : 1;
  }
  switch (kind()) {
    case RingKind::Integers: {
      int c = cmp(abs(a.constant()), abs(b.constant()));
      return (c > 0) - (c < 0);
    }
    case RingKind::PolyFp:
    case RingKind::PolyQ:
      return (a.degree() > b.degree()) - (a.degree() < b.degree());
    default:
      return 0;
  }
}

Elem Ring::synthetic_divide(const Elem& a, mpq_class* remainder) const {
  // Division by (t - root).
  const int n = a.degree();
  Elem::Coeffs q(std::max(n, 0));
  mpq_class carry = 0;
  for (int k = n; k >= 0; --k) {
    mpq_class v = a.coeffs()[k] + carry * data_->root;
    if (modular()) v = cnorm(v);
    if (k > 0) q[k - 1] = v;
    carry = v;
    if (k == 0) *remainder = v;
  }
  return Elem(std::move(q));
}

int Ring::xi_valuation(const Elem& a) const {
  if (a.is_zero()) return kInfiniteValuation;
  switch (kind()) {
    case RingKind::Integers: {
      mpz_class n = a.constant().get_num();
      mpz_class p = data_->prime;
      return static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    }
    case RingKind::PolyFp:
    case RingKind::PolyQ: {
      int v = 0;
      Elem cur = a;
      while (true) {
        mpq_class r;
        Elem q = synthetic_divide(cur, &r);
        if (sgn(r) != 0) return v;
        ++v;
        cur = std::move(q);
      }
    }
    default:
      return 0;
  }
}

Elem Ring::xi_power(int e) const {
  if (e < 0) throw Error("negative power of xi");
  return pow(xi(), static_cast<unsigned>(e));
}

Elem Ring::residue(const Elem& a) const {
  Ring k = residue_field();
  switch (kind()) {
    case RingKind::Integers:
      return k.from_rational(a.constant());
    default: {
      // Horner evaluation at the root.
      mpq_class v = 0;
      for (int i = a.degree(); i >= 0; --i) v = cnorm(v * data_->root + a.coeffs()[i]);
      return k.from_rational(v);
    }
  }
}

Elem Ring::lift(const Elem& k) const { return from_rational(k.constant()); }

Elem Ring::reduce_mod_xi_power(const Elem& a, int n) const {
  return divmod(a, xi_power(n)).second;
}

// ---------------------------------------------------------------------------
// Text form

std::string Ring::to_string(const Elem& a) const {
  if (!is_polynomial()) return rational_string(a.constant());
  if (a.is_zero()) return "0";
  std::string out;
  for (int e = a.degree(); e >= 0; --e) {
    const mpq_class& c = a.coeffs()[e];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (sgn(c) < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (e == 0) {
      out += rational_string(mag);
      continue;
    }
    if (mag != 1) out += rational_string(mag) + "*";
    out += "t";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

Elem Ring::parse(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw ParseError("empty ring element");
  if (!is_polynomial()) {
    static const std::regex number(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
    if (!std::regex_match(s, number)) throw ParseError("bad number '" + text + "'");
    mpq_class q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw ParseError("bad number '" + text + "'");
    q.canonicalize();
    if (kind() == RingKind::Integers && !is_integral(q))
      throw ParseError("non-integer '" + text + "' in Z");
    return from_rational(q);
  }
  static const std::regex term(R"(^([0-9]+(/[0-9]+)?)?(\*)?(t(\^([0-9]+))?)?$)");
  Elem result;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string tok = s.substr(pos, end - pos);
    std::smatch m;
    if (tok.empty() || !std::regex_match(tok, m, term) ||
        (m[1].length() == 0 && m[4].length() == 0) ||
        (m[3].length() > 0 && (m[1].length() == 0 || m[4].length() == 0)))
      throw ParseError("bad polynomial term '" + tok + "' in '" + text + "'");
    mpq_class c = 1;
    if (m[1].length() > 0) {
      c.set_str(m[1].str(), 10);
      c.canonicalize();
    }
    unsigned e = 0;
    if (m[4].length() > 0) e = m[6].length() > 0 ? std::stoul(m[6].str()) : 1;
    Elem::Coeffs coeffs(e + 1);
    coeffs[e] = sign * c;
    result = add(result, make_poly(std::move(coeffs)));
    pos = end;
  }
  return result;
}

}  // namespace decalage
