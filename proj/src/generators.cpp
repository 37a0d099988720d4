#include "decalage/generators.hpp"

namespace decalage {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace

Elem random_small(const Ring& r, std::mt19937_64& rng) {
  if (!r.is_polynomial()) return r.from_int(uniform(rng, -2, 2));
  Elem::Coeffs c(2);
  c[0] = uniform(rng, -2, 2);
  c[1] = uniform(rng, 0, 3) == 0 ? uniform(rng, -1, 1) : 0;
  return r.from_coeffs(std::move(c));
}

std::pair<Matrix, Matrix> random_unimodular(const Ring& r, std::size_t n, std::mt19937_64& rng) {
  Matrix a = Matrix::identity(r, n);
  Matrix inv = Matrix::identity(r, n);
  if (n == 0) return {a, inv};
  const std::size_t steps = 2 * n;
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t i = uniform(rng, 0, n - 1);
    std::size_t j = uniform(rng, 0, n - 1);
    if (i == j) {
      // unit scaling or swap with the next index
      if (uniform(rng, 0, 1) == 0 && n > 1) {
        std::size_t k = (i + 1) % n;
        a.swap_rows(i, k);
        inv.swap_cols(i, k);
      } else {
        Elem u = r.neg(r.one());
        a.scale_row(i, u);
        inv.scale_col(i, u);
      }
      continue;
    }
    Elem c = random_small(r, rng);
    a.add_row_multiple(i, j, c);
    inv.add_col_multiple(j, i, r.neg(c));
  }
  return {a, inv};
}

std::vector<Elem> shell_factors(const Ring& r) {
  std::vector<Elem> out;
  Elem xi = r.xi();
  Elem other;
  if (r.kind() == RingKind::Integers) {
    long p = r.xi().constant().get_num().get_si();
    other = r.from_int(p == 2 ? 3 : 2);
  } else {
    other = r.add(r.xi(), r.one());
  }
  out.push_back(xi);
  out.push_back(r.mul(xi, xi));
  out.push_back(other);
  out.push_back(r.mul(xi, other));
  return out;
}

FreeComplex conjugate_randomly(const FreeComplex& k, std::mt19937_64& rng) {
  const Ring& r = k.ring();
  std::vector<std::pair<Matrix, Matrix>> base;
  for (int i = k.lo(); i <= k.hi(); ++i) base.push_back(random_unimodular(r, k.rank(i), rng));
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    ranks.push_back(k.rank(i));
    if (i < k.hi()) d.push_back(base[i + 1 - k.lo()].first * k.d(i) * base[i - k.lo()].second);
  }
  return FreeComplex(r, k.lo(), std::move(ranks), std::move(d), k.twist());
}

FreeComplex random_free_complex(const Ring& r, std::mt19937_64& rng, int max_degree,
                                std::size_t max_rank) {
  const int hi = static_cast<int>(uniform(rng, 1, std::max(1, max_degree)));
  const std::size_t n = hi + 1;
  std::vector<std::size_t> ranks(n, 0);
  // shells[i] lists the differentials of shells starting in degree i
  std::vector<std::vector<Elem>> shells(n);
  std::vector<Elem> factors = shell_factors(r);
  factors.push_back(r.one());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t budget = max_rank > ranks[i] ? max_rank - ranks[i] : 0;
    if (budget == 0) continue;
    std::size_t pieces = uniform(rng, 0, static_cast<long>(budget));
    for (std::size_t p = 0; p < pieces; ++p) {
      bool can_shell = i + 1 < n && ranks[i + 1] < max_rank;
      if (can_shell && uniform(rng, 0, 2) != 0) {
        shells[i].push_back(factors[uniform(rng, 0, static_cast<long>(factors.size()) - 1)]);
        ++ranks[i];
        ++ranks[i + 1];
      } else {
        ++ranks[i];
      }
    }
  }
  // Lay out each term as [free part | shell tops (from i-1) | shell bottoms (to i+1)].
  std::vector<std::size_t> tops(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) tops[i + 1] = shells[i].size();
  std::vector<Matrix> d;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix m(r, ranks[i + 1], ranks[i]);
    const std::size_t bottoms_at = ranks[i] - shells[i].size();
    const std::size_t free_next = ranks[i + 1] - tops[i + 1] - shells[i + 1].size();
    for (std::size_t s = 0; s < shells[i].size(); ++s) m.at(free_next + s, bottoms_at + s) = shells[i][s];
    d.push_back(std::move(m));
  }
  FreeComplex standard(r, 0, ranks, std::move(d));
  return conjugate_randomly(standard, rng);
}

}  // namespace decalage
