#include <algorithm>

#include "decalage/errors.hpp"
#include "decalage/generators.hpp"
#include "decalage/site.hpp"

namespace decalage {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

struct Piece {
  int degree;
  std::vector<bool> support;
};

std::vector<bool> random_support(const PosetSite& s, std::mt19937_64& rng) {
  const std::size_t n = s.size();
  std::vector<bool> out(n, false);
  const long kind = uniform(rng, 0, 2);
  if (kind == 0) return std::vector<bool>(n, true);
  const long gens = uniform(rng, 1, 2);
  for (long g = 0; g < gens; ++g) {
    const std::size_t x = uniform(rng, 0, static_cast<long>(n) - 1);
    for (std::size_t y = 0; y < n; ++y)
      if (kind == 1 ? s.leq(x, y) : s.leq(y, x)) out[y] = true;
  }
  return out;
}

// Is x |-> c on S1 n S2 a natural map R_S1 -> R_S2?
bool natural(const PosetSite& s, const Piece& a, const Piece& b) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (!s.lt(x, y)) continue;
      const bool lhs = a.support[x] && b.support[x] && b.support[y];
      const bool rhs = a.support[x] && a.support[y] && b.support[y];
      if (lhs != rhs) return false;
    }
  return true;
}

struct Arrow {
  std::size_t from, to;
  Elem c;
};

// Stalk complexes and cover restrictions of the assembled sheaf.
struct Assembled {
  std::vector<FreeComplex> stalks;
  SheafComplex::Restrictions res;
};

Assembled assemble(const PosetSite& s, const Ring& r, const std::vector<Piece>& pieces,
                   const std::vector<Arrow>& arrows, int hi) {
  const std::size_t n = s.size();
  // position of each piece inside its stalk term, or -1 when off the support
  std::vector<std::vector<long>> pos(n, std::vector<long>(pieces.size(), -1));
  std::vector<std::vector<std::size_t>> ranks(n, std::vector<std::size_t>(hi + 1, 0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t p = 0; p < pieces.size(); ++p)
      if (pieces[p].support[x]) pos[x][p] = static_cast<long>(ranks[x][pieces[p].degree]++);
  Assembled out;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Matrix> d;
    for (int q = 0; q < hi; ++q) d.emplace_back(r, ranks[x][q + 1], ranks[x][q]);
    for (const auto& a : arrows)
      if (pos[x][a.from] >= 0 && pos[x][a.to] >= 0) {
        Elem& e = d[pieces[a.from].degree].at(pos[x][a.to], pos[x][a.from]);
        e = r.add(e, a.c);
      }
    out.stalks.emplace_back(r, 0, ranks[x], std::move(d));
  }
  for (const auto& [x, y] : s.covers()) {
    std::map<int, Matrix> m;
    for (int q = 0; q <= hi; ++q) m.emplace(q, Matrix(r, ranks[y][q], ranks[x][q]));
    for (std::size_t p = 0; p < pieces.size(); ++p)
      if (pos[x][p] >= 0 && pos[y][p] >= 0) m.at(pieces[p].degree).at(pos[y][p], pos[x][p]) = r.one();
    out.res.emplace(std::make_pair(x, y), std::move(m));
  }
  return out;
}

}  // namespace

SheafComplex random_sheaf(const PosetSite& site, const Ring& r, std::mt19937_64& rng, int max_degree,
                          std::size_t max_rank, bool xi_multiples) {
  const int hi = static_cast<int>(uniform(rng, 1, std::max(1, max_degree)));
  std::vector<Piece> pieces;
  std::vector<std::vector<std::size_t>> load(site.size(), std::vector<std::size_t>(hi + 1, 0));
  const long attempts = uniform(rng, 1, static_cast<long>(max_rank) * (hi + 1));
  for (long t = 0; t < attempts; ++t) {
    Piece p{static_cast<int>(uniform(rng, 0, hi)), random_support(site, rng)};
    bool fits = true;
    for (std::size_t x = 0; x < site.size(); ++x)
      if (p.support[x] && load[x][p.degree] >= max_rank) fits = false;
    if (!fits) continue;
    for (std::size_t x = 0; x < site.size(); ++x)
      if (p.support[x]) ++load[x][p.degree];
    pieces.push_back(std::move(p));
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.degree < b.degree; });

  std::vector<Elem> coeffs{r.one(), r.neg(r.one())};
  if (xi_multiples)
    for (const Elem& f : shell_factors(r)) coeffs.push_back(f);
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (std::size_t b = 0; b < pieces.size(); ++b) {
      if (pieces[b].degree != pieces[a].degree + 1 || !natural(site, pieces[a], pieces[b])) continue;
      if (uniform(rng, 0, 2) == 0) continue;
      arrows.push_back({a, b, coeffs[uniform(rng, 0, static_cast<long>(coeffs.size()) - 1)]});
      Assembled trial = assemble(site, r, pieces, arrows, hi);
      bool ok = true;
      for (const auto& k : trial.stalks) try {
          k.validate();
        } catch (const DifferentialSquareNonzero&) {
          ok = false;
        }
      if (!ok) arrows.pop_back();
    }
  Assembled out = assemble(site, r, pieces, arrows, hi);
  return conjugate_sheaf(SheafComplex(site, std::move(out.stalks), out.res), rng);
}

SheafComplex conjugate_sheaf(const SheafComplex& f, std::mt19937_64& rng) {
  const PosetSite& s = f.site();
  const Ring& r = f.ring();
  // base[x][q] = (A, A^{-1})
  std::vector<std::vector<std::pair<Matrix, Matrix>>> base(s.size());
  std::vector<FreeComplex> stalks;
  for (std::size_t x = 0; x < s.size(); ++x) {
    const FreeComplex& k = f.stalk(x);
    for (int q = k.lo(); q <= k.hi(); ++q) base[x].push_back(random_unimodular(r, k.rank(q), rng));
    std::vector<std::size_t> ranks;
    std::vector<Matrix> d;
    for (int q = k.lo(); q <= k.hi(); ++q) {
      ranks.push_back(k.rank(q));
      if (q < k.hi()) d.push_back(base[x][q + 1 - k.lo()].first * k.d(q) * base[x][q - k.lo()].second);
    }
    stalks.emplace_back(r, k.lo(), std::move(ranks), std::move(d), k.twist());
  }
  SheafComplex::Restrictions given;
  for (const auto& [x, y] : s.covers()) {
    std::map<int, Matrix> m;
    for (int q = f.lo(); q <= f.hi(); ++q)
      m.emplace(q, base[y][q - f.lo()].first * f.restriction(x, y).at(q) * base[x][q - f.lo()].second);
    given.emplace(std::make_pair(x, y), std::move(m));
  }
  return SheafComplex(s, std::move(stalks), given);
}

}  // namespace decalage
