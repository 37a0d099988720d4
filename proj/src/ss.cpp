#include "decalage/ss.hpp"

#include <sstream>

#include "decalage/bockstein.hpp"
#include "decalage/errors.hpp"
#include "decalage/io.hpp"

namespace decalage {

FilteredComplex::FilteredComplex(FreeComplex ambient, int p_lo, std::vector<std::map<int, Matrix>> levels)
    : ambient_(std::move(ambient)), p_lo_(p_lo) {
  const Ring& k = ambient_.ring();
  if (!k.is_field()) throw Error("filtered complexes live over a field");
  for (int n = ambient_.lo() - 1; n <= ambient_.hi() + 1; ++n) {
    full_.emplace(n, Subspace::full(k, ambient_.rank(n)));
    zero_.emplace(n, Subspace(k, ambient_.rank(n)));
  }
  for (auto& lv : levels) {
    std::map<int, Subspace> m;
    for (int n = ambient_.lo(); n <= ambient_.hi(); ++n) {
      auto it = lv.find(n);
      m.emplace(n, it == lv.end() ? zero_.at(n) : Subspace::span(it->second));
    }
    levels_.push_back(std::move(m));
  }
}

const Subspace& FilteredComplex::at(int p, int n) const {
  if (n < ambient_.lo() - 1 || n > ambient_.hi() + 1) throw Error("degree out of range");
  if (n < ambient_.lo() || n > ambient_.hi()) return zero_.at(n);
  if (p <= p_lo_) return full_.at(n);
  if (p > p_hi()) return zero_.at(n);
  return levels_[p - p_lo_].at(n);
}

void FilteredComplex::validate() const {
  for (int p = p_lo_; p <= p_hi() + 1; ++p)
    for (int n = ambient_.lo(); n <= ambient_.hi(); ++n) {
      if (!at(p - 1, n).contains(at(p, n))) throw Error("filtration is not decreasing at p = " + std::to_string(p));
      if (n < ambient_.hi() && !at(p, n + 1).contains(at(p, n).image(ambient_.d(n))))
        throw Error("F^" + std::to_string(p) + " is not a subcomplex in degree " + std::to_string(n));
    }
}

std::size_t SSPage::dim(int p, int q) const {
  auto it = dims.find({p, q});
  return it == dims.end() ? 0 : it->second;
}

bool SSPage::differentials_vanish() const { return !first_nonzero().has_value(); }

std::optional<std::pair<int, int>> SSPage::first_nonzero() const {
  for (const auto& [pq, m] : d)
    if (!m.is_zero()) return pq;
  return std::nullopt;
}

namespace {

class PageBuilder {
 public:
  explicit PageBuilder(const FilteredComplex& fc) : fc_(fc), c_(fc.ambient()) {}

  // {x in F^p C^n : dx in F^{p+r}}
  const Subspace& z(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    const Subspace& f = fc_.at(p, n);
    const Subspace& t = fc_.at(p + r, n + 1);
    Subspace out(c_.ring(), c_.rank(n));
    if (f.dim() > 0) {
      Matrix a = hstack(c_.d(n) * f.basis(), t.basis().scaled(c_.ring().neg(c_.ring().one())));
      Matrix y = nullspace(a).rows_range(0, f.dim());
      out = Subspace::span(f.basis() * y);
    }
    return z_.emplace(key, std::move(out)).first->second;
  }

  // F^p C^n n d(F^s C^{n-1})
  Subspace b(int p, int s, int n) {
    if (n - 1 < c_.lo()) return Subspace(c_.ring(), c_.rank(n));
    return fc_.at(s, n - 1).image(c_.d(n - 1)).intersect(fc_.at(p, n));
  }

  struct Entry {
    std::size_t dim = 0;
    Matrix reps, frame;
    std::size_t den = 0;
  };

  Entry entry(int r, int p, int n) {
    const Subspace& zz = z(r, p, n);
    Subspace den = z(r - 1, p + 1, n) + b(p, p - r + 1, n);
    Matrix reps = complement_basis(den, zz);
    Matrix frame = hstack(den.basis(), reps);
    return Entry{reps.cols(), std::move(reps), std::move(frame), den.dim()};
  }

 private:
  const FilteredComplex& fc_;
  const FreeComplex& c_;
  std::map<std::tuple<int, int, int>, Subspace> z_;
};

}  // namespace

std::vector<SSPage> ss_pages(const FilteredComplex& fc, int r_min, int r_max) {
  const FreeComplex& c = fc.ambient();
  PageBuilder pb(fc);
  std::vector<SSPage> out;
  for (int r = r_min; r <= r_max; ++r) {
    SSPage page;
    page.r = r;
    std::map<std::pair<int, int>, PageBuilder::Entry> entries;
    for (int p = fc.p_lo(); p <= fc.p_hi(); ++p)
      for (int n = c.lo(); n <= c.hi(); ++n) {
        auto e = pb.entry(r, p, n);
        if (e.dim > 0) page.dims[{p, n - p}] = e.dim;
        entries.emplace(std::make_pair(p, n), std::move(e));
      }
    for (const auto& [pn, e] : entries) {
      auto [p, n] = pn;
      auto tgt = entries.find({p + r, n + 1});
      if (e.dim == 0 || tgt == entries.end() || tgt->second.dim == 0) continue;
      Matrix coords = coordinates(tgt->second.frame, c.d(n) * e.reps);
      page.d.emplace(std::make_pair(p, n - p), coords.rows_range(tgt->second.den, coords.rows()));
    }
    out.push_back(std::move(page));
  }
  return out;
}

std::map<std::pair<int, int>, std::size_t> abutment_graded_dims(const FilteredComplex& fc) {
  const FreeComplex& c = fc.ambient();
  std::map<std::pair<int, int>, std::size_t> out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Subspace ker = Subspace::span(nullspace(c.d(n)));
    Subspace im = n - 1 >= c.lo() ? Subspace::span(c.d(n - 1)) : Subspace(c.ring(), c.rank(n));
    for (int p = fc.p_lo(); p <= fc.p_hi(); ++p) {
      Subspace top = fc.at(p, n).intersect(ker);
      Subspace den = fc.at(p + 1, n).intersect(ker) + fc.at(p, n).intersect(im);
      std::size_t d = top.dim() - den.dim();
      if (d > 0) out[{p, n - p}] = d;
    }
  }
  return out;
}

namespace {

std::vector<std::map<int, Matrix>> image_levels(const SheafEmbedding& e, const FreeComplex& ambient) {
  ChainMap g = global_sections_map(e.iota);
  std::map<int, Matrix> lv;
  for (int n = ambient.lo(); n <= ambient.hi(); ++n) lv.emplace(n, g.at(n));
  return {lv};
}

}  // namespace

FilteredComplex tau_filtration(const SheafComplex& kbar) {
  FreeComplex g = global_sections(kbar);
  std::vector<std::map<int, Matrix>> levels;
  for (int m = kbar.hi(); m >= kbar.lo(); --m) levels.push_back(image_levels(sheaf_truncate_leq(kbar, m), g)[0]);
  return FilteredComplex(g, -kbar.hi(), std::move(levels));
}

FilteredComplex hodge_filtered(const SheafComplex& c) {
  FreeComplex g = global_sections(c);
  std::vector<std::map<int, Matrix>> levels;
  for (int p = c.lo(); p <= c.hi(); ++p) levels.push_back(image_levels(sheaf_hodge(c, p), g)[0]);
  return FilteredComplex(g, c.lo(), std::move(levels));
}

std::vector<SSPage> ht_spectral_sequence(const SheafComplex& k, int r_max) {
  FilteredComplex fc = tau_filtration(k.ring().is_field() ? k : sheaf_reduce(k));
  std::vector<SSPage> out;
  for (auto& page : ss_pages(fc, 1, r_max - 1)) {
    SSPage ht;
    ht.r = page.r + 1;
    // filtered (p', n - p') -> (a, b) = (n + p', -p')
    auto remap = [](std::pair<int, int> pq) {
      const int n = pq.first + pq.second;
      return std::make_pair(n + pq.first, -pq.first);
    };
    for (const auto& [pq, d] : page.dims) ht.dims[remap(pq)] = d;
    for (auto& [pq, m] : page.d) ht.d.emplace(remap(pq), std::move(m));
    out.push_back(std::move(ht));
  }
  return out;
}

std::vector<SSPage> hdr_spectral_sequence(const SheafComplex& k, int r_max) {
  return ss_pages(hodge_filtered(sheaf_bockstein(k)), 1, r_max);
}

Degeneration degeneration_check_HT(const SheafComplex& k) {
  SheafComplex kbar = k.ring().is_field() ? k : sheaf_reduce(k);
  Degeneration out;
  for (int m = kbar.lo(); m < kbar.hi(); ++m) {
    ChainMap g = global_sections_map(sheaf_truncate_leq(kbar, m).iota);
    for (int i = g.source.lo(); i <= g.source.hi(); ++i) {
      const std::size_t h = betti(g.source, i), r = rank(induced_map(g, i));
      if (r != h) {
        out.degenerates = false;
        out.i = i;
        out.m = m;
        out.witness = "H^" + std::to_string(i) + "(RGamma tau<=" + std::to_string(m) +
                      ") -> H^" + std::to_string(i) + "(RGamma K/xi) has a kernel of dimension " +
                      std::to_string(h - r);
        return out;
      }
    }
  }
  return out;
}

Degeneration degeneration_check_HdR(const SheafComplex& k) {
  Degeneration out;
  const int r_max = k.hi() - k.lo() + 1;
  for (const auto& page : hdr_spectral_sequence(k, r_max)) {
    if (auto pq = page.first_nonzero()) {
      out.degenerates = false;
      out.i = pq->first + pq->second;
      out.m = pq->first;
      out.witness = "d_" + std::to_string(page.r) + " is nonzero on E^{" + std::to_string(pq->first) + "," +
                    std::to_string(pq->second) + "}";
      return out;
    }
  }
  return out;
}

CokerComparison compare_degeneration(const SheafComplex& k, int i, int m) {
  SheafComplex kbar = sheaf_reduce(k);
  const Ring kf = kbar.ring();
  CokerComparison out{i, m, Subspace(kf, 0), Subspace(kf, 0), true};
  if (m < k.lo() || m > k.hi()) return out;
  SheafComplex omega = sheaf_cohomology_sheaf(kbar, m, m);
  const PosetSite& s = k.site();

  SheafEmbedding trunc = sheaf_truncate_leq(kbar, m);
  std::vector<ChainMap> ft;
  for (std::size_t x = 0; x < s.size(); ++x) {
    ResidueCohomology h(kbar.stalk(x), m);
    ChainMap f{trunc.sheaf.stalk(x), omega.stalk(x), {}, 0};
    f.maps.emplace(m, h.classes(trunc.iota.maps[x].at(m)));
    ft.push_back(std::move(f));
  }
  SheafMap to_omega_t{trunc.sheaf, omega, std::move(ft)};
  to_omega_t.validate();

  SheafComplex b = sheaf_bockstein(k);
  SheafEmbedding hodge = sheaf_hodge(b, m);
  std::vector<ChainMap> fh;
  for (std::size_t x = 0; x < s.size(); ++x) {
    ChainMap f{hodge.sheaf.stalk(x), omega.stalk(x), {}, 0};
    f.maps.emplace(m, hodge.iota.maps[x].at(m));
    fh.push_back(std::move(f));
  }
  SheafMap to_omega_h{hodge.sheaf, omega, std::move(fh)};
  to_omega_h.validate();

  out.coker_f = Subspace::span(induced_map(global_sections_map(to_omega_t), i));
  out.coker_g = Subspace::span(induced_map(global_sections_map(to_omega_h), i));
  out.equal = out.coker_f == out.coker_g;
  return out;
}

std::optional<int> first_torsion_degree(const FreeComplex& rgamma) {
  for (int i = rgamma.lo(); i <= rgamma.hi(); ++i)
    if (!cohomology(rgamma, i).xi_torsion_free(rgamma.ring())) return i;
  return std::nullopt;
}

Json page_to_json(const SSPage& page) {
  Json entries = Json::array(), diffs = Json::array();
  for (const auto& [pq, d] : page.dims) entries.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
  for (const auto& [pq, m] : page.d) {
    if (m.is_zero()) continue;
    diffs.push_back({{"from", Json::array({pq.first, pq.second})},
                     {"to", Json::array({pq.first + page.r, pq.second - page.r + 1})},
                     {"matrix", matrix_to_json(m)}});
  }
  return Json{{"r", page.r}, {"entries", entries}, {"differentials", diffs}};
}

std::string render_page(const SSPage& page) {
  std::ostringstream out;
  out << "E_" << page.r << "\n";
  if (page.dims.empty()) {
    out << "  (zero)\n";
    return out.str();
  }
  int p0 = page.dims.begin()->first.first, p1 = p0, q0 = page.dims.begin()->first.second, q1 = q0;
  for (const auto& [pq, d] : page.dims) {
    p0 = std::min(p0, pq.first);
    p1 = std::max(p1, pq.first);
    q0 = std::min(q0, pq.second);
    q1 = std::max(q1, pq.second);
  }
  for (int q = q1; q >= q0; --q) {
    out << (q < 0 ? " q=" : " q= ") << q << " |";
    for (int p = p0; p <= p1; ++p) {
      std::size_t d = page.dim(p, q);
      auto it = page.d.find({p, q});
      const bool hot = it != page.d.end() && !it->second.is_zero();
      std::string cell = d == 0 ? "." : std::to_string(d) + (hot ? "*" : "");
      out << std::string(cell.size() < 5 ? 5 - cell.size() : 1, ' ') << cell;
    }
    out << "\n";
  }
  out << "      +";
  for (int p = p0; p <= p1; ++p) out << "-----";
  out << "\n   p = ";
  for (int p = p0; p <= p1; ++p) out << std::string(p < 0 ? 3 : 4, ' ') << p;
  out << "\n";
  if (!page.differentials_vanish()) out << "  (* marks a nonzero outgoing d_" << page.r << ")\n";
  return out.str();
}

}  // namespace decalage
