#include "decalage/io.hpp"

#include <fstream>
#include <sstream>

#include "decalage/errors.hpp"

namespace decalage {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long>();
}

std::string elem_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw ParseError("ring elements must be strings");
}

// xi = t - a given as text; returns a.
mpq_class root_of(const Ring& base, const std::string& xi) {
  Elem e = base.parse(xi);
  if (e.degree() != 1 || e.coeffs()[1] != 1) throw ParseError("xi must be of the form t - a, got '" + xi + "'");
  return -e.coeffs()[0];
}

}  // namespace

Json ring_to_json(const Ring& r) {
  Json j;
  switch (r.kind()) {
    case RingKind::Integers:
      j["kind"] = "z";
      j["xi"] = r.to_string(r.xi());
      break;
    case RingKind::PolyFp:
      j["kind"] = "fp-poly";
      j["p"] = r.characteristic();
      j["xi"] = r.to_string(r.xi());
      break;
    case RingKind::PolyQ:
      j["kind"] = "q-poly";
      j["xi"] = r.to_string(r.xi());
      break;
    case RingKind::PrimeField:
      j["kind"] = "fp";
      j["p"] = r.characteristic();
      break;
    case RingKind::Rationals:
      j["kind"] = "q";
      break;
  }
  return j;
}

Ring ring_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "fp") return Ring::prime_field(as_int(field(j, "p"), "p"));
  if (kind == "q") return Ring::rationals();
  std::string xi = j.contains("xi") ? elem_text(j.at("xi")) : "";
  if (kind == "fp-poly") {
    long p = j.contains("p") ? as_int(j.at("p"), "p") : 5;
    return ring_from_spec("fp-poly:" + std::to_string(p), xi);
  }
  return ring_from_spec(kind, xi);
}

Ring ring_from_spec(const std::string& kind, const std::string& xi) {
  try {
    if (kind == "z") {
      mpz_class p(xi.empty() ? "2" : xi);
      if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 25) == 0) throw ParseError("xi must be a prime, got " + xi);
      return Ring::integers(p);
    }
    if (kind.rfind("fp-poly", 0) == 0) {
      unsigned long p = 5;
      if (kind.size() > 7) {
        if (kind[7] != ':') throw ParseError("unknown ring '" + kind + "'");
        p = std::stoul(kind.substr(8));
      }
      if (p < 2 || p > 65536 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25) == 0)
        throw ParseError("fp-poly needs a prime p <= 2^16");
      Ring base = Ring::poly_fp(p, 0);
      return Ring::poly_fp(p, xi.empty() ? mpq_class(0) : root_of(base, xi));
    }
    if (kind == "q-poly") {
      Ring base = Ring::poly_q(0);
      return Ring::poly_q(xi.empty() ? mpq_class(0) : root_of(base, xi));
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("bad ring spec '" + kind + "' / '" + xi + "'");
  }
  throw ParseError("unknown ring '" + kind + "'");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring().to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Ring& r, const Json& j, std::size_t rows, std::size_t cols) {
  Matrix m(r, rows, cols);
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  if (rows == 0 || cols == 0) {
    // [] or rows of empty arrays
    if (j.size() != rows && !j.empty()) throw ShapeMismatch("matrix has the wrong number of rows");
    return m;
  }
  if (j.size() != rows)
    throw ShapeMismatch("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ShapeMismatch("row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m.at(i, c) = r.parse(elem_text(j[i][c]));
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad ring element: ") + e.what());
      }
    }
  }
  return m;
}

Json complex_to_json(const FreeComplex& k) {
  Json j;
  j["ring"] = ring_to_json(k.ring());
  j["lo"] = k.lo();
  j["hi"] = k.hi();
  Json ranks = Json::array(), diffs = Json::array();
  for (int i = k.lo(); i <= k.hi(); ++i) {
    ranks.push_back(k.rank(i));
    if (i < k.hi()) diffs.push_back(matrix_to_json(k.d(i)));
  }
  j["ranks"] = ranks;
  j["differentials"] = diffs;
  if (k.twist() != 0) j["twist"] = k.twist();
  return j;
}

FreeComplex complex_from_json(const Json& j) { return complex_from_json(j, ring_from_json(field(j, "ring"))); }

FreeComplex complex_from_json(const Json& j, const Ring& r) {
  const int lo = static_cast<int>(as_int(field(j, "lo"), "lo"));
  const Json& rk = field(j, "ranks");
  if (!rk.is_array() || rk.empty()) throw ParseError("ranks must be a nonempty array");
  const int hi = j.contains("hi") ? static_cast<int>(as_int(j.at("hi"), "hi")) : lo + static_cast<int>(rk.size()) - 1;
  if (hi < lo || rk.size() != static_cast<std::size_t>(hi - lo + 1))
    throw ShapeMismatch("ranks must list one entry per degree lo .. hi");
  std::vector<std::size_t> ranks;
  for (const auto& x : rk) {
    long v = as_int(x, "rank");
    if (v < 0) throw ParseError("ranks must be nonnegative");
    ranks.push_back(static_cast<std::size_t>(v));
  }
  const Json& dj = field(j, "differentials");
  if (!dj.is_array() || dj.size() != ranks.size() - 1)
    throw ShapeMismatch("expected " + std::to_string(ranks.size() - 1) + " differentials");
  std::vector<Matrix> d;
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) d.push_back(matrix_from_json(r, dj[i], ranks[i + 1], ranks[i]));
  int twist = j.contains("twist") ? static_cast<int>(as_int(j.at("twist"), "twist")) : 0;
  return FreeComplex(r, lo, std::move(ranks), std::move(d), twist);
}

Json site_to_json(const PosetSite& s) {
  Json els = Json::array(), leq = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) els.push_back(s.name(i));
  for (const auto& [a, b] : s.covers()) leq.push_back(Json::array({s.name(a), s.name(b)}));
  return Json{{"elements", els}, {"leq", leq}};
}

PosetSite site_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("builtin:", 0) != 0) throw ParseError("site strings must be builtin:<name>");
    return PosetSite::builtin(s.substr(8));
  }
  std::vector<std::string> names;
  for (const auto& e : field(j, "elements")) names.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("leq"))
    for (const auto& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("leq entries are pairs [a, b]");
      rel.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  return PosetSite(std::move(names), rel);
}

PosetSite site_from_spec(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return PosetSite::builtin(spec.substr(8));
  return site_from_json(read_json_file(spec));
}

Json sheaf_to_json(const SheafComplex& f) {
  const PosetSite& s = f.site();
  Json stalks = Json::object(), res = Json::object();
  for (std::size_t x = 0; x < s.size(); ++x) {
    Json c = complex_to_json(f.stalk(x));
    c.erase("ring");
    stalks[s.name(x)] = c;
  }
  for (const auto& [x, y] : s.covers()) {
    Json maps = Json::array();
    for (int i = f.lo(); i <= f.hi(); ++i) maps.push_back(matrix_to_json(f.restriction(x, y).at(i)));
    res[s.name(x) + "<=" + s.name(y)] = maps;
  }
  return Json{{"ring", ring_to_json(f.ring())}, {"site", site_to_json(s)}, {"stalks", stalks}, {"restrictions", res}};
}

SheafComplex sheaf_from_json(const Json& j) {
  const Ring r = ring_from_json(field(j, "ring"));
  PosetSite s = site_from_json(field(j, "site"));
  const Json& sj = field(j, "stalks");
  std::vector<FreeComplex> stalks;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (!sj.contains(s.name(x))) throw ParseError("no stalk for '" + s.name(x) + "'");
    stalks.push_back(complex_from_json(sj.at(s.name(x)), r));
  }
  int lo = stalks[0].lo(), hi = stalks[0].hi();
  for (const auto& k : stalks) {
    lo = std::min(lo, k.lo());
    hi = std::max(hi, k.hi());
  }
  for (auto& k : stalks) k = k.widened(lo, hi);
  SheafComplex::Restrictions given;
  if (j.contains("restrictions"))
    for (const auto& [key, maps] : j.at("restrictions").items()) {
      auto cut = key.find("<=");
      if (cut == std::string::npos) throw ParseError("restriction keys look like \"a<=b\"");
      const std::size_t x = s.index(key.substr(0, cut)), y = s.index(key.substr(cut + 2));
      if (!maps.is_array() || maps.size() != static_cast<std::size_t>(hi - lo + 1))
        throw ShapeMismatch("restriction " + key + " needs one matrix per degree " + std::to_string(lo) + " .. " +
                            std::to_string(hi));
      std::map<int, Matrix> m;
      for (int i = lo; i <= hi; ++i)
        m.emplace(i, matrix_from_json(r, maps[i - lo], stalks[y].rank(i), stalks[x].rank(i)));
      given.emplace(std::make_pair(x, y), std::move(m));
    }
  return SheafComplex(std::move(s), std::move(stalks), given);
}

SheafComplex instance_from_json(const Json& j) {
  if (j.is_object() && j.contains("stalks")) return sheaf_from_json(j);
  return SheafComplex::constant(PosetSite::builtin("point"), complex_from_json(j));
}

Json instance_to_json(const SheafComplex& f) {
  if (f.site().size() == 1) return complex_to_json(f.stalk(0));
  return sheaf_to_json(f);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace decalage
