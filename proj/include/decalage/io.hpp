#pragma once

#include <string>

#include "decalage/report.hpp"
#include "decalage/site.hpp"

namespace decalage {

/// {"kind": "z" | "fp-poly" | "q-poly" | "fp" | "q", "xi": "3" | "t-2", "p": 5}
Json ring_to_json(const Ring& r);
Ring ring_from_json(const Json& j);
/// Ring from command-line style specs: "z", "fp-poly", "fp-poly:7", "q-poly",
/// with xi given as text ("3", "t", "t+1"). Empty xi picks 3 for z and t otherwise.
Ring ring_from_spec(const std::string& kind, const std::string& xi);

/// Row-major array of element strings.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Ring& r, const Json& j, std::size_t rows, std::size_t cols);

/// {"ring", "lo", "hi", "ranks", "differentials"}; the differential in degree i
/// maps degree i to i + 1, so there are hi - lo of them.
Json complex_to_json(const FreeComplex& k);
FreeComplex complex_from_json(const Json& j);
FreeComplex complex_from_json(const Json& j, const Ring& r);

/// {"elements": [...], "leq": [[a, b], ...]} or the string "builtin:<name>".
Json site_to_json(const PosetSite& s);
PosetSite site_from_json(const Json& j);
/// "builtin:<name>" or a path to a JSON site file.
PosetSite site_from_spec(const std::string& spec);

/// {"ring", "site", "stalks": {name: complex}, "restrictions": {"a<=b": [matrix
/// for each degree lo .. hi]}}; only covering relations are written.
Json sheaf_to_json(const SheafComplex& f);
SheafComplex sheaf_from_json(const Json& j);

/// A bare complex is read as a sheaf on the one-point site.
SheafComplex instance_from_json(const Json& j);
Json instance_to_json(const SheafComplex& f);

Json read_json_file(const std::string& path);

}  // namespace decalage
