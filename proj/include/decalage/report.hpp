#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace decalage {

using Json = nlohmann::ordered_json;

/// Outcome of one executable check. `data` carries the computed values so a
/// report can be audited without rerunning anything.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string i) : id(std::move(i)) {}

  std::string id;
  bool pass = true;
  std::string witness;  // first failure, empty on success
  Json data = Json::object();

  void fail(const std::string& why) {
    if (pass) witness = why;
    pass = false;
  }
};

inline Json to_json(const CheckResult& c) {
  Json j;
  j["id"] = c.id;
  j["pass"] = c.pass;
  if (!c.pass) j["witness"] = c.witness;
  j["data"] = c.data;
  return j;
}

}  // namespace decalage
