#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace seqhyper {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  Tri status = Tri::kUnknown;
  Json witness = Json::object();
};

// Structured report: {check, status: pass|fail|unknown-at-depth, witness}.
struct Report {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, Tri status, Json witness = Json::object()) {
    checks.push_back(Check{std::move(name), status, std::move(witness)});
  }

  // fail if any check fails, otherwise unknown if any is unknown.
  Tri overall() const {
    Tri out = Tri::kTrue;
    for (const auto& c : checks) {
      if (c.status == Tri::kFalse) return Tri::kFalse;
      if (c.status == Tri::kUnknown) out = Tri::kUnknown;
    }
    return out;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  Json to_json() const {
    Json j;
    j["title"] = title;
    j["status"] = tri_name(overall());
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json e;
      e["check"] = c.name;
      e["status"] = tri_name(c.status);
      e["witness"] = c.witness;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
  }
};

}  // namespace seqhyper
