#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "latnab/reproduce.hpp"

namespace latnab::reference {

inline const nlohmann::json& tables() {
  static const nlohmann::json j = nlohmann::json::parse(reference_tables_json());
  return j;
}

// Every lattice named by a theta listing or census of the reference tables.
inline std::vector<std::string> reference_lattice_names() {
  std::set<std::string> seen;
  std::vector<std::string> out;
  auto add = [&](const std::string& n) {
    if (seen.insert(n).second) out.push_back(n);
  };
  for (const auto& [id, s] : tables()["sections"].items()) {
    for (const auto& t : s["theta"]) add(t["lattice"]);
    for (const auto& c : s["census"]) {
      add(c["lattice"]);
      for (const auto& b : c["buckets"]) add(b["name"]);
    }
  }
  return out;
}

}  // namespace latnab::reference
