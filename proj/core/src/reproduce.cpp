#include "latnab/reproduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "latnab/catalog.hpp"
#include "latnab/designs.hpp"
#include "latnab/overlattice.hpp"
#include "latnab/quotient.hpp"
#include "latnab/shells.hpp"

namespace latnab {
namespace detail {
std::string_view reference_tables_text();
}

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kExtendedTensorBudget = 600'000;

const Json& fixtures() {
  static const Json doc = Json::parse(detail::reference_tables_text());
  return doc;
}

std::string row_text(const ClassTableRow& r) {
  return (r.paired ? std::to_string(r.count) + "x2" : std::to_string(r.count)) + " " + to_string(r.norm) + " " +
         std::to_string(r.order);
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

class Section {
 public:
  Section(int id, const ReproduceOptions& options) : options_(options) { report_.section = id; }

  ReproduceReport run() {
    const Json& s = fixtures()["sections"][std::to_string(report_.section)];
    determinants();
    for (const auto& t : s["class_tables"]) class_table_check(t);
    std::map<std::string, std::vector<std::string>> census_names;
    for (const auto& t : s["census"]) census_check(t, census_names);
    for (const auto& t : s["name_lists"]) name_list_check(t, census_names);
    for (const auto& t : s["theta"]) theta_check(t);
    for (const auto& t : s["designs"]) design_check(t);
    return std::move(report_);
  }

 private:
  const Json* typo(const std::string& kind, const std::string& lattice, const std::string& cell) const {
    for (const auto& e : fixtures()["known_typos"])
      if (e["section"] == report_.section && e["kind"] == kind && e["lattice"] == lattice && e["cell"] == cell)
        return &e;
    return nullptr;
  }

  void begin(std::string table, std::string source) {
    report_.tables.push_back({std::move(table), std::move(source), "pass"});
  }
  TableCheck& current() { return report_.tables.back(); }

  void compare(const std::string& kind, const std::string& lattice, const std::string& cell,
               const std::string& expected, const std::string& computed) {
    if (expected == computed) return;
    CellDiff d{current().table, cell, expected, computed, {}};
    if (const Json* t = typo(kind, lattice, cell)) {
      d.note = (*t)["note"].get<std::string>();
      report_.known_typo_flags.push_back(std::move(d));
      if (current().status == "pass") current().status = "typo";
    } else {
      report_.diffs.push_back(std::move(d));
      current().status = "fail";
    }
  }

  void skip(const std::string& what) {
    report_.skipped.push_back(current().table + " " + what);
    if (current().status == "pass") current().status = "partial";
  }

  const Lattice& lattice(const std::string& name) {
    auto it = lattices_.find(name);
    if (it == lattices_.end()) it = lattices_.emplace(name, catalog(name)).first;
    return it->second;
  }

  void determinants() {
    const Json& d = fixtures()["determinants"];
    std::string name = "Lambda" + std::to_string(report_.section);
    begin("determinant:" + name, d["source"]);
    compare("determinant", name, "det", d["values"][name], to_string(lattice(name).determinant()));
  }

  void class_table_check(const Json& t) {
    std::string name = t["lattice"];
    begin("classes:" + name, t["source"]);
    auto rows = class_table(lattice(name));
    std::vector<std::string> expected, computed;
    for (const auto& r : t["rows"]) {
      ClassTableRow e{r["count"], r["paired"], parse_rational(r["norm"].get<std::string>()), r["order"]};
      expected.push_back(row_text(e));
    }
    for (const auto& r : rows) computed.push_back(row_text(r));
    compare("class_table", name, "rows", std::to_string(expected.size()), std::to_string(computed.size()));
    for (std::size_t i = 0; i < std::max(expected.size(), computed.size()); ++i)
      compare("class_table", name, "row " + std::to_string(i + 1), i < expected.size() ? expected[i] : "-",
              i < computed.size() ? computed[i] : "-");
  }

  void census_check(const Json& t, std::map<std::string, std::vector<std::string>>& names_out) {
    std::string name = t["lattice"];
    begin("census:" + name, t["source"]);
    OverlatticeCensus census = integral_overlattices(lattice(name));
    compare("census", name, "total", std::to_string(t["total"].get<std::uint64_t>()), std::to_string(census.total()));

    std::vector<CatalogCandidate> candidates;
    for (const auto& b : t["buckets"]) candidates.push_back({b["name"], lattice(b["name"])});
    ClassifyPolicy policy = options_.fast ? ClassifyPolicy::Fast : ClassifyPolicy::Auto;
    try {
      census = classify_census(std::move(census), policy, candidates);
    } catch (const Error& e) {
      compare("census", name, "classification", "complete", e.what());
      return;
    }
    std::map<std::string, std::uint64_t> counts;
    std::vector<std::string>& found = names_out[name];
    for (std::size_t i = 0; i < census.buckets().size(); ++i) {
      const auto& b = census.buckets()[i];
      if (!b.name) {
        compare("census", name, "bucket " + std::to_string(i + 1), "named", "unnamed, " + std::to_string(b.count));
        found.push_back("?");
        continue;
      }
      counts[*b.name] += b.count;
      found.push_back(*b.name);
    }
    for (const auto& b : t["buckets"]) {
      std::string bn = b["name"];
      compare("census", name, bn, std::to_string(b["count"].get<std::uint64_t>()), std::to_string(counts[bn]));
    }
  }

  void name_list_check(const Json& t, const std::map<std::string, std::vector<std::string>>& census_names) {
    std::string name = t["lattice"];
    begin("names:" + name, t["source"]);
    auto it = census_names.find(name);
    if (it == census_names.end()) {
      skip("(no classified census)");
      return;
    }
    std::vector<std::string> printed;
    for (const auto& n : t["names"]) printed.push_back(n);
    std::vector<std::string> computed = it->second;
    std::sort(printed.begin(), printed.end());
    std::sort(computed.begin(), computed.end());
    compare("name_list", name, "stated_count", std::to_string(t["stated_count"].get<std::size_t>()),
            std::to_string(computed.size()));
    compare("name_list", name, "names", join(printed), join(computed));
  }

  void theta_check(const Json& t) {
    std::string name = t["lattice"];
    begin("theta:" + name, t["source"]);
    Rational reach = parse_rational(t["max_norm"].get<std::string>());
    ThetaSeries computed = theta(lattice(name), reach);
    std::map<Rational, std::string> expected;
    for (const auto& [k, v] : t["coefficients"].items()) expected[parse_rational(k)] = std::to_string(v.get<std::uint64_t>());
    std::set<Rational> norms;
    for (const auto& [k, v] : expected) norms.insert(k);
    for (const auto& [k, v] : computed.coefficients)
      if (v) norms.insert(k);
    for (const auto& k : norms) {
      auto e = expected.find(k);
      compare("theta", name, "q^" + to_string(k), e == expected.end() ? "0" : e->second, std::to_string(computed.at(k)));
    }
  }

  void design_check(const Json& t) {
    std::string name = t["lattice"];
    begin("designs:" + name, t["source"]);
    const Lattice& l = lattice(name);
    for (const auto& row : t["rows"]) {
      std::string m = row["m"];
      Rational norm = parse_rational(m);
      std::string cell = "m=" + m;
      DesignReport r;
      try {
        r = configuration(l, norm, kDefaultTCap, kDefaultPairwiseBudget, options_.extended,
                          options_.extended ? kExtendedTensorBudget : 0);
      } catch (const BudgetExceeded&) {
        skip(cell + " (shell beyond the " + std::string(options_.extended ? "tensor" : "pairwise") + " budget)");
        continue;
      }
      compare("design", name, cell + " d", std::to_string(row["d"].get<std::size_t>()), std::to_string(r.d));
      compare("design", name, cell + " n", std::to_string(row["n"].get<std::uint64_t>()), std::to_string(r.n));
      if (r.distances.exceeded)
        skip(cell + " s (distance set beyond the pairwise budget)");
      else
        compare("design", name, cell + " s", std::to_string(row["s"].get<std::size_t>()), std::to_string(r.distances.s()));
      compare("design", name, cell + " t", row["t"], r.t.str());
    }
  }

  ReproduceOptions options_;
  ReproduceReport report_;
  std::map<std::string, Lattice> lattices_;
};

Json diff_json(const CellDiff& d) {
  Json j = {{"table", d.table}, {"cell", d.cell}, {"expected", d.expected}, {"computed", d.computed}};
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

}  // namespace

ReproduceReport reproduce_section(int section, const ReproduceOptions& options) {
  if (section < kFirstSection || section > kLastSection) throw DomainError("section must be between 1 and 8");
  return Section(section, options).run();
}

std::string report_json(const ReproduceReport& r, int indent) {
  Json j = Json::object();
  j["section"] = r.section;
  j["passed"] = r.passed();
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back({{"table", t.table}, {"source", t.source}, {"status", t.status}});
  j["tables"] = std::move(tables);
  j["diffs"] = Json::array();
  for (const auto& d : r.diffs) j["diffs"].push_back(diff_json(d));
  j["known_typo_flags"] = Json::array();
  for (const auto& d : r.known_typo_flags) j["known_typo_flags"].push_back(diff_json(d));
  j["skipped"] = r.skipped;
  return j.dump(indent) + "\n";
}

std::vector<std::string> reference_census_names(std::string_view lattice) {
  std::vector<std::string> out;
  for (const auto& [id, s] : fixtures()["sections"].items())
    for (const auto& t : s["census"])
      if (t["lattice"] == lattice)
        for (const auto& b : t["buckets"]) out.push_back(b["name"]);
  return out;
}

std::string_view reference_tables_json() { return detail::reference_tables_text(); }

}  // namespace latnab
