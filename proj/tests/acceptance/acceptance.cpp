// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "latnab/catalog.hpp"
#include "latnab/designs.hpp"
#include "latnab/isometry.hpp"
#include "latnab/overlattice.hpp"
#include "latnab/quotient.hpp"
#include "latnab/reproduce.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace latnab;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << detail << std::endl;
  if (!ok) ++failures;
}

// Runs `body`, which fills `detail` and returns pass/fail; errors count as failures.
void criterion(const std::string& id, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " exception: " << e.what();
  }
  detail << " [" << std::fixed;
  detail.precision(1);
  detail << seconds_since(t0) << " s]";
  line(id, ok, detail.str());
}

std::vector<ReproduceReport> reports;

// Status of every reference table whose id starts with `prefix`.
bool tables_ok(const std::string& prefix, bool allow_typos, std::ostringstream& d) {
  int checked = 0, bad = 0;
  for (const auto& r : reports)
    for (const auto& t : r.tables) {
      if (t.table.rfind(prefix, 0) != 0) continue;
      ++checked;
      bool ok = t.status == "pass" || t.status == "partial" || (allow_typos && t.status == "typo");
      if (!ok) {
        ++bad;
        d << " " << t.table << "=" << t.status;
        for (const auto& diff : r.diffs)
          if (diff.table == t.table) d << " (" << diff.cell << ": " << diff.expected << " vs " << diff.computed << ")";
        for (const auto& diff : r.known_typo_flags)
          if (diff.table == t.table && !allow_typos)
            d << " (" << diff.cell << ": printed " << diff.expected << ", computed " << diff.computed << ")";
      }
    }
  d << " tables=" << checked << " mismatched=" << bad;
  return checked > 0 && bad == 0;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  for (int s = kFirstSection; s <= kLastSection; ++s) {
    auto t0 = std::chrono::steady_clock::now();
    reports.push_back(reproduce_section(s, ReproduceOptions{true, true}));
    std::cout << "      reference tables, section " << s << ": " << reports.back().diffs.size() << " diffs, "
              << reports.back().known_typo_flags.size() << " typo flags, " << reports.back().skipped.size()
              << " skipped [" << static_cast<int>(seconds_since(t0)) << " s]" << std::endl;
  }

  criterion("1 determinants", [](auto& d) {
    auto t0 = std::chrono::steady_clock::now();
    const long expected[] = {4, 12, 32, 64, 128, 192, 256, 256};
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
      Rational det = catalog("Lambda" + std::to_string(n)).determinant();
      d << " " << to_string(det);
      ok = ok && det == expected[n - 1];
    }
    return ok && seconds_since(t0) < 1;
  });

  criterion("2 class tables", [](auto& d) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<ClassTableRow> l5 = class_table(catalog("Lambda5"));
    std::uint64_t classes = 0;
    for (const auto& r : l5) classes += r.classes();
    std::vector<ClassTableRow> bw = class_table(catalog("BW16"));
    bool split = bw.size() == 3 && bw[0].count == 1 && bw[1].count == 135 && bw[2].count == 120;
    d << " Lambda5 classes=" << classes << " BW16 split=" << (split ? "1/135/120" : "other");
    bool timed = seconds_since(t0) < 30;
    return tables_ok("classes:", false, d) && classes == 128 && split && timed;
  });

  criterion("3 census totals", [](auto& d) {
    const std::pair<const char*, std::uint64_t> stated[] = {
        {"Lambda2", 4},    {"Lambda3", 12},    {"Lambda4", 38},     {"Lambda5", 122},
        {"Lambda6", 514},  {"Lambda7", 2981},  {"Lambda8", 19381},  {"BW16", 19381}};
    bool ok = true;
    for (auto [name, total] : stated) {
      auto t0 = std::chrono::steady_clock::now();
      std::uint64_t got = integral_overlattices(catalog(name)).total();
      double secs = seconds_since(t0);
      d << " " << name << "=" << got;
      if (got != total) d << "(stated " << total << ")";
      ok = ok && got == total && secs < 600;
    }
    return ok;
  });

  criterion("4 classified census buckets", [](auto& d) { return tables_ok("census:", false, d); });

  criterion("5 theta series", [](auto& d) { return tables_ok("theta:", false, d); });

  criterion("6 (d,n,s,t) tables", [](auto& d) {
    bool ok = tables_ok("designs:", true, d);
    std::size_t typos = 0, skipped = 0;
    for (const auto& r : reports) {
      for (const auto& f : r.known_typo_flags)
        if (f.table.rfind("designs:", 0) == 0) ++typos;
      for (const auto& s : r.skipped)
        if (s.rfind("designs:", 0) == 0) ++skipped;
    }
    DesignReport l8 = configuration(catalog("Lambda8"), 4);
    DesignReport z7 = configuration(catalog("Z7"), 3);
    DesignReport bw = configuration(catalog("BW16"), 4);
    auto tuple = [](const DesignReport& r) {
      return "(" + std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.distances.s()) + "," +
             r.t.str() + ")";
    };
    d << " flagged=" << typos << " skipped=" << skipped << " Lambda8 " << tuple(l8) << " Z7 " << tuple(z7) << " BW16 "
      << tuple(bw);
    return ok && tuple(l8) == "(8,240,4,7)" && tuple(z7) == "(7,280,6,5)" && tuple(bw) == "(16,4320,6,7)";
  });

  criterion("7 Venkov projection of Lambda8", [](auto& d) {
    Lattice l = catalog("Lambda8");
    Shell s = shell(l, 4);
    std::optional<Lattice> first;
    bool ok = s.count == 240;
    std::size_t projected = 0;
    for (std::size_t i = 0; i < s.count; ++i) {
      VenkovResult r = venkov_project(l, l.combination(s.coefficients(i)));
      ++projected;
      ok = ok && r.projected.determinant() == 64 && minimum(r.projected) == 3 && kissing(r.projected) == 56;
      if (!first)
        first = r.projected;
      else
        ok = ok && is_isometric(*first, r.projected).status == IsometryStatus::Isometric;
    }
    ThetaSeries t = theta(*first, 7);
    bool prefix = t.coefficients == std::map<Rational, std::uint64_t>{{0, 1}, {3, 56}, {4, 126}, {7, 576}};
    bool o7 = is_isometric(*first, catalog("O7")).status == IsometryStatus::Isometric;
    d << " projected=" << projected << " det=64 min=3 kissing=56 theta prefix " << (prefix ? "ok" : "differs")
      << " isometric to O7=" << (o7 ? "yes" : "no");
    return ok && prefix && o7 && projected == 240;
  });

  criterion("8a O16 = <BW16, f1>", [](auto& d) {
    Lattice bw = catalog("BW16");
    Lattice n = adjoin(bw, {glue_vector("f1")});
    Integer idx = index_in(bw, n);
    bool eq = equals(n, catalog("O16"));
    d << " index=" << idx.get_str() << " equal=" << (eq ? "yes" : "no");
    return eq && idx == 2;
  });

  criterion("8b <D8+D8, f0, f1> isometric to E8+E8", [](auto& d) {
    Lattice glued = catalog("D8pow2(f0,f1)");
    IsometryVerdict v = is_isometric(glued, catalog("E8perpE8"), IsometryPolicy::Strict);
    d << " status=" << to_string(v.status) << " witness=" << v.witness << " parity=" << (is_even(glued) ? "even" : "odd")
      << " det=" << to_string(glued.determinant());
    return v.status == IsometryStatus::Isometric;
  });

  criterion("8c D16+ vs E8+E8", [](auto& d) {
    Lattice a = catalog("D16plus"), b = catalog("E8perpE8");
    bool same_theta = theta(a, 8).coefficients == theta(b, 8).coefficients;
    IsometryVerdict v = is_isometric(a, b);
    d << " theta through q^8 " << (same_theta ? "identical" : "differs") << " status=" << to_string(v.status)
      << " witness=" << v.witness;
    return same_theta && v.status == IsometryStatus::NotIsometric;
  });

  criterion("9 property suites", [](auto& d) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    int enum_ok = 0;
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t n = 1 + trial % 4;
      RationalMatrix g = oracle::random_gram(rng, n);
      Rational bound = oracle::min_diagonal(g) * (1 + trial % 2);
      ShortVectors sv = short_vectors(g, bound);
      std::set<std::pair<Rational, std::vector<std::int64_t>>> got;
      for (std::size_t i = 0; i < sv.size(); ++i)
        got.insert({ratio(Integer(static_cast<long>(sv.scaled_norms[i])), Integer(static_cast<long>(sv.scale))),
                    std::vector<std::int64_t>(sv.vector(i), sv.vector(i) + n)});
      enum_ok += got == oracle::box_vectors(g, bound);
    }

    const char* names[] = {"Lambda3", "Lambda5", "Lambda6", "Lambda7", "Lambda8", "O7", "D4pow2", "E7"};
    std::map<std::string, Fingerprint> base;
    int fp_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::string name = names[trial % std::size(names)];
      Lattice l = catalog(name);
      if (!base.count(name)) base[name] = fingerprint(l);
      fp_ok += fingerprint(change_basis(l, oracle::random_unimodular(rng, l.dim(), 20))) == base[name];
    }

    int shells = 0, design_ok = 0;
    std::vector<std::string> names_all = reference::reference_lattice_names();
    for (const auto& name : names_all) {
      Lattice l = catalog(name);
      ThetaSeries t = theta(l, l.dim() > 8 ? 5 : 12);
      for (const auto& [m, count] : t.coefficients) {
        if (m == 0 || count > 10'000) continue;
        PointSet x = points(l, shell(l, m));
        ++shells;
        design_ok += design_strength(x, kDefaultTCap, DesignMethod::Pairwise) ==
                     design_strength(x, kDefaultTCap, DesignMethod::TensorMoment);
      }
    }

    int dual_ok = 0;
    for (const auto& name : names_all) {
      Lattice l = catalog(name);
      dual_ok += equals(dual(dual(l)), l);
    }
    double secs = seconds_since(t0);
    d << " enumeration " << enum_ok << "/50, fingerprint " << fp_ok << "/100, pairwise=tensor " << design_ok << "/"
      << shells << ", dual(dual) " << dual_ok << "/" << names_all.size();
    return enum_ok == 50 && fp_ok == 100 && design_ok == shells && dual_ok == static_cast<int>(names_all.size()) &&
           secs < 300;
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " criteria failing, total "
            << static_cast<int>(seconds_since(start)) << " s" << std::endl;
  return failures ? 1 : 0;
}
