#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace latnab {

// Sections: 1 holds BW16 with its overlattices and the one-dimensional
// Lambda1 and Z; section n >= 2 holds Lambda_n and its overlattices.
inline constexpr int kFirstSection = 1;
inline constexpr int kLastSection = 8;

struct ReproduceOptions {
  // Fingerprint classification and pairwise design checks only up to
  // kDefaultPairwiseBudget points.
  bool fast = false;
  // Design strength of larger shells through the tensor-moment path.
  bool extended = false;
};

struct CellDiff {
  std::string table;  // e.g. "census:Lambda4"
  std::string cell;
  std::string expected;
  std::string computed;
  std::string note;
};

struct TableCheck {
  std::string table;
  std::string source;
  std::string status;  // "pass", "fail", "typo", "partial"
};

struct ReproduceReport {
  int section = 0;
  std::vector<TableCheck> tables;
  std::vector<CellDiff> diffs;
  std::vector<CellDiff> known_typo_flags;
  std::vector<std::string> skipped;
  bool passed() const { return diffs.empty(); }
};

ReproduceReport reproduce_section(int section, const ReproduceOptions& options = {});
std::string report_json(const ReproduceReport& r, int indent = 2);

// Class names of the reference census of `lattice`, empty if it has none.
std::vector<std::string> reference_census_names(std::string_view lattice);

// The embedded reference tables as JSON text.
std::string_view reference_tables_json();

}  // namespace latnab
