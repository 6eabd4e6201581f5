#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "latnab/designs.hpp"
#include "latnab/isometry.hpp"
#include "latnab/lattice.hpp"
#include "latnab/overlattice.hpp"
#include "latnab/quotient.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"

namespace latnab {

// Lattice files: {"name"?, "dim", "basis": [["p/q", ...], ...]} with an
// optional "gram" for gram-only lattices and "form" for any other
// non-Euclidean ambient. Rationals may also be given as JSON integers.
Lattice parse_lattice(std::string_view json_text);
std::string lattice_json(const Lattice& l, int indent = 2);
Lattice read_lattice(const std::filesystem::path& path);
void write_lattice(const std::filesystem::path& path, const Lattice& l);

// A catalog expression, or a path to a lattice file when no such name exists
// and the argument names a readable file.
Lattice resolve_lattice(std::string_view name_or_path);

// Report serializers; all output is deterministic.
std::string theta_json(const ThetaSeries& t, int indent = 2);
std::string class_table_json(const std::vector<ClassTableRow>& rows, int indent = 2);
std::string census_json(const OverlatticeCensus& c, int indent = 2);
std::string fingerprint_json(const Fingerprint& f, int indent = 2);
std::string verdict_json(const IsometryVerdict& v, int indent = 2);
std::string design_json(const DesignReport& r, int indent = 2);
std::string venkov_json(const VenkovResult& r, int indent = 2);
// Basis, Gram, determinant, parity, minimum and kissing number.
std::string summary_json(const Lattice& l, int indent = 2);
std::string shell_json(const Lattice& l, const Shell& s, bool with_vectors, int indent = 2);

}  // namespace latnab
