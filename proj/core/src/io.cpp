#include "latnab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latnab/catalog.hpp"

namespace latnab {
namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational as \"p\", \"p/q\" or an integer");
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& q : m.row(i)) row.push_back(rational_json(q));
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix matrix_from(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array of rows");
  std::vector<RationalVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw DomainError(std::string(what) + " rows must be arrays");
    RationalVector row;
    for (const auto& x : r) row.push_back(rational_from(x));
    rows.push_back(std::move(row));
  }
  return RationalMatrix::from_rows(rows);
}

Json vector_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

std::string dump(const Json& j, int indent) { return j.dump(indent) + "\n"; }

Json theta_map(const std::map<Rational, std::uint64_t>& m) {
  Json out = Json::object();
  for (const auto& [norm, count] : m) out[to_string(norm)] = count;
  return out;
}

Json fingerprint_value(const Fingerprint& f) {
  Json roots = Json::array();
  for (const auto& r : f.roots) roots.push_back({{"rank", r.rank}, {"count", r.count}});
  return {{"dim", f.dim},
          {"determinant", rational_json(f.determinant)},
          {"parity", to_string(f.parity)},
          {"theta_bound", rational_json(f.theta_bound)},
          {"theta", theta_map(f.theta)},
          {"roots", roots},
          {"decomposable", f.decomposable}};
}

Json lattice_value(const Lattice& l) {
  Json j = Json::object();
  if (!l.name().empty()) j["name"] = l.name();
  j["dim"] = l.dim();
  j["basis"] = matrix_json(l.basis());
  if (l.is_gram_only()) {
    if (l.basis() == RationalMatrix::identity(l.dim()))
      j["gram"] = matrix_json(l.gram());
    else
      j["form"] = matrix_json(l.ambient()->form);
  }
  return j;
}

}  // namespace

Lattice parse_lattice(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("lattice file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("lattice file must be a JSON object");
  std::string name = j.value("name", std::string());
  if (j.contains("gram") && !j.contains("basis")) return Lattice::gram_only(matrix_from(j["gram"], "gram"), name);
  if (!j.contains("basis")) throw DomainError("lattice file needs \"basis\" or \"gram\"");
  RationalMatrix basis = matrix_from(j["basis"], "basis");
  if (j.contains("dim") && j["dim"].get<std::size_t>() != basis.rows())
    throw DomainError("\"dim\" does not match the basis");
  if (j.contains("gram")) {
    RationalMatrix gram = matrix_from(j["gram"], "gram");
    if (basis != RationalMatrix::identity(gram.rows()))
      throw DomainError("a gram-only lattice has the identity basis");
    return Lattice::gram_only(gram, name);
  }
  if (j.contains("form")) {
    RationalMatrix form = matrix_from(j["form"], "form");
    if (!basis.is_square() || basis.rows() != form.rows()) throw DomainError("basis and form sizes differ");
    return Lattice(form_ambient(form), basis, name);
  }
  if (!basis.is_square()) throw DomainError("basis must be square");
  return Lattice::from_basis(basis, name);
}

std::string lattice_json(const Lattice& l, int indent) { return dump(lattice_value(l), indent); }

Lattice read_lattice(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str());
}

void write_lattice(const std::filesystem::path& path, const Lattice& l) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << lattice_json(l);
}

Lattice resolve_lattice(std::string_view arg) {
  std::filesystem::path p{std::string(arg)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(p, ec)) return read_lattice(p);
  return catalog(arg);
}

std::string theta_json(const ThetaSeries& t, int indent) { return dump(theta_map(t.coefficients), indent); }

std::string class_table_json(const std::vector<ClassTableRow>& rows, int indent) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"count", r.count}, {"paired", r.paired}, {"norm", rational_json(r.norm)}, {"order", r.order}});
  return dump(out, indent);
}

std::string census_json(const OverlatticeCensus& c, int indent) {
  Json j = Json::object();
  j["base"] = c.base().name();
  j["total"] = c.total();
  j["classified"] = c.classified();
  if (c.classified()) {
    j["policy"] = to_string(c.policy());
    Json buckets = Json::array();
    for (const auto& b : c.buckets()) {
      Json e = Json::object();
      e["name"] = b.name ? Json(*b.name) : Json(nullptr);
      e["count"] = b.count;
      e["fingerprint"] = fingerprint_value(b.fingerprint);
      buckets.push_back(std::move(e));
    }
    j["buckets"] = std::move(buckets);
  }
  return dump(j, indent);
}

std::string fingerprint_json(const Fingerprint& f, int indent) { return dump(fingerprint_value(f), indent); }

std::string verdict_json(const IsometryVerdict& v, int indent) {
  Json j = Json::object();
  j["status"] = to_string(v.status);
  j["certificate"] = v.certificate ? matrix_json(*v.certificate) : Json(nullptr);
  j["witness"] = v.witness;
  return dump(j, indent);
}

std::string design_json(const DesignReport& r, int indent) {
  Json j = Json::object();
  j["m"] = rational_json(r.norm);
  j["d"] = r.d;
  j["n"] = r.n;
  if (r.distances.exceeded) {
    j["s"] = nullptr;
    j["exceeded"] = true;
  } else {
    j["s"] = r.distances.s();
    Json raw = Json::array(), normalized = Json::array();
    for (const auto& q : r.distances.raw) raw.push_back(rational_json(q));
    for (const auto& q : r.distances.normalized) normalized.push_back(rational_json(q));
    j["distances"] = std::move(raw);
    j["normalized_distances"] = std::move(normalized);
  }
  j["t"] = r.t.str();
  j["method"] = to_string(r.method);
  return dump(j, indent);
}

std::string venkov_json(const VenkovResult& r, int indent) {
  const Lattice& p = r.projected;
  Json j = Json::object();
  j["assumption"] = r.assumption;
  j["det_ratio"] = rational_json(r.det_ratio);
  j["determinant"] = rational_json(p.determinant());
  j["minimum"] = rational_json(minimum(p));
  j["kissing"] = kissing(p);
  j["lattice"] = lattice_value(p);
  return dump(j, indent);
}

std::string summary_json(const Lattice& l, int indent) {
  Json j = lattice_value(l);
  j["gram"] = matrix_json(l.gram());
  j["determinant"] = rational_json(l.determinant());
  j["parity"] = is_even(l) ? "even" : is_integral(l) ? "odd" : "non-integral";
  j["minimum"] = rational_json(minimum(l));
  j["kissing"] = kissing(l);
  return dump(j, indent);
}

std::string shell_json(const Lattice& l, const Shell& s, bool with_vectors, int indent) {
  Json j = Json::object();
  j["m"] = rational_json(s.norm);
  j["count"] = s.count;
  if (with_vectors) {
    if (!s.materialized) throw BudgetExceeded("shell vectors were not materialized");
    j["coordinates"] = l.is_gram_only() ? "basis" : "ambient";
    Json vs = Json::array();
    for (std::size_t i = 0; i < s.half_size(); ++i) {
      auto c = s.coefficients(i);
      RationalVector v = l.is_gram_only() ? RationalVector(c.begin(), c.end()) : l.combination(c);
      vs.push_back(vector_json(v));
      for (auto& q : v) q = -q;
      vs.push_back(vector_json(v));
    }
    j["vectors"] = std::move(vs);
  }
  return dump(j, indent);
}

}  // namespace latnab
