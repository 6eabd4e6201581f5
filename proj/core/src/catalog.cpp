#include "latnab/catalog.hpp"

#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <regex>

#include "latnab/quotient.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"

namespace latnab {

namespace {

using Rows = std::vector<std::vector<long>>;

RationalMatrix int_rows(const Rows& rows, const Rational& factor = 1) {
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Rational(rows[i][j]) * factor;
  return m;
}

LatticeVector unit(std::size_t dim, std::size_t i, const Rational& value = 1) {
  LatticeVector v(dim);
  v[i] = value;
  return v;
}

LatticeVector half_vector(const std::vector<long>& entries) {
  LatticeVector v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v[i] = ratio(entries[i], 2);
  return v;
}

// eps_a + eps_b + eps_c + eps_d in R^16 (1-based).
LatticeVector four(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  LatticeVector v(16);
  for (auto i : {a, b, c, d}) v[i - 1] = 1;
  return v;
}

RationalMatrix cartan_a(std::size_t n) {
  RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

RationalMatrix cartan_e(std::size_t n) {
  // Chain 1-3-4-5-...-n with node 2 attached to node 4 (Bourbaki labels).
  RationalMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  auto link = [&](std::size_t a, std::size_t b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
  link(1, 3);
  link(2, 4);
  for (std::size_t k = 3; k < n; ++k) link(k, k + 1);
  return g;
}

// D_n basis: eps_i - eps_{i+1} (i < n), eps_{n-1} + eps_n, placed at offset.
void put_dn(RationalMatrix& b, std::size_t offset, std::size_t n) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    b(offset + i, offset + i) = 1;
    b(offset + i, offset + i + 1) = -1;
  }
  b(offset + n - 1, offset + n - 2) = 1;
  b(offset + n - 1, offset + n - 1) = 1;
}

Lattice dn_power(std::size_t n, std::size_t k) {
  RationalMatrix b(n * k, n * k);
  for (std::size_t j = 0; j < k; ++j) put_dn(b, j * n, n);
  return Lattice::from_basis(b);
}

Lattice a1_power(std::size_t k) {
  if (k == 0 || k % 2) throw DomainError("A1pow<k> needs an even k");
  RationalMatrix b(k, k);
  for (std::size_t i = 0; i < k; i += 2) {
    b(i, i) = 1;
    b(i, i + 1) = -1;
    b(i + 1, i) = 1;
    b(i + 1, i + 1) = 1;
  }
  return Lattice::from_basis(b);
}

Lattice scaled_identity(std::size_t n, long factor) {
  return Lattice::from_basis(scaled(RationalMatrix::identity(n), Rational(factor)));
}

const Rows kBw16Rows = {
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 2, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {2, 2, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 2, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0},   {2, 0, 2, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0},
    {2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0},   {2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0},
    {2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0},   {2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0},
    {2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2},   {-1, 1, 1, 1, 1, 1, 1, 1, -1, 1, 1, 1, 1, 1, 1, 1},
};

const Rows kBw16AltRows = {
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0},
    {0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0},
    {0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
};

std::vector<LatticeVector> g_vectors(std::size_t count) {
  std::vector<LatticeVector> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(glue_vector("g" + std::to_string(i)));
  return out;
}

Lattice with(const Lattice& base, std::vector<LatticeVector> extra, const std::string& name) {
  return adjoin(base, extra).named(name);
}

Lattice build_base(const std::string& name);

struct Cache {
  std::mutex mutex;
  std::map<std::string, Lattice> bases;
  bool have_o = false;
  LatticeVector lambda7_o;
};

Cache& cache() {
  static Cache c;
  return c;
}

Lattice base(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(cache().mutex);
    auto it = cache().bases.find(name);
    if (it != cache().bases.end()) return it->second;
  }
  Lattice l = build_base(name).named(name);
  std::lock_guard<std::mutex> lock(cache().mutex);
  cache().bases.emplace(name, l);
  return l;
}

// The leader of the unique class of Lambda7#/Lambda7 with leader norm 3.
LatticeVector lambda7_glue() {
  {
    std::lock_guard<std::mutex> lock(cache().mutex);
    if (cache().have_o) return cache().lambda7_o;
  }
  Lattice l7 = base("Lambda7");
  LatticeVector found;
  std::size_t hits = 0;
  for (const auto& c : coset_classes(l7))
    if (c.leader_norm == 3) {
      if (!hits) found = c.leader;
      ++hits;
    }
  if (hits != 1) throw Error("Lambda7 does not have exactly one class of leader norm 3");
  std::lock_guard<std::mutex> lock(cache().mutex);
  cache().lambda7_o = found;
  cache().have_o = true;
  return found;
}

bool parse_suffix(const std::string& name, const std::string& prefix, std::size_t& value) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  std::string digits = name.substr(prefix.size());
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  if (digits.size() > 4) throw DomainError("catalog parameter too large in '" + name + "'");
  value = std::stoul(digits);
  return true;
}

Lattice build_base(const std::string& name) {
  std::size_t k = 0;
  if (name == "Z") return scaled_identity(1, 1);
  if (name == "E6") return Lattice::gram_only(cartan_e(6));
  if (name == "E7") return Lattice::gram_only(cartan_e(7));
  if (name == "E8") return with(dn_power(8, 1), {glue_vector("f")}, "E8");
  if (name == "O1") return Lattice::gram_only(int_rows({{3}}));
  if (name == "Lambda1") return scaled_identity(1, 2);
  if (name == "Lambda2") return Lattice::gram_only(int_rows({{4, -2}, {-2, 4}}));
  if (name == "Lambda3") return Lattice::gram_only(scaled(cartan_a(3), 2));
  if (name == "Lambda4") return Lattice::from_basis(int_rows({{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {1, 1, 1, 1}}));
  if (name == "Lambda5")
    return Lattice::gram_only(int_rows({{2, -1, 0, 0, 0}, {-1, 2, -1, 0, 0}, {0, -1, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}}, 2));
  if (name == "Lambda6")
    return Lattice::gram_only(int_rows({{2, -1, 0, 0, 0, 0},
                                        {-1, 2, -1, 0, 0, 0},
                                        {0, -1, 2, -1, 0, -1},
                                        {0, 0, -1, 2, -1, 0},
                                        {0, 0, 0, -1, 2, 0},
                                        {0, 0, -1, 0, 0, 2}},
                                       2));
  if (name == "Lambda7")
    return Lattice::from_basis(int_rows({{2, 0, 0, 0, 0, 0, 0},
                                         {0, 2, 0, 0, 0, 0, 0},
                                         {0, 0, 2, 0, 0, 0, 0},
                                         {0, 0, 0, 2, 0, 0, 0},
                                         {1, 0, 1, 1, 1, 0, 0},
                                         {0, 1, 0, 1, 1, 1, 0},
                                         {0, 0, 1, 0, 1, 1, 1}}));
  if (name == "Lambda8")
    return Lattice::from_basis(int_rows({{2, 0, 0, 0, 0, 0, 0, 0},
                                         {0, 2, 0, 0, 0, 0, 0, 0},
                                         {0, 0, 2, 0, 0, 0, 0, 0},
                                         {1, 1, 1, 1, 0, 0, 0, 0},
                                         {0, 0, 0, 0, 2, 0, 0, 0},
                                         {1, 1, 0, 0, 1, 1, 0, 0},
                                         {1, 0, 1, 0, 1, 0, 1, 0},
                                         {0, 1, 0, 1, 0, 1, 0, 1}}));
  if (name == "O7") {
    Lattice l8 = base("Lambda8");
    Shell s = shell(l8, 4);
    return venkov_project(l8, l8.combination(s.coefficients(0))).projected;
  }
  if (name == "BW16") return Lattice::from_basis(int_rows(kBw16Rows, ratio(1, 2)));
  if (name == "BW16alt") {
    RationalMatrix m = int_rows(kBw16AltRows);
    return Lattice::gram_only(scaled(m * m.transpose(), ratio(1, 2)));
  }
  Lattice two16 = scaled_identity(16, 2);
  auto gs = [](std::size_t count) { return g_vectors(count); };
  auto cat = [](std::vector<LatticeVector> a, const std::vector<LatticeVector>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const LatticeVector f0 = glue_vector("f0"), f1 = glue_vector("f1"), f2 = glue_vector("f2");
  if (name == "O16") return with(two16, cat({f0, f1}, gs(11)), name);
  if (name == "Lambda16_2_1") return with(a1_power(16), cat({f0, f1}, gs(4)), name);
  if (name == "Lambda16_2_2") return with(dn_power(4, 4), cat({f0, f1}, gs(1)), name);
  if (name == "Lambda16_2_3") return with(dn_power(8, 2), {f0, f1}, name);
  if (name == "Lambda16_2_1prime") return with(a1_power(16), cat({f0}, gs(4)), name);
  if (name == "Lambda16_2_2prime") return with(dn_power(4, 4), cat({f0}, gs(1)), name);
  if (name == "Lambda16_2_3prime") return with(dn_power(8, 2), {f0}, name);
  if (name == "D16plus") {
    LatticeVector e19(16);
    e19[0] = 1;
    e19[8] = 1;
    return with(dn_power(8, 2), {e19, f0}, name);
  }
  if (name == "E8perpE8") return with(dn_power(8, 2), {f0, f2}, name);
  if (parse_suffix(name, "A1pow", k)) return a1_power(k);
  if (parse_suffix(name, "D4pow", k) && k >= 1) return dn_power(4, k);
  if (parse_suffix(name, "D8pow", k) && k >= 1) return dn_power(8, k);
  if (parse_suffix(name, "Z", k) && k >= 1) return scaled_identity(k, 1);
  if (parse_suffix(name, "A", k) && k >= 1) return Lattice::gram_only(cartan_a(k));
  if (parse_suffix(name, "D", k) && k >= 2) return dn_power(k, 1);
  throw DomainError("unknown catalog name '" + name + "'");
}

// ---- expression parser ----

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Lattice parse_all() {
    Lattice l = parse_sum();
    skip();
    if (p_ != s_.size()) fail("unexpected trailing input");
    return l;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("catalog expression '" + std::string(s_) + "': " + what + " at position " + std::to_string(p_));
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(p_, tok.size()) == tok) {
      p_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]));
  }
  std::string identifier() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    if (start == p_) fail("expected a name");
    return std::string(s_.substr(start, p_ - start));
  }
  long integer() {
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_ || p_ - start > 9) fail("expected an integer");
    return std::stol(std::string(s_.substr(start, p_ - start)));
  }

  Lattice parse_sum() {
    Lattice l = parse_term();
    for (;;) {
      if (eat("perp") || eat("⊥")) {
        l = orthogonal_sum(l, parse_term());
        continue;
      }
      break;
    }
    return l;
  }

  Lattice parse_term() {
    bool root2 = eat("sqrt2*");
    Lattice l = parse_atom();
    if (eat("^")) {
      long k = integer();
      if (k < 1 || k > 64) fail("power out of range");
      Lattice acc = l;
      for (long i = 1; i < k; ++i) acc = orthogonal_sum(acc, l);
      l = acc;
    }
    if (root2) l = rescale(l, 2);
    return l;
  }

  Lattice parse_atom() {
    std::string name = identifier();
    Lattice b = base(name);
    if (!eat("(")) return b;
    std::vector<LatticeVector> xs;
    do {
      xs.push_back(parse_vector(b, name));
    } while (eat(","));
    if (!eat(")")) fail("expected ')'");
    return adjoin(b, xs);
  }

  LatticeVector parse_vector(const Lattice& b, const std::string& base_name) {
    LatticeVector acc(b.dim());
    bool negative = eat("-");
    for (;;) {
      LatticeVector part = parse_part(b, base_name);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += negative ? -part[i] : part[i];
      if (eat("+")) {
        negative = false;
      } else if (eat("-")) {
        negative = true;
      } else {
        break;
      }
    }
    return acc;
  }

  LatticeVector parse_part(const Lattice& b, const std::string& base_name) {
    Rational coef = 1;
    if (peek_digit()) {
      long num = integer();
      long den = 1;
      if (eat("/")) den = integer();
      if (den == 0) fail("zero denominator");
      coef = ratio(num, den);
      eat("*");
    }
    LatticeVector v;
    if (eat("(")) {
      v = parse_vector(b, base_name);
      if (!eat(")")) fail("expected ')'");
    } else {
      v = symbol(identifier(), b, base_name);
    }
    for (auto& x : v) x *= coef;
    return v;
  }

  LatticeVector symbol(const std::string& sym, const Lattice& b, const std::string& base_name) {
    const std::size_t n = b.dim();
    std::size_t k = 0;
    if (parse_suffix(sym, "eps", k)) {
      if (k < 1 || k > n) fail("eps index out of range");
      return unit(n, k - 1);
    }
    if (parse_suffix(sym, "e", k)) {
      if (k < 1 || k > n) fail("basis index out of range");
      return b.basis_vector(k - 1);
    }
    if (base_name == "Lambda5" && sym == "f1") {
      // 1/2 (e1 + 2e2 + 2e3 + e4 + e5)
      LatticeVector v(n);
      const long w[5] = {1, 2, 2, 1, 1};
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < n; ++j) v[j] += ratio(w[i], 2) * b.basis()(i, j);
      return v;
    }
    if (base_name == "Lambda7" && sym == "o") return lambda7_glue();
    LatticeVector g = glue_vector(sym);
    if (g.size() != n) fail("symbol '" + sym + "' does not live in dimension " + std::to_string(n));
    if (b.is_gram_only()) fail("symbol '" + sym + "' needs orthonormal coordinates");
    return g;
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace

LatticeVector glue_vector(std::string_view symbol) {
  std::string s(symbol);
  if (s == "f") return half_vector({1, 1, 1, 1, 1, 1, 1, 1});
  if (s == "f0") return half_vector({-1, 1, 1, 1, 1, 1, 1, 1, -1, 1, 1, 1, 1, 1, 1, 1});
  if (s == "f1") return half_vector({1, 1, 1, 1, 1, 1, 1, 1, 2, 0, 0, 0, 0, 0, 0, 0});
  if (s == "f2") return half_vector({-1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  static const std::map<std::string, std::array<std::size_t, 4>> gs = {
      {"g1", {1, 5, 9, 13}},  {"g2", {1, 3, 5, 7}},   {"g3", {1, 3, 9, 11}},  {"g4", {1, 3, 13, 15}},
      {"g5", {1, 2, 3, 4}},   {"g6", {1, 2, 5, 6}},   {"g7", {1, 2, 7, 8}},   {"g8", {1, 2, 9, 10}},
      {"g9", {1, 2, 11, 12}}, {"g10", {1, 2, 13, 14}}, {"g11", {1, 2, 15, 16}},
  };
  auto it = gs.find(s);
  if (it == gs.end()) throw DomainError("unknown vector symbol '" + s + "'");
  const auto& [a, b, c, d] = it->second;
  return four(a, b, c, d);
}

Lattice catalog(std::string_view name) {
  Parser p(name);
  return p.parse_all().named(std::string(name));
}

std::vector<std::string> catalog_names() {
  return {"Z<n>",         "A<n>",         "D<n>",          "E6",
          "E7",           "E8",           "A1pow<2k>",     "D4pow<k>",
          "D8pow<k>",     "Lambda1",      "Lambda2",       "Lambda3",
          "Lambda4",      "Lambda5",      "Lambda6",       "Lambda7",
          "Lambda8",      "BW16",         "BW16alt",       "O16",
          "O7",           "O1",           "Lambda16_2_1",  "Lambda16_2_2",
          "Lambda16_2_3", "Lambda16_2_1prime", "Lambda16_2_2prime", "Lambda16_2_3prime",
          "D16plus",      "E8perpE8",     "sqrt2*<name>",  "<name>(<vector>, ...)",
          "<name>^<k>",   "<name> perp <name>"};
}

}  // namespace latnab
