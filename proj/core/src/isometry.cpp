#include "latnab/isometry.hpp"

#include <algorithm>
#include <numeric>

#include "latnab/enumerate.hpp"
#include "latnab/errors.hpp"

namespace latnab {

namespace {

struct IntGram {
  std::size_t n = 0;
  std::int64_t scale = 1;
  std::vector<std::int64_t> g;
};

IntGram int_gram(const RationalMatrix& gram) {
  auto [m, den] = clear_denominators(gram);
  IntGram out;
  out.n = gram.rows();
  if (!den.fits_slong_p()) throw BudgetExceeded("Gram denominator exceeds 64 bits");
  out.scale = den.get_si();
  out.g.resize(out.n * out.n);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = 0; j < out.n; ++j) {
      if (!m(i, j).fits_slong_p()) throw BudgetExceeded("Gram entry exceeds 64 bits");
      out.g[i * out.n + j] = m(i, j).get_si();
    }
  return out;
}

// Rows G v for every vector of the half set.
std::vector<std::int64_t> images(const IntGram& g, const ShortVectors& sv) {
  const std::size_t n = g.n;
  std::vector<std::int64_t> w(sv.size() * n, 0);
  for (std::size_t k = 0; k < sv.size(); ++k) {
    const std::int64_t* v = sv.vector(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) w[k * n + j] += v[i] * g.g[i * n + j];
    }
  }
  return w;
}

std::int64_t dot64(const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

IntegerMatrix rows_of(const ShortVectors& sv, const std::vector<std::size_t>& which) {
  IntegerMatrix m(which.size(), sv.dim);
  for (std::size_t r = 0; r < which.size(); ++r)
    for (std::size_t j = 0; j < sv.dim; ++j) m(r, j) = Integer(static_cast<long>(sv.vector(which[r])[j]));
  return m;
}

// Components of `members` (indices into sv) under nonzero inner product.
std::vector<std::vector<std::size_t>> components(const ShortVectors& sv, const std::vector<std::int64_t>& w,
                                                 const std::vector<std::size_t>& members) {
  const std::size_t n = sv.dim;
  UnionFind uf(members.size());
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (dot64(sv.vector(members[b]), w.data() + members[a] * n, n) != 0) uf.unite(a, b);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(members.size(), SIZE_MAX);
  for (std::size_t a = 0; a < members.size(); ++a) {
    std::size_t r = uf.find(a);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(members[a]);
  }
  return out;
}

RationalMatrix block_gram(const IntegerMatrix& basis, const RationalMatrix& gram) {
  auto b = to_rational(basis);
  return b * gram * b.transpose();
}

RationalMatrix block_diagonal(const std::vector<RationalMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  RationalMatrix out(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

RationalMatrix stacked(const std::vector<IntegerMatrix>& parts) {
  std::size_t rows = 0, cols = parts.empty() ? 0 : parts[0].cols();
  for (const auto& p : parts) rows += p.rows();
  RationalMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.rows(); ++i, ++r)
      for (std::size_t j = 0; j < cols; ++j) out(r, j) = p(i, j);
  return out;
}

using Profile = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Multiset of (norm w, |(v, w)|) over the half set, v's own norm first.
Profile profile_of(const std::int64_t* gv, std::int64_t own, const ShortVectors& sv) {
  Profile p;
  p.reserve(sv.size() + 1);
  for (std::size_t k = 0; k < sv.size(); ++k) {
    std::int64_t ip = dot64(sv.vector(k), gv, sv.dim);
    p.emplace_back(sv.scaled_norms[k], ip < 0 ? -ip : ip);
  }
  std::sort(p.begin(), p.end());
  p.insert(p.begin(), {own, -1});
  return p;
}

}  // namespace

std::string to_string(IsometryStatus s) {
  switch (s) {
    case IsometryStatus::Isometric: return "isometric";
    case IsometryStatus::NotIsometric: return "not_isometric";
    case IsometryStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::NonIntegral: return "nonintegral";
  }
  return "?";
}

std::string first_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.dim != b.dim) return "dim";
  if (a.determinant != b.determinant) return "determinant";
  if (a.parity != b.parity) return "parity";
  if (a.theta_bound != b.theta_bound || a.theta != b.theta) return "theta_prefix";
  if (a.roots != b.roots) return "root_component_profile";
  if (a.decomposable != b.decomposable) return "decomposable";
  return {};
}

std::vector<RootComponent> root_profile(const ShortVectors& half, const RationalMatrix& gram) {
  IntGram g = int_gram(gram);
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < half.size(); ++k)
    if (ratio(Integer(static_cast<long>(half.scaled_norms[k])), Integer(static_cast<long>(half.scale))) <= 2) members.push_back(k);
  if (members.empty()) return {};
  // Inner products are compared against zero only, so any positive scaling works.
  auto w = images(g, half);
  std::vector<RootComponent> out;
  for (const auto& comp : components(half, w, members))
    out.push_back(RootComponent{rank(rows_of(half, comp)), 2 * comp.size()});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootComponent> root_profile(const Lattice& l) { return root_profile(short_vectors(l.gram(), 2), l.gram()); }

Decomposition decompose(const Lattice& l, std::size_t budget) {
  const std::size_t n = l.dim();
  Enumerator en(l.gram());
  std::int64_t top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, en.reduced().at(i, i));
  ShortVectors sv = short_vectors(l.gram(), en.unscaled(top), budget);
  IntGram g = int_gram(l.gram());
  // sv norms are scaled by the enumerator's scale, which is the Gram denominator.
  auto w = images(g, sv);

  std::vector<std::size_t> indecomposable;
  for (std::size_t x = 0; x < sv.size(); ++x) {
    bool split = false;
    for (std::size_t y = 0; y < sv.size() && !split; ++y) {
      if (sv.scaled_norms[y] >= sv.scaled_norms[x]) break;
      std::int64_t ip = dot64(sv.vector(x), w.data() + y * n, n);
      split = ip == sv.scaled_norms[y] || -ip == sv.scaled_norms[y];
    }
    if (!split) indecomposable.push_back(x);
  }
  if (hnf_of_generators(rows_of(sv, indecomposable)) != IntegerMatrix::identity(n))
    throw Error("decompose: indecomposable short vectors do not generate the lattice");

  Decomposition out;
  struct Piece {
    IntegerMatrix basis;
    Rational det;
    std::size_t count;
  };
  std::vector<Piece> pieces;
  for (const auto& comp : components(sv, w, indecomposable)) {
    IntegerMatrix basis = hnf_of_generators(rows_of(sv, comp));
    Rational d = det(block_gram(basis, l.gram()));
    pieces.push_back(Piece{std::move(basis), d, comp.size()});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.basis.rows() != b.basis.rows()) return a.basis.rows() < b.basis.rows();
    if (a.det != b.det) return a.det < b.det;
    return a.count > b.count;
  });
  for (auto& p : pieces) {
    out.summands.push_back(Lattice::from_gram(block_gram(p.basis, l.gram())));
    out.bases.push_back(std::move(p.basis));
  }
  return out;
}

std::vector<Lattice> orthogonal_decomposition(const Lattice& l) { return decompose(l).summands; }

Fingerprint fingerprint(const Lattice& l, const Rational& theta_bound) {
  Fingerprint f;
  f.dim = l.dim();
  f.determinant = l.determinant();
  f.parity = !is_integral(l) ? Parity::NonIntegral : is_even(l) ? Parity::Even : Parity::Odd;
  f.theta_bound = theta_bound;
  f.theta = theta(l, theta_bound).coefficients;
  f.roots = root_profile(l);
  f.decomposable = decompose(l).summands.size() > 1;
  return f;
}

bool verify_certificate(const RationalMatrix& c, const RationalMatrix& gram_a, const RationalMatrix& gram_b) {
  if (!c.is_square() || c.rows() != gram_a.rows() || gram_a.rows() != gram_b.rows()) return false;
  for (const auto& x : c.data())
    if (!is_integer(x)) return false;
  return c * gram_a * c.transpose() == gram_b;
}

std::optional<RationalMatrix> find_isometry(const Lattice& a, const Lattice& b, std::uint64_t node_budget) {
  const std::size_t n = a.dim();
  if (b.dim() != n || a.determinant() != b.determinant()) return std::nullopt;
  IntGram ga = int_gram(a.gram()), gb = int_gram(b.gram());
  if (ga.scale != gb.scale) return std::nullopt;

  Enumerator en(a.gram());
  const auto& red = en.reduced();
  std::int64_t top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, red.at(i, i));
  Rational bound = en.unscaled(top);
  ShortVectors sa = short_vectors(a.gram(), bound), sb = short_vectors(b.gram(), bound);
  if (sa.size() != sb.size() || sa.scaled_norms != sb.scaled_norms) return std::nullopt;
  auto wa = images(ga, sa), wb = images(gb, sb);

  std::map<Profile, std::size_t> ids;
  auto id_of = [&](Profile p) { return ids.emplace(std::move(p), ids.size()).first->second; };
  std::vector<std::size_t> count_a, count_b;
  auto bump = [](std::vector<std::size_t>& c, std::size_t id) {
    if (c.size() <= id) c.resize(id + 1, 0);
    ++c[id];
  };
  for (std::size_t k = 0; k < sa.size(); ++k) bump(count_a, id_of(profile_of(wa.data() + k * n, sa.scaled_norms[k], sa)));
  std::vector<std::size_t> target_id(sb.size());
  for (std::size_t k = 0; k < sb.size(); ++k) {
    target_id[k] = id_of(profile_of(wb.data() + k * n, sb.scaled_norms[k], sb));
    bump(count_b, target_id[k]);
  }
  count_a.resize(ids.size(), 0);
  count_b.resize(ids.size(), 0);
  if (count_a != count_b) return std::nullopt;

  // Source basis: the LLL-reduced basis of a, rows of U.
  std::vector<std::int64_t> src(n * n), gsrc(n * n, 0);
  for (std::size_t i = 0; i < n * n; ++i) src[i] = red.transform[i];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gsrc[k * n + j] += src[k * n + i] * ga.g[i * n + j];
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t own = dot64(src.data() + k * n, gsrc.data() + k * n, n);
    std::size_t id = id_of(profile_of(gsrc.data() + k * n, own, sa));
    for (std::size_t t = 0; t < sb.size(); ++t)
      if (target_id[t] == id) cand[k].push_back(t);
    if (cand[k].empty()) return std::nullopt;
  }
  std::vector<std::int64_t> want(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) want[i * n + j] = dot64(src.data() + i * n, gsrc.data() + j * n, n);

  // Rarest candidates first, then most entangled with the vectors already placed.
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::size_t best_links = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      std::size_t links = 0;
      for (std::size_t p : order) links += want[k * n + p] != 0;
      if (best == n || links > best_links || (links == best_links && cand[k].size() < cand[best].size())) {
        best = k;
        best_links = links;
      }
    }
    used[best] = true;
    order.push_back(best);
  }

  // image[level] = signed target index: +-(t + 1).
  std::vector<std::int64_t> image(n, 0);
  std::vector<std::size_t> pos(n, 0);
  std::uint64_t nodes = 0;
  auto ip_target = [&](std::int64_t s, std::int64_t t) {
    std::size_t i = static_cast<std::size_t>((s < 0 ? -s : s) - 1), j = static_cast<std::size_t>((t < 0 ? -t : t) - 1);
    std::int64_t v = dot64(sb.vector(i), wb.data() + j * n, n);
    return ((s < 0) != (t < 0)) ? -v : v;
  };
  std::size_t level = 0;
  bool found = false;
  while (true) {
    const std::size_t k = order[level];
    const std::size_t choices = 2 * cand[k].size();
    bool advanced = false;
    while (pos[level] < choices) {
      std::size_t c = pos[level]++;
      if (level == 0 && (c & 1)) continue;  // -1 is always an isometry
      std::int64_t t = static_cast<std::int64_t>(cand[k][c / 2]) + 1;
      if (c & 1) t = -t;
      if (++nodes > node_budget) throw BudgetExceeded("isometry search exceeded its node budget");
      bool ok = true;
      for (std::size_t p = 0; p < level && ok; ++p) ok = ip_target(t, image[p]) == want[k * n + order[p]];
      if (!ok) continue;
      image[level] = t;
      advanced = true;
      break;
    }
    if (!advanced) {
      if (level == 0) break;
      pos[level] = 0;
      --level;
      continue;
    }
    if (level + 1 == n) {
      found = true;
      break;
    }
    ++level;
  }
  if (!found) return std::nullopt;

  RationalMatrix u(n, n), c2(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = Rational(static_cast<long>(src[i * n + j]));
  for (std::size_t level2 = 0; level2 < n; ++level2) {
    std::int64_t t = image[level2];
    const std::int64_t* v = sb.vector(static_cast<std::size_t>((t < 0 ? -t : t) - 1));
    for (std::size_t j = 0; j < n; ++j) c2(order[level2], j) = Rational(static_cast<long>(t < 0 ? -v[j] : v[j]));
  }
  RationalMatrix cert = inverse(inverse(u) * c2);
  if (!verify_certificate(cert, a.gram(), b.gram())) throw Error("find_isometry: certificate failed verification");
  return cert;
}

namespace {

IsometryVerdict search_verdict(const Lattice& a, const Lattice& b) {
  IsometryVerdict v;
  try {
    v.certificate = find_isometry(a, b);
  } catch (const BudgetExceeded&) {
    v.status = IsometryStatus::Indeterminate;
    v.witness = "search_budget";
    return v;
  }
  v.status = v.certificate ? IsometryStatus::Isometric : IsometryStatus::NotIsometric;
  if (!v.certificate) v.witness = "exhaustive_search";
  return v;
}

// Matches indecomposable summands pairwise; they are unique up to order.
IsometryVerdict summand_verdict(const Lattice& a, const Lattice& b) {
  IsometryVerdict v;
  v.status = IsometryStatus::Indeterminate;
  v.witness = "fingerprint_match";
  Decomposition da = decompose(a), db = decompose(b);
  if (da.summands.size() < 2) return v;
  if (da.summands.size() != db.summands.size()) {
    v.status = IsometryStatus::NotIsometric;
    v.witness = "orthogonal_summands";
    return v;
  }
  for (const auto& s : da.summands)
    if (s.dim() > 8) return v;
  std::vector<bool> taken(db.summands.size(), false);
  std::vector<RationalMatrix> blocks;
  std::vector<IntegerMatrix> target_bases;
  for (const auto& s : da.summands) {
    std::optional<RationalMatrix> cert;
    for (std::size_t j = 0; j < db.summands.size() && !cert; ++j) {
      if (taken[j] || db.summands[j].dim() != s.dim()) continue;
      try {
        cert = find_isometry(s, db.summands[j]);
      } catch (const BudgetExceeded&) {
        return v;
      }
      if (cert) {
        taken[j] = true;
        target_bases.push_back(db.bases[j]);
      }
    }
    if (!cert) {
      v.status = IsometryStatus::NotIsometric;
      v.witness = "orthogonal_summands";
      return v;
    }
    blocks.push_back(std::move(*cert));
  }
  RationalMatrix cert = inverse(stacked(target_bases)) * block_diagonal(blocks) * stacked(da.bases);
  if (!verify_certificate(cert, a.gram(), b.gram())) throw Error("is_isometric: assembled certificate failed verification");
  v.status = IsometryStatus::Isometric;
  v.certificate = std::move(cert);
  v.witness.clear();
  return v;
}

}  // namespace

IsometryVerdict is_isometric(const Lattice& a, const Lattice& b, IsometryPolicy policy) {
  IsometryVerdict v;
  if (a.dim() != b.dim()) {
    v.status = IsometryStatus::NotIsometric;
    v.witness = "dim";
    return v;
  }
  if (a.gram() == b.gram()) {
    v.status = IsometryStatus::Isometric;
    v.certificate = RationalMatrix::identity(a.dim());
    return v;
  }
  std::string diff = first_difference(fingerprint(a), fingerprint(b));
  if (!diff.empty()) {
    v.status = IsometryStatus::NotIsometric;
    v.witness = diff;
    return v;
  }
  if (policy == IsometryPolicy::Strict || a.dim() <= 8) return search_verdict(a, b);
  return summand_verdict(a, b);
}

}  // namespace latnab
