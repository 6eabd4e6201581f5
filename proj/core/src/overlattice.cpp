#include "latnab/overlattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "echelon.hpp"
#include "latnab/errors.hpp"
#include "latnab/parallel.hpp"

namespace latnab {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : b) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

struct Node {
  Bits bits;
  std::vector<std::size_t> gens;
  std::vector<std::size_t> elements;
};

class Arithmetic {
 public:
  explicit Arithmetic(const DiscriminantGroup& g) : g_(g), m_(g.order()) {
    if (m_ <= 1024) {
      table_.resize(m_ * m_);
      for (std::size_t a = 0; a < m_; ++a)
        for (std::size_t b = 0; b < m_; ++b) table_[a * m_ + b] = static_cast<std::uint16_t>(g.add(a, b));
    }
  }
  std::size_t add(std::size_t a, std::size_t b) const { return table_.empty() ? g_.add(a, b) : table_[a * m_ + b]; }

 private:
  const DiscriminantGroup& g_;
  std::size_t m_;
  std::vector<std::uint16_t> table_;
};

std::int64_t checked(const Integer& z) {
  if (!z.fits_slong_p()) throw BudgetExceeded("census: dual Gram entry exceeds 64 bits");
  return z.get_si();
}

// Per-class data of L# up to the fingerprint theta bound: theta counts at
// integral norms and the vectors of norm <= 2, from which the invariants of
// every member follow without building it.
class CosetTables {
 public:
  CosetTables(const DiscriminantGroup& g, std::int64_t theta_bound) : n_(g.lattice().dim()), bound_(theta_bound) {
    const std::size_t m = g.order();
    DualEnumeration dual(g);
    const std::int64_t scale = dual.enumerator().scale();
    const std::size_t width = static_cast<std::size_t>(bound_) + 1;
    struct Worker {
      std::vector<std::uint64_t> hist;
      std::vector<std::int64_t> roots;  // class, norm, coefficients
    };
    const unsigned workers = thread_count();
    std::vector<Worker> acc(workers);
    for (auto& w : acc) w.hist.assign(m * width, 0);
    struct Visit {
      const DualEnumeration* dual;
      const DiscriminantGroup* g;
      Worker* out;
      std::int64_t scale;
      std::size_t width, n;
      void operator()(const std::int64_t* y, std::int64_t e, std::size_t cls) {
        if (e % scale) return;
        auto k = static_cast<std::size_t>(e / scale);
        if (k >= width) return;
        out->hist[cls * width + k] += 1;
        out->hist[g->negate(cls) * width + k] += 1;
        if (k <= 2) {
          out->roots.push_back(static_cast<std::int64_t>(cls));
          out->roots.push_back(static_cast<std::int64_t>(k));
          std::size_t at = out->roots.size();
          out->roots.resize(at + n);
          dual->dual_coefficients(y, out->roots.data() + at);
        }
      }
    };
    std::vector<Visit> visitors;
    for (auto& w : acc) visitors.push_back(Visit{&dual, &g, &w, scale, width, n_});
    dual.run(Rational(bound_), visitors);

    hist_.assign(m * width, 0);
    for (auto& w : acc)
      for (std::size_t i = 0; i < hist_.size(); ++i) hist_[i] += w.hist[i];
    hist_[0] += 1;  // the zero vector

    // Canonical root order: sign with first nonzero coefficient positive, then (norm, coefficients).
    struct Root {
      std::int64_t norm;
      std::vector<std::int64_t> coef;
      std::size_t cls;
    };
    std::vector<Root> roots;
    const std::size_t stride = n_ + 2;
    for (auto& w : acc)
      for (std::size_t at = 0; at < w.roots.size(); at += stride) {
        Root r{w.roots[at + 1], std::vector<std::int64_t>(w.roots.begin() + at + 2, w.roots.begin() + at + stride),
               static_cast<std::size_t>(w.roots[at])};
        auto first = std::find_if(r.coef.begin(), r.coef.end(), [](std::int64_t v) { return v != 0; });
        if (first != r.coef.end() && *first < 0) {
          for (auto& v : r.coef) v = -v;
          r.cls = g.negate(r.cls);
        }
        roots.push_back(std::move(r));
      }
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
      return a.norm != b.norm ? a.norm < b.norm : a.coef < b.coef;
    });
    const std::size_t count = roots.size();
    words_ = (count + 63) / 64;
    coef_.resize(count * n_);
    by_class_.assign(m, {});
    for (std::size_t i = 0; i < count; ++i) {
      std::copy(roots[i].coef.begin(), roots[i].coef.end(), coef_.begin() + static_cast<std::ptrdiff_t>(i * n_));
      by_class_[roots[i].cls].push_back(i);
    }
    auto [dg, den] = clear_denominators(g.dual_gram());
    std::vector<std::int64_t> gram(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) gram[i * n_ + j] = checked(dg(i, j));
    std::vector<std::int64_t> image(count * n_, 0);
    for (std::size_t r = 0; r < count; ++r)
      for (std::size_t i = 0; i < n_; ++i) {
        std::int64_t c = coef_[r * n_ + i];
        if (!c) continue;
        for (std::size_t j = 0; j < n_; ++j) image[r * n_ + j] += c * gram[i * n_ + j];
      }
    adjacency_.assign(count * words_, 0);
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < n_; ++j) s += coef_[b * n_ + j] * image[a * n_ + j];
        if (s != 0) {
          adjacency_[a * words_ + (b >> 6)] |= std::uint64_t(1) << (b & 63);
          adjacency_[b * words_ + (a >> 6)] |= std::uint64_t(1) << (a & 63);
        }
      }
  }

  std::map<Rational, std::uint64_t> theta(const std::vector<std::size_t>& elements) const {
    const std::size_t width = static_cast<std::size_t>(bound_) + 1;
    std::map<Rational, std::uint64_t> out;
    for (std::size_t k = 0; k < width; ++k) {
      std::uint64_t s = 0;
      for (auto h : elements) s += hist_[h * width + k];
      if (s) out[Rational(static_cast<long>(k))] = s;
    }
    return out;
  }

  std::vector<RootComponent> roots(const std::vector<std::size_t>& elements) const {
    Bits pool(words_, 0);
    std::size_t left = 0;
    for (auto h : elements)
      for (auto r : by_class_[h]) {
        set(pool, r);
        ++left;
      }
    std::vector<RootComponent> out;
    std::vector<std::size_t> stack;
    while (left) {
      std::size_t start = 0;
      while (!pool[start]) ++start;
      std::size_t seed = start * 64 + static_cast<std::size_t>(__builtin_ctzll(pool[start]));
      pool[seed >> 6] &= ~(std::uint64_t(1) << (seed & 63));
      stack.assign(1, seed);
      detail::Echelon ech(n_);
      std::uint64_t size = 0;
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        ++size;
        ech.insert(coef_.data() + v * n_);
        const std::uint64_t* adj = adjacency_.data() + v * words_;
        for (std::size_t w = 0; w < words_; ++w) {
          std::uint64_t hit = adj[w] & pool[w];
          if (!hit) continue;
          pool[w] &= ~hit;
          while (hit) {
            stack.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(hit)));
            hit &= hit - 1;
          }
        }
      }
      left -= size;
      out.push_back(RootComponent{ech.rank(), 2 * size});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t n_;
  std::int64_t bound_;
  std::vector<std::uint64_t> hist_;
  std::size_t words_ = 0;
  std::vector<std::int64_t> coef_;
  std::vector<std::vector<std::size_t>> by_class_;
  Bits adjacency_;
};

std::string key_of(const Fingerprint& f, bool with_decomposable) {
  std::ostringstream s;
  s << f.dim << '|' << f.determinant.get_str() << '|' << to_string(f.parity) << '|' << f.theta_bound.get_str() << '|';
  for (const auto& [norm, c] : f.theta) s << norm.get_str() << ':' << c << ',';
  s << '|';
  for (const auto& r : f.roots) s << r.rank << 'x' << r.count << ',';
  if (with_decomposable) s << '|' << f.decomposable;
  return s.str();
}

}  // namespace

std::string to_string(ClassifyPolicy p) {
  switch (p) {
    case ClassifyPolicy::Auto: return "auto";
    case ClassifyPolicy::Fast: return "fast";
    case ClassifyPolicy::Strict: return "strict";
  }
  return "?";
}

OverlatticeCensus::OverlatticeCensus(const Lattice& base, std::uint64_t order_bound)
    : group_(std::make_shared<const DiscriminantGroup>(base, order_bound)) {}

Lattice OverlatticeCensus::lattice(std::size_t member) const {
  const auto& mem = members_.at(member);
  if (mem.generators.empty()) return base();
  std::vector<LatticeVector> reps;
  for (auto c : mem.generators) reps.push_back(group_->representative(c));
  return adjoin(base(), reps);
}

OverlatticeCensus integral_overlattices(const Lattice& l, std::uint64_t order_bound) {
  OverlatticeCensus census(l, order_bound);
  const DiscriminantGroup& g = census.group();
  const std::size_t m = g.order();
  const std::size_t words = (m + 63) / 64;
  Arithmetic arith(g);

  Bits integral(words, 0);
  for (std::size_t c = 0; c < m; ++c) {
    auto a = g.representative_coefficients(c);
    Rational norm = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[i] && a[j]) norm += Rational(static_cast<long>(a[i] * a[j])) * g.dual_gram()(i, j);
    if (is_integer(norm)) set(integral, c);
  }
  std::vector<Bits> perp(m, Bits(words, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      if (g.pairing(a, b) == 0) {
        set(perp[a], b);
        set(perp[b], a);
      }

  auto extend = [&](const Node& h, const std::unordered_set<Bits, BitsHash>& seen, std::vector<Node>& out) {
    Bits allowed = integral;
    for (auto gen : h.gens)
      for (std::size_t w = 0; w < words; ++w) allowed[w] &= perp[gen][w];
    std::unordered_set<Bits, BitsHash> local;
    for (std::size_t c = 1; c < m; ++c) {
      if (!test(allowed, c) || test(h.bits, c)) continue;
      bool least = true;
      for (auto e : h.elements)
        if (arith.add(c, e) < c) {
          least = false;
          break;
        }
      if (!least) continue;
      Node child{h.bits, h.gens, h.elements};
      child.gens.push_back(c);
      for (std::size_t x = c; !test(child.bits, x); x = arith.add(x, c))
        for (auto e : h.elements) {
          std::size_t y = arith.add(e, x);
          set(child.bits, y);
          child.elements.push_back(y);
        }
      if (seen.count(child.bits) || !local.insert(child.bits).second) continue;
      std::sort(child.elements.begin(), child.elements.end());
      out.push_back(std::move(child));
    }
  };

  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Node> layer;
  {
    Node zero{Bits(words, 0), {}, {0}};
    set(zero.bits, 0);
    seen.insert(zero.bits);
    layer.push_back(std::move(zero));
  }
  std::vector<Node> all;
  const unsigned workers = thread_count();
  while (!layer.empty()) {
    std::vector<std::vector<Node>> found(workers);
    parallel_for(layer.size(), workers, [&](unsigned w, std::size_t i) { extend(layer[i], seen, found[w]); });
    std::vector<Node> next;
    for (auto& f : found)
      for (auto& node : f) next.push_back(std::move(node));
    std::sort(next.begin(), next.end(), [](const Node& a, const Node& b) {
      return a.bits != b.bits ? a.bits < b.bits : a.gens < b.gens;
    });
    std::vector<Node> fresh;
    for (auto& node : next)
      if (seen.insert(node.bits).second) fresh.push_back(std::move(node));
    for (auto& node : layer) all.push_back(std::move(node));
    layer = std::move(fresh);
  }
  std::sort(all.begin(), all.end(), [](const Node& a, const Node& b) {
    return a.elements.size() != b.elements.size() ? a.elements.size() < b.elements.size() : a.elements < b.elements;
  });
  census.members_.reserve(all.size());
  for (auto& node : all) census.members_.push_back(CensusMember{std::move(node.gens), std::move(node.elements)});
  return census;
}

OverlatticeCensus classify_census(OverlatticeCensus census, ClassifyPolicy policy, const std::vector<CatalogCandidate>& candidates) {
  const Lattice& base = census.base();
  const std::size_t count = census.members_.size();
  if (policy == ClassifyPolicy::Auto) policy = base.dim() <= 8 ? ClassifyPolicy::Strict : ClassifyPolicy::Fast;
  const bool base_even = is_even(base);

  CosetTables tables(census.group(), kDefaultFingerprintThetaBound);
  std::vector<Fingerprint> keys(count);
  parallel_for(count, thread_count(), [&](unsigned, std::size_t i) {
    const auto& mem = census.members_[i];
    Fingerprint& f = keys[i];
    f.dim = base.dim();
    f.determinant = base.determinant() / Rational(static_cast<long>(mem.order() * mem.order()));
    f.theta_bound = kDefaultFingerprintThetaBound;
    f.theta = tables.theta(mem.elements);
    f.roots = tables.roots(mem.elements);
  });
  // An odd base keeps its members odd. Over an even base a member is even iff
  // no class of H has odd norm.
  for (auto& f : keys) f.parity = Parity::Odd;
  if (base_even) {
    const auto& g = census.group();
    std::vector<bool> odd(g.order(), false);
    for (std::size_t c = 0; c < g.order(); ++c) {
      auto a = g.representative_coefficients(c);
      Rational norm = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          if (a[i] && a[j]) norm += Rational(static_cast<long>(a[i] * a[j])) * g.dual_gram()(i, j);
      odd[c] = is_integer(norm) && norm.get_num() % 2 != 0;
    }
    for (std::size_t i = 0; i < count; ++i) {
      bool any = false;
      for (auto e : census.members_[i].elements) any = any || odd[e];
      keys[i].parity = any ? Parity::Odd : Parity::Even;
    }
  }

  std::vector<std::string> key_text(count);
  for (std::size_t i = 0; i < count; ++i) key_text[i] = key_of(keys[i], false);
  std::vector<std::vector<std::size_t>> groups;
  {
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < count; ++i) {
      auto [it, fresh] = slot.emplace(key_text[i], groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(i);
    }
  }

  std::vector<Fingerprint> cand_fp;
  for (const auto& c : candidates) cand_fp.push_back(fingerprint(c.lattice));

  census.buckets_.clear();
  census.assignment_.assign(count, 0);
  if (policy == ClassifyPolicy::Fast) {
    for (std::size_t a = 0; a < cand_fp.size(); ++a)
      for (std::size_t b = a + 1; b < cand_fp.size(); ++b)
        if (key_of(cand_fp[a], false) == key_of(cand_fp[b], false))
          throw Error("fingerprint classification is not sufficient: " + candidates[a].name + " and " + candidates[b].name +
                      " share determinant, parity, theta prefix and root profile");
    for (const auto& grp : groups) {
      CensusBucket b;
      b.representative = grp.front();
      b.count = grp.size();
      b.fingerprint = keys[grp.front()];
      b.fingerprint.decomposable = decompose(census.lattice(grp.front())).summands.size() > 1;
      if (!candidates.empty()) {
        for (std::size_t c = 0; c < candidates.size() && !b.name; ++c)
          if (cand_fp[c] == b.fingerprint) b.name = candidates[c].name;
        if (!b.name)
          throw Error("census member " + std::to_string(grp.front()) + " has a fingerprint outside the expected set");
      }
      for (auto i : grp) census.assignment_[i] = census.buckets_.size();
      census.buckets_.push_back(std::move(b));
    }
  } else {
    for (const auto& grp : groups) {
      std::vector<std::size_t> open = grp;
      while (!open.empty()) {
        const std::size_t rep = open.front();
        Lattice rep_lattice = census.lattice(rep);
        std::vector<char> match(open.size(), 0);
        match[0] = 1;
        parallel_for(open.size() - 1, thread_count(), [&](unsigned, std::size_t k) {
          try {
            match[k + 1] = find_isometry(rep_lattice, census.lattice(open[k + 1])).has_value();
          } catch (const BudgetExceeded&) {
            throw BudgetExceeded("indeterminate isometry under the strict policy (member " + std::to_string(open[k + 1]) + ")");
          }
        });
        CensusBucket b;
        b.representative = rep;
        b.fingerprint = fingerprint(rep_lattice);
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < open.size(); ++k) {
          if (match[k]) {
            census.assignment_[open[k]] = census.buckets_.size();
            ++b.count;
          } else {
            rest.push_back(open[k]);
          }
        }
        for (std::size_t c = 0; c < candidates.size() && !b.name; ++c)
          if (cand_fp[c] == b.fingerprint && find_isometry(rep_lattice, candidates[c].lattice)) b.name = candidates[c].name;
        census.buckets_.push_back(std::move(b));
        open = std::move(rest);
      }
    }
  }
  census.classified_ = true;
  census.policy_ = policy;
  return census;
}

}  // namespace latnab
