#include "latnab/quotient.hpp"

#include <algorithm>
#include <map>
#include <limits>
#include <numeric>

#include "latnab/parallel.hpp"

namespace latnab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod(const Integer& a, std::int64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

std::int64_t checked_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw BudgetExceeded("discriminant group: coefficient exceeds 64 bits");
  return z.get_si();
}

}  // namespace

DiscriminantGroup::DiscriminantGroup(const Lattice& l, std::uint64_t order_bound) : lattice_(l) {
  if (!is_integral(l)) throw DomainError("the discriminant group needs an integral lattice");
  const std::size_t n = l.dim();
  const Rational& d = l.determinant();
  if (d.get_num() > Integer(static_cast<unsigned long>(order_bound)))
    throw BudgetExceeded("quotient order " + d.get_str() + " exceeds the bound " + std::to_string(order_bound));
  order_ = d.get_num().get_ui();
  IntegerMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = l.gram()(i, j).get_num();
  SmithForm f = snf(g);
  factors_ = f.invariant_factors();
  t_ = f.t;
  RationalMatrix tinv = inverse(to_rational(t_));
  t_inverse_ = IntegerMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t_inverse_(i, j) = tinv(i, j).get_num();
  for (std::size_t i = 0; i < n; ++i)
    if (factors_[i] > 1) {
      nontrivial_.push_back(i);
      moduli_.push_back(factors_[i].get_si());
    }
  std::size_t stride = 1;
  for (auto m : moduli_) {
    strides_.push_back(stride);
    stride *= static_cast<std::size_t>(m);
    exponent_ = std::lcm(exponent_, m);
  }
  dual_gram_ = inverse(l.gram());
  dual_basis_ = dual_gram_ * l.basis();
  const std::size_t r = moduli_.size();
  pair_.assign(r * r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Rational ip = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          ip += Rational(t_inverse_(nontrivial_[a], i)) * dual_gram_(i, j) * Rational(t_inverse_(nontrivial_[b], j));
      ip *= exponent_;
      if (!is_integer(ip)) throw Error("discriminant group: pairing not in (1/E)Z");
      pair_[a * r + b] = mod(ip.get_num(), exponent_);
    }
}

std::vector<std::int64_t> DiscriminantGroup::element(std::size_t index) const {
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    c[k] = static_cast<std::int64_t>(index % static_cast<std::size_t>(moduli_[k]));
    index /= static_cast<std::size_t>(moduli_[k]);
  }
  return c;
}

std::size_t DiscriminantGroup::index(std::span<const std::int64_t> components) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) idx += static_cast<std::size_t>(mod(components[k], moduli_[k])) * strides_[k];
  return idx;
}

std::size_t DiscriminantGroup::add(std::size_t a, std::size_t b) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    auto m = static_cast<std::size_t>(moduli_[k]);
    idx += ((a % m + b % m) % m) * strides_[k];
    a /= m;
    b /= m;
  }
  return idx;
}

std::size_t DiscriminantGroup::negate(std::size_t a) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    auto m = static_cast<std::size_t>(moduli_[k]);
    idx += ((m - a % m) % m) * strides_[k];
    a /= m;
  }
  return idx;
}

std::uint64_t DiscriminantGroup::element_order(std::size_t a) const {
  std::uint64_t o = 1;
  auto c = element(a);
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto m = static_cast<std::uint64_t>(moduli_[k]);
    o = std::lcm(o, m / std::gcd(static_cast<std::uint64_t>(c[k]), m));
  }
  return o;
}

std::int64_t DiscriminantGroup::pairing(std::size_t a, std::size_t b) const {
  auto ca = element(a);
  auto cb = element(b);
  const std::size_t r = moduli_.size();
  __int128 s = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (!ca[i]) continue;
    for (std::size_t j = 0; j < r; ++j) s += static_cast<__int128>(ca[i]) * cb[j] * pair_[i * r + j];
  }
  auto m = static_cast<__int128>(exponent_);
  auto res = s % m;
  if (res < 0) res += m;
  return static_cast<std::int64_t>(res);
}

std::size_t DiscriminantGroup::class_of(std::span<const std::int64_t> a) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) s += Integer(static_cast<long>(a[i])) * t_(i, nontrivial_[k]);
    idx += static_cast<std::size_t>(mod(s, moduli_[k])) * strides_[k];
  }
  return idx;
}

std::vector<std::int64_t> DiscriminantGroup::representative_coefficients(std::size_t index) const {
  const std::size_t n = lattice_.dim();
  auto c = element(index);
  std::vector<Integer> a(n, Integer(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k]) continue;
    for (std::size_t j = 0; j < n; ++j) a[j] += Integer(static_cast<long>(c[k])) * t_inverse_(nontrivial_[k], j);
  }
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = checked_i64(a[j]);
  return out;
}

LatticeVector DiscriminantGroup::dual_vector(std::span<const std::int64_t> a) const {
  const std::size_t n = lattice_.dim();
  LatticeVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    Rational c(static_cast<long>(a[i]));
    for (std::size_t j = 0; j < n; ++j) v[j] += c * dual_basis_(i, j);
  }
  return v;
}

DualEnumeration::DualEnumeration(const DiscriminantGroup& group) : group_(&group), en_(group.dual_gram()) {
  const std::size_t n = en_.dim();
  const std::size_t r = group.moduli_.size();
  class_rows_.assign(n * r, 0);
  const auto& u = en_.reduced().transform;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (u[i * n + j]) s += Integer(static_cast<long>(u[i * n + j])) * group.t_(j, group.nontrivial_[k]);
      class_rows_[i * r + k] = mod(s, group.moduli_[k]);
    }
}

std::size_t DualEnumeration::class_of_reduced(const std::int64_t* y) const {
  const std::size_t n = en_.dim();
  const std::size_t r = group_->moduli_.size();
  std::size_t idx = 0;
  for (std::size_t k = 0; k < r; ++k) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += y[i] * class_rows_[i * r + k];
    idx += static_cast<std::size_t>(mod(s, group_->moduli_[k])) * group_->strides_[k];
  }
  return idx;
}

QuotientGroup quotient_group(const Lattice& l) {
  DiscriminantGroup g(l, std::numeric_limits<std::uint64_t>::max());
  QuotientGroup q;
  q.order = l.determinant().get_num();
  const std::size_t n = l.dim();
  RationalMatrix gens = to_rational(g.transform_inverse()) * (g.dual_gram() * l.basis());
  for (std::size_t i = 0; i < n; ++i) {
    if (g.invariant_factors()[i] == 1) continue;
    q.invariant_factors.push_back(g.invariant_factors()[i]);
    q.generators.push_back(gens.row_vector(i));
  }
  return q;
}

namespace {

struct LeaderSearch {
  std::size_t n;
  std::vector<std::int64_t> norm;  // -1: none yet
  std::vector<std::int64_t> coeffs;

  void offer(std::size_t cls, const std::int64_t* a, std::int64_t e) {
    std::int64_t* cur = coeffs.data() + cls * n;
    if (norm[cls] < 0 || e < norm[cls] || (e == norm[cls] && std::lexicographical_compare(a, a + n, cur, cur + n))) {
      norm[cls] = e;
      std::copy(a, a + n, cur);
    }
  }
};

}  // namespace

std::vector<CosetClass> coset_classes(const Lattice& l, std::uint64_t order_bound) {
  DiscriminantGroup group(l, order_bound);
  const std::size_t n = l.dim();
  const std::size_t order = group.order();
  LeaderSearch total{n, std::vector<std::int64_t>(order, -1), std::vector<std::int64_t>(order * n, 0)};
  total.norm[0] = 0;
  if (order > 1) {
    DualEnumeration dual(group);
    Rational bound = 1;
    for (;;) {
      struct Visitor {
        const DualEnumeration* dual;
        const DiscriminantGroup* group;
        LeaderSearch search;
        std::vector<std::int64_t> a, neg;
        void operator()(const std::int64_t* y, std::int64_t e, std::size_t cls) {
          dual->dual_coefficients(y, a.data());
          for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
          search.offer(cls, a.data(), e);
          search.offer(group->negate(cls), neg.data(), e);
        }
      };
      Visitor proto{&dual, &group, total, std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
      std::vector<Visitor> workers(thread_count(), proto);
      dual.run(bound, workers);
      for (const auto& w : workers)
        for (std::size_t c = 0; c < order; ++c)
          if (w.search.norm[c] >= 0) total.offer(c, w.search.coeffs.data() + c * n, w.search.norm[c]);
      if (std::all_of(total.norm.begin(), total.norm.end(), [](std::int64_t v) { return v >= 0; })) break;
      bound *= 2;
    }
  }
  const std::int64_t scale = order > 1 ? DualEnumeration(group).enumerator().scale() : 1;
  std::vector<CosetClass> out(order);
  for (std::size_t c = 0; c < order; ++c) {
    CosetClass& cc = out[c];
    cc.index = c;
    cc.components = group.element(c);
    cc.leader_coefficients.assign(total.coeffs.begin() + c * n, total.coeffs.begin() + (c + 1) * n);
    cc.leader = group.dual_vector(cc.leader_coefficients);
    cc.leader_norm = ratio(total.norm[c], scale);
    cc.group_order = group.element_order(c);
    cc.negative = group.negate(c);
    cc.is_self_negative = cc.negative == c;
  }
  std::sort(out.begin(), out.end(), [](const CosetClass& a, const CosetClass& b) {
    if (a.leader_norm != b.leader_norm) return a.leader_norm < b.leader_norm;
    if (a.group_order != b.group_order) return a.group_order < b.group_order;
    return a.leader_coefficients < b.leader_coefficients;
  });
  return out;
}

std::vector<ClassTableRow> class_table(const std::vector<CosetClass>& classes) {
  std::map<std::pair<Rational, std::uint64_t>, std::uint64_t> groups;
  for (const auto& c : classes) ++groups[{c.leader_norm, c.group_order}];
  std::vector<ClassTableRow> rows;
  for (const auto& [key, count] : groups) {
    ClassTableRow r;
    r.norm = key.first;
    r.order = key.second;
    r.paired = key.second > 2;
    r.count = r.paired ? count / 2 : count;
    rows.push_back(r);
  }
  return rows;
}

std::vector<ClassTableRow> class_table(const Lattice& l, std::uint64_t order_bound) {
  return class_table(coset_classes(l, order_bound));
}

}  // namespace latnab
