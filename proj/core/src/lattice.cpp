#include "latnab/lattice.hpp"

#include <mutex>
#include <sstream>

namespace latnab {

struct Lattice::Cache {
  std::once_flag canonical_once;
  CanonicalBasis canonical;
  std::once_flag inverse_once;
  RationalMatrix inverse;
};

Rational Ambient::inner(std::span<const Rational> a, std::span<const Rational> b) const {
  if (a.size() != dim() || b.size() != dim()) throw DomainError("vector length does not match the ambient dimension");
  if (euclidean) return dot(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    Rational t = 0;
    for (std::size_t j = 0; j < dim(); ++j)
      if (b[j] != 0) t += form(i, j) * b[j];
    s += a[i] * t;
  }
  return s;
}

AmbientPtr euclidean_ambient(std::size_t dim) {
  auto a = std::make_shared<Ambient>();
  a->form = RationalMatrix::identity(dim);
  a->euclidean = true;
  return a;
}

AmbientPtr form_ambient(const RationalMatrix& form) {
  auto a = std::make_shared<Ambient>();
  a->form = form;
  a->euclidean = form == RationalMatrix::identity(form.rows());
  return a;
}

namespace {

RationalMatrix gram_in(const Ambient& amb, const RationalMatrix& b) {
  const std::size_t n = b.rows();
  RationalMatrix g(n, n);
  RationalMatrix fb = amb.euclidean ? b : b * amb.form;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = dot(fb.row(i), b.row(j));
      g(j, i) = g(i, j);
    }
  return g;
}

// Rational square root if it exists.
bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = ratio(n, d);
  return true;
}

void check_positive_definite(const RationalMatrix& g) {
  if (!is_symmetric(g)) throw DomainError("Gram matrix is not symmetric");
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    RationalMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
    if (det(minor) <= 0) throw DomainError("Gram matrix is not positive definite");
  }
}

}  // namespace

Lattice::Lattice(AmbientPtr ambient, RationalMatrix basis, std::string name)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  if (!ambient_) throw DomainError("lattice without ambient space");
  if (basis_.rows() == 0) throw DomainError("lattice of dimension 0");
  if (!basis_.is_square() || basis_.cols() != ambient_->dim())
    throw DomainError("basis must be square and match the ambient dimension");
  gram_ = gram_in(*ambient_, basis_);
  det_ = det(gram_);
  if (det_ <= 0) throw DomainError("basis rows are linearly dependent");
}

Lattice Lattice::from_basis(const RationalMatrix& rows, std::string name) {
  if (!rows.is_square()) throw DomainError("basis must have as many rows as coordinates");
  return Lattice(euclidean_ambient(rows.cols()), rows, std::move(name));
}

Lattice Lattice::from_basis(const std::vector<LatticeVector>& rows, std::string name) {
  return from_basis(RationalMatrix::from_rows(rows), std::move(name));
}

Lattice Lattice::gram_only(const RationalMatrix& gram, std::string name) {
  check_positive_definite(gram);
  auto amb = std::make_shared<Ambient>();
  amb->form = gram;
  amb->euclidean = false;
  return Lattice(amb, RationalMatrix::identity(gram.rows()), std::move(name));
}

Lattice Lattice::from_gram(const RationalMatrix& gram, std::string name) {
  check_positive_definite(gram);
  const std::size_t n = gram.rows();
  // G = L D L^T with L unit lower triangular.
  RationalMatrix l = RationalMatrix::identity(n);
  RationalVector d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = gram(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k) * d[k];
    d[j] = s;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational t = gram(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k) * d[k];
      l(i, j) = t / d[j];
    }
  }
  RationalVector roots(n);
  for (std::size_t j = 0; j < n; ++j)
    if (!rational_sqrt(d[j], roots[j])) return gram_only(gram, std::move(name));
  RationalMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) b(i, j) = l(i, j) * roots[j];
  return from_basis(b, std::move(name));
}

Lattice Lattice::named(std::string name) const {
  Lattice copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

LatticeVector Lattice::combination(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() != dim()) throw DomainError("coefficient vector has wrong length");
  LatticeVector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coeffs[i] == 0) continue;
    Rational c(static_cast<long>(coeffs[i]));
    for (std::size_t j = 0; j < dim(); ++j) v[j] += c * basis_(i, j);
  }
  return v;
}

const RationalMatrix& Lattice::basis_inverse() const {
  std::call_once(cache_->inverse_once, [this] { cache_->inverse = inverse(basis_); });
  return cache_->inverse;
}

RationalVector Lattice::coordinates(const LatticeVector& v) const {
  if (v.size() != dim()) throw DomainError("vector length does not match the lattice dimension");
  return row_times(v, basis_inverse());
}

const CanonicalBasis& Lattice::canonical() const {
  std::call_once(cache_->canonical_once, [this] {
    auto [m, den] = clear_denominators(basis_);
    cache_->canonical = CanonicalBasis{hnf(m).h, den};
  });
  return cache_->canonical;
}

Lattice dual(const Lattice& l) {
  RationalMatrix b = inverse(l.gram()) * l.basis();
  return Lattice(l.ambient(), std::move(b), l.name().empty() ? std::string() : l.name() + "#");
}

bool contains(const Lattice& l, const LatticeVector& v) {
  for (const auto& c : l.coordinates(v))
    if (!is_integer(c)) return false;
  return true;
}

bool is_integral(const Lattice& l) {
  for (const auto& g : l.gram().data())
    if (!is_integer(g)) return false;
  return true;
}

bool is_even(const Lattice& l) {
  if (!is_integral(l)) return false;
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (mpz_odd_p(l.gram()(i, i).get_num_mpz_t())) return false;
  return true;
}

bool equals(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) return false;
  if (!(*a.ambient() == *b.ambient())) return false;
  if (a.determinant() != b.determinant()) return false;
  return a.canonical() == b.canonical();
}

Integer index_in(const Lattice& sub, const Lattice& sup) {
  if (sub.dim() != sup.dim() || !(*sub.ambient() == *sup.ambient()))
    throw DomainError("index_in: lattices live in different spaces");
  RationalMatrix c = sub.basis() * sup.basis_inverse();
  for (const auto& x : c.data())
    if (!is_integer(x)) throw DomainError("index_in: first lattice is not contained in the second");
  Rational d = det(c);
  return abs(d.get_num());
}

Lattice adjoin(const Lattice& l, const std::vector<LatticeVector>& xs) {
  const std::size_t n = l.dim();
  RationalMatrix gens(n + xs.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = l.basis()(i, j);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].size() != n) throw DomainError("adjoin: vector length does not match the lattice dimension");
    for (std::size_t j = 0; j < n; ++j) gens(n + k, j) = xs[k][j];
  }
  auto [m, den] = clear_denominators(gens);
  IntegerMatrix h = hnf_of_generators(m);
  RationalMatrix b = to_rational(h);
  Rational inv(1);
  inv /= den;
  return Lattice(l.ambient(), scaled(b, inv));
}

Lattice orthogonal_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.dim() + b.dim();
  RationalMatrix basis(n, n), form(n, n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      basis(i, j) = a.basis()(i, j);
      form(i, j) = a.ambient()->form(i, j);
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      basis(a.dim() + i, a.dim() + j) = b.basis()(i, j);
      form(a.dim() + i, a.dim() + j) = b.ambient()->form(i, j);
    }
  return Lattice(form_ambient(form), std::move(basis));
}

Lattice rescale(const Lattice& l, const Rational& factor) {
  if (factor <= 0) throw DomainError("rescale: factor must be positive");
  Rational root;
  bool sq = mpz_perfect_square_p(factor.get_num_mpz_t()) && mpz_perfect_square_p(factor.get_den_mpz_t());
  if (l.ambient()->euclidean && sq) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), factor.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), factor.get_den_mpz_t());
    root = ratio(n, d);
    return Lattice(l.ambient(), scaled(l.basis(), root));
  }
  auto amb = std::make_shared<Ambient>();
  amb->form = scaled(l.ambient()->form, factor);
  amb->euclidean = false;
  return Lattice(amb, l.basis());
}

Lattice change_basis(const Lattice& l, const IntegerMatrix& u) {
  Integer d = det(u);
  if (d != 1 && d != -1) throw DomainError("change_basis: matrix is not unimodular");
  return Lattice(l.ambient(), to_rational(u) * l.basis(), l.name());
}

Lattice neighbor(const Lattice& l, const LatticeVector& x) {
  if (contains(l, x)) throw NeighborError(NeighborError::Kind::NotProperCoset, "neighbor: vector lies in the lattice (not a proper coset)");
  LatticeVector twice(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) twice[i] = 2 * x[i];
  if (!contains(l, twice)) throw NeighborError(NeighborError::Kind::IndexNotTwo, "neighbor: twice the vector is not in the lattice (index is not 2)");
  Lattice m = adjoin(l, {x});
  if (!is_integral(m)) throw NeighborError(NeighborError::Kind::NonIntegral, "neighbor: resulting lattice is not integral");
  if (index_in(l, m) != 2) throw Error("neighbor: internal index check failed");
  return m;
}

LatticeVector parse_vector(std::string_view text) {
  LatticeVector v;
  std::string token;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '[' || c == ']' || c == '(' || c == ')') {
      if (!token.empty()) v.push_back(parse_rational(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) v.push_back(parse_rational(token));
  if (v.empty()) throw DomainError("empty vector");
  return v;
}

std::string format_vector(std::span<const Rational> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i].get_str();
  }
  return os.str();
}

}  // namespace latnab
