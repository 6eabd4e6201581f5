#include "latnab/venkov.hpp"

#include "latnab/catalog.hpp"
#include "latnab/shells.hpp"

namespace latnab {

namespace {

// Unimodular V whose first row is the primitive integer vector w.
IntegerMatrix completion(const std::vector<Integer>& w) {
  const std::size_t n = w.size();
  // Row operations U reduce the column w^T to (1, 0, ..., 0)^T; then
  // U^-1 has first column w^T and V = (U^-1)^T.
  std::vector<Integer> col = w;
  IntegerMatrix u = IntegerMatrix::identity(n);
  Integer g, s, t;
  for (std::size_t i = 1; i < n; ++i) {
    if (col[i] == 0) continue;
    if (col[0] == 0) {
      std::swap(col[0], col[i]);
      u.swap_rows(0, i);
      continue;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), col[0].get_mpz_t(), col[i].get_mpz_t());
    Integer x = col[0] / g, y = col[i] / g;
    for (std::size_t j = 0; j < n; ++j) {
      Integer a = u(0, j), b = u(i, j);
      u(0, j) = s * a + t * b;
      u(i, j) = x * b - y * a;
    }
    col[0] = g;
    col[i] = 0;
  }
  if (col[0] == -1) {
    for (std::size_t j = 0; j < n; ++j) u(0, j) = -u(0, j);
    col[0] = 1;
  }
  if (col[0] != 1) throw DomainError("venkov: vector is not primitive");
  RationalMatrix inv = inverse(to_rational(u));
  IntegerMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = inv(j, i).get_num();
  return v;
}

Rational form(const RationalMatrix& g, const std::vector<Integer>& x, const std::vector<Integer>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += Rational(x[i] * y[j]) * g(i, j);
  }
  return s;
}

}  // namespace

VenkovResult venkov_project(const Lattice& l, const LatticeVector& e) {
  const std::size_t n = l.dim();
  if (n < 2) throw DomainError("venkov: dimension must be at least 2");
  if (!is_even(l)) throw DomainError("venkov: lattice is not even integral");
  if (minimum(l) != 4) throw DomainError("venkov: lattice minimum is not 4");
  if (!contains(l, e) || l.norm(e) != 4) throw DomainError("venkov: e is not a minimal vector");
  const RationalMatrix& g = l.gram();
  RationalVector ce_q = l.coordinates(e);
  std::vector<Integer> ce(n);
  for (std::size_t i = 0; i < n; ++i) ce[i] = ce_q[i].get_num();
  std::vector<Integer> residue(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> unit(n, Integer(0));
    unit[i] = 1;
    residue[i] = form(g, unit, ce).get_num();
  }
  int assumption = 0;
  std::size_t odd = n;
  for (std::size_t i = 0; i < n; ++i)
    if (mpz_odd_p(residue[i].get_mpz_t())) {
      odd = i;
      break;
    }
  if (odd < n) {
    assumption = 1;
  } else {
    for (std::size_t i = 0; i < n && !assumption; ++i) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), residue[i].get_mpz_t(), 4);
      if (r == 2) assumption = 2;
    }
  }
  if (!assumption) throw DomainError("venkov: neither assumption of the projection lemma holds");

  // basis of L_e' in L-coordinates
  IntegerMatrix c = IntegerMatrix::identity(n);
  if (assumption == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == odd) {
        c(i, i) = 2;
      } else if (mpz_odd_p(residue[i].get_mpz_t())) {
        c(i, odd) = 1;
      }
    }
  }
  RationalMatrix cq = to_rational(c);
  RationalVector w_q = row_times(RationalVector(ce.begin(), ce.end()), inverse(cq));
  std::vector<Integer> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(w_q[i])) throw Error("venkov: e is not in L_e'");
    w[i] = w_q[i].get_num();
  }
  IntegerMatrix basis = completion(w) * c;  // first row = e
  const Rational ee = 4;
  std::vector<std::vector<Integer>> rows(n - 1);
  std::vector<Rational> pe(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    rows[i - 1] = basis.row_vector(i);
    pe[i - 1] = form(g, rows[i - 1], ce);
  }
  RationalMatrix pg(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i; j + 1 < n; ++j) {
      pg(i, j) = form(g, rows[i], rows[j]) - pe[i] * pe[j] / ee;
      pg(j, i) = pg(i, j);
    }
  VenkovResult out{Lattice::gram_only(pg), assumption, 0};
  out.det_ratio = out.projected.determinant() / l.determinant();
  const Rational expected = assumption == 1 ? Rational(1) : ratio(1, 4);
  if (out.det_ratio != expected) throw Error("venkov: determinant ratio differs from the lemma");
  if (!is_integral(out.projected) || is_even(out.projected)) throw Error("venkov: projection is not odd integral");
  if (minimum(out.projected) < 3) throw Error("venkov: projection has minimum below 3");
  return out;
}

Lattice catalog_O16() { return catalog("O16"); }

}  // namespace latnab
