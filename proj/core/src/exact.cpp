#include "latnab/exact.hpp"

#include <algorithm>
#include <cctype>

namespace latnab {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// row_a <- row_a - q * row_b
void sub_row(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

void sub_col(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Replaces rows (r, i) by (s*r + t*i, -y*r + x*i); a unimodular 2x2 step.
void combine_rows(IntegerMatrix& m, std::size_t r, std::size_t i, const Integer& s, const Integer& t,
                  const Integer& x, const Integer& y) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer a = m(r, j);
    Integer b = m(i, j);
    m(r, j) = s * a + t * b;
    m(i, j) = x * b - y * a;
  }
}

// Row echelon HNF; optionally tracks the transform. Returns the number of pivots.
std::size_t hnf_in_place(IntegerMatrix& h, IntegerMatrix* u) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  Integer g, s, t, x, y;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, col) == 0) continue;
      if (h(r, col) == 0) {
        h.swap_rows(r, i);
        if (u) u->swap_rows(r, i);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, col).get_mpz_t(), h(i, col).get_mpz_t());
      x = h(r, col) / g;
      y = h(i, col) / g;
      combine_rows(h, r, i, s, t, x, y);
      if (u) combine_rows(*u, r, i, s, t, x, y);
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      negate_row(h, r);
      if (u) negate_row(*u, r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      Integer q = floor_div(h(k, col), h(r, col));
      sub_row(h, k, r, q);
      if (u) sub_row(*u, k, r, q);
    }
    ++r;
  }
  return r;
}

// Fraction-free elimination to upper triangular form. Returns rank; sign tracks row swaps.
std::size_t bareiss_in_place(IntegerMatrix& a, std::size_t active_cols, int& sign) {
  const std::size_t m = a.rows();
  Integer prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t col = 0; col < active_cols && r < m; ++col) {
    std::size_t piv = r;
    while (piv < m && a(piv, col) == 0) ++piv;
    if (piv == m) continue;
    if (piv != r) {
      a.swap_rows(piv, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j) {
        a(i, j) = (a(i, j) * a(r, col) - a(i, col) * a(r, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, col) = 0;
    }
    prev = a(r, col);
    ++r;
  }
  return r;
}

IntegerMatrix scale_rows_to_integers(const RationalMatrix& m, std::vector<Integer>& scales) {
  IntegerMatrix out(m.rows(), m.cols());
  scales.assign(m.rows(), Integer(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = denominator_lcm(m.row(i));
    scales[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational: '" + std::string(text) + "'");
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  if (!s.empty() && s.front() == '-') q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values)
    if (v.get_den() != 1) l = lcm(l, v.get_den());
  return l;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product dimension mismatch");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product dimension mismatch");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix scaled(const RationalMatrix& m, const Rational& factor) {
  RationalMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= factor;
  return out;
}

RationalVector row_times(std::span<const Rational> v, const RationalMatrix& m) {
  if (v.size() != m.rows()) throw DomainError("vector/matrix dimension mismatch");
  RationalVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DomainError("dot product dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

std::pair<IntegerMatrix, Integer> clear_denominators(const RationalMatrix& m) {
  Integer l = denominator_lcm(m.data());
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  return {std::move(out), l};
}

bool is_symmetric(const RationalMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

Integer det(const IntegerMatrix& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  int sign = 1;
  if (bareiss_in_place(a, n, sign) < n) return 0;
  return sign * a(n - 1, n - 1);
}

Rational det(const RationalMatrix& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  std::vector<Integer> scales;
  IntegerMatrix a = scale_rows_to_integers(m, scales);
  Rational d(det(a));
  Integer prod = 1;
  for (const auto& s : scales) prod *= s;
  d /= prod;
  return d;
}

RationalVector solve(const RationalMatrix& m, std::span<const Rational> v) {
  if (!m.is_square()) throw DomainError("solve requires a square matrix");
  const std::size_t n = m.rows();
  if (v.size() != n) throw DomainError("solve: right-hand side has wrong length");
  RationalMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = v[i];
  }
  std::vector<Integer> scales;
  IntegerMatrix a = scale_rows_to_integers(aug, scales);
  int sign = 1;
  if (bareiss_in_place(a, n, sign) < n) throw DomainError("solve: singular matrix");
  RationalVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(a(ii, n));
    for (std::size_t j = ii + 1; j < n; ++j)
      if (a(ii, j) != 0) acc -= Rational(a(ii, j)) * x[j];
    acc /= Rational(a(ii, ii));
    x[ii] = acc;
  }
  return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw DomainError("inverse: singular matrix");
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    Rational p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (a(c, j) != 0) a(i, j) -= f * a(c, j);
        if (inv(c, j) != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  int sign = 1;
  return bareiss_in_place(a, a.cols(), sign);
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<Integer> scales;
  return rank(scale_rows_to_integers(m, scales));
}

HermiteForm hnf(const IntegerMatrix& m) {
  HermiteForm out{m, IntegerMatrix::identity(m.rows())};
  if (hnf_in_place(out.h, &out.u) < m.rows()) throw DomainError("hnf: matrix does not have full row rank");
  return out;
}

IntegerMatrix hnf_of_generators(const IntegerMatrix& generators) {
  IntegerMatrix h = generators;
  std::size_t r = hnf_in_place(h, nullptr);
  IntegerMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

bool is_hnf(const IntegerMatrix& h) {
  std::size_t last_pivot = 0;
  bool first = true;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) return false;
    if (!first && p <= last_pivot) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last_pivot = p;
    first = false;
  }
  return true;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < d.rows(); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm snf(const IntegerMatrix& m) {
  if (!m.is_square()) throw DomainError("snf requires a square matrix");
  const std::size_t n = m.rows();
  SmithForm f{m, IntegerMatrix::identity(n), IntegerMatrix::identity(n)};
  IntegerMatrix& d = f.d;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = n, pj = n;
      Integer best;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer a = abs(d(i, j));
          if (pi == n || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == n) throw DomainError("snf: singular matrix");
      d.swap_rows(t, pi);
      f.s.swap_rows(t, pi);
      swap_cols(d, t, pj);
      swap_cols(f.t, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        sub_row(d, i, t, q);
        sub_row(f.s, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        sub_col(d, j, t, q);
        sub_col(f.t, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < n && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          Integer r;
          mpz_tdiv_r(r.get_mpz_t(), d(i, j).get_mpz_t(), d(t, t).get_mpz_t());
          if (r != 0) {
            sub_row(d, t, i, Integer(-1));
            sub_row(f.s, t, i, Integer(-1));
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(f.s, t);
    }
  }
  return f;
}

}  // namespace latnab
