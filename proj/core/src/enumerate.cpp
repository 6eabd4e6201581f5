#include "latnab/enumerate.hpp"

#include <cmath>
#include <limits>

namespace latnab {

namespace {

constexpr std::int64_t kEntryLimit = std::int64_t(1) << 40;

std::int64_t to_i64(const Integer& z, const char* what) {
  if (!z.fits_slong_p() || abs(z) >= kEntryLimit) throw BudgetExceeded(std::string(what) + " exceeds the 64-bit enumeration range");
  return z.get_si();
}

void gso(std::size_t n, const std::vector<std::int64_t>& g, std::vector<double>& mu, std::vector<double>& r) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double s = static_cast<double>(g[i * n + j]);
      for (std::size_t k = 0; k < j; ++k) s -= mu[j * n + k] * mu[i * n + k] * r[k];
      mu[i * n + j] = s / r[j];
    }
    double s = static_cast<double>(g[i * n + i]);
    for (std::size_t k = 0; k < i; ++k) s -= mu[i * n + k] * mu[i * n + k] * r[k];
    r[i] = s;
  }
}

}  // namespace

ReducedGram reduce_gram(const RationalMatrix& gram) {
  if (!gram.is_square() || gram.rows() == 0) throw DomainError("reduce_gram: Gram matrix must be square and nonempty");
  auto [m, den] = clear_denominators(gram);
  ReducedGram out;
  const std::size_t n = gram.rows();
  out.n = n;
  out.scale = to_i64(den, "Gram denominator");
  out.gram.resize(n * n);
  out.transform.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.transform[i * n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) out.gram[i * n + j] = to_i64(m(i, j), "Gram entry");
  }
  auto& g = out.gram;
  auto& u = out.transform;
  std::vector<double> mu(n * n, 0.0), r(n, 0.0);
  const double delta = 0.99;
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw Error("reduce_gram: LLL did not terminate");
    gso(n, g, mu, r);
    for (std::size_t jj = k; jj-- > 0;) {
      double q_real = std::nearbyint(mu[k * n + jj]);
      if (q_real == 0.0) continue;
      const std::int64_t q = static_cast<std::int64_t>(q_real);
      const std::int64_t gkk = g[k * n + k] - 2 * q * g[k * n + jj] + q * q * g[jj * n + jj];
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        g[k * n + i] -= q * g[jj * n + i];
        g[i * n + k] = g[k * n + i];
      }
      g[k * n + k] = gkk;
      for (std::size_t i = 0; i < n; ++i) u[k * n + i] -= q * u[jj * n + i];
      for (std::size_t i = 0; i < jj; ++i) mu[k * n + i] -= q_real * mu[jj * n + i];
      mu[k * n + jj] -= q_real;
      if (std::abs(g[k * n + k]) >= kEntryLimit) throw BudgetExceeded("reduce_gram: entries overflow during reduction");
    }
    const double m1 = mu[k * n + k - 1];
    if (r[k] < (delta - m1 * m1) * r[k - 1]) {
      for (std::size_t i = 0; i < n; ++i) std::swap(g[k * n + i], g[(k - 1) * n + i]);
      for (std::size_t i = 0; i < n; ++i) std::swap(g[i * n + k], g[i * n + k - 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(u[k * n + i], u[(k - 1) * n + i]);
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }
  return out;
}

Enumerator::Enumerator(const RationalMatrix& gram) : red_(reduce_gram(gram)) {
  const std::size_t n = red_.n;
  d_.assign(n, 0.0);
  l_.assign(n * n, 0.0);
  std::vector<double> lower(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = static_cast<double>(red_.at(j, j));
    for (std::size_t k = 0; k < j; ++k) s -= lower[j * n + k] * lower[j * n + k] * d_[k];
    if (!(s > 0)) throw DomainError("Gram matrix is not positive definite");
    d_[j] = s;
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = static_cast<double>(red_.at(i, j));
      for (std::size_t k = 0; k < j; ++k) t -= lower[i * n + k] * lower[j * n + k] * d_[k];
      lower[i * n + j] = t / s;
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) l_[j * n + i] = lower[j * n + i];
}

std::int64_t Enumerator::scaled_bound(const Rational& bound) const {
  if (bound <= 0) return 0;
  Rational b = bound * red_.scale;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  if (f >= (Integer(1) << 52)) throw BudgetExceeded("norm bound too large for enumeration");
  return f.get_si();
}

void Enumerator::to_original(const std::int64_t* y, std::int64_t* out) const {
  const std::size_t n = red_.n;
  for (std::size_t j = 0; j < n; ++j) out[j] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += y[i] * red_.transform[i * n + j];
  }
}

std::int64_t Enumerator::min_diagonal() const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < red_.n; ++i) best = std::min(best, red_.at(i, i));
  return best;
}

std::vector<Enumerator::Task> Enumerator::tasks(std::int64_t bound) const {
  std::vector<Task> out;
  const double fbound = static_cast<double>(bound) + 0.5;
  for (std::size_t k = red_.n; k-- > 0;) {
    auto hi = static_cast<std::int64_t>(std::floor(std::sqrt(fbound / d_[k])));
    for (std::int64_t v = 1; v <= hi; ++v) out.push_back({k, v});
  }
  return out;
}

}  // namespace latnab
