#pragma once

// Test-only reference computations. None of these touch the Jacobi solver or
// the spectral exponential they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "pst/spectral.hpp"

namespace oracle {

using Dense = std::vector<std::vector<std::complex<double>>>;

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x,
/// by the Sturm sequence of leading principal minors.
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b2 = i ? off[i - 1] * off[i - 1] : 0.0;
    q = diag[i] - x - (i ? b2 / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                                   const std::vector<double>& off) {
  double bound = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = std::abs(diag[i]);
    if (i) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    bound = std::max(bound, r);
  }
  std::vector<double> out;
  for (int k = 0; k < static_cast<int>(diag.size()); ++k) {
    double lo = -bound - 1.0, hi = bound + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(diag, off, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

/// e^{itH} by scaling and squaring of a truncated Taylor series.
inline Dense expm_taylor(const pst::RealSymmetricMatrix& h, double t) {
  const std::size_t n = h.size();
  const double norm = h.max_abs() * static_cast<double>(n) * std::abs(t);
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.25) ++squarings;
  const double scale = t * std::ldexp(1.0, -squarings);
  Dense x(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i][j] = std::complex<double>(0.0, scale * h(i, j));
  Dense result(n, std::vector<std::complex<double>>(n));
  Dense term(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0;
  for (int k = 1; k <= 30; ++k) {
    term = multiply(term, x);
    for (auto& row : term)
      for (auto& z : row) z /= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

/// Random symmetric matrix with entries uniform in [-scale, scale].
inline pst::RealSymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n,
                                                 double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  pst::RealSymmetricMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) m.set(j, k, u(rng));
  return m;
}

}  // namespace oracle
