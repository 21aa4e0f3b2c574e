#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "vcond/mp.hpp"

namespace vcond::testing {

/// Deterministic generator so every run sees the same random cases.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

/// |a - b| <= tol
inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

/// log2 |a - b|, for diagnostics in failure messages.
inline double log2_err(const Real& a, const Real& b) {
  Real d = abs(a - b);
  if (d.is_zero()) return -1e9;
  return static_cast<double>(exponent2(d));
}

}  // namespace vcond::testing

namespace vcond::testing {

/// Row-major dense complex matrix used by test oracles.
using DenseRows = std::vector<std::vector<Complex>>;

/// Solves A y = b by Gaussian elimination with partial pivoting.
inline std::vector<Complex> gauss_solve(DenseRows a, std::vector<Complex> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (norm(a[r][c]) > norm(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      Complex f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Complex> y(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * y[k];
    y[i] = s / a[i][i];
  }
  return y;
}

/// Nodes-by-powers Vandermonde matrix, entry (j, k) = z_j^k.
inline DenseRows node_rows_vandermonde(const std::vector<Complex>& z) {
  DenseRows v(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    Complex p(Real(z[j].bits()), Real(z[j].bits()));
    p.re = 1.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      v[j].push_back(p);
      p = p * z[j];
    }
  }
  return v;
}

/// n+1 angles whose cyclic gaps are all at least eps, with random offset.
inline std::vector<double> random_separated_angles(long n, double eps) {
  std::vector<double> gaps(n + 1);
  double total = 0;
  for (double& g : gaps) {
    g = -std::log(uniform(1e-12, 1.0));
    total += g;
  }
  double spare = 2 * M_PI - (n + 1) * eps;
  std::vector<double> angles;
  double at = uniform(0.0, 2 * M_PI);
  for (long j = 0; j <= n; ++j) {
    angles.push_back(std::fmod(at, 2 * M_PI));
    at += eps + spare * gaps[j] / total;
  }
  return angles;
}

}  // namespace vcond::testing
