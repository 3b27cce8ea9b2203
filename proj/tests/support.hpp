#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "slicestem/linalg.hpp"

namespace testing_support {

using slicestem::BigInt;
using Dense = std::vector<std::vector<BigInt>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<BigInt>(c, 0)); }

inline Dense identity(std::size_t n) {
  Dense m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense out = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline Dense random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Dense m = zeros(r, c);
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

/// A random unimodular matrix together with its inverse, built from
/// elementary row operations.
inline std::pair<Dense, Dense> random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  Dense u = identity(n), inv = identity(n);
  if (n < 2) return {u, inv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coeff(rng);
    // u <- E u with E = I + c e_ij ; inv <- inv E^{-1}
    for (std::size_t k = 0; k < n; ++k) u[i][k] += c * u[j][k];
    for (std::size_t k = 0; k < n; ++k) inv[k][j] -= c * inv[k][i];
  }
  return {u, inv};
}

/// Determinant by cofactor expansion along the first row.
inline BigInt cofactor_det(const Dense& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Dense minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const BigInt term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k x k
/// minors, d_k = D_k / D_{k-1}. Only for small matrices.
inline std::vector<BigInt> determinantal_invariant_factors(const Dense& m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Dense sub;
        for (auto i : r) {
          std::vector<BigInt> row;
          for (auto j : c) row.push_back(m[i][j]);
          sub.push_back(std::move(row));
        }
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), BigInt(cofactor_det(sub)).get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(BigInt(g / prev));
    prev = g;
  }
  return out;
}

/// Textbook dense Smith normal form: move the smallest nonzero entry to the
/// pivot, clear its row and column by division with remainder, and fix
/// divisibility by adding a row when needed.
inline std::vector<BigInt> textbook_snf(Dense a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

inline slicestem::linalg::SparseIntMatrix sparse(const Dense& d, std::size_t cols) {
  return slicestem::linalg::SparseIntMatrix::from_dense(d, cols);
}

}  // namespace testing_support
