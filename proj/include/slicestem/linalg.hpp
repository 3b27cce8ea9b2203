#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicestem/abelian_group.hpp"

namespace slicestem::linalg {

using DenseIntMatrix = std::vector<std::vector<BigInt>>;

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  BigInt value;
};

/// Integer matrix in coordinate form. Entries are kept sorted by (row, col)
/// with no duplicates and no stored zeros, so equality is structural.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Duplicate positions are summed, zeros dropped. Throws on out-of-range indices.
  static SparseIntMatrix from_entries(std::size_t rows, std::size_t cols,
                                      std::vector<MatrixEntry> entries);
  static SparseIntMatrix from_dense(const DenseIntMatrix& dense, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  BigInt at(std::size_t row, std::size_t col) const;
  DenseIntMatrix to_dense() const;

  SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

struct SmithForm {
  /// d_1 | d_2 | ... | d_r, all positive, r = rank.
  std::vector<BigInt> invariant_factors;
  /// When requested: left * M * right = diag(invariant_factors), both unimodular.
  std::optional<DenseIntMatrix> left;
  std::optional<DenseIntMatrix> right;
};

/// Integral Smith normal form. Without transforms a sparse elimination with
/// unit pivots runs first and only the leftover block is reduced densely.
SmithForm smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false);

std::size_t rank(const SparseIntMatrix& m);

/// Smith form over Z localized at p: the p-adic valuations of the invariant
/// factors, one entry per unit of rank, ascending. Sparse elimination that
/// uses any entry of minimal valuation as pivot.
std::vector<unsigned> local_elementary_divisors(const SparseIntMatrix& m, unsigned long p);

/// Largest K with p^K below 2^62.
unsigned max_word_exponent(unsigned long p);

/// Smith form over Z/p^K in machine words: valuations (< K) of the elementary
/// divisors that survive reduction mod p^K, ascending. Divisors of valuation
/// >= K are invisible, so the count is a lower bound for the rank.
std::vector<unsigned> elementary_divisors_mod_prime_power(const SparseIntMatrix& m, unsigned long p,
                                                         unsigned exponent);

class ChainComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p-part of ker(d_out) / im(d_in), with the free rank reported exactly.
/// Matrices act on column vectors: d_in is n x a, d_out is b x n.
AbelianPGroup chain_homology(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out,
                             unsigned long p);

struct CochainHomologyStats {
  std::size_t certified = 0;        // differentials settled in machine words
  std::size_t exact_fallbacks = 0;  // differentials redone over Z_(p)
};

/// p-parts of H^0..H^S of the cochain complex C^0 -> C^1 -> ... with
/// d[s]: C^s -> C^{s+1}. Each d[s] is first reduced mod p^K in machine words;
/// its rank is accepted only when it meets the bound dim C^s - rank(d[s-1]),
/// which makes the count (and hence every valuation) exact. Otherwise that
/// differential is redone with local_elementary_divisors.
std::vector<AbelianPGroup> cochain_homology(const std::vector<SparseIntMatrix>& d, unsigned long p,
                                            CochainHomologyStats* stats = nullptr);

DenseIntMatrix dense_product(const DenseIntMatrix& a, const DenseIntMatrix& b);
BigInt determinant(DenseIntMatrix m);

}  // namespace slicestem::linalg
