#include "slicestem/linalg.hpp"

#include <algorithm>
#include <map>
#include <cstdint>
#include <set>
#include <tuple>
#include <utility>

namespace slicestem::linalg {

SparseIntMatrix SparseIntMatrix::from_entries(std::size_t rows, std::size_t cols,
                                              std::vector<MatrixEntry> entries) {
  std::map<std::pair<std::size_t, std::size_t>, BigInt> merged;
  for (auto& e : entries) {
    if (e.row >= rows || e.col >= cols)
      throw std::out_of_range("matrix entry (" + std::to_string(e.row) + "," +
                              std::to_string(e.col) + ") outside " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    merged[{e.row, e.col}] += e.value;
  }
  SparseIntMatrix m(rows, cols);
  m.entries_.reserve(merged.size());
  for (auto& [pos, v] : merged)
    if (v != 0) m.entries_.push_back({pos.first, pos.second, std::move(v)});
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const DenseIntMatrix& dense, std::size_t cols) {
  const std::size_t rows = dense.size();
  if (rows > 0) cols = dense.front().size();
  SparseIntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (dense[i].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (dense[i][j] != 0) m.entries_.push_back({i, j, dense[i][j]});
  }
  return m;
}

BigInt SparseIntMatrix::at(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(row, col),
                             [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& p) {
                               return std::make_pair(e.row, e.col) < p;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

DenseIntMatrix SparseIntMatrix::to_dense() const {
  DenseIntMatrix d(rows_, std::vector<BigInt>(cols_, 0));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  // rhs rows as lists
  std::vector<std::vector<const MatrixEntry*>> rhs_rows(rhs.rows_);
  for (const auto& e : rhs.entries_) rhs_rows[e.row].push_back(&e);
  std::vector<MatrixEntry> out;
  for (const auto& e : entries_)
    for (const MatrixEntry* f : rhs_rows[e.col]) out.push_back({e.row, f->col, e.value * f->value});
  return from_entries(rows_, rhs.cols_, std::move(out));
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
    return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

DenseIntMatrix dense_product(const DenseIntMatrix& a, const DenseIntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b.front().size();
  DenseIntMatrix c(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

BigInt determinant(DenseIntMatrix m) {
  // Bareiss fraction-free elimination
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Diagonalizes the block a[0..rows) x [0..cols) into a divisibility chain.
/// Row operations are mirrored into `left`, column operations into `right`.
std::vector<BigInt> dense_smith(DenseIntMatrix& a, std::size_t rows, std::size_t cols,
                                DenseIntMatrix* left, DenseIntMatrix* right) {
  std::vector<BigInt> diag;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (left) std::swap((*left)[i], (*left)[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    if (right)
      for (auto& row : *right) std::swap(row[i], row[j]);
  };
  // row_i += q * row_k
  auto add_row = [&](std::size_t i, std::size_t k, const BigInt& q) {
    for (std::size_t j = 0; j < cols; ++j)
      if (a[k][j] != 0) a[i][j] += q * a[k][j];
    if (left)
      for (std::size_t j = 0; j < left->size(); ++j)
        if ((*left)[k][j] != 0) (*left)[i][j] += q * (*left)[k][j];
  };
  // col_j += q * col_k
  auto add_col = [&](std::size_t j, std::size_t k, const BigInt& q) {
    for (std::size_t i = 0; i < rows; ++i)
      if (a[i][k] != 0) a[i][j] += q * a[i][k];
    if (right)
      for (auto& row : *right)
        if (row[k] != 0) row[j] += q * row[k];
  };

  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || cmpabs(a[i][j], a[pi][pj]) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(k, pi);
    swap_cols(k, pj);

    for (;;) {
      bool clear = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        BigInt q = a[i][k] / a[k][k];
        if (q != 0) add_row(i, k, -q);
        if (a[i][k] != 0) clear = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        BigInt q = a[k][j] / a[k][k];
        if (q != 0) add_col(j, k, -q);
        if (a[k][j] != 0) clear = false;
      }
      if (!clear) {
        // a nonzero remainder is smaller than the pivot: move it into place
        std::size_t bi = k, bj = k;
        for (std::size_t i = k + 1; i < rows; ++i)
          if (a[i][k] != 0 && cmpabs(a[i][k], a[bi][bj]) < 0) bi = i, bj = k;
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[k][j] != 0 && cmpabs(a[k][j], a[bi][bj]) < 0) bi = k, bj = j;
        swap_rows(k, bi);
        swap_cols(k, bj);
        continue;
      }
      std::size_t bad_row = rows;
      for (std::size_t i = k + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[k][k].get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      add_row(k, bad_row, 1);
    }
    if (a[k][k] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[k][j] = -a[k][j];
      if (left)
        for (auto& x : (*left)[k]) x = -x;
    }
    diag.push_back(a[k][k]);
  }
  return diag;
}

DenseIntMatrix identity(std::size_t n) {
  DenseIntMatrix id(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

using SparseRow = std::vector<std::pair<std::size_t, BigInt>>;

BigInt row_value(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? it->second : BigInt(0);
}

/// Sparse Gaussian elimination restricted to +-1 pivots. Every such pivot
/// contributes an invariant factor 1; the rows/columns it touches leave the
/// problem. Returns the number of unit pivots and leaves the remainder in `rows`.
std::size_t eliminate_unit_pivots(std::vector<SparseRow>& rows, std::size_t ncols,
                                  std::vector<bool>& row_alive) {
  std::vector<std::set<std::size_t>> col_rows(ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

  std::set<std::pair<std::size_t, std::size_t>> queue;  // (count, col)
  std::vector<bool> queued(ncols, false);
  for (std::size_t c = 0; c < ncols; ++c)
    if (!col_rows[c].empty()) {
      queue.insert({col_rows[c].size(), c});
      queued[c] = true;
    }
  auto recount = [&](std::size_t c, std::size_t old_count) {
    if (!queued[c]) return;
    queue.erase({old_count, c});
    if (col_rows[c].empty()) queued[c] = false;
    else queue.insert({col_rows[c].size(), c});
  };

  std::size_t pivots = 0;
  std::vector<std::size_t> deferred;
  bool progress = true;
  while (progress) {
    progress = false;
    while (!queue.empty()) {
      const std::size_t c = queue.begin()->second;
      queue.erase(queue.begin());
      queued[c] = false;
      std::size_t best = rows.size();
      for (std::size_t r : col_rows[c]) {
        const BigInt v = row_value(rows[r], c);
        if ((v == 1 || v == -1) && (best == rows.size() || rows[r].size() < rows[best].size()))
          best = r;
      }
      if (best == rows.size()) {
        deferred.push_back(c);
        continue;
      }
      const SparseRow pivot_row = rows[best];
      const BigInt unit = row_value(pivot_row, c);
      std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
      for (std::size_t r : targets) {
        if (r == best) continue;
        const BigInt coef = row_value(rows[r], c) * unit;
        SparseRow merged;
        merged.reserve(rows[r].size() + pivot_row.size());
        auto a = rows[r].begin();
        auto b = pivot_row.begin();
        while (a != rows[r].end() || b != pivot_row.end()) {
          if (b == pivot_row.end() || (a != rows[r].end() && a->first < b->first)) {
            merged.push_back(std::move(*a));
            ++a;
          } else if (a == rows[r].end() || b->first < a->first) {
            const std::size_t col = b->first;
            const std::size_t old = col_rows[col].size();
            col_rows[col].insert(r);
            recount(col, old);
            merged.emplace_back(col, -coef * b->second);
            ++b;
          } else {
            BigInt v = a->second - coef * b->second;
            if (v == 0) {
              const std::size_t col = a->first;
              const std::size_t old = col_rows[col].size();
              col_rows[col].erase(r);
              recount(col, old);
            } else {
              merged.emplace_back(a->first, std::move(v));
            }
            ++a;
            ++b;
          }
        }
        rows[r] = std::move(merged);
      }
      for (const auto& [col, v] : rows[best]) {
        const std::size_t old = col_rows[col].size();
        col_rows[col].erase(best);
        recount(col, old);
      }
      rows[best].clear();
      row_alive[best] = false;
      ++pivots;
      progress = true;
    }
    // fill-in may have produced unit entries in columns we skipped
    for (std::size_t c : deferred)
      if (!col_rows[c].empty() && !queued[c]) {
        queue.insert({col_rows[c].size(), c});
        queued[c] = true;
      }
    deferred.clear();
    if (!progress) break;
  }
  return pivots;
}

}  // namespace

SmithForm smith_normal_form(const SparseIntMatrix& m, bool with_transforms) {
  SmithForm result;
  if (with_transforms) {
    DenseIntMatrix a = m.to_dense();
    DenseIntMatrix left = identity(m.rows());
    DenseIntMatrix right = identity(m.cols());
    result.invariant_factors = dense_smith(a, m.rows(), m.cols(), &left, &right);
    result.left = std::move(left);
    result.right = std::move(right);
    return result;
  }

  std::vector<SparseRow> rows(m.rows());
  for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value);
  std::vector<bool> alive(m.rows(), true);
  const std::size_t units = eliminate_unit_pivots(rows, m.cols(), alive);

  std::vector<std::size_t> live_rows;
  std::map<std::size_t, std::size_t> live_cols;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!alive[r] || rows[r].empty()) continue;
    live_rows.push_back(r);
    for (const auto& [c, v] : rows[r]) live_cols.emplace(c, 0);
  }
  std::size_t idx = 0;
  for (auto& [c, i] : live_cols) i = idx++;
  DenseIntMatrix rest(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : rows[live_rows[i]]) rest[i][live_cols[c]] = v;

  result.invariant_factors.assign(units, BigInt(1));
  auto tail = dense_smith(rest, live_rows.size(), live_cols.size(), nullptr, nullptr);
  result.invariant_factors.insert(result.invariant_factors.end(), tail.begin(), tail.end());
  return result;
}

std::vector<unsigned> local_elementary_divisors(const SparseIntMatrix& m, unsigned long p) {
  std::vector<SparseRow> rows(m.rows());
  for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value);
  std::vector<std::set<std::size_t>> col_rows(m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

  std::set<std::pair<std::size_t, std::size_t>> queue;  // (count, col)
  std::vector<bool> queued(m.cols(), false);
  auto enqueue = [&](std::size_t c) {
    if (queued[c] || col_rows[c].empty()) return;
    queue.insert({col_rows[c].size(), c});
    queued[c] = true;
  };
  auto touch = [&](std::size_t c, std::size_t old_count) {
    if (!queued[c]) return;
    queue.erase({old_count, c});
    if (col_rows[c].empty()) queued[c] = false;
    else queue.insert({col_rows[c].size(), c});
  };

  std::vector<unsigned> out;
  const BigInt prime(p);
  BigInt pk = 1;  // p^level
  std::size_t remaining = m.entries().size();
  for (unsigned level = 0; remaining > 0; ++level, pk *= prime) {
    const BigInt pk1 = pk * prime;
    auto at_level = [&](const BigInt& v) {
      return mpz_divisible_p(v.get_mpz_t(), pk.get_mpz_t()) && !mpz_divisible_p(v.get_mpz_t(), pk1.get_mpz_t());
    };
    for (std::size_t c = 0; c < col_rows.size(); ++c) enqueue(c);
    std::vector<std::size_t> deferred;
    bool progress = true;
    while (progress) {
      progress = false;
      while (!queue.empty()) {
        const std::size_t c = queue.begin()->second;
        queue.erase(queue.begin());
        queued[c] = false;
        std::size_t best = rows.size();
        for (std::size_t r : col_rows[c])
          if ((best == rows.size() || rows[r].size() < rows[best].size()) && at_level(row_value(rows[r], c)))
            best = r;
        if (best == rows.size()) {
          deferred.push_back(c);
          continue;
        }
        const SparseRow pivot_row = rows[best];
        const BigInt unit = row_value(pivot_row, c) / pk;
        const std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
        for (std::size_t r : targets) {
          if (r == best) continue;
          const BigInt coef = row_value(rows[r], c) / pk;
          SparseRow merged;
          merged.reserve(rows[r].size() + pivot_row.size());
          auto a = rows[r].begin();
          auto b = pivot_row.begin();
          while (a != rows[r].end() || b != pivot_row.end()) {
            if (b == pivot_row.end() || (a != rows[r].end() && a->first < b->first)) {
              merged.emplace_back(a->first, unit * a->second);
              ++a;
            } else if (a == rows[r].end() || b->first < a->first) {
              const std::size_t old = col_rows[b->first].size();
              col_rows[b->first].insert(r);
              touch(b->first, old);
              ++remaining;
              merged.emplace_back(b->first, -coef * b->second);
              ++b;
            } else {
              BigInt v = unit * a->second - coef * b->second;
              if (v == 0) {
                const std::size_t old = col_rows[a->first].size();
                col_rows[a->first].erase(r);
                touch(a->first, old);
                --remaining;
              } else {
                merged.emplace_back(a->first, std::move(v));
              }
              ++a;
              ++b;
            }
          }
          // strip the part of the row content prime to p
          BigInt g = 0;
          for (const auto& [col, v] : merged) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
          if (g != 0) {
            mpz_remove(g.get_mpz_t(), g.get_mpz_t(), prime.get_mpz_t());
            if (g != 1)
              for (auto& [col, v] : merged) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
          }
          rows[r] = std::move(merged);
        }
        for (const auto& [col, v] : rows[best]) {
          const std::size_t old = col_rows[col].size();
          col_rows[col].erase(best);
          touch(col, old);
          --remaining;
        }
        rows[best].clear();
        out.push_back(level);
        progress = true;
      }
      for (std::size_t c : deferred) enqueue(c);
      deferred.clear();
    }
    for (std::size_t c = 0; c < col_rows.size(); ++c)
      if (queued[c]) queue.erase({col_rows[c].size(), c}), queued[c] = false;
  }
  return out;
}

namespace {

using Word = std::uint64_t;
constexpr std::size_t kMarkowitzWindow = 8;
using WordRow = std::vector<std::pair<std::uint32_t, Word>>;

Word mulmod(Word a, Word b, Word m) { return Word((unsigned __int128)a * b % m); }

Word inverse_mod(Word a, Word m) {
  // extended Euclid on signed 128-bit values
  __int128 r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw std::logic_error("inverse_mod: argument is not a unit");
  if (s0 < 0) s0 += m;
  return Word(s0);
}

}  // namespace

unsigned max_word_exponent(unsigned long p) {
  unsigned k = 0;
  unsigned __int128 q = 1;
  while (q * p < (unsigned __int128)1 << 62) q *= p, ++k;
  return k;
}

std::vector<unsigned> elementary_divisors_mod_prime_power(const SparseIntMatrix& m, unsigned long p,
                                                         unsigned exponent) {
  if (exponent == 0 || exponent > max_word_exponent(p))
    throw std::invalid_argument("elementary_divisors_mod_prime_power: exponent out of range");
  Word modulus = 1;
  for (unsigned i = 0; i < exponent; ++i) modulus *= p;

  // eliminate on the transpose: fill-in on cobar differentials is markedly lower
  std::vector<WordRow> rows(m.cols());
  for (const auto& e : m.entries()) {
    const Word v = mpz_fdiv_ui(e.value.get_mpz_t(), modulus);
    if (v != 0) rows[e.col].emplace_back(std::uint32_t(e.row), v);
  }
  for (auto& row : rows) std::sort(row.begin(), row.end());
  std::vector<std::vector<std::uint32_t>> col_rows(m.rows());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(std::uint32_t(r));
  auto value_at = [&](std::size_t r, std::size_t c) -> Word {
    auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                               [](const auto& e, std::size_t x) { return e.first < x; });
    return (it != rows[r].end() && it->first == c) ? it->second : 0;
  };
  // col_rows may hold stale row ids; prune on access
  auto prune = [&](std::size_t c) {
    auto& list = col_rows[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(), [&](std::uint32_t r) { return value_at(r, c) == 0; }),
               list.end());
  };

  std::vector<unsigned> out;
  Word pk = 1;
  WordRow merged;
  for (unsigned level = 0; level < exponent; ++level, pk *= p) {
    std::set<std::pair<std::size_t, std::size_t>> queue;
    for (std::size_t c = 0; c < col_rows.size(); ++c) {
      prune(c);
      if (!col_rows[c].empty()) queue.insert({col_rows[c].size(), c});
    }
    while (!queue.empty()) {
      // Markowitz cost (count-1)*(length-1) over the few sparsest columns
      std::size_t c = 0, best = rows.size(), best_cost = 0;
      std::vector<std::pair<std::size_t, std::size_t>> examined;
      while (!queue.empty() && examined.size() < kMarkowitzWindow) {
        const auto key = *queue.begin();
        queue.erase(queue.begin());
        const std::size_t col = key.second;
        prune(col);
        if (col_rows[col].empty()) continue;
        if (col_rows[col].size() != key.first) {
          queue.insert({col_rows[col].size(), col});
          continue;
        }
        examined.push_back(key);
        for (std::uint32_t r : col_rows[col]) {
          const Word v = value_at(r, col);
          if (v % pk != 0 || (v / pk) % p == 0) continue;
          const std::size_t cost = (col_rows[col].size() - 1) * (rows[r].size() - 1);
          if (best == rows.size() || cost < best_cost) best = r, c = col, best_cost = cost;
        }
        if (best != rows.size() && best_cost == 0) break;
      }
      // examined columns that still hold an entry of this valuation go back in the queue
      for (const auto& key : examined) {
        if (key.second == c && best != rows.size()) continue;
        const bool has_level = std::any_of(col_rows[key.second].begin(), col_rows[key.second].end(),
                                           [&](std::uint32_t r) {
                                             const Word v = value_at(r, key.second);
                                             return v % pk == 0 && (v / pk) % p != 0;
                                           });
        if (has_level) queue.insert(key);
      }
      if (best == rows.size()) continue;
      WordRow pivot_row = std::move(rows[best]);
      rows[best].clear();
      const Word pivot_value = std::lower_bound(pivot_row.begin(), pivot_row.end(), c,
                                                [](const auto& e, std::size_t x) { return e.first < x; })
                                   ->second;
      const Word unit_inverse = inverse_mod(pivot_value / pk, modulus);
      for (auto& [col, v] : pivot_row) v = mulmod(v, unit_inverse, modulus);
      for (std::uint32_t r : col_rows[c]) {
        if (r == best) continue;
        const Word coef = value_at(r, c) / pk;
        if (coef == 0) continue;
        const Word neg = modulus - coef;
        merged.clear();
        auto a = rows[r].begin();
        auto b = pivot_row.begin();
        while (a != rows[r].end() || b != pivot_row.end()) {
          if (b == pivot_row.end() || (a != rows[r].end() && a->first < b->first)) {
            merged.push_back(*a++);
          } else if (a == rows[r].end() || b->first < a->first) {
            merged.emplace_back(b->first, mulmod(b->second, neg, modulus));
            col_rows[b->first].push_back(r);
            ++b;
          } else {
            const Word v = (a->second + mulmod(b->second, neg, modulus)) % modulus;
            if (v != 0) merged.emplace_back(a->first, v);
            ++a;
            ++b;
          }
        }
        rows[r].swap(merged);
      }
      col_rows[c].clear();
      out.push_back(level);
      // columns touched by the pivot row changed; requeue them with fresh counts
      for (const auto& [col, v] : pivot_row) {
        if (col == c) continue;
        prune(col);
        if (!col_rows[col].empty()) queue.insert({col_rows[col].size(), col});
      }
    }
  }
  return out;
}

std::size_t rank(const SparseIntMatrix& m) { return smith_normal_form(m).invariant_factors.size(); }

AbelianPGroup chain_homology(const SparseIntMatrix& d_in, const SparseIntMatrix& d_out,
                             unsigned long p) {
  if (d_in.rows() != d_out.cols())
    throw ChainComplexError("chain_homology: d_in has " + std::to_string(d_in.rows()) +
                            " rows but d_out has " + std::to_string(d_out.cols()) + " columns");
  const SparseIntMatrix composite = d_out * d_in;
  if (!composite.is_zero()) {
    const auto& e = composite.entries().front();
    throw ChainComplexError("chain_homology: d_out * d_in != 0 (first nonzero at row " +
                            std::to_string(e.row) + ", col " + std::to_string(e.col) + ")");
  }
  const auto in_form = smith_normal_form(d_in);
  const std::size_t rank_out = rank(d_out);
  const std::size_t n = d_in.rows();
  const std::size_t free_rank = n - in_form.invariant_factors.size() - rank_out;
  std::vector<BigInt> torsion;
  for (const auto& d : in_form.invariant_factors) {
    if (d == 1) continue;
    const unsigned long e = valuation(d, p);
    if (e == 0) continue;
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, e);
    torsion.push_back(q);
  }
  return AbelianPGroup(free_rank, std::move(torsion));
}

std::vector<AbelianPGroup> cochain_homology(const std::vector<SparseIntMatrix>& d, unsigned long p,
                                            CochainHomologyStats* stats) {
  for (std::size_t s = 0; s + 1 < d.size(); ++s)
    if (d[s].rows() != d[s + 1].cols())
      throw ChainComplexError("cochain_homology: d_" + std::to_string(s) + " has " +
                              std::to_string(d[s].rows()) + " rows but d_" + std::to_string(s + 1) +
                              " has " + std::to_string(d[s + 1].cols()) + " columns");
  const unsigned exponent = max_word_exponent(p);
  std::vector<std::vector<unsigned>> divisors(d.size());
  std::size_t previous_rank = 0;
  for (std::size_t s = 0; s < d.size(); ++s) {
    auto fast = elementary_divisors_mod_prime_power(d[s], p, exponent);
    // rank(d_s) <= dim C^s - rank(d_{s-1}); reaching the bound pins the rank exactly
    if (previous_rank + fast.size() == d[s].cols()) {
      divisors[s] = std::move(fast);
      if (stats) ++stats->certified;
    } else {
      divisors[s] = local_elementary_divisors(d[s], p);
      if (stats) ++stats->exact_fallbacks;
    }
    previous_rank = divisors[s].size();
  }
  std::vector<AbelianPGroup> out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    const std::size_t rank_in = s == 0 ? 0 : divisors[s - 1].size();
    std::vector<BigInt> torsion;
    if (s > 0)
      for (const unsigned e : divisors[s - 1]) {
        if (e == 0) continue;
        BigInt q;
        mpz_ui_pow_ui(q.get_mpz_t(), p, e);
        torsion.push_back(q);
      }
    out.emplace_back(d[s].cols() - rank_in - divisors[s].size(), std::move(torsion));
  }
  return out;
}

}  // namespace slicestem::linalg
