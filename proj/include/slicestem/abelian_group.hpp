#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace slicestem {

using BigInt = mpz_class;

/// Finitely generated abelian group, stored as a free rank plus a list of
/// prime-power cyclic orders in ascending order.
///
/// Groups produced for a single prime carry only powers of that prime; the
/// sum over primes used for MU-groups mixes primes.
class AbelianPGroup {
 public:
  AbelianPGroup() = default;
  AbelianPGroup(std::size_t free_rank, std::vector<BigInt> torsion);

  static AbelianPGroup trivial() { return {}; }
  static AbelianPGroup free(std::size_t rank) { return AbelianPGroup(rank, {}); }
  static AbelianPGroup cyclic(const BigInt& order);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }

  /// Order of a finite group; empty when the group has positive free rank.
  std::optional<BigInt> order() const;

  /// True if every torsion entry is a power of `p`.
  bool is_p_group(unsigned long p) const;

  /// Finite, and every cyclic factor has order exactly `p`.
  bool is_elementary_abelian(unsigned long p) const;

  AbelianPGroup p_part(unsigned long p) const;
  AbelianPGroup direct_sum(const AbelianPGroup& other) const;

  /// "0", "Z", "Z/2", "Z^2+Z/4+Z/8", ...
  std::string to_string() const;

  friend bool operator==(const AbelianPGroup& a, const AbelianPGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

/// Returns the prime q with n = q^e, e >= 1, or 0 if n is not a prime power.
unsigned long prime_power_base(const BigInt& n);

bool is_prime(unsigned long n);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(const BigInt& n, unsigned long p);

}  // namespace slicestem
