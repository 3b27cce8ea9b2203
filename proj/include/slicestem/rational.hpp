#pragma once

#include <string>

#include "slicestem/abelian_group.hpp"

namespace slicestem {

/// A rational number whose denominator is a power of a fixed prime:
/// numerator / p^shift with p not dividing the numerator unless shift == 0.
/// p-local integrality is then the syntactic check shift == 0.
class PLocalRational {
 public:
  PLocalRational() = default;
  PLocalRational(unsigned long p, BigInt numerator, unsigned long shift = 0);

  unsigned long prime() const { return p_; }
  const BigInt& numerator() const { return num_; }
  unsigned long denominator_exponent() const { return shift_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integral() const { return shift_ == 0; }
  /// Throws std::domain_error if not integral.
  const BigInt& to_integer() const;

  PLocalRational divided_by_p(unsigned long times = 1) const;

  PLocalRational operator-() const { return PLocalRational(p_, -num_, shift_); }
  PLocalRational& operator+=(const PLocalRational& rhs);
  PLocalRational& operator-=(const PLocalRational& rhs);
  PLocalRational& operator*=(const PLocalRational& rhs);

  friend PLocalRational operator+(PLocalRational a, const PLocalRational& b) { return a += b; }
  friend PLocalRational operator-(PLocalRational a, const PLocalRational& b) { return a -= b; }
  friend PLocalRational operator*(PLocalRational a, const PLocalRational& b) { return a *= b; }
  friend bool operator==(const PLocalRational& a, const PLocalRational& b) {
    return a.num_ == b.num_ && a.shift_ == b.shift_;
  }

  std::string to_string() const;

 private:
  void normalize();

  unsigned long p_ = 2;
  BigInt num_ = 0;
  unsigned long shift_ = 0;
};

}  // namespace slicestem
