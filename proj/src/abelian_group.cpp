#include "slicestem/abelian_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicestem {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned long valuation(const BigInt& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  BigInt m = abs(n);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    m /= p;
    ++v;
  }
  return v;
}

unsigned long prime_power_base(const BigInt& n) {
  if (n < 2) return 0;
  BigInt m = n;
  unsigned long q = 0;
  for (unsigned long d = 2;; ++d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      q = d;
      break;
    }
    if (BigInt(d) * d > m) {
      // m itself is prime
      if (!m.fits_ulong_p()) throw std::domain_error("prime factor too large");
      return m.get_ui();
    }
  }
  while (mpz_divisible_ui_p(m.get_mpz_t(), q)) m /= q;
  return m == 1 ? q : 0;
}

AbelianPGroup::AbelianPGroup(std::size_t free_rank, std::vector<BigInt> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (const auto& d : torsion_)
    if (prime_power_base(d) == 0)
      throw std::invalid_argument("torsion order " + d.get_str() + " is not a prime power > 1");
  std::sort(torsion_.begin(), torsion_.end());
}

AbelianPGroup AbelianPGroup::cyclic(const BigInt& order) {
  if (order == 0) return free(1);
  if (order == 1) return trivial();
  return AbelianPGroup(0, {order});
}

std::optional<BigInt> AbelianPGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  BigInt n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

bool AbelianPGroup::is_p_group(unsigned long p) const {
  return std::all_of(torsion_.begin(), torsion_.end(),
                     [p](const BigInt& d) { return prime_power_base(d) == p; });
}

bool AbelianPGroup::is_elementary_abelian(unsigned long p) const {
  return free_rank_ == 0 &&
         std::all_of(torsion_.begin(), torsion_.end(), [p](const BigInt& d) { return d == p; });
}

AbelianPGroup AbelianPGroup::p_part(unsigned long p) const {
  std::vector<BigInt> kept;
  for (const auto& d : torsion_)
    if (prime_power_base(d) == p) kept.push_back(d);
  return AbelianPGroup(free_rank_, std::move(kept));
}

AbelianPGroup AbelianPGroup::direct_sum(const AbelianPGroup& other) const {
  std::vector<BigInt> t = torsion_;
  t.insert(t.end(), other.torsion_.begin(), other.torsion_.end());
  return AbelianPGroup(free_rank_ + other.free_rank_, std::move(t));
}

std::string AbelianPGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  else if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  // group repeated factors: Z/2^3 would be ambiguous, so use (Z/2)^3
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    if (!out.empty()) out += "+";
    const std::string factor = "Z/" + torsion_[i].get_str();
    out += (j - i == 1) ? factor : "(" + factor + ")^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace slicestem
