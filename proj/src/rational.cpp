#include "slicestem/rational.hpp"

#include <stdexcept>

namespace slicestem {

namespace {
BigInt power(unsigned long p, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}
}  // namespace

PLocalRational::PLocalRational(unsigned long p, BigInt numerator, unsigned long shift)
    : p_(p), num_(std::move(numerator)), shift_(shift) {
  normalize();
}

void PLocalRational::normalize() {
  if (num_ == 0) {
    shift_ = 0;
    return;
  }
  while (shift_ > 0 && mpz_divisible_ui_p(num_.get_mpz_t(), p_)) {
    mpz_divexact_ui(num_.get_mpz_t(), num_.get_mpz_t(), p_);
    --shift_;
  }
}

const BigInt& PLocalRational::to_integer() const {
  if (shift_ != 0)
    throw std::domain_error("non-integral p-local coefficient " + to_string());
  return num_;
}

PLocalRational PLocalRational::divided_by_p(unsigned long times) const {
  return PLocalRational(p_, num_, shift_ + times);
}

PLocalRational& PLocalRational::operator+=(const PLocalRational& rhs) {
  if (rhs.num_ == 0) return *this;
  if (num_ == 0) {
    *this = rhs;
    return *this;
  }
  if (p_ != rhs.p_) throw std::invalid_argument("mixing p-local rationals at different primes");
  if (shift_ >= rhs.shift_) {
    num_ += rhs.num_ * power(p_, shift_ - rhs.shift_);
  } else {
    num_ = num_ * power(p_, rhs.shift_ - shift_) + rhs.num_;
    shift_ = rhs.shift_;
  }
  normalize();
  return *this;
}

PLocalRational& PLocalRational::operator-=(const PLocalRational& rhs) { return *this += -rhs; }

PLocalRational& PLocalRational::operator*=(const PLocalRational& rhs) {
  if (num_ != 0 && rhs.num_ != 0 && p_ != rhs.p_)
    throw std::invalid_argument("mixing p-local rationals at different primes");
  num_ *= rhs.num_;
  shift_ += rhs.shift_;
  normalize();
  return *this;
}

std::string PLocalRational::to_string() const {
  if (shift_ == 0) return num_.get_str();
  return num_.get_str() + "/" + power(p_, shift_).get_str();
}

}  // namespace slicestem
