#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicestem/rational.hpp"

namespace slicestem::bp {

using Exponents = std::vector<std::uint16_t>;

/// Variable layout shared by every polynomial ring used here:
/// v_1..v_g (the left coefficients) followed by `slots` blocks t_1..t_g.
/// slots = 0 is BP_*, slots = 1 is Gamma, slots = s is the s-fold tensor
/// power over BP_* written with all coefficients pushed to the left.
struct Layout {
  unsigned generators = 0;
  unsigned slots = 0;

  std::size_t width() const { return std::size_t(generators) * (slots + 1); }
  std::size_t v_index(unsigned n) const { return n - 1; }
  std::size_t t_index(unsigned slot, unsigned n) const {
    return std::size_t(generators) * slot + (n - 1);
  }
  friend bool operator==(const Layout&, const Layout&) = default;
};

inline bool coeff_is_zero(const BigInt& c) { return c == 0; }
inline bool coeff_is_zero(const PLocalRational& c) { return c.is_zero(); }

/// Sparse commutative polynomial with coefficients in BigInt or PLocalRational.
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Layout layout) : layout_(layout) {}

  static Polynomial constant(Layout layout, Coeff c) {
    Polynomial r(layout);
    r.add_term(Exponents(layout.width(), 0), std::move(c));
    return r;
  }

  const Layout& layout() const { return layout_; }
  const std::map<Exponents, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Coeff coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff() : it->second;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    check_layout(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& rhs) {
    check_layout(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_layout(b);
    Polynomial r(a.layout_);
    Exponents e(a.layout_.width());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Polynomial scaled(const Coeff& c) const {
    Polynomial r(layout_);
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
  }

  /// n >= 1; the zeroth power needs a unit of the coefficient ring, which callers supply.
  Polynomial pow(unsigned n) const {
    if (n == 0) throw std::invalid_argument("Polynomial::pow(0)");
    Polynomial base = *this;
    while (!(n & 1)) {
      base = base * base;
      n >>= 1;
    }
    Polynomial result = base;
    n >>= 1;
    while (n > 0) {
      base = base * base;
      if (n & 1) result = result * base;
      n >>= 1;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.layout_ == b.layout_ && a.terms_ == b.terms_;
  }

 private:
  void check_layout(const Polynomial& rhs) const {
    if (!(layout_ == rhs.layout_)) throw std::invalid_argument("polynomial layout mismatch");
  }

  Layout layout_;
  std::map<Exponents, Coeff> terms_;
};

using IntPoly = Polynomial<BigInt>;
using RationalPoly = Polynomial<PLocalRational>;

}  // namespace slicestem::bp
