#pragma once

#include <stdexcept>
#include <vector>

#include "slicestem/poly.hpp"

namespace slicestem::bp {

class DegreeBoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The p-typical Brown-Peterson Hopf algebroid (BP_*, BP_*BP) on Hazewinkel
/// generators, truncated to internal degree <= degree_bound.
///
/// Ring elements live in the polynomial rings described by `Layout`:
/// BP_* = Z_(p)[v_1..v_g] (slots = 0), Gamma = BP_*[t_1..t_g] (slots = 1),
/// Gamma (x) Gamma = BP_*[t'_*, t''_*] (slots = 2). Coefficients sitting to
/// the right of a tensor factor are moved left through the right unit, so
/// every tensor power is again a polynomial ring with left coefficients.
///
/// Built once; all accessors are const and safe to share between threads.
class BPPresentation {
 public:
  BPPresentation(unsigned long p, int degree_bound);

  unsigned long prime() const { return p_; }
  int degree_bound() const { return degree_bound_; }
  /// Number g of generators v_n / t_n with |v_n| <= degree_bound.
  unsigned generators() const { return generators_; }
  /// |v_n| = |t_n| = 2(p^n - 1).
  int generator_degree(unsigned n) const;

  Layout layout(unsigned slots) const { return Layout{generators_, slots}; }
  int degree(const Exponents& e, const Layout& layout) const;

  /// Hazewinkel logarithm coefficients lambda_0..lambda_g as polynomials in the v's:
  /// p * lambda_n = sum_{0 <= i < n} lambda_i v_{n-i}^{p^i}.
  const std::vector<RationalPoly>& log_coefficients() const { return lambda_; }

  /// eta_R(v_n) in Gamma; n in 1..g.
  const IntPoly& right_unit_generator(unsigned n) const { return eta_r_.at(n - 1); }
  /// Delta(t_n) in Gamma (x) Gamma; n in 1..g.
  const IntPoly& coproduct_generator(unsigned n) const { return delta_.at(n - 1); }

  IntPoly unit(const Layout& layout) const { return IntPoly::constant(layout, 1); }
  IntPoly v(unsigned n, unsigned slots = 0) const;
  IntPoly t(unsigned n, unsigned slot = 0, unsigned slots = 1) const;

  /// eta_R on BP_* (slots = 0) -> Gamma. Ring map; refuses degrees beyond the bound.
  IntPoly right_unit(const IntPoly& x) const;
  /// Delta on Gamma (slots = 1) -> Gamma (x) Gamma; left BP_*-linear ring map.
  IntPoly coproduct(const IntPoly& x) const;
  /// Counit epsilon: kills every t-variable in slot `slot` of an element.
  IntPoly counit(const IntPoly& x, unsigned slot) const;

  /// Apply Delta to tensor factor `slot` (0-based) of an s-fold tensor,
  /// producing an (s+1)-fold tensor in normal form.
  IntPoly coproduct_at(const IntPoly& x, unsigned slot) const;

  /// The element b of BP_* placed immediately to the left of tensor factor
  /// `slot` (0-based) of an s-fold tensor, rewritten in normal form:
  /// slot 0 is b itself, slot k is eta_R applied inside factor k-1.
  IntPoly coefficient_at(const IntPoly& b, unsigned slot, unsigned slots) const;

  /// Throws DegreeBoundError when a term exceeds the degree bound.
  void check_degree(const IntPoly& x) const;

 private:
  void compute_log_coefficients();
  void compute_right_unit();
  void compute_coproduct();

  unsigned long p_;
  int degree_bound_;
  unsigned generators_ = 0;
  std::vector<RationalPoly> lambda_;
  std::vector<IntPoly> eta_r_;
  std::vector<IntPoly> delta_;
};

/// Converts a p-local rational polynomial to an integral one; throws
/// std::domain_error naming the offending term if any coefficient is not integral.
IntPoly to_integral(const RationalPoly& x);
RationalPoly to_rational(const IntPoly& x, unsigned long p);

/// Ring homomorphism defined on variables: variable k maps to images[k].
/// All images must share `target` as layout.
IntPoly substitute(const IntPoly& x, const std::vector<IntPoly>& images, const Layout& target);

/// Human-readable rendering, e.g. "v1 + 2 t1" or "t1|t1^2".
std::string to_string(const IntPoly& x);

}  // namespace slicestem::bp
