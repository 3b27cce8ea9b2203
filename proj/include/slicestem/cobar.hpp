#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "slicestem/abelian_group.hpp"
#include "slicestem/bp_algebra.hpp"
#include "slicestem/linalg.hpp"

namespace slicestem::cobar {

/// v^c [t^{E_1} | ... | t^{E_s}] in the reduced cobar complex. `exponents`
/// uses the presentation's Layout with s slots; every bar factor is nonempty.
struct CobarBasisElement {
  unsigned s = 0;
  int t = 0;
  bp::Exponents exponents;

  friend bool operator==(const CobarBasisElement&, const CobarBasisElement&) = default;
};

/// Raised when d(d(x)) != 0; carries the offending basis element.
class CobarError : public std::logic_error {
 public:
  CobarError(unsigned long p, unsigned s, int t, std::string element, const std::string& what)
      : std::logic_error(what), prime(p), filtration(s), degree(t), element(std::move(element)) {}
  unsigned long prime;
  unsigned filtration;
  int degree;
  std::string element;
};

/// Reduced cobar complex of (BP_*, BP_*BP) in internal degrees up to the
/// presentation's degree bound.
///
/// Not thread-safe: it memoizes coproducts and moved coefficients. Use one
/// instance per worker; the presentation itself can be shared.
class CobarComplex {
 public:
  explicit CobarComplex(std::shared_ptr<const bp::BPPresentation> bp);

  const bp::BPPresentation& presentation() const { return *bp_; }
  unsigned long prime() const { return bp_->prime(); }

  /// Complete, duplicate-free basis of C^{s,t}, sorted lexicographically on the
  /// concatenated exponent sequence (all elements share the degree t).
  std::vector<CobarBasisElement> basis(unsigned s, int t) const;

  /// d(x) in C^{s+1}, already projected to the reduced complex.
  bp::IntPoly differential_of(const CobarBasisElement& x);

  /// Matrix of d: C^{s,t} -> C^{s+1,t}; rows index basis(s+1,t), columns basis(s,t).
  linalg::SparseIntMatrix differential(unsigned s, int t);

  /// Checks d_{s+1} * d_s = 0 exactly; throws CobarError naming the first
  /// basis element of C^{s,t} whose image is not a cycle.
  void check_square_zero(unsigned s, int t);

  std::string describe(const CobarBasisElement& x) const;

 private:
  // v^c placed left of factor `slot` in an s-fold tensor, in normal form
  const bp::IntPoly& moved_coefficient(const bp::Exponents& v_exponents, unsigned slot, unsigned slots);
  const bp::IntPoly& moved_generator(unsigned n, unsigned slot, unsigned slots);
  // Delta(t^E) across factors slot, slot+1 of an s-fold tensor
  const bp::IntPoly& split_factor(const bp::Exponents& t_exponents, unsigned slot, unsigned slots);
  const bp::IntPoly& split_generator(unsigned n, unsigned slot, unsigned slots);
  void check_window(int t) const;

  std::shared_ptr<const bp::BPPresentation> bp_;
  std::vector<std::vector<bp::Exponents>> monomials_by_degree_;
  std::map<std::tuple<unsigned, unsigned, bp::Exponents>, bp::IntPoly> coefficient_cache_;
  std::map<std::tuple<unsigned, unsigned, bp::Exponents>, bp::IntPoly> split_cache_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, bp::IntPoly> moved_generator_cache_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, bp::IntPoly> split_generator_cache_;
};

std::vector<CobarBasisElement> cobar_basis(unsigned long p, unsigned s, int t);
linalg::SparseIntMatrix cobar_d(unsigned long p, unsigned s, int t);

/// E_2^{s,t}(BP(p)): p-part of the cohomology of the cobar complex at (s, t).
/// Finite except at (0,0), where it is free of rank one.
AbelianPGroup ext_bp(unsigned long p, unsigned s, int t);

}  // namespace slicestem::cobar
