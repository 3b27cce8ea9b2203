#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slicestem/am_ring.hpp"
#include "slicestem/ext_table.hpp"

namespace slicestem::slice {

/// Novikov bidegree (s, t) -> suspension (m, n) = (t/2 - s, t/2). Odd t throws.
std::pair<int, int> shift_T(int s, int t);
/// (m, n) -> (s, t) = (n - m, 2n).
std::pair<int, int> shift_T_inv(int m, int n);

/// 2n > max(3m+5, 4m): the image of the iso range under shift_T.
bool in_T_alpha(int m, int n);

/// Either the whole sphere (coefficients E_2(MU)) or its p-localization
/// (coefficients E_2(BP(p))).
struct Variant {
  enum class Kind { Integral, PLocal };
  Kind kind = Kind::Integral;
  unsigned long p = 0;

  static Variant integral() { return {}; }
  static Variant plocal(unsigned long prime) { return {Kind::PLocal, prime}; }
  std::string to_string() const;
};

/// Novikov E_2 data for a variant: a MuExt for the integral case, a single
/// prime's table for the p-local one.
class E2Source {
 public:
  explicit E2Source(ext::MuExt mu) : variant_(Variant::integral()), mu_(std::move(mu)) {}
  explicit E2Source(ext::ExtTable table);

  const Variant& variant() const { return variant_; }
  /// Throws ext::WindowError / ext::MissingPrimeError when not covered.
  AbelianPGroup at(int s, int t) const;
  /// Largest t for which every s is covered.
  int complete_through() const;

 private:
  Variant variant_;
  ext::MuExt mu_;
};

/// Coefficient of a slice summand: a computed group, or a cyclic group of an
/// order known only by name.
struct Coefficient {
  std::optional<AbelianPGroup> group;
  std::string symbol;  // e.g. "a_{2}" when the order is opaque

  static Coefficient of(AbelianPGroup g) { return {std::move(g), {}}; }
  static Coefficient opaque(std::string name) { return {std::nullopt, std::move(name)}; }
  static Coefficient f2() { return of(AbelianPGroup::cyclic(2)); }
  std::string to_string() const;  // "Z/2", "Z/a_{2}"
};

/// Sigma^{m+n alpha} M(G) inside the t-th slice.
struct SliceSummand {
  int t = 0;  // slice degree
  int s = 0;  // Novikov filtration; the Novikov bidegree is (s, 2t)
  int m = 0;  // = t - s
  int n = 0;  // = t
  Coefficient coefficient;
  std::optional<am::AMMonomial> label;

  int two_t() const { return 2 * t; }
};

/// One summand per nonzero E_2^{s,2t}, s = 0..t. Labels come from the
/// Andrews-Miller basis at p = 2 inside the iso range.
std::vector<SliceSummand> slice_decomposition(int t, const E2Source& source);

/// E_2^{n-m, 2n} != 0.
bool contains_summand(int m, int n, const E2Source& source);

enum class SupportRule {
  Weak,  // m - t + s >= 0 and n - t <= 0
  Full,  // exact vanishing region of Eilenberg-MacLane homotopy sheaves
};

/// Whether pi_{x+y alpha} M(G) can be nonzero for a summand shifted by (x, y)
/// away from the cell.
bool em_cell_possible(int x, int y, SupportRule rule);

/// True iff some summand of the t-th slice can contribute to E_1^{m,n,t}.
bool e1_cell_support(int m, int n, int t, const E2Source& source, SupportRule rule = SupportRule::Weak);

/// (2j+3eps, i+3j+4eps). Requires i >= 0.
std::pair<int, int> monomial_suspension(const am::AMMonomial& mono);

enum class ArrowKind { TauPr, Tau };
std::string to_string(ArrowKind kind);

/// Which of the three d1 families an arrow belongs to.
enum class Family {
  Base,           // on alpha_{4q+2}
  Alpha1Times42,  // on alpha1^j alpha_{4q+2}, j >= 1
  Alpha1Times41,  // on alpha1^j alpha_{4q-1}, j >= 0
};
std::string to_string(Family family);

struct D1Arrow {
  SliceSummand source;
  SliceSummand target;
  ArrowKind kind = ArrowKind::Tau;
  Family family = Family::Base;
  int q = 1;
  int j = 0;
};

/// Every arrow of the three families with 1 <= q <= q_max, j <= j_max.
std::vector<D1Arrow> d1_arrows(int q_max, int j_max);

struct Window {
  int m_min = 0, m_max = 0, n_min = 0, n_max = 0;
  bool contains(int m, int n) const { return m_min <= m && m <= m_max && n_min <= n && n <= n_max; }
};

struct RegionMonomial {
  am::AMMonomial monomial;
  int m = 0, n = 0;
};

struct RemovedMonomial {
  RegionMonomial source;
  am::AMMonomial paired;  // alpha1^{4+i} alpha3^{j-1} alpha4^eps
  int paired_m = 0, paired_n = 0;
};

struct RegionColumns {
  std::vector<RegionMonomial> survivors;
  std::vector<RemovedMonomial> removed;
  std::set<int> residues;  // survivors' m mod 4
  std::vector<std::string> warnings;
};

class ColumnConcentrationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Monomials alpha1^i alpha3^j alpha4^eps whose suspension lies in the window
/// and in T(alpha). Those with odd j are sources of injective tau-d1's and
/// are removed; the survivors are returned. A survivor with m = 1, 2 mod 4
/// throws ColumnConcentrationError.
RegionColumns region_e2_columns(const Window& window);

}  // namespace slicestem::slice
