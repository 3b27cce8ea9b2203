#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicestem/ext_table.hpp"

namespace slicestem::am {

/// alpha1^i alpha3^j alpha4^eps in F_2[alpha1^{+-1}, alpha3, alpha4]/(alpha4^2).
struct AMMonomial {
  int i = 0;
  int j = 0;
  int eps = 0;

  int s() const { return i + j + eps; }
  int t() const { return 2 * i + 6 * j + 8 * eps; }
  /// "1", "a1", "a1^3 a3", "a1^-1 a4", ...
  std::string label() const;

  friend auto operator<=>(const AMMonomial&, const AMMonomial&) = default;
};

/// The unique monomial of Novikov bidegree (s, t), if any. Unlocalized
/// lookups require i >= 0; `localized` also admits negative alpha1 powers.
std::optional<AMMonomial> monomial_at_bidegree(int s, int t, bool localized = false);

/// t < 6s - 10 and t < 4s: where E_2(MU) agrees with its alpha1-localization.
bool in_iso_range(int s, int t);

/// Product in the ring; nullopt when it is zero (alpha4^2 = 0). A negative
/// alpha1 exponent in the inputs or the result requires `localized`.
std::optional<AMMonomial> multiply(const AMMonomial& a, const AMMonomial& b, bool localized = false);

struct CompareRow {
  int s = 0;
  int t = 0;
  std::vector<std::string> monomials;
  std::string computed_order;  // decimal, "inf" for a group of positive rank
  std::string group;
  bool pass = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool pass() const;
  std::string to_json() const;
};

/// For each (s, t) with s <= s_max, t <= t_max inside the iso range, checks
/// that the table's group is elementary abelian of order 2^(monomial count).
/// Bidegrees outside the iso range are left out; mismatches become failing
/// rows. Throws ext::WindowError if the box reaches beyond the table.
CompareReport localization_compare(int s_max, int t_max, const ext::ExtTable& table);

}  // namespace slicestem::am
