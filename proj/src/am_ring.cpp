#include "slicestem/am_ring.hpp"

#include <stdexcept>

#include "json.hpp"

namespace slicestem::am {

std::string AMMonomial::label() const {
  std::string out;
  auto factor = [&](const char* name, int k) {
    if (k == 0) return;
    if (!out.empty()) out += ' ';
    out += name;
    if (k != 1) out += "^" + std::to_string(k);
  };
  factor("a1", i);
  factor("a3", j);
  factor("a4", eps);
  return out.empty() ? "1" : out;
}

std::optional<AMMonomial> monomial_at_bidegree(int s, int t, bool localized) {
  // t - 2s = 4j + 6eps, so k = (t - 2s)/2 = 2j + 3eps fixes eps by parity
  const int twice_k = t - 2 * s;
  if (twice_k < 0 || twice_k % 2 != 0) return std::nullopt;
  const int k = twice_k / 2;
  const int eps = k % 2;
  const int j = (k - 3 * eps) / 2;
  if (j < 0) return std::nullopt;
  const int i = s - j - eps;
  if (i < 0 && !localized) return std::nullopt;
  return AMMonomial{i, j, eps};
}

bool in_iso_range(int s, int t) { return t < 6 * s - 10 && t < 4 * s; }

std::optional<AMMonomial> multiply(const AMMonomial& a, const AMMonomial& b, bool localized) {
  if (!localized && (a.i < 0 || b.i < 0))
    throw std::invalid_argument("negative alpha1 exponent outside the localized ring");
  if (a.j < 0 || b.j < 0 || a.eps < 0 || a.eps > 1 || b.eps < 0 || b.eps > 1)
    throw std::invalid_argument("alpha3/alpha4 exponents out of range");
  if (a.eps + b.eps > 1) return std::nullopt;
  return AMMonomial{a.i + b.i, a.j + b.j, a.eps + b.eps};
}

bool CompareReport::pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string CompareReport::to_json() const {
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"s", r.s},
                         {"t", r.t},
                         {"monomials", r.monomials},
                         {"computed_order", r.computed_order},
                         {"group", r.group},
                         {"pass", r.pass}});
  return rows_json.dump(1);
}

CompareReport localization_compare(int s_max, int t_max, const ext::ExtTable& table) {
  if (table.prime() != 2) throw std::invalid_argument("localization_compare needs a p=2 table");
  CompareReport report;
  for (int t = 0; t <= t_max; ++t)
    for (int s = 0; s <= s_max; ++s) {
      if (!in_iso_range(s, t)) continue;
      CompareRow row;
      row.s = s;
      row.t = t;
      const auto mono = monomial_at_bidegree(s, t);
      if (mono) row.monomials.push_back(mono->label());
      const AbelianPGroup g = table.at(unsigned(s), t);
      row.group = g.to_string();
      const auto order = g.order();
      row.computed_order = order ? order->get_str() : "inf";
      const std::size_t count = row.monomials.size();
      row.pass = g.is_finite() && g.torsion().size() == count && (count == 0 || g.is_elementary_abelian(2));
      report.rows.push_back(std::move(row));
    }
  return report;
}

}  // namespace slicestem::am
