#include "slicestem/slice.hpp"

#include <algorithm>

namespace slicestem::slice {

std::pair<int, int> shift_T(int s, int t) {
  if (t % 2 != 0) throw std::invalid_argument("shift_T: odd internal degree t=" + std::to_string(t));
  return {t / 2 - s, t / 2};
}

std::pair<int, int> shift_T_inv(int m, int n) { return {n - m, 2 * n}; }

bool in_T_alpha(int m, int n) { return 2 * n > std::max(3 * m + 5, 4 * m); }

std::string Variant::to_string() const {
  return kind == Kind::Integral ? "integral" : "p-local(p=" + std::to_string(p) + ")";
}

E2Source::E2Source(ext::ExtTable table) : variant_(Variant::plocal(table.prime())) { mu_.add(std::move(table)); }

AbelianPGroup E2Source::at(int s, int t) const {
  if (s < 0 || t < 0) return AbelianPGroup::trivial();
  if (variant_.kind == Variant::Kind::Integral) return mu_.at(unsigned(s), t);
  return mu_.table(variant_.p).at(unsigned(s), t);
}

int E2Source::complete_through() const {
  int limit = 0;
  for (const auto& [p, table] : mu_.tables()) limit = std::max(limit, table.t_max());
  for (int t = 0; t <= limit; ++t) {
    try {
      for (int s = 0; s <= t; ++s) (void)at(s, t);
    } catch (const std::exception&) {
      return t - 1;
    }
  }
  return limit;
}

std::string Coefficient::to_string() const {
  if (group) return group->to_string();
  return "Z/" + symbol;
}

namespace {

std::optional<am::AMMonomial> label_for(int s, int two_t, const AbelianPGroup& g, const Variant& v) {
  if (v.kind == Variant::Kind::PLocal && v.p != 2) return std::nullopt;
  const AbelianPGroup two = g.p_part(2);
  if (two.torsion().size() != 1 || two.torsion().front() != 2) return std::nullopt;
  return am::monomial_at_bidegree(s, two_t);
}

}  // namespace

std::vector<SliceSummand> slice_decomposition(int t, const E2Source& source) {
  std::vector<SliceSummand> out;
  if (t < 0) return out;
  for (int s = 0; s <= t; ++s) {
    AbelianPGroup g = source.at(s, 2 * t);
    if (g.is_trivial()) continue;
    SliceSummand summand;
    summand.t = t;
    summand.s = s;
    summand.m = t - s;
    summand.n = t;
    summand.label = label_for(s, 2 * t, g, source.variant());
    summand.coefficient = Coefficient::of(std::move(g));
    out.push_back(std::move(summand));
  }
  return out;
}

bool contains_summand(int m, int n, const E2Source& source) {
  if (n < 0 || n - m < 0) return false;
  return !source.at(n - m, 2 * n).is_trivial();
}

bool em_cell_possible(int x, int y, SupportRule rule) {
  if (rule == SupportRule::Weak) return x >= 0 && y <= 0;
  return (x == 0 && y <= 0) || (x > 0 && y <= -1);
}

bool e1_cell_support(int m, int n, int t, const E2Source& source, SupportRule rule) {
  for (const auto& summand : slice_decomposition(t, source))
    if (em_cell_possible(m - summand.m, n - summand.n, rule)) return true;
  return false;
}

std::pair<int, int> monomial_suspension(const am::AMMonomial& mono) {
  if (mono.i < 0) throw std::invalid_argument("monomial_suspension: negative alpha1 exponent");
  return {2 * mono.j + 3 * mono.eps, mono.i + 3 * mono.j + 4 * mono.eps};
}

std::string to_string(ArrowKind kind) { return kind == ArrowKind::TauPr ? "tau_pr" : "tau"; }

std::string to_string(Family family) {
  switch (family) {
    case Family::Base: return "alpha_{4q+2}";
    case Family::Alpha1Times42: return "alpha1^j*alpha_{4q+2}";
    case Family::Alpha1Times41: return "alpha1^j*alpha_{4q-1}";
  }
  return "?";
}

namespace {

SliceSummand summand_at(int m, int n, Coefficient c) {
  SliceSummand out;
  out.t = n;
  out.n = n;
  out.m = m;
  out.s = n - m;
  out.coefficient = std::move(c);
  return out;
}

D1Arrow arrow(Family family, ArrowKind kind, int q, int j, std::pair<int, int> from, Coefficient from_coeff,
              std::pair<int, int> to) {
  return D1Arrow{summand_at(from.first, from.second, std::move(from_coeff)),
                 summand_at(to.first, to.second, Coefficient::f2()), kind, family, q, j};
}

}  // namespace

std::vector<D1Arrow> d1_arrows(int q_max, int j_max) {
  if (q_max < 1 || j_max < 0) throw std::invalid_argument("d1_arrows: need q_max >= 1 and j_max >= 0");
  std::vector<D1Arrow> out;
  for (int q = 1; q <= q_max; ++q) {
    out.push_back(arrow(Family::Base, ArrowKind::TauPr, q, 0, {4 * q + 1, 4 * q + 2},
                        Coefficient::opaque("a_{" + std::to_string(2 * q) + "}"), {4 * q, 4 * q + 3}));
    for (int j = 1; j <= j_max; ++j)
      out.push_back(arrow(Family::Alpha1Times42, ArrowKind::Tau, q, j, {4 * q + 1, 4 * q + 2 + j},
                          Coefficient::f2(), {4 * q, 4 * q + 3 + j}));
    for (int j = 0; j <= j_max; ++j)
      out.push_back(arrow(Family::Alpha1Times41, ArrowKind::Tau, q, j, {4 * q - 2, 4 * q - 1 + j},
                          Coefficient::f2(), {4 * q - 3, 4 * q + j}));
  }
  return out;
}

RegionColumns region_e2_columns(const Window& window) {
  RegionColumns out;
  if (window.m_min > window.m_max || window.n_min > window.n_max) return out;
  for (int eps = 0; eps <= 1; ++eps)
    for (int j = 0; 2 * j + 3 * eps <= window.m_max; ++j) {
      const int m = 2 * j + 3 * eps;
      if (m < window.m_min) continue;
      for (int i = std::max(0, window.n_min - 3 * j - 4 * eps); i + 3 * j + 4 * eps <= window.n_max; ++i) {
        const am::AMMonomial mono{i, j, eps};
        const auto [mm, nn] = monomial_suspension(mono);
        if (!in_T_alpha(mm, nn)) continue;
        RegionMonomial entry{mono, mm, nn};
        if (j % 2 == 1) {
          const am::AMMonomial paired{i + 4, j - 1, eps};
          const auto [pm, pn] = monomial_suspension(paired);
          out.removed.push_back({entry, paired, pm, pn});
        } else {
          out.survivors.push_back(entry);
        }
      }
    }
  auto order = [](const auto& a, const auto& b) { return std::tie(a.m, a.n) < std::tie(b.m, b.n); };
  std::sort(out.survivors.begin(), out.survivors.end(), order);
  std::sort(out.removed.begin(), out.removed.end(),
            [&](const RemovedMonomial& a, const RemovedMonomial& b) { return order(a.source, b.source); });
  for (const auto& sv : out.survivors) {
    const int r = ((sv.m % 4) + 4) % 4;
    if (r == 1 || r == 2)
      throw ColumnConcentrationError("survivor " + sv.monomial.label() + " sits in column m=" +
                                     std::to_string(sv.m) + ", residue " + std::to_string(r) + " mod 4");
    out.residues.insert(r);
  }
  if (!out.removed.empty()) {
    const auto& first = out.removed.front();
    const int dm = first.paired_m - first.source.m;
    const int dn = first.paired_n - first.source.n;
    out.warnings.push_back("monomial pairing " + first.source.monomial.label() + " -> " + first.paired.label() +
                           " shifts (m,n) by (" + std::to_string(dm) + "," + std::to_string(dn) +
                           "), while the tau-map d1 arrows shift by (-1,+1); pairing used only to pick sources (" +
                           std::to_string(out.removed.size()) + " removed)");
  }
  return out;
}

}  // namespace slicestem::slice
