#include "slicestem/cobar.hpp"

#include <algorithm>
#include <functional>

namespace slicestem::cobar {

using bp::Exponents;
using bp::IntPoly;
using bp::Layout;

namespace {

IntPoly times_monomial(const IntPoly& x, const Exponents& m) {
  IntPoly r(x.layout());
  Exponents e(m.size());
  for (const auto& [ex, c] : x.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = ex[k] + m[k];
    r.add_term(e, c);
  }
  return r;
}

bool has_empty_factor(const Exponents& e, const Layout& L) {
  for (unsigned s = 1; s <= L.slots; ++s) {
    bool empty = true;
    for (unsigned n = 1; n <= L.generators; ++n)
      if (e[L.t_index(s, n)] != 0) {
        empty = false;
        break;
      }
    if (empty) return true;
  }
  return false;
}

}  // namespace

CobarComplex::CobarComplex(std::shared_ptr<const bp::BPPresentation> bp) : bp_(std::move(bp)) {
  const unsigned g = bp_->generators();
  const int bound = bp_->degree_bound();
  monomials_by_degree_.assign(bound + 1, {});
  // enumerate exponent vectors in g variables of degree <= bound
  Exponents e(g, 0);
  std::function<void(unsigned, int)> rec = [&](unsigned n, int deg) {
    if (n > g) {
      monomials_by_degree_[deg].push_back(e);
      return;
    }
    const int step = bp_->generator_degree(n);
    for (int k = 0; deg + k * step <= bound; ++k) {
      e[n - 1] = static_cast<std::uint16_t>(k);
      rec(n + 1, deg + k * step);
    }
    e[n - 1] = 0;
  };
  rec(1, 0);
  for (auto& list : monomials_by_degree_) std::sort(list.begin(), list.end());
}

void CobarComplex::check_window(int t) const {
  if (t > bp_->degree_bound())
    throw bp::DegreeBoundError("cobar complex: degree " + std::to_string(t) +
                               " exceeds presentation bound " + std::to_string(bp_->degree_bound()));
}

std::vector<CobarBasisElement> CobarComplex::basis(unsigned s, int t) const {
  std::vector<CobarBasisElement> out;
  if (t < 0) return out;
  check_window(t);
  const unsigned g = bp_->generators();
  const Layout L = bp_->layout(s);
  const int min_factor = 2 * (int(bp_->prime()) - 1);
  if (g == 0) {
    if (s == 0 && t == 0) out.push_back({0, 0, {}});
    return out;
  }
  Exponents e(L.width(), 0);
  std::function<void(unsigned, int)> fill = [&](unsigned slot, int remaining) {
    if (slot > s) {
      if (remaining == 0) out.push_back({s, t, e});
      return;
    }
    const unsigned left = s - slot;  // factors still to place after this one
    for (int d = min_factor; d + int(left) * min_factor <= remaining; ++d) {
      for (const auto& m : monomials_by_degree_[d]) {
        std::copy(m.begin(), m.end(), e.begin() + L.t_index(slot, 1));
        fill(slot + 1, remaining - d);
      }
    }
    std::fill(e.begin() + L.t_index(slot, 1), e.begin() + L.t_index(slot, 1) + g, 0);
  };
  for (int a = 0; a <= t; ++a) {
    for (const auto& m : monomials_by_degree_[a]) {
      std::copy(m.begin(), m.end(), e.begin());
      fill(1, t - a);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CobarBasisElement& x, const CobarBasisElement& y) { return x.exponents < y.exponents; });
  return out;
}

const IntPoly& CobarComplex::moved_generator(unsigned n, unsigned slot, unsigned slots) {
  auto key = std::make_tuple(n, slot, slots);
  auto it = moved_generator_cache_.find(key);
  if (it != moved_generator_cache_.end()) return it->second;
  const Layout L = bp_->layout(slots);
  IntPoly image(L);
  if (slot == 0) {
    image = bp_->v(n, slots);
  } else {
    // eta_R(v_n) inside factor slot-1, its own coefficients moved further left
    const Layout G = bp_->layout(1);
    const unsigned g = bp_->generators();
    for (const auto& [e, c] : bp_->right_unit_generator(n).terms()) {
      const Exponents ve(e.begin(), e.begin() + g);
      Exponents te(L.width(), 0);
      for (unsigned m = 1; m <= g; ++m) te[L.t_index(slot, m)] = e[G.t_index(1, m)];
      image += times_monomial(moved_coefficient(ve, slot - 1, slots), te).scaled(c);
    }
  }
  return moved_generator_cache_.emplace(key, std::move(image)).first->second;
}

const IntPoly& CobarComplex::moved_coefficient(const Exponents& v_exponents, unsigned slot, unsigned slots) {
  auto key = std::make_tuple(slot, slots, v_exponents);
  auto it = coefficient_cache_.find(key);
  if (it != coefficient_cache_.end()) return it->second;
  const Layout L = bp_->layout(slots);
  IntPoly value(L);
  auto first = std::find_if(v_exponents.begin(), v_exponents.end(), [](auto k) { return k != 0; });
  if (first == v_exponents.end()) {
    value = IntPoly::constant(L, 1);
  } else {
    const unsigned n = unsigned(first - v_exponents.begin()) + 1;
    Exponents rest = v_exponents;
    --rest[n - 1];
    value = moved_coefficient(rest, slot, slots) * moved_generator(n, slot, slots);
  }
  return coefficient_cache_.emplace(key, std::move(value)).first->second;
}

const IntPoly& CobarComplex::split_generator(unsigned n, unsigned slot, unsigned slots) {
  auto key = std::make_tuple(n, slot, slots);
  auto it = split_generator_cache_.find(key);
  if (it != split_generator_cache_.end()) return it->second;
  const Layout L = bp_->layout(slots);
  const Layout D = bp_->layout(2);
  const unsigned g = bp_->generators();
  IntPoly image(L);
  for (const auto& [e, c] : bp_->coproduct_generator(n).terms()) {
    const Exponents ve(e.begin(), e.begin() + g);
    Exponents te(L.width(), 0);
    for (unsigned m = 1; m <= g; ++m) {
      te[L.t_index(slot + 1, m)] = e[D.t_index(1, m)];
      te[L.t_index(slot + 2, m)] = e[D.t_index(2, m)];
    }
    image += times_monomial(moved_coefficient(ve, slot, slots), te).scaled(c);
  }
  return split_generator_cache_.emplace(key, std::move(image)).first->second;
}

const IntPoly& CobarComplex::split_factor(const Exponents& t_exponents, unsigned slot, unsigned slots) {
  auto key = std::make_tuple(slot, slots, t_exponents);
  auto it = split_cache_.find(key);
  if (it != split_cache_.end()) return it->second;
  const Layout L = bp_->layout(slots);
  IntPoly value(L);
  auto first = std::find_if(t_exponents.begin(), t_exponents.end(), [](auto k) { return k != 0; });
  if (first == t_exponents.end()) {
    value = IntPoly::constant(L, 1);
  } else {
    const unsigned n = unsigned(first - t_exponents.begin()) + 1;
    Exponents rest = t_exponents;
    --rest[n - 1];
    value = split_factor(rest, slot, slots) * split_generator(n, slot, slots);
  }
  return split_cache_.emplace(key, std::move(value)).first->second;
}

IntPoly CobarComplex::differential_of(const CobarBasisElement& x) {
  const unsigned g = bp_->generators();
  const unsigned s = x.s;
  const Layout out = bp_->layout(s + 1);
  IntPoly result(out);
  if (g == 0) return result;

  const Exponents coeff(x.exponents.begin(), x.exponents.begin() + g);
  auto factor = [&](unsigned j) {
    return Exponents(x.exponents.begin() + (j + 1) * g, x.exponents.begin() + (j + 2) * g);
  };

  // 1 (x) X: the left coefficient passes through eta_R into a new first factor
  {
    Exponents shifted(out.width(), 0);
    for (unsigned j = 0; j < s; ++j) {
      const Exponents f = factor(j);
      std::copy(f.begin(), f.end(), shifted.begin() + out.t_index(j + 2, 1));
    }
    result += times_monomial(moved_coefficient(coeff, 1, s + 1), shifted);
  }
  // sum_i (-1)^{i+1} Delta applied to factor i
  for (unsigned i = 0; i < s; ++i) {
    Exponents rest(out.width(), 0);
    std::copy(coeff.begin(), coeff.end(), rest.begin());
    for (unsigned j = 0; j < s; ++j) {
      if (j == i) continue;
      const Exponents f = factor(j);
      const unsigned target = j < i ? j : j + 1;
      std::copy(f.begin(), f.end(), rest.begin() + out.t_index(target + 1, 1));
    }
    IntPoly term = times_monomial(split_factor(factor(i), i, s + 1), rest);
    if (i % 2 == 0) result -= term;
    else result += term;
  }
  // X (x) 1 has an empty factor and vanishes in the reduced complex, as do
  // the primitive parts of the terms above.
  IntPoly reduced(out);
  for (const auto& [e, c] : result.terms())
    if (!has_empty_factor(e, out)) reduced.add_term(e, c);
  return reduced;
}

linalg::SparseIntMatrix CobarComplex::differential(unsigned s, int t) {
  const auto source = basis(s, t);
  const auto target = basis(s + 1, t);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i].exponents, i);
  std::vector<linalg::MatrixEntry> entries;
  for (std::size_t col = 0; col < source.size(); ++col) {
    const IntPoly image = differential_of(source[col]);
    for (const auto& [e, c] : image.terms()) {
      auto it = index.find(e);
      if (it == index.end())
        throw CobarError(prime(), s, t, describe(source[col]),
                         "cobar differential left the target basis at " + describe(source[col]));
      entries.push_back({it->second, col, c});
    }
  }
  return linalg::SparseIntMatrix::from_entries(target.size(), source.size(), std::move(entries));
}

void CobarComplex::check_square_zero(unsigned s, int t) {
  const auto first = differential(s, t);
  const auto second = differential(s + 1, t);
  const auto composite = second * first;
  if (composite.is_zero()) return;
  const auto source = basis(s, t);
  const std::size_t col = composite.entries().front().col;
  const std::string name = describe(source[col]);
  throw CobarError(prime(), s, t, name,
                   "d o d != 0 at p=" + std::to_string(prime()) + " (s,t)=(" + std::to_string(s) +
                       "," + std::to_string(t) + ") on basis element " + name);
}

std::string CobarComplex::describe(const CobarBasisElement& x) const {
  const unsigned g = bp_->generators();
  auto mono = [&](const char* var, std::size_t offset) {
    std::string out;
    for (unsigned n = 1; n <= g; ++n) {
      const auto k = x.exponents[offset + n - 1];
      if (k == 0) continue;
      out += (out.empty() ? "" : " ") + std::string(var) + std::to_string(n);
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  };
  std::string coef = g ? mono("v", 0) : "";
  if (x.s == 0) return coef.empty() ? "1" : coef;
  std::string bar = "[";
  for (unsigned j = 0; j < x.s; ++j) bar += (j ? "|" : "") + mono("t", (j + 1) * g);
  bar += "]";
  return coef.empty() ? bar : coef + " " + bar;
}

namespace {
std::shared_ptr<const bp::BPPresentation> presentation_for(unsigned long p, int t) {
  return std::make_shared<const bp::BPPresentation>(p, std::max(t, 2));
}
}  // namespace

std::vector<CobarBasisElement> cobar_basis(unsigned long p, unsigned s, int t) {
  return CobarComplex(presentation_for(p, t)).basis(s, t);
}

linalg::SparseIntMatrix cobar_d(unsigned long p, unsigned s, int t) {
  CobarComplex complex(presentation_for(p, t));
  complex.check_square_zero(s, t);
  return complex.differential(s, t);
}

AbelianPGroup ext_bp(unsigned long p, unsigned s, int t) {
  if (t < 0) return AbelianPGroup::trivial();
  CobarComplex complex(presentation_for(p, t));
  const auto d_out = complex.differential(s, t);
  const auto d_in = s == 0 ? linalg::SparseIntMatrix(d_out.cols(), 0) : complex.differential(s - 1, t);
  auto group = linalg::chain_homology(d_in, d_out, p);
  if (!(s == 0 && t == 0) && !group.is_finite())
    throw std::logic_error("E2^{" + std::to_string(s) + "," + std::to_string(t) +
                           "} has positive free rank; expected a finite group away from (0,0)");
  return group;
}

}  // namespace slicestem::cobar
