#include "slicestem/bp_algebra.hpp"

#include <sstream>

namespace slicestem::bp {

namespace {

template <class C>
Polynomial<C> widen(const Polynomial<C>& x, unsigned slots) {
  Layout target{x.layout().generators, slots};
  Polynomial<C> r(target);
  for (const auto& [e, c] : x.terms()) {
    Exponents w(target.width(), 0);
    for (std::size_t k = 0; k < e.size() && k < w.size(); ++k) w[k] = e[k];
    r.add_term(w, c);
  }
  return r;
}

unsigned long ipow(unsigned long base, unsigned e) {
  unsigned long r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

IntPoly to_integral(const RationalPoly& x) {
  IntPoly r(x.layout());
  for (const auto& [e, c] : x.terms()) {
    if (!c.is_integral()) {
      std::ostringstream msg;
      msg << "non-integral coefficient " << c.to_string() << " at exponent [";
      for (std::size_t k = 0; k < e.size(); ++k) msg << (k ? "," : "") << e[k];
      msg << "]";
      throw std::domain_error(msg.str());
    }
    r.add_term(e, c.to_integer());
  }
  return r;
}

RationalPoly to_rational(const IntPoly& x, unsigned long p) {
  RationalPoly r(x.layout());
  for (const auto& [e, c] : x.terms()) r.add_term(e, PLocalRational(p, c));
  return r;
}

IntPoly substitute(const IntPoly& x, const std::vector<IntPoly>& images, const Layout& target) {
  if (images.size() != x.layout().width())
    throw std::invalid_argument("substitute: wrong number of images");
  IntPoly r(target);
  // cache powers per variable
  std::vector<std::map<unsigned, IntPoly>> powers(images.size());
  for (const auto& [e, c] : x.terms()) {
    IntPoly term = IntPoly::constant(target, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      auto it = powers[k].find(e[k]);
      if (it == powers[k].end()) it = powers[k].emplace(e[k], images[k].pow(e[k])).first;
      term = term * it->second;
    }
    r += term;
  }
  return r;
}

std::string to_string(const IntPoly& x) {
  if (x.is_zero()) return "0";
  const Layout& L = x.layout();
  std::ostringstream out;
  bool first = true;
  // descending order reads more naturally
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (unsigned n = 1; n <= L.generators; ++n) {
      const auto k = e[L.v_index(n)];
      if (k == 0) continue;
      mono += (mono.empty() ? "" : " ") + std::string("v") + std::to_string(n);
      if (k > 1) mono += "^" + std::to_string(k);
    }
    std::string bar;
    for (unsigned s = 1; s <= L.slots; ++s) {
      std::string factor;
      for (unsigned n = 1; n <= L.generators; ++n) {
        const auto k = e[L.t_index(s, n)];
        if (k == 0) continue;
        factor += (factor.empty() ? "" : " ") + std::string("t") + std::to_string(n);
        if (k > 1) factor += "^" + std::to_string(k);
      }
      if (L.slots > 1) bar += (s > 1 ? "|" : "") + (factor.empty() ? std::string("1") : factor);
      else bar = factor;
    }
    if (L.slots > 1) bar = "[" + bar + "]";
    std::string body = mono;
    if (!bar.empty()) body += (body.empty() ? "" : " ") + bar;
    BigInt a = abs(c);
    std::string coef = (a == 1 && !body.empty()) ? "" : a.get_str();
    if (!coef.empty() && !body.empty()) coef += " ";
    if (first) out << (c < 0 ? "-" : "") << coef << body;
    else out << (c < 0 ? " - " : " + ") << coef << body;
    first = false;
  }
  return out.str();
}

BPPresentation::BPPresentation(unsigned long p, int degree_bound)
    : p_(p), degree_bound_(degree_bound) {
  if (!is_prime(p)) throw std::invalid_argument("BPPresentation: " + std::to_string(p) + " is not prime");
  if (degree_bound < 2) throw std::invalid_argument("BPPresentation: degree bound must be >= 2");
  while (2 * (long(ipow(p, generators_ + 1)) - 1) <= degree_bound) ++generators_;
  compute_log_coefficients();
  compute_right_unit();
  compute_coproduct();
}

int BPPresentation::generator_degree(unsigned n) const { return int(2 * (ipow(p_, n) - 1)); }

int BPPresentation::degree(const Exponents& e, const Layout& layout) const {
  int d = 0;
  for (unsigned s = 0; s <= layout.slots; ++s)
    for (unsigned n = 1; n <= layout.generators; ++n)
      d += e[layout.t_index(s, n)] * generator_degree(n);
  return d;
}

IntPoly BPPresentation::v(unsigned n, unsigned slots) const {
  Layout L = layout(slots);
  Exponents e(L.width(), 0);
  e[L.v_index(n)] = 1;
  IntPoly r(L);
  r.add_term(e, 1);
  return r;
}

IntPoly BPPresentation::t(unsigned n, unsigned slot, unsigned slots) const {
  Layout L = layout(slots);
  Exponents e(L.width(), 0);
  e[L.t_index(slot + 1, n)] = 1;
  IntPoly r(L);
  r.add_term(e, 1);
  return r;
}

void BPPresentation::check_degree(const IntPoly& x) const {
  for (const auto& [e, c] : x.terms())
    if (degree(e, x.layout()) > degree_bound_)
      throw DegreeBoundError("element of degree " + std::to_string(degree(e, x.layout())) +
                             " exceeds the presentation's degree bound " +
                             std::to_string(degree_bound_));
}

void BPPresentation::compute_log_coefficients() {
  const Layout L = layout(0);
  lambda_.push_back(RationalPoly::constant(L, PLocalRational(p_, 1)));
  for (unsigned n = 1; n <= generators_; ++n) {
    RationalPoly sum(L);
    for (unsigned i = 0; i < n; ++i) {
      Exponents e(L.width(), 0);
      e[L.v_index(n - i)] = static_cast<std::uint16_t>(ipow(p_, i));
      RationalPoly vpow(L);
      vpow.add_term(e, PLocalRational(p_, 1));
      sum += lambda_[i] * vpow;
    }
    lambda_.push_back(sum.scaled(PLocalRational(p_, 1, 1)));
  }
}

void BPPresentation::compute_right_unit() {
  const Layout L = layout(1);
  const PLocalRational one(p_, 1);
  auto t_pow = [&](unsigned j, unsigned long k) {
    Exponents e(L.width(), 0);
    if (j > 0) e[L.t_index(1, j)] = static_cast<std::uint16_t>(k);
    RationalPoly r(L);
    r.add_term(e, one);
    return r;
  };
  // eta_R(lambda_n) = sum_{i+j=n} lambda_i t_j^{p^i}
  std::vector<RationalPoly> eta_lambda;
  for (unsigned n = 0; n <= generators_; ++n) {
    RationalPoly sum(L);
    for (unsigned i = 0; i <= n; ++i) sum += widen(lambda_[i], 1) * t_pow(n - i, ipow(p_, i));
    eta_lambda.push_back(sum);
  }
  std::vector<RationalPoly> eta_v;
  for (unsigned n = 1; n <= generators_; ++n) {
    RationalPoly r = eta_lambda[n].scaled(PLocalRational(p_, p_));
    for (unsigned i = 1; i < n; ++i) r -= eta_lambda[i] * eta_v[n - i - 1].pow(unsigned(ipow(p_, i)));
    eta_v.push_back(r);
    eta_r_.push_back(to_integral(r));
  }
}

void BPPresentation::compute_coproduct() {
  const Layout L = layout(2);
  const PLocalRational one(p_, 1);
  auto tt = [&](unsigned j, unsigned long a, unsigned k, unsigned long b) {
    Exponents e(L.width(), 0);
    if (j > 0) e[L.t_index(1, j)] = static_cast<std::uint16_t>(a);
    if (k > 0) e[L.t_index(2, k)] = static_cast<std::uint16_t>(b);
    RationalPoly r(L);
    r.add_term(e, one);
    return r;
  };
  // sum_{i+j=n} lambda_i Delta(t_j)^{p^i} = sum_{i+j+k=n} lambda_i t_j^{p^i} (x) t_k^{p^{i+j}}
  std::vector<RationalPoly> delta{RationalPoly::constant(L, one)};
  for (unsigned n = 1; n <= generators_; ++n) {
    RationalPoly r(L);
    for (unsigned i = 0; i <= n; ++i)
      for (unsigned j = 0; i + j <= n; ++j)
        r += widen(lambda_[i], 2) * tt(j, ipow(p_, i), n - i - j, ipow(p_, i + j));
    for (unsigned i = 1; i <= n; ++i)
      r -= widen(lambda_[i], 2) * delta[n - i].pow(unsigned(ipow(p_, i)));
    delta.push_back(r);
    delta_.push_back(to_integral(r));
  }
}

IntPoly BPPresentation::right_unit(const IntPoly& x) const {
  if (x.layout().slots != 0) throw std::invalid_argument("right_unit expects an element of BP_*");
  check_degree(x);
  std::vector<IntPoly> images;
  for (unsigned n = 1; n <= generators_; ++n) images.push_back(eta_r_[n - 1]);
  return substitute(x, images, layout(1));
}

IntPoly BPPresentation::coefficient_at(const IntPoly& b, unsigned slot, unsigned slots) const {
  if (b.layout().slots != 0) throw std::invalid_argument("coefficient_at expects an element of BP_*");
  if (slot > slots) throw std::invalid_argument("coefficient_at: slot out of range");
  if (slot == 0) return widen(b, slots);
  // v_n at slot k = eta_R(v_n) with its t's in factor k-1 and its coefficients pushed further left
  std::vector<IntPoly> images;
  for (unsigned n = 1; n <= generators_; ++n) {
    const IntPoly& eta = eta_r_[n - 1];
    IntPoly img(layout(slots));
    for (const auto& [e, c] : eta.terms()) {
      IntPoly coeff(layout(0));
      Exponents ve(layout(0).width(), 0);
      for (unsigned m = 1; m <= generators_; ++m) ve[m - 1] = e[layout(1).v_index(m)];
      coeff.add_term(ve, c);
      IntPoly moved = coefficient_at(coeff, slot - 1, slots);
      Exponents te(layout(slots).width(), 0);
      for (unsigned m = 1; m <= generators_; ++m)
        te[layout(slots).t_index(slot, m)] = e[layout(1).t_index(1, m)];
      IntPoly tpart(layout(slots));
      tpart.add_term(te, 1);
      img += moved * tpart;
    }
    images.push_back(img);
  }
  return substitute(b, images, layout(slots));
}

IntPoly BPPresentation::coproduct_at(const IntPoly& x, unsigned slot) const {
  const unsigned s = x.layout().slots;
  if (slot >= s) throw std::invalid_argument("coproduct_at: slot out of range");
  check_degree(x);
  const Layout out = layout(s + 1);
  const unsigned g = generators_;

  // Delta(t_n) placed across factors slot, slot+1
  std::vector<IntPoly> inner;  // images for Delta's own variables (layout 2)
  for (unsigned n = 1; n <= g; ++n) inner.push_back(coefficient_at(v(n), slot, s + 1));
  for (unsigned n = 1; n <= g; ++n) inner.push_back(t(n, slot, s + 1));
  for (unsigned n = 1; n <= g; ++n) inner.push_back(t(n, slot + 1, s + 1));

  std::vector<IntPoly> images;
  for (unsigned n = 1; n <= g; ++n) images.push_back(v(n, s + 1));
  for (unsigned k = 0; k < s; ++k)
    for (unsigned n = 1; n <= g; ++n) {
      if (k < slot) images.push_back(t(n, k, s + 1));
      else if (k == slot) images.push_back(substitute(delta_[n - 1], inner, out));
      else images.push_back(t(n, k + 1, s + 1));
    }
  return substitute(x, images, out);
}

IntPoly BPPresentation::coproduct(const IntPoly& x) const {
  if (x.layout().slots != 1) throw std::invalid_argument("coproduct expects an element of Gamma");
  return coproduct_at(x, 0);
}

IntPoly BPPresentation::counit(const IntPoly& x, unsigned slot) const {
  const Layout in = x.layout();
  if (slot >= in.slots) throw std::invalid_argument("counit: slot out of range");
  const Layout out = layout(in.slots - 1);
  IntPoly r(out);
  for (const auto& [e, c] : x.terms()) {
    bool empty = true;
    for (unsigned n = 1; n <= in.generators; ++n)
      if (e[in.t_index(slot + 1, n)] != 0) empty = false;
    if (!empty) continue;
    Exponents w;
    w.reserve(out.width());
    for (std::size_t k = 0; k < e.size(); ++k) {
      const std::size_t block = k / in.generators;
      if (block != slot + 1) w.push_back(e[k]);
    }
    r.add_term(w, c);
  }
  return r;
}

}  // namespace slicestem::bp
