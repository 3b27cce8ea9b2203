#include <algorithm>
#include <cstdio>
#include <sstream>

#include "slicestem/chart.hpp"

namespace slicestem::chart {

namespace {

constexpr double kUnit = 48.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  slice::Window w;
  double x(double m) const { return kMargin + (m - w.m_min) * kUnit; }
  double y(double n) const { return kMargin + (w.n_max - n) * kUnit; }
  double width() const { return 2 * kMargin + (w.m_max - w.m_min) * kUnit; }
  double height() const { return 2 * kMargin + (w.n_max - w.n_min) * kUnit; }
};

}  // namespace

std::string render_svg(const Chart& chart) {
  const Frame f{chart.window};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height())
    << "\" viewBox=\"0 0 " << num(f.width()) << ' ' << num(f.height()) << "\" font-family=\"sans-serif\">\n";
  o << "<title>" << escape(chart.kind + " " + chart.variant) << "</title>\n";
  o << "<defs>\n<clipPath id=\"window\"><rect x=\"" << num(f.x(chart.window.m_min)) << "\" y=\""
    << num(f.y(chart.window.n_max)) << "\" width=\"" << num((chart.window.m_max - chart.window.m_min) * kUnit)
    << "\" height=\"" << num((chart.window.n_max - chart.window.n_min) * kUnit) << "\"/></clipPath>\n"
    << "<marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
       "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#b03030\"/></marker>\n</defs>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  o << "<g id=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int m = chart.window.m_min; m <= chart.window.m_max; ++m)
    o << "<line x1=\"" << num(f.x(m)) << "\" y1=\"" << num(f.y(chart.window.n_max)) << "\" x2=\"" << num(f.x(m))
      << "\" y2=\"" << num(f.y(chart.window.n_min)) << "\"/>\n";
  for (int n = chart.window.n_min; n <= chart.window.n_max; ++n)
    o << "<line x1=\"" << num(f.x(chart.window.m_min)) << "\" y1=\"" << num(f.y(n)) << "\" x2=\""
      << num(f.x(chart.window.m_max)) << "\" y2=\"" << num(f.y(n)) << "\"/>\n";
  o << "</g>\n<g id=\"axes\" font-size=\"11\" fill=\"#444444\">\n";
  for (int m = chart.window.m_min; m <= chart.window.m_max; ++m)
    o << "<text x=\"" << num(f.x(m)) << "\" y=\"" << num(f.y(chart.window.n_min) + 18) << "\" text-anchor=\"middle\">"
      << m << "</text>\n";
  for (int n = chart.window.n_min; n <= chart.window.n_max; ++n)
    o << "<text x=\"" << num(f.x(chart.window.m_min) - 12) << "\" y=\"" << num(f.y(n) + 4) << "\" text-anchor=\"end\">"
      << n << "</text>\n";
  o << "<text x=\"" << num(f.width() / 2) << "\" y=\"" << num(f.height() - 8) << "\" text-anchor=\"middle\">m</text>\n";
  o << "<text x=\"14\" y=\"" << num(f.height() / 2) << "\">n</text>\n</g>\n";

  // Guide curves, clipped to the window.
  const double lo = chart.window.m_min, hi = chart.window.m_max;
  o << "<g id=\"guides\" clip-path=\"url(#window)\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (unsigned long p : chart.guide_primes) {
    if (p < 3) continue;
    const double slope = double(p - 1) / double(p - 2);
    const double start = std::max(lo, 0.0);
    if (start > hi) continue;
    o << "<line id=\"plocal-" << p << "\" class=\"plocal-line\" x1=\"" << num(f.x(start)) << "\" y1=\""
      << num(f.y(slope * start)) << "\" x2=\"" << num(f.x(hi)) << "\" y2=\"" << num(f.y(slope * hi))
      << "\" stroke=\"#3060b0\" stroke-dasharray=\"6,4\"/>\n";
  }
  {
    std::vector<std::pair<double, double>> pts;
    const double a = std::min(lo, 5.0), b = std::max(hi, 5.0);
    pts.emplace_back(a, (3 * a + 5) / 2);
    pts.emplace_back(5.0, 10.0);
    pts.emplace_back(b, 2 * b);
    o << "<polyline id=\"am-curve\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      o << (i ? " " : "") << num(f.x(pts[i].first)) << ',' << num(f.y(pts[i].second));
    o << "\" stroke=\"#208040\"/>\n";
  }
  o << "</g>\n";
  o << "<circle id=\"am-breakpoint\" cx=\"" << num(f.x(5)) << "\" cy=\"" << num(f.y(10)) << "\" r=\"2\" fill=\"#208040\""
    << (chart.window.contains(5, 10) ? "" : " visibility=\"hidden\"") << "/>\n";

  o << "<g id=\"arrows\" stroke=\"#b03030\" stroke-width=\"1.2\">\n";
  for (const auto& a : chart.arrows)
    o << "<line class=\"d1 " << escape(a.kind) << "\" x1=\"" << num(f.x(a.from.m)) << "\" y1=\"" << num(f.y(a.from.n))
      << "\" x2=\"" << num(f.x(a.to.m)) << "\" y2=\"" << num(f.y(a.to.n)) << "\" marker-end=\"url(#head)\"/>\n";
  o << "</g>\n<g id=\"cells\" font-size=\"9\">\n";
  for (const auto& c : chart.cells) {
    std::string text;
    for (const auto& s : c.summands) {
      if (!text.empty()) text += " + ";
      text += s.label.empty() ? s.group : s.label;
    }
    o << "<g class=\"cell\" data-m=\"" << c.m << "\" data-n=\"" << c.n << "\">"
      << "<circle cx=\"" << num(f.x(c.m)) << "\" cy=\"" << num(f.y(c.n)) << "\" r=\"4\" fill=\"black\"/>"
      << "<text x=\"" << num(f.x(c.m) + 6) << "\" y=\"" << num(f.y(c.n) - 6) << "\">" << escape(text)
      << "</text></g>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace slicestem::chart
