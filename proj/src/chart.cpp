#include "slicestem/chart.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace slicestem::chart {

using Json = nlohmann::ordered_json;

std::string Chart::to_json() const {
  Json doc;
  doc["kind"] = kind;
  doc["variant"] = variant;
  doc["window"] = {{"m_min", window.m_min}, {"m_max", window.m_max}, {"n_min", window.n_min}, {"n_max", window.n_max}};
  doc["guide_primes"] = guide_primes;
  Json cells_json = Json::array();
  for (const auto& c : cells) {
    Json summands = Json::array();
    for (const auto& s : c.summands)
      summands.push_back({{"s", s.s}, {"two_t", s.two_t}, {"group", s.group}, {"label", s.label}});
    cells_json.push_back({{"m", c.m}, {"n", c.n}, {"t", c.t}, {"summands", std::move(summands)}});
  }
  doc["cells"] = std::move(cells_json);
  Json arrows_json = Json::array();
  for (const auto& a : arrows)
    arrows_json.push_back({{"from", {{"m", a.from.m}, {"n", a.from.n}, {"t", a.from.t}}},
                           {"to", {{"m", a.to.m}, {"n", a.to.n}, {"t", a.to.t}}},
                           {"kind", a.kind},
                           {"q", a.q},
                           {"j", a.j}});
  doc["arrows"] = std::move(arrows_json);
  doc["warnings"] = warnings;
  return doc.dump(1) + "\n";
}

Chart Chart::from_json(const std::string& text) {
  const Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw std::invalid_argument("chart: not a JSON object");
  try {
    Chart c;
    c.kind = doc.at("kind").get<std::string>();
    if (c.kind != "slice-e1" && c.kind != "region-e2") throw std::invalid_argument("chart: unknown kind " + c.kind);
    c.variant = doc.value("variant", "");
    const auto& w = doc.at("window");
    c.window = {w.at("m_min").get<int>(), w.at("m_max").get<int>(), w.at("n_min").get<int>(), w.at("n_max").get<int>()};
    c.guide_primes = doc.value("guide_primes", std::vector<unsigned long>{});
    for (const auto& cell : doc.at("cells")) {
      ChartCell out{cell.at("m").get<int>(), cell.at("n").get<int>(), cell.at("t").get<int>(), {}};
      for (const auto& s : cell.at("summands"))
        out.summands.push_back({s.at("s").get<int>(), s.at("two_t").get<int>(), s.at("group").get<std::string>(),
                                s.value("label", "")});
      c.cells.push_back(std::move(out));
    }
    for (const auto& a : doc.at("arrows")) {
      auto end = [](const Json& e) { return Endpoint{e.at("m").get<int>(), e.at("n").get<int>(), e.at("t").get<int>()}; };
      c.arrows.push_back({end(a.at("from")), end(a.at("to")), a.at("kind").get<std::string>(), a.at("q").get<int>(),
                          a.at("j").get<int>()});
    }
    c.warnings = doc.value("warnings", std::vector<std::string>{});
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("chart: malformed document: ") + ex.what());
  }
}

Chart slice_e1_chart(const slice::Window& window, const slice::E2Source& source,
                     std::vector<unsigned long> guide_primes) {
  Chart chart;
  chart.kind = "slice-e1";
  chart.variant = source.variant().to_string();
  chart.window = window;
  chart.guide_primes = std::move(guide_primes);
  for (int n = std::max(0, window.n_min); n <= window.n_max; ++n)
    for (int m = window.m_min; m <= window.m_max; ++m) {
      const int s = n - m;
      if (s < 0) continue;
      const AbelianPGroup g = source.at(s, 2 * n);
      if (g.is_trivial()) continue;
      ChartSummand summand{s, 2 * n, g.to_string(), ""};
      for (const auto& ss : slice::slice_decomposition(n, source))
        if (ss.s == s && ss.label) summand.label = ss.label->label();
      chart.cells.push_back({m, n, n, {summand}});
    }
  const bool two_primary = source.variant().kind == slice::Variant::Kind::Integral || source.variant().p == 2;
  if (two_primary && window.m_max >= 1) {
    const int q_max = std::max(1, (window.m_max + 3) / 4);
    for (const auto& a : slice::d1_arrows(q_max, std::max(0, window.n_max))) {
      if (!window.contains(a.source.m, a.source.n) || !window.contains(a.target.m, a.target.n)) continue;
      chart.arrows.push_back({{a.source.m, a.source.n, a.source.t},
                              {a.target.m, a.target.n, a.target.t},
                              slice::to_string(a.kind),
                              a.q,
                              a.j});
    }
    std::sort(chart.arrows.begin(), chart.arrows.end(), [](const ChartArrow& x, const ChartArrow& y) {
      return std::tie(x.from.n, x.from.m, x.to.n, x.to.m, x.q, x.j) < std::tie(y.from.n, y.from.m, y.to.n, y.to.m, y.q, y.j);
    });
  }
  return chart;
}

Chart region_e2_chart(const slice::Window& window, std::vector<unsigned long> guide_primes) {
  Chart chart;
  chart.kind = "region-e2";
  chart.variant = "integral";
  chart.window = window;
  chart.guide_primes = std::move(guide_primes);
  const auto columns = slice::region_e2_columns(window);
  for (const auto& sv : columns.survivors)
    chart.cells.push_back({sv.m, sv.n, sv.n, {{sv.monomial.s(), sv.monomial.t(), "Z/2", sv.monomial.label()}}});
  std::sort(chart.cells.begin(), chart.cells.end(),
            [](const ChartCell& a, const ChartCell& b) { return std::tie(a.n, a.m) < std::tie(b.n, b.m); });
  chart.warnings = columns.warnings;
  return chart;
}

}  // namespace slicestem::chart
