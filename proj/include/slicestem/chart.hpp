#pragma once

#include <string>
#include <vector>

#include "slicestem/slice.hpp"

namespace slicestem::chart {

struct ChartSummand {
  int s = 0;
  int two_t = 0;
  std::string group;
  std::string label;
};

struct ChartCell {
  int m = 0, n = 0, t = 0;
  std::vector<ChartSummand> summands;
};

struct Endpoint {
  int m = 0, n = 0, t = 0;
};

struct ChartArrow {
  Endpoint from, to;
  std::string kind;  // "tau_pr" or "tau"
  int q = 0, j = 0;
};

/// The JSON chart document. It is the single source of truth; SVG output
/// is rendered from it alone.
struct Chart {
  std::string kind;     // "slice-e1" or "region-e2"
  std::string variant;  // "integral", "p-local(p=3)", ...
  slice::Window window;
  std::vector<unsigned long> guide_primes;
  std::vector<ChartCell> cells;
  std::vector<ChartArrow> arrows;
  std::vector<std::string> warnings;

  std::string to_json() const;
  /// Throws std::invalid_argument on malformed input.
  static Chart from_json(const std::string& text);
};

/// One cell per bidegree of the window carrying a slice summand, i.e. with
/// E_2^{n-m,2n} != 0, plus the d1 arrows with both ends inside the window
/// (arrows only for the integral and 2-local variants).
Chart slice_e1_chart(const slice::Window& window, const slice::E2Source& source,
                     std::vector<unsigned long> guide_primes);

/// Surviving Andrews-Miller monomials inside the window and T(alpha).
Chart region_e2_chart(const slice::Window& window, std::vector<unsigned long> guide_primes);

/// Deterministic SVG: grid, cells, arrows, the p-local lines
/// n = (p-1)/(p-2) m for odd guide primes, and the curve 2n = 3m+5 joined
/// to 2n = 4m at (5, 10).
std::string render_svg(const Chart& chart);

}  // namespace slicestem::chart
