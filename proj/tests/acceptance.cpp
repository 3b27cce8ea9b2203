// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "slicestem/am_ring.hpp"
#include "slicestem/bp_algebra.hpp"
#include "slicestem/cobar.hpp"
#include "slicestem/commands.hpp"
#include "slicestem/ext_table.hpp"
#include "slicestem/oracle.hpp"
#include "slicestem/slice.hpp"
#include "slicestem/stems.hpp"

using namespace slicestem;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string bideg(long a, long b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

const ext::ExtTable& table(unsigned long p) {
  static std::map<unsigned long, ext::ExtTable> tables;
  static const std::map<unsigned long, std::pair<unsigned, int>> windows = {{2, {10, 20}}, {3, {7, 30}}, {5, {5, 40}}};
  auto it = tables.find(p);
  if (it == tables.end()) {
    const auto [s, t] = windows.at(p);
    it = tables.emplace(p, ext::compute_ext_table(p, s, t, {4, false})).first;
  }
  return it->second;
}

Outcome cobar_axioms() {
  Outcome o;
  std::size_t elements = 0;
  for (auto [p, s_max, t_max] : {std::tuple{2ul, 8u, 20}, std::tuple{3ul, 6u, 30}}) {
    cobar::CobarComplex complex(std::make_shared<const bp::BPPresentation>(p, t_max));
    for (int t = 0; t <= t_max; ++t)
      for (unsigned s = 0; s <= s_max; ++s) {
        elements += complex.basis(s, t).size();
        try {
          complex.check_square_zero(s, t);
        } catch (const std::exception& ex) {
          o.fail(ex.what());
        }
      }
  }
  if (o.pass) o.detail = "d o d = 0 on " + std::to_string(elements) + " basis elements (p=2 s<=8 t<=20, p=3 s<=6 t<=30)";
  return o;
}

Outcome known_values() {
  Outcome o;
  if (ext::ext_mu(0, 0) != AbelianPGroup::free(1)) o.fail("E2^{0,0}(MU) = " + ext::ext_mu(0, 0).to_string());
  if (cobar::ext_bp(2, 1, 2) != AbelianPGroup::cyclic(2)) o.fail("E2^{1,2}(BP(2)) = " + cobar::ext_bp(2, 1, 2).to_string());
  for (unsigned long p : {2ul, 3ul, 5ul})
    for (const auto& [d, g] : table(p).nonzero())
      if (d.t % 2 != 0) o.fail("odd t nonzero at p=" + std::to_string(p) + " " + bideg(d.s, d.t));
  if (o.pass) o.detail = "E2^{0,0}(MU) = Z, E2^{1,2}(BP(2)) = Z/2, odd t zero at p = 2, 3, 5";
  return o;
}

Outcome vanishing_lines() {
  Outcome o;
  std::string sizes;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const auto& tab = table(p);
    for (unsigned s = 0; s <= tab.s_max(); ++s)
      for (int t = 0; t <= tab.t_max(); ++t)
        if (t < 2 * int(s) * int(p - 1) && !tab.at(s, t).is_trivial())
          o.fail("p=" + std::to_string(p) + " nonzero below the line at " + bideg(s, t));
    // the line is sharp: alpha_1^s sits on it whenever the table reaches it
    for (unsigned s = 1; s <= tab.s_max(); ++s) {
      const int t = 2 * int(s) * int(p - 1);
      if (p == 2 && t <= tab.t_max() && tab.at(s, t).is_trivial())
        o.fail("p=2 zero on the line at " + bideg(s, t));
    }
    sizes += " p=" + std::to_string(p) + " " + bideg(tab.s_max(), tab.t_max());
  }
  if (o.pass) o.detail = "zero below t = 2s(p-1) on" + sizes;
  return o;
}

Outcome am_window() {
  Outcome o;
  const auto& tab = table(2);
  const auto report = am::localization_compare(int(tab.s_max()), 18, tab);
  for (const auto& row : report.rows)
    if (!row.pass) o.fail(bideg(row.s, row.t) + " computed " + row.group);
  // every bidegree of the box inside the iso range appears
  std::size_t expected = 0;
  for (int s = 0; s <= int(tab.s_max()); ++s)
    for (int t = 0; t <= 18; ++t) expected += (t < 6 * s - 10 && t < 4 * s);
  if (report.rows.size() != expected) o.fail("row count " + std::to_string(report.rows.size()));
  if (tab.at(4, 12) != AbelianPGroup::cyclic(2)) o.fail("(4,12) = " + tab.at(4, 12).to_string());
  if (o.pass) o.detail = std::to_string(expected) + " bidegrees agree; (4,12) = Z/2";
  return o;
}

Outcome shift_correspondence() {
  Outcome o;
  for (int m = -60; m <= 60; ++m)
    for (int n = -60; n <= 60; ++n) {
      const auto [s, t] = slice::shift_T_inv(m, n);
      if (slice::shift_T(s, t) != std::pair{m, n}) o.fail("round trip fails at " + bideg(m, n));
      const bool iso = t < 6 * s - 10 && t < 4 * s;
      const bool region = 2 * n > 3 * m + 5 && 2 * n > 4 * m;
      if (iso != region || slice::in_T_alpha(m, n) != region) o.fail("region mismatch at " + bideg(m, n));
    }
  if (o.pass) o.detail = "pointwise on |m|,|n| <= 60";
  return o;
}

Outcome column_concentration() {
  Outcome o;
  try {
    const auto cols = slice::region_e2_columns({0, 30, 0, 200});
    for (const auto& s : cols.survivors) {
      const int r = s.m % 4;
      if (r != 0 && r != 3) o.fail("survivor at " + bideg(s.m, s.n));
    }
    if (cols.survivors.empty()) o.fail("no survivors");
    if (o.pass) o.detail = std::to_string(cols.survivors.size()) + " survivors, all in m = 0, 3 mod 4";
  } catch (const std::exception& ex) {
    o.fail(ex.what());
  }
  return o;
}

Outcome plocal_emptiness() {
  Outcome o;
  const slice::E2Source source(table(3));
  std::size_t cells = 0;
  for (int t = 0; t <= 15; ++t)
    for (int m = -10; m <= 10; ++m)
      for (int n = -10; n <= 40; ++n)
        if (n > 2 * m) {
          ++cells;
          if (slice::e1_cell_support(m, n, t, source)) o.fail("support at t=" + std::to_string(t) + " " + bideg(m, n));
        }
  if (o.pass) o.detail = std::to_string(cells) + " cells with n > 2m empty for t <= 15";
  return o;
}

Outcome oracle_instances() {
  Outcome o;
  const auto& stems_table = stems::seed_table();
  const auto real = oracle::FieldClass::formally_real();
  for (auto [m, n] : {std::pair{18, 37}, std::pair{61, 123}}) {
    const auto v = oracle::vanish(m, n, real, oracle::Target::integral(), stems_table);
    if (!v.vanishes()) o.fail(bideg(m, n) + " is " + v.status_name());
    bool theorem = false, stem = false;
    for (const auto& step : v.trace) {
      theorem |= step.citation == "thm:integral1";
      stem |= step.theorem == "stems table" && step.citation == stems_table.lookup(m)->citation;
    }
    if (!theorem || !stem) o.fail(bideg(m, n) + " trace lacks a citation");
  }
  for (auto [m, n] : {std::pair{18, 36}, std::pair{1, 4}}) {
    const auto v = oracle::vanish(m, n, real, oracle::Target::integral(), stems_table);
    if (v.status != oracle::Verdict::Status::Unknown) o.fail(bideg(m, n) + " is " + v.status_name());
  }
  if (o.pass) o.detail = "(18,37), (61,123) Vanishes with citations; (18,36), (1,4) Unknown";
  return o;
}

bool raw_eta(int m, int n) {
  if (m < 0) return true;
  const int r = m % 4;
  return (r == 1 || r == 2) && 2 * n > 3 * m + 5 && 2 * n > 4 * m;
}

Outcome oracle_regions() {
  Outcome o;
  using oracle::FieldClass;
  using oracle::Target;
  const auto& stems_table = stems::seed_table();
  const std::vector<std::pair<FieldClass, Target>> queries = {
      {FieldClass::eta_complete(), Target::integral()},   {FieldClass::eta_complete(), Target::local(3)},
      {FieldClass::eta_complete(), Target::local(5)},     {FieldClass::nonreal_char0(), Target::integral()},
      {FieldClass::positive_char(3), Target::local(5)},   {FieldClass::formally_real(), Target::integral()},
      {FieldClass::formally_real(), Target::local(3)},    {FieldClass::unspecified(), Target::integral()}};
  std::size_t evaluated = 0;
  for (const auto& [field, target] : queries)
    for (int m = -70; m <= 70; ++m) {
      bool previous = false;
      for (int n = -200; n <= 200; ++n) {
        const bool v = oracle::vanish(m, n, field, target, stems_table).vanishes();
        const long p = long(target.p);
        const bool allowed = target.plocal ? (m < 0 || (p - 2) * n > (p - 1) * m) : raw_eta(m, n);
        if (v && !allowed) o.fail(field.name() + " outside its region at " + bideg(m, n));
        if (previous && !v) o.fail(field.name() + " not upward closed at " + bideg(m, n));
        previous = v;
        ++evaluated;
      }
    }
  if (o.pass) o.detail = std::to_string(evaluated) + " queries sound and upward closed";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("slicestem-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0) o.fail("exit " + std::to_string(code) + ": " + err.str());
  };
  const std::vector<std::tuple<std::string, std::string, std::string>> windows = {
      {"2", "6", "12"}, {"3", "3", "12"}, {"5", "1", "12"}, {"7", "1", "12"}};
  for (const std::string run_id : {"a", "b"}) {
    const fs::path dir = root / run_id;
    const std::string cache = (dir / "cache").string();
    for (const auto& [p, s, t] : windows)
      run({"--cache-dir", cache, "ext", "--prime", p, "--smax", s, "--tmax", t});
    run({"ext", "--prime", "3", "--smax", "4", "--tmax", "24", "--out", (dir / "ext-p3.json").string()});
    for (const std::string format : {"json", "svg"}) {
      run({"--cache-dir", cache, "chart", "--kind", "slice-e1", "--mmax", "6", "--nmax", "6", "--format", format,
           "--out", (dir / ("slice." + format)).string()});
      run({"chart", "--kind", "region-e2", "--format", format, "--out", (dir / ("region." + format)).string()});
    }
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path twin = root / "b" / fs::relative(entry.path(), root / "a");
    if (!fs::exists(twin)) o.fail("missing twin of " + entry.path().filename().string());
    else if (slurp(entry.path()) != slurp(twin)) o.fail(entry.path().filename().string() + " differs between runs");
    ++compared;
  }
  fs::remove_all(root);
  if (compared != 9) o.fail(std::to_string(compared) + " files compared, expected 9");
  if (o.pass) o.detail = std::to_string(compared) + " files byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cobar axioms", cobar_axioms},
      {"known values", known_values},
      {"vanishing lines", vanishing_lines},
      {"Andrews-Miller window", am_window},
      {"grading shift correspondence", shift_correspondence},
      {"column concentration", column_concentration},
      {"p-local E1 emptiness", plocal_emptiness},
      {"oracle instances", oracle_instances},
      {"oracle region properties", oracle_regions},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all &= o.pass;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first
         << ": " << o.detail << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
