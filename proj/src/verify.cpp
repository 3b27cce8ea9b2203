#include "slicestem/verify.hpp"

#include <algorithm>
#include <memory>

#include "json.hpp"
#include "slicestem/am_ring.hpp"
#include "slicestem/bp_algebra.hpp"
#include "slicestem/cobar.hpp"
#include "slicestem/oracle.hpp"
#include "slicestem/slice.hpp"

namespace slicestem::verify {

using Json = nlohmann::ordered_json;

namespace {

std::string bidegree(long long s, long long t) { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }

ext::ExtTable table_for(const config::Config& config, unsigned long p) {
  const auto w = config.window_for(p);
  return ext::load_or_compute(config.cache_dir, p, w.s_max, w.t_max, {config.jobs, true}).table;
}

Report cobar_axioms(const config::Config& config) {
  Report r{"cobar-axioms", {}, ""};
  for (const auto& [p, w] : config.windows) {
    auto bp = std::make_shared<const bp::BPPresentation>(p, std::max(w.t_max, 2));
    cobar::CobarComplex complex(bp);
    Check c{"d o d = 0 for p=" + std::to_string(p) + " on s<=" + std::to_string(w.s_max) +
                ", t<=" + std::to_string(w.t_max),
            true, ""};
    std::size_t checked = 0;
    try {
      for (int t = 0; t <= w.t_max; t += 2)
        for (unsigned s = 0; s <= w.s_max; ++s) {
          checked += complex.basis(s, t).size();
          complex.check_square_zero(s, t);
        }
      c.detail = std::to_string(checked) + " basis elements";
    } catch (const cobar::CobarError& ex) {
      c.pass = false;
      c.detail = ex.what();
    }
    r.checks.push_back(std::move(c));
    Check odd{"odd t has an empty basis for p=" + std::to_string(p), true, ""};
    for (int t = 1; t <= w.t_max; t += 2)
      for (unsigned s = 0; s <= w.s_max; ++s)
        if (!complex.basis(s, t).empty()) {
          odd.pass = false;
          odd.detail = "nonempty at " + bidegree(s, t);
        }
    r.checks.push_back(std::move(odd));
  }
  return r;
}

Report vanishing_lines(const config::Config& config) {
  Report r{"vanishing-lines", {}, ""};
  for (const auto& [p, w] : config.windows) {
    const auto table = table_for(config, p);
    const std::string tag = "p=" + std::to_string(p);
    Check below{tag + ": zero below t = 2s(p-1)", true, ""};
    Check odd{tag + ": zero for odd t", true, ""};
    for (const auto& [deg, g] : table.nonzero()) {
      if (deg.t < 2 * long(deg.s) * long(p - 1)) {
        below.pass = false;
        below.detail += bidegree(deg.s, deg.t) + " ";
      }
      if (deg.t % 2 != 0) {
        odd.pass = false;
        odd.detail += bidegree(deg.s, deg.t) + " ";
      }
    }
    r.checks.push_back(std::move(below));
    r.checks.push_back(std::move(odd));
    r.checks.push_back({tag + ": E2^{0,0} = Z", table.at(0, 0) == AbelianPGroup::free(1), table.at(0, 0).to_string()});
    const auto violations = table.invariant_violations();
    std::string joined;
    for (const auto& v : violations) joined += v + "; ";
    r.checks.push_back({tag + ": structural invariants", violations.empty(), joined});
  }
  return r;
}

Report am_window(const config::Config& config) {
  Report r{"am-window", {}, ""};
  const auto table = table_for(config, 2);
  const int t_max = std::min(table.t_max(), 18);
  const auto cmp = am::localization_compare(int(table.s_max()), t_max, table);
  r.checks.push_back({"localization comparison on s<=" + std::to_string(table.s_max()) + ", t<=" + std::to_string(t_max),
                      cmp.pass() && !cmp.rows.empty(), std::to_string(cmp.rows.size()) + " bidegrees"});
  const bool has_412 = table.covers(4, 12);
  r.checks.push_back({"(4,12) has order 2", has_412 && table.at(4, 12) == AbelianPGroup::cyclic(2),
                      has_412 ? table.at(4, 12).to_string() : "outside the window"});
  r.rows_json = cmp.to_json();
  return r;
}

Report region_columns() {
  Report r{"region-columns", {}, ""};
  const slice::Window window{0, 30, 0, 120};
  try {
    const auto cols = slice::region_e2_columns(window);
    std::string residues;
    for (int x : cols.residues) residues += std::to_string(x) + " ";
    const bool ok = std::all_of(cols.residues.begin(), cols.residues.end(), [](int x) { return x == 0 || x == 3; });
    r.checks.push_back({"survivors lie in columns m = 0, 3 mod 4", ok,
                        std::to_string(cols.survivors.size()) + " survivors, residues " + residues});
    bool paired_ok = true;
    for (const auto& rm : cols.removed) paired_ok &= rm.source.monomial.j % 2 == 1 && rm.paired.j % 2 == 0;
    r.checks.push_back({"removed monomials have odd alpha3 exponent", paired_ok,
                        std::to_string(cols.removed.size()) + " removed"});
  } catch (const slice::ColumnConcentrationError& ex) {
    r.checks.push_back({"survivors lie in columns m = 0, 3 mod 4", false, ex.what()});
  }
  return r;
}

bool raw_eta(int m, int n) {
  if (m < 0) return true;
  const int r = m % 4;
  return m > 0 && (r == 1 || r == 2) && 2 * n > 3 * m + 5 && 2 * n > 4 * m;
}

bool raw_plocal(int p, int m, int n) { return m < 0 || (p - 2) * n > (p - 1) * m; }

Report oracle_regions(const config::Config& config) {
  Report r{"oracle-regions", {}, ""};
  const auto table = config.stems ? stems::StemTable::load(*config.stems) : stems::seed_table();
  using oracle::FieldClass;
  using oracle::Target;
  Check sound{"no Vanishes outside the stated regions on |m|<=70, |n|<=200", true, ""};
  Check upward{"Vanishes is upward closed in n", true, ""};
  const std::vector<std::pair<FieldClass, Target>> queries = {
      {FieldClass::eta_complete(), Target::integral()},   {FieldClass::eta_complete(), Target::local(3)},
      {FieldClass::eta_complete(), Target::local(5)},     {FieldClass::nonreal_char0(), Target::integral()},
      {FieldClass::positive_char(3), Target::integral()}, {FieldClass::formally_real(), Target::integral()},
      {FieldClass::formally_real(), Target::local(7)},    {FieldClass::unspecified(), Target::integral()}};
  for (const auto& [field, target] : queries)
    for (int m = -70; m <= 70; ++m) {
      bool prev = false;
      for (int n = -200; n <= 200; ++n) {
        const bool v = oracle::vanish(m, n, field, target, table).vanishes();
        const bool allowed = target.plocal ? raw_plocal(int(target.p), m, n) : raw_eta(m, n);
        if (v && !allowed && sound.pass) {
          sound.pass = false;
          sound.detail = field.name() + " at " + bidegree(m, n);
        }
        if (prev && !v && upward.pass) {
          upward.pass = false;
          upward.detail = field.name() + " at " + bidegree(m, n);
        }
        prev = v;
      }
    }
  r.checks.push_back(std::move(sound));
  r.checks.push_back(std::move(upward));
  auto instance = [&](int m, int n, bool expect) {
    const auto v = oracle::vanish(m, n, FieldClass::formally_real(), Target::integral(), table);
    r.checks.push_back({"formally real " + bidegree(m, n) + (expect ? " vanishes" : " is Unknown"),
                        v.vanishes() == expect, v.status_name()});
  };
  instance(18, 37, true);
  instance(61, 123, true);
  instance(18, 36, false);
  instance(1, 4, false);
  return r;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_json() const {
  Json doc;
  doc["suite"] = suite;
  doc["pass"] = pass();
  Json list = Json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  doc["checks"] = std::move(list);
  if (!rows_json.empty()) doc["comparison"] = Json::parse(rows_json);
  return doc.dump(1) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"cobar-axioms", "vanishing-lines", "am-window", "region-columns",
                                                 "oracle-regions"};
  return names;
}

Report run_suite(const std::string& name, const config::Config& config) {
  if (name == "cobar-axioms") return cobar_axioms(config);
  if (name == "vanishing-lines") return vanishing_lines(config);
  if (name == "am-window") return am_window(config);
  if (name == "region-columns") return region_columns();
  if (name == "oracle-regions") return oracle_regions(config);
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw UnknownSuite("unknown suite '" + name + "' (known: " + known + ")");
}

}  // namespace slicestem::verify
