#include "slicestem/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slicestem/chart.hpp"
#include "slicestem/config.hpp"
#include "slicestem/ext_table.hpp"
#include "slicestem/oracle.hpp"
#include "slicestem/verify.hpp"

namespace slicestem::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string config_file;
  std::string cache_dir;
  unsigned jobs = 0;
};

struct ExtFlags {
  unsigned long prime = 0;
  std::optional<unsigned> s_max;
  std::optional<int> t_max;
  std::string out;
  std::string format;
};

struct ChartFlags {
  std::string kind;
  std::optional<int> m_min, m_max, n_min, n_max;
  std::string variant = "integral";
  unsigned long prime = 0;
  std::vector<unsigned long> guide_primes = {3, 5};
  std::string format = "json";
  std::string out;
  std::string from;
};

struct VanishFlags {
  int m = 0, n = 0;
  std::string field = "unspecified";
  std::string variant = "integral";
  unsigned long prime = 0;
  unsigned long q = 1;
  std::string stems;
  int contractions = 0;
};

struct VerifyFlags {
  std::string suite;
  std::string out;
};

config::Config load_config(const GlobalFlags& g) {
  auto c = config::resolve(g.config_file.empty() ? std::nullopt : std::optional<fs::path>(g.config_file));
  if (!g.cache_dir.empty()) c.cache_dir = g.cache_dir;
  if (g.jobs > 0) c.jobs = g.jobs;
  c.cache_dir = fs::absolute(c.cache_dir).lexically_normal();
  if (c.stems && !fs::exists(*c.stems)) throw UsageError("stems table not found: " + c.stems->string());
  return c;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    ext::write_atomically(path, text);
  }
}

std::string ext_command(unsigned long p, unsigned s, int t) {
  return "slicestem ext --prime " + std::to_string(p) + " --smax " + std::to_string(s) + " --tmax " + std::to_string(t);
}

int cmd_ext(const GlobalFlags& g, const ExtFlags& f, std::ostream& out) {
  const auto cfg = load_config(g);
  if (!is_prime(f.prime)) throw UsageError("--prime must be a prime, got " + std::to_string(f.prime));
  const auto w = cfg.window_for(f.prime);
  const unsigned s_max = f.s_max.value_or(w.s_max);
  const int t_max = f.t_max.value_or(w.t_max);
  if (t_max < 0) throw UsageError("--tmax must be non-negative");
  const ext::ComputeOptions options{cfg.jobs, true};
  const auto result = f.out.empty() ? ext::load_or_compute(cfg.cache_dir, f.prime, s_max, t_max, options)
                                    : ext::load_or_compute_at(fs::absolute(f.out), f.prime, s_max, t_max, options);
  const std::string status = result.status == ext::CacheStatus::Hit        ? "cache hit"
                             : result.status == ext::CacheStatus::Computed ? "computed"
                                                                           : "recomputed (" + result.note + ")";
  const std::string format = f.format.empty() ? cfg.format : f.format;
  if (format == "json") {
    Json doc;
    doc["status"] = status;
    doc["path"] = result.path.string();
    doc["prime"] = f.prime;
    doc["s_max"] = s_max;
    doc["t_max"] = t_max;
    Json entries = Json::array();
    for (const auto& [deg, grp] : result.table.nonzero())
      entries.push_back({{"s", deg.s}, {"t", deg.t}, {"group", grp.to_string()}});
    doc["nonzero"] = std::move(entries);
    out << doc.dump(1) << "\n";
  } else {
    out << status << ": " << result.path.string() << "\n";
    out << "E2^{s,t}(BP(" << f.prime << ")) for s <= " << s_max << ", t <= " << t_max << "; nonzero groups:\n";
    for (const auto& [deg, grp] : result.table.nonzero())
      out << "  (" << deg.s << "," << deg.t << "): " << grp.to_string() << "\n";
    std::size_t above = 0;
    for (const auto& [deg, grp] : result.table.nonzero()) above += deg.s > 0;
    if (above == 0) out << "  all groups with s > 0 vanish\n";
  }
  return kExitOk;
}

slice::Window chart_window(const ChartFlags& f) {
  const bool region = f.kind == "region-e2";
  slice::Window w{f.m_min.value_or(0), f.m_max.value_or(region ? 30 : 8), f.n_min.value_or(0),
                  f.n_max.value_or(region ? 70 : 10)};
  if (w.m_min > w.m_max || w.n_min > w.n_max) throw UsageError("empty chart window");
  return w;
}

slice::E2Source chart_source(const config::Config& cfg, const ChartFlags& f, const slice::Window& w) {
  const int n_max = std::max(0, w.n_max);
  const int t_needed = 2 * n_max;
  std::vector<unsigned long> primes;
  if (f.variant == "p-local") {
    if (!is_prime(f.prime)) throw UsageError("--variant p-local needs --prime with a prime value");
    primes.push_back(f.prime);
  } else {
    for (unsigned long p = 2; 2 * (p - 1) <= (unsigned long)t_needed; ++p)
      if (is_prime(p)) primes.push_back(p);
  }
  ext::MuExt mu;
  std::vector<std::string> missing;
  for (unsigned long p : primes) {
    const unsigned s_needed =
        unsigned(std::max(0, std::min(n_max - std::min(w.m_min, n_max), t_needed / int(2 * (p - 1)))));
    auto table = ext::find_covering(cfg.cache_dir, p, s_needed, t_needed);
    if (table) {
      mu.add(std::move(*table));
    } else {
      missing.push_back(ext_command(p, s_needed, t_needed));
    }
  }
  if (!missing.empty()) {
    std::string msg = "no Ext cache in " + cfg.cache_dir.string() + " covers this window; run:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw UsageError(msg);
  }
  if (f.variant == "p-local") return slice::E2Source(mu.table(f.prime));
  return slice::E2Source(std::move(mu));
}

int cmd_chart(const GlobalFlags& g, const ChartFlags& f, std::ostream& out) {
  if (f.format != "json" && f.format != "svg") throw UsageError("--format must be json or svg");
  chart::Chart c;
  if (!f.from.empty()) {
    try {
      c = chart::Chart::from_json(read_file(f.from));
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  } else {
    if (f.kind != "slice-e1" && f.kind != "region-e2") throw UsageError("--kind must be slice-e1 or region-e2");
    if (f.variant != "integral" && f.variant != "p-local") throw UsageError("--variant must be integral or p-local");
    for (unsigned long p : f.guide_primes)
      if (!is_prime(p) || p == 2) throw UsageError("--guide-primes takes odd primes");
    const auto w = chart_window(f);
    if (f.kind == "region-e2") {
      c = chart::region_e2_chart(w, f.guide_primes);
    } else {
      const auto cfg = load_config(g);
      c = chart::slice_e1_chart(w, chart_source(cfg, f, w), f.guide_primes);
    }
  }
  emit(f.format == "json" ? c.to_json() : chart::render_svg(c), f.out, out);
  return kExitOk;
}

oracle::FieldClass field_class(const VanishFlags& f) {
  using oracle::FieldClass;
  if (f.variant == "eta-complete") return FieldClass::eta_complete(f.q);
  if (f.field == "eta-complete") return FieldClass::eta_complete(f.q);
  if (f.field == "nonreal-char0") return {FieldClass::Kind::NonrealChar0, f.q};
  if (f.field == "positive-char") return FieldClass::positive_char(f.q);
  if (f.field == "formally-real") return {FieldClass::Kind::FormallyReal, f.q};
  if (f.field == "unspecified") return {FieldClass::Kind::Unspecified, f.q};
  throw UsageError("unknown --field '" + f.field + "'");
}

int cmd_vanish(const GlobalFlags& g, const VanishFlags& f, std::ostream& out) {
  if (f.variant != "integral" && f.variant != "p-local" && f.variant != "eta-complete")
    throw UsageError("--variant must be integral, p-local or eta-complete");
  const auto field = field_class(f);
  oracle::Target target = oracle::Target::integral();
  if (f.variant == "p-local") {
    if (f.prime == 0) throw UsageError("--variant p-local needs --prime");
    target = oracle::Target::local(f.prime);
  } else if (f.prime != 0) {
    throw UsageError("--prime only applies to --variant p-local");
  }
  if (f.contractions < 0) throw UsageError("--contractions must be non-negative");
  const auto cfg = load_config(g);
  std::optional<fs::path> stems_path = f.stems.empty() ? cfg.stems : std::optional<fs::path>(f.stems);
  const stems::StemTable table = stems_path ? stems::StemTable::load(*stems_path) : stems::seed_table();

  const auto verdict = oracle::vanish(f.m, f.n, field, target, table);
  Json doc;
  doc["query"] = {{"m", f.m}, {"n", f.n}, {"field", field.name()}, {"variant", f.variant}, {"q", field.q}};
  if (target.plocal) doc["query"]["prime"] = target.p;
  const Json verdict_json = Json::parse(verdict.to_json());
  for (const auto& [key, value] : verdict_json.items()) doc[key] = value;
  if (f.contractions > 0) {
    Json facts = Json::array();
    for (const auto& fact : oracle::contraction_facts(f.m, f.n, field, target, table, f.contractions))
      facts.push_back({{"k", fact.k}, {"m", fact.m}, {"n", fact.n}, {"statement", fact.statement}});
    doc["contractions"] = std::move(facts);
  }
  if (field.kind == oracle::FieldClass::Kind::EtaComplete && !target.plocal) {
    const auto iso = oracle::eta_iso_verdict(f.m, f.n);
    doc["eta_periodic_comparison"] = {{"status", iso.status_name()},
                                      {"detail", iso.trace.front().detail},
                                      {"citation", iso.trace.front().citation}};
  }
  out << doc.dump(1) << "\n";
  return verdict.vanishes() ? kExitOk : kExitUnknown;
}

int cmd_verify(const GlobalFlags& g, const VerifyFlags& f, std::ostream& out) {
  const auto names = verify::suite_names();
  if (std::find(names.begin(), names.end(), f.suite) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown suite '" + f.suite + "' (known: " + known + ")");
  }
  const auto report = verify::run_suite(f.suite, load_config(g));
  emit(report.to_json(), f.out, out);
  if (!f.out.empty()) out << f.suite << ": " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return report.pass() ? kExitOk : kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Novikov E2 tables, slice charts and vanishing verdicts for the motivic sphere", "slicestem"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config_file, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--cache-dir", g.cache_dir, "Ext cache directory (overrides config and SLICESTEM_CACHE_DIR)");
  app.add_option("--jobs", g.jobs, "worker threads for Ext computations")->check(CLI::PositiveNumber);

  ExtFlags ef;
  auto* ext_cmd = app.add_subcommand("ext", "compute or load E2(BP(p)) on a window");
  ext_cmd->add_option("--prime", ef.prime, "prime p")->required();
  ext_cmd->add_option("--smax", ef.s_max, "largest cohomological degree");
  ext_cmd->add_option("--tmax", ef.t_max, "largest internal degree");
  ext_cmd->add_option("--out", ef.out, "cache file path (default: cache directory)");
  ext_cmd->add_option("--format", ef.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  ChartFlags cf;
  auto* chart_cmd = app.add_subcommand("chart", "slice E1 or region E2 chart as JSON or SVG");
  chart_cmd->add_option("--kind", cf.kind, "slice-e1 or region-e2");
  chart_cmd->add_option("--mmin", cf.m_min, "smallest m (default 0)");
  chart_cmd->add_option("--mmax", cf.m_max, "largest m (default 8 for slice-e1, 30 for region-e2)");
  chart_cmd->add_option("--nmin", cf.n_min, "smallest n (default 0)");
  chart_cmd->add_option("--nmax", cf.n_max, "largest n (default 10 for slice-e1, 70 for region-e2)");
  chart_cmd->add_option("--variant", cf.variant, "integral or p-local");
  chart_cmd->add_option("--prime", cf.prime, "prime for --variant p-local");
  chart_cmd->add_option("--guide-primes", cf.guide_primes, "odd primes whose vanishing lines are drawn");
  chart_cmd->add_option("--format", cf.format, "json or svg");
  chart_cmd->add_option("--out", cf.out, "output file (default: stdout)");
  chart_cmd->add_option("--from", cf.from, "render an existing chart JSON instead of building one");

  VanishFlags vf;
  auto* vanish_cmd = app.add_subcommand("vanish", "vanishing verdict for pi_{m+n alpha}");
  vanish_cmd->add_option("--m", vf.m, "simplicial degree m")->required();
  vanish_cmd->add_option("--n", vf.n, "weight n (number of alpha circles)")->required();
  vanish_cmd->add_option("--field", vf.field,
                         "eta-complete, nonreal-char0, positive-char, formally-real or unspecified");
  vanish_cmd->add_option("--variant", vf.variant, "integral, p-local or eta-complete");
  vanish_cmd->add_option("--prime", vf.prime, "odd prime for --variant p-local");
  vanish_cmd->add_option("--q", vf.q, "exponential characteristic of the base field");
  vanish_cmd->add_option("--stems", vf.stems, "stable stems table (JSON)");
  vanish_cmd->add_option("--contractions", vf.contractions, "list the k-fold contraction facts for k <= K");

  VerifyFlags wf;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", wf.suite, "cobar-axioms, vanishing-lines, am-window, region-columns or oracle-regions")->required();
  verify_cmd->add_option("--out", wf.out, "report file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (ext_cmd->parsed()) return cmd_ext(g, ef, out);
    if (chart_cmd->parsed()) return cmd_chart(g, cf, out);
    if (vanish_cmd->parsed()) return cmd_vanish(g, vf, out);
    if (verify_cmd->parsed()) return cmd_verify(g, wf, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace slicestem::cli
