#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "slicestem/chart.hpp"
#include "slicestem/commands.hpp"
#include "slicestem/config.hpp"
#include "slicestem/stems.hpp"

using namespace slicestem;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("slicestem-test-" + tag + "-" + std::to_string(::rand()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("stems") {
  TEST_CASE("seed table") {
    const auto& t = stems::seed_table();
    CHECK(t.coverage() == "m in 0..20, 61");
    CHECK(t.lookup(0)->infinite_cyclic);
    CHECK(t.lookup(3)->group() == AbelianPGroup(0, {8, 3}));
    CHECK_FALSE(t.lookup(3)->odd_part_trivial());
    CHECK(t.lookup(18)->odd_part_trivial());
    CHECK(t.lookup(61)->group().is_trivial());
    CHECK(t.lookup(-4)->group().is_trivial());
    CHECK_FALSE(t.lookup(21).has_value());
    for (const auto& [m, e] : t.entries()) CHECK_FALSE(e.citation.empty());
  }

  TEST_CASE("JSON round trip") {
    const auto& t = stems::seed_table();
    const auto back = stems::StemTable::from_json(t.to_json());
    CHECK(back.to_json() == t.to_json());
    CHECK(back.coverage() == t.coverage());
  }

  TEST_CASE("validation") {
    using stems::StemFormatError;
    using stems::StemTable;
    CHECK_THROWS_AS(StemTable::from_json("{}"), StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json("not json"), StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json(R"([{"m": 1, "factors": [[2,1]]}])"), StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json(R"([{"m": 1, "factors": "Z", "citation": "x"}])"), StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json(R"([{"m": 0, "factors": [], "citation": "x"}])"), StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json(R"([{"m": 2, "factors": [[4,1]], "citation": "x"}])"), StemFormatError);
    CHECK_THROWS_AS(
        StemTable::from_json(R"([{"m": 2, "factors": [], "citation": "x"}, {"m": 2, "factors": [], "citation": "y"}])"),
        StemFormatError);
    CHECK_THROWS_AS(StemTable::from_json(R"([{"m": -1, "factors": [], "citation": "x"}])"), StemFormatError);
    const auto ok = StemTable::from_json(R"([{"m": 2, "factors": [[2,1]], "citation": "x"}, {"m": 4, "factors": [], "citation": "y"}])");
    CHECK(ok.coverage() == "m in 2, 4");
    CHECK(StemTable().coverage() == "empty");
  }

  TEST_CASE("load from disk") {
    TempDir dir("stems");
    std::ofstream(dir.path / "t.json") << stems::seed_table().to_json();
    CHECK(stems::StemTable::load(dir.path / "t.json").to_json() == stems::seed_table().to_json());
    CHECK_THROWS_AS(stems::StemTable::load(dir.path / "missing.json"), stems::StemFormatError);
  }
}

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    const config::Config c;
    CHECK(c.jobs == 1);
    CHECK(c.format == "text");
    CHECK(c.window_for(2).s_max == 10);
    CHECK(c.window_for(2).t_max == 20);
    CHECK(c.window_for(3).t_max == 30);
    CHECK(c.window_for(5).t_max == 40);
    CHECK(c.window_for(7).s_max == 1);
    CHECK(c.window_for(7).t_max == 20);
  }

  TEST_CASE("parsing") {
    const auto c = config::parse_config("# comment\n\ncache_dir = cache\njobs=4\nformat = json\nwindow.p3 = 4, 24\n",
                                        "/base");
    CHECK(c.cache_dir == fs::path("/base/cache"));
    CHECK(c.jobs == 4);
    CHECK(c.format == "json");
    CHECK(c.window_for(3).s_max == 4);
    CHECK(c.window_for(3).t_max == 24);
    CHECK(c.window_for(2).s_max == 10);
    const auto abs = config::parse_config("stems = /elsewhere/t.json\n", "/base");
    CHECK(abs.stems == fs::path("/elsewhere/t.json"));
  }

  TEST_CASE("errors") {
    using config::ConfigError;
    CHECK_THROWS_AS(config::parse_config("colour = blue\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("jobs = 0\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("jobs = many\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("format = xml\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("window.p4 = 1,2\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("window.p3 = 12\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::parse_config("just words\n", "/"), ConfigError);
    CHECK_THROWS_AS(config::load_config("/nonexistent/slicestem.conf"), ConfigError);
  }

  TEST_CASE("precedence: file, then environment, then flags") {
    TempDir dir("config");
    std::ofstream(dir.path / "s.conf") << "cache_dir = from-file\njobs = 3\n";
    ::unsetenv("SLICESTEM_CACHE_DIR");
    auto c = config::resolve(dir.path / "s.conf");
    CHECK(c.cache_dir == dir.path / "from-file");
    CHECK(c.jobs == 3);
    ::setenv("SLICESTEM_CACHE_DIR", (dir.path / "from-env").c_str(), 1);
    c = config::resolve(dir.path / "s.conf");
    CHECK(c.cache_dir == dir.path / "from-env");
    CHECK(c.jobs == 3);

    const auto flag_dir = dir.path / "from-flag";
    const auto r = run_cli({"--config", (dir.path / "s.conf").string(), "--cache-dir", flag_dir.string(), "ext", "--prime",
                        "7", "--smax", "1", "--tmax", "12"});
    CHECK(r.code == 0);
    CHECK(fs::exists(flag_dir));
    CHECK_FALSE(fs::exists(dir.path / "from-env"));
    ::unsetenv("SLICESTEM_CACHE_DIR");
    CHECK(config::resolve(std::nullopt).cache_dir == fs::path(".slicestem-cache"));
  }
}

TEST_SUITE("chart") {
  TEST_CASE("region chart JSON round trip and SVG") {
    const auto chart = chart::region_e2_chart({0, 30, 0, 70}, {3, 5});
    CHECK(chart.kind == "region-e2");
    CHECK_FALSE(chart.cells.empty());
    for (const auto& cell : chart.cells) {
      CHECK((cell.m % 4 == 0 || cell.m % 4 == 3));
      CHECK(2 * cell.n > 3 * cell.m + 5);
      CHECK(2 * cell.n > 4 * cell.m);
    }
    const auto text = chart.to_json();
    const auto back = chart::Chart::from_json(text);
    CHECK(back.to_json() == text);
    CHECK(chart::render_svg(back) == chart::render_svg(chart));
    CHECK(chart::region_e2_chart({0, 30, 0, 70}, {3, 5}).to_json() == text);
    const auto svg = chart::render_svg(chart);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("id=\"plocal-3\"") != std::string::npos);
    CHECK(svg.find("id=\"plocal-5\"") != std::string::npos);
    CHECK(svg.find("id=\"am-curve\"") != std::string::npos);
    CHECK(svg.find("am-breakpoint") != std::string::npos);
    CHECK_THROWS_AS(chart::Chart::from_json("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(chart::Chart::from_json("{"), std::invalid_argument);
  }

  TEST_CASE("slice E1 chart from small tables") {
    ext::MuExt mu;
    mu.add(ext::compute_ext_table(2, 6, 12));
    mu.add(ext::compute_ext_table(3, 3, 12));
    mu.add(ext::compute_ext_table(5, 1, 12));
    mu.add(ext::compute_ext_table(7, 1, 12));
    const auto chart = chart::slice_e1_chart({0, 6, 0, 6}, slice::E2Source(mu), {3});
    CHECK(chart.kind == "slice-e1");
    bool a1 = false;
    for (const auto& cell : chart.cells) {
      CHECK(cell.n - cell.m >= 0);
      CHECK_FALSE(mu.at(unsigned(cell.n - cell.m), 2 * cell.n).is_trivial());
      if (cell.m == 0 && cell.n == 1) {
        REQUIRE(cell.summands.size() == 1);
        CHECK(cell.summands[0].group == "Z/2");
        CHECK(cell.summands[0].label == "a1");
        a1 = true;
      }
    }
    CHECK(a1);
    for (const auto& a : chart.arrows) {
      CHECK(a.to.m == a.from.m - 1);
      CHECK(a.to.n == a.from.n + 1);
    }
    CHECK(chart::Chart::from_json(chart.to_json()).to_json() == chart.to_json());
  }
}

TEST_SUITE("cli") {
  TEST_CASE("vanish exit codes") {
    CHECK(run_cli({"vanish", "--m", "18", "--n", "37", "--field", "formally-real"}).code == cli::kExitOk);
    const auto unknown = run_cli({"vanish", "--m", "18", "--n", "36", "--field", "formally-real"});
    CHECK(unknown.code == cli::kExitUnknown);
    CHECK(nlohmann::json::parse(unknown.out).at("status") == "Unknown");
    CHECK(run_cli({"vanish", "--m", "-5", "--n", "0", "--variant", "eta-complete"}).code == cli::kExitOk);
    CHECK(run_cli({"vanish", "--m", "1", "--n", "5", "--q", "2"}).code == cli::kExitError);
    CHECK(run_cli({"vanish", "--m", "1"}).code == cli::kExitError);
    const auto contractions = run_cli({"vanish", "--m", "18", "--n", "37", "--field", "formally-real", "--contractions", "2"});
    CHECK(nlohmann::json::parse(contractions.out).at("contractions").size() == 2);
  }

  TEST_CASE("unknown commands and suites fail") {
    CHECK(run_cli({"frobnicate"}).code == cli::kExitError);
    CHECK(run_cli({"verify", "--suite", "nope"}).code == cli::kExitError);
  }

  TEST_CASE("ext caches and reports hits") {
    TempDir dir("cli-ext");
    const std::vector<std::string> args = {"--cache-dir", dir.path.string(), "ext", "--prime", "2", "--smax", "4",
                                           "--tmax", "10"};
    const auto first = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out.rfind("computed:", 0) == 0);
    CHECK(first.out.find("(1,2): Z/2") != std::string::npos);
    const auto second = run_cli(args);
    CHECK(second.out.rfind("cache hit:", 0) == 0);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json", "--out", (dir.path / "copy.json").string()});
    CHECK(run_cli(json_args).code == 0);
    CHECK(fs::exists(dir.path / "copy.json"));
  }

  TEST_CASE("chart without caches names the missing ext commands") {
    TempDir dir("cli-chart");
    const auto r = run_cli({"--cache-dir", dir.path.string(), "chart", "--kind", "slice-e1"});
    CHECK(r.code == cli::kExitError);
    CHECK(r.err.find("slicestem ext --prime 2") != std::string::npos);
    CHECK(r.err.find("slicestem ext --prime 3") != std::string::npos);
  }

  TEST_CASE("region chart through the CLI, JSON then SVG") {
    TempDir dir("cli-region");
    const auto json_path = (dir.path / "c.json").string(), svg_a = (dir.path / "a.svg").string(),
               svg_b = (dir.path / "b.svg").string();
    CHECK(run_cli({"chart", "--kind", "region-e2", "--format", "json", "--out", json_path}).code == 0);
    CHECK(run_cli({"chart", "--kind", "region-e2", "--format", "svg", "--out", svg_a}).code == 0);
    CHECK(run_cli({"chart", "--from", json_path, "--format", "svg", "--out", svg_b}).code == 0);
    CHECK(slurp(svg_a) == slurp(svg_b));
    CHECK_FALSE(slurp(svg_a).empty());
  }
}
