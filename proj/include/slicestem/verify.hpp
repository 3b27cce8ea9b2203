#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slicestem/config.hpp"
#include "slicestem/ext_table.hpp"

namespace slicestem::verify {

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  std::string rows_json;  // extra per-bidegree rows, "" when none

  bool pass() const;
  std::string to_json() const;
};

/// cobar-axioms, vanishing-lines, am-window, region-columns, oracle-regions
const std::vector<std::string>& suite_names();

/// Suites needing Ext tables read them from (or compute them into) the
/// configured cache directory on the configured windows.
Report run_suite(const std::string& name, const config::Config& config);

}  // namespace slicestem::verify
