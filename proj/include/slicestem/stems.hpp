#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slicestem/abelian_group.hpp"

namespace slicestem::stems {

/// pi_m of the classical sphere spectrum, as cyclic prime-power factors.
struct StemEntry {
  bool infinite_cyclic = false;                             // m = 0
  std::vector<std::pair<unsigned long, unsigned>> factors;  // (prime, exponent)
  std::string citation;

  AbelianPGroup group() const;
  /// Trivial after inverting 2.
  bool odd_part_trivial() const;
  bool p_part_trivial(unsigned long p) const;
};

class StemFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StemTable {
 public:
  void set(int m, StemEntry entry);
  /// Entry for m; negative m is always trivial. Empty when m is not tabulated.
  std::optional<StemEntry> lookup(int m) const;
  const std::map<int, StemEntry>& entries() const { return entries_; }
  int m_max() const { return entries_.empty() ? -1 : entries_.rbegin()->first; }
  /// e.g. "m in 0..20, 61"
  std::string coverage() const;

  /// JSON array of {m, factors: [[p, e], ...] | "Z", citation}.
  static StemTable from_json(const std::string& text);
  static StemTable load(const std::filesystem::path& path);
  std::string to_json() const;

 private:
  std::map<int, StemEntry> entries_;
};

/// Built-in table for m = 0..20 and m = 61.
const StemTable& seed_table();

}  // namespace slicestem::stems
