#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slicestem/abelian_group.hpp"

namespace slicestem::ext {

inline constexpr const char* kGeneratorScheme = "hazewinkel";
inline constexpr const char* kCodeVersion = "slicestem-0.1.0";

struct Bidegree {
  unsigned s = 0;
  int t = 0;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// E_2^{s,t}(BP(p)) on the window 0 <= s <= s_max, 0 <= t <= t_max.
///
/// Bidegrees with 2s(p-1) > t have an empty reduced cobar basis, so they are
/// known to be zero and count as covered even when s exceeds s_max.
class ExtTable {
 public:
  ExtTable() = default;
  ExtTable(unsigned long p, unsigned s_max, int t_max);

  unsigned long prime() const { return p_; }
  unsigned s_max() const { return s_max_; }
  int t_max() const { return t_max_; }

  bool covers(unsigned s, int t) const;
  /// Throws WindowError outside the window.
  AbelianPGroup at(unsigned s, int t) const;
  void set(unsigned s, int t, AbelianPGroup group);

  /// Nonzero entries in (t, s) order.
  std::vector<std::pair<Bidegree, AbelianPGroup>> nonzero() const;
  const std::map<Bidegree, AbelianPGroup>& entries() const { return entries_; }

  /// Human-readable descriptions of every violated structural invariant:
  /// odd t nonzero, nonzero below t = 2s(p-1), infinite away from (0,0),
  /// torsion at a foreign prime.
  std::vector<std::string> invariant_violations() const;

  friend bool operator==(const ExtTable&, const ExtTable&) = default;

 private:
  unsigned long p_ = 2;
  unsigned s_max_ = 0;
  int t_max_ = 0;
  std::map<Bidegree, AbelianPGroup> entries_;  // only nonzero entries are stored
};

struct ComputeOptions {
  unsigned jobs = 1;
  /// Also build d_{s_max+1} and verify d o d = 0 against it.
  bool check_square_zero = true;
};

/// Computes the whole window, one worker per internal degree t at a time.
/// Throws cobar::CobarError if some d o d fails to vanish.
ExtTable compute_ext_table(unsigned long p, unsigned s_max, int t_max, const ComputeOptions& options = {});

/// "ext-p2-s8-t20.json"
std::string cache_file_name(unsigned long p, unsigned s_max, int t_max);

/// Canonical JSON: stable key order, integers as decimal strings, trailing checksum.
std::string serialize(const ExtTable& table);

/// Parses and validates a cache document. On failure returns nullopt and
/// stores the reason in `why`.
std::optional<ExtTable> parse(const std::string& text, std::string* why = nullptr);

enum class CacheStatus { Hit, Computed, Recomputed };

struct CacheResult {
  ExtTable table;
  CacheStatus status = CacheStatus::Computed;
  std::filesystem::path path;
  std::string note;  // reason for a recompute, if any
};

/// Loads `dir/cache_file_name(...)` when it is intact; otherwise computes
/// the table and writes it atomically (temporary file, then rename).
CacheResult load_or_compute(const std::filesystem::path& dir, unsigned long p, unsigned s_max, int t_max,
                            const ComputeOptions& options = {});

/// Same, with an explicit cache file path.
CacheResult load_or_compute_at(const std::filesystem::path& path, unsigned long p, unsigned s_max, int t_max,
                               const ComputeOptions& options = {});

/// Writes `contents` to `path` through a temporary file in the same directory.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

/// Smallest intact cache in `dir` for prime p whose window covers every
/// bidegree (s, t) with s <= s_needed and t <= t_needed.
std::optional<ExtTable> find_covering(const std::filesystem::path& dir, unsigned long p, unsigned s_needed,
                                      int t_needed);

/// Primes p with 2s(p-1) <= t: the only ones that can contribute to
/// E_2^{s,t}(MU) for s > 0.
std::vector<unsigned long> contributing_primes(unsigned s, int t);

class MissingPrimeError : public std::runtime_error {
 public:
  MissingPrimeError(std::vector<unsigned long> primes, const std::string& what)
      : std::runtime_error(what), missing(std::move(primes)) {}
  std::vector<unsigned long> missing;
};

/// E_2(MU) assembled from per-prime tables.
class MuExt {
 public:
  void add(ExtTable table);
  bool has_prime(unsigned long p) const { return tables_.count(p) != 0; }
  const ExtTable& table(unsigned long p) const { return tables_.at(p); }
  const std::map<unsigned long, ExtTable>& tables() const { return tables_; }

  /// Z at (0,0); zero at (0, t > 0) and odd t; otherwise the direct sum of
  /// the contributing per-prime entries. Throws MissingPrimeError naming
  /// every contributing prime whose table is absent or too small.
  AbelianPGroup at(unsigned s, int t) const;

 private:
  std::map<unsigned long, ExtTable> tables_;
};

/// E_2^{s,t}(MU) computed from scratch through ext_bp for each contributing prime.
AbelianPGroup ext_mu(unsigned s, int t);

}  // namespace slicestem::ext
