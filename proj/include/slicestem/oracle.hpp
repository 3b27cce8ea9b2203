#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slicestem/stems.hpp"

namespace slicestem::oracle {

/// Hypothesis on the base field F, with q its exponential characteristic.
struct FieldClass {
  enum class Kind {
    EtaComplete,                  // statements about the eta-completed sphere, any F with q != 2
    NonrealChar0,                 // q = 1
    PositiveCharPerfectFiniteCd,  // q odd prime
    FormallyReal,                 // q = 1
    Unspecified,
  };
  Kind kind = Kind::Unspecified;
  unsigned long q = 1;

  static FieldClass eta_complete(unsigned long q = 1) { return {Kind::EtaComplete, q}; }
  static FieldClass nonreal_char0() { return {Kind::NonrealChar0, 1}; }
  static FieldClass positive_char(unsigned long q) { return {Kind::PositiveCharPerfectFiniteCd, q}; }
  static FieldClass formally_real() { return {Kind::FormallyReal, 1}; }
  static FieldClass unspecified() { return {Kind::Unspecified, 1}; }

  /// "eta-complete", "nonreal-char0", "positive-char", "formally-real", "unspecified"
  std::string name() const;
  /// Throws InconsistentQuery when q does not fit the class.
  void validate() const;
};

/// Which sphere is asked about: 1 itself or its localization at an odd prime.
struct Target {
  bool plocal = false;
  unsigned long p = 0;

  static Target integral() { return {}; }
  static Target local(unsigned long prime) { return {true, prime}; }
};

class InconsistentQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TraceStep {
  std::string theorem;   // descriptive identifier
  std::string detail;    // instantiated inequality or table lookup
  std::string citation;  // citation key of the source statement
};

struct Verdict {
  enum class Status { Vanishes, IsoEtaLocal, Unknown };
  Status status = Status::Unknown;
  std::vector<TraceStep> trace;
  std::string note;            // "exponential characteristic inverted" when q > 1
  std::string stems_coverage;  // empty when no stems table was consulted

  bool vanishes() const { return status == Status::Vanishes; }
  std::string status_name() const;
  std::string to_json() const;
};

/// m < 0, or m > 0 with m = 1, 2 mod 4 and 2n > max(3m+5, 4m).
Verdict vanish_eta_complete(int m, int n);

/// m < 0, or m >= 0 with (p-2)n > (p-1)m. p must be an odd prime.
Verdict vanish_plocal(unsigned long p, int m, int n);

/// Dispatch on the field class. The stems table matters only for formally
/// real fields; an untabulated stem yields Unknown.
Verdict vanish(int m, int n, const FieldClass& field, const Target& target, const stems::StemTable& table);

/// m < 0, or m >= 0 with 2n > max(3m+5, 4m), or m = 0 with n > 0.
bool eta_iso(int m, int n);
Verdict eta_iso_verdict(int m, int n);

struct ContractionFact {
  int m = 0, n = 0, k = 0;
  std::string statement;
  std::vector<TraceStep> trace;  // the parent verdict's trace
};

/// For a vanishing pi_{m+n alpha}: for k = 1..k_max, the k-fold contraction
/// of pi_{m+(n-k) alpha} vanishes. Empty when the parent is not Vanishes.
std::vector<ContractionFact> contraction_facts(int m, int n, const FieldClass& field, const Target& target,
                                               const stems::StemTable& table, int k_max);

}  // namespace slicestem::oracle
