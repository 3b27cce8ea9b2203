#include "slicestem/oracle.hpp"

#include <algorithm>

#include "json.hpp"

namespace slicestem::oracle {

namespace {

const char* kMain = "thm:main";
const char* kPLocal = "thm:plocal";
const char* kCdFinite = "thm:cdfinite";
const char* kNonreal = "thm:integral0";
const char* kFormallyReal = "thm:integral1";
const char* kEtaInv = "thm:etainv";
const char* kConnectivity = "morel:conn";

std::string str(long long v) { return std::to_string(v); }

bool eta_region(int m, int n) {
  const int r = ((m % 4) + 4) % 4;
  return m > 0 && (r == 1 || r == 2) && 2LL * n > std::max(3LL * m + 5, 4LL * m);
}

bool plocal_region(unsigned long p, int m, int n) {
  return m >= 0 && (long long)(p - 2) * n > (long long)(p - 1) * m;
}

std::string eta_detail(int m, int n) {
  const int r = ((m % 4) + 4) % 4;
  const long long bound = std::max(3LL * m + 5, 4LL * m);
  return "m=" + str(m) + (m > 0 ? " > 0" : " <= 0") + ", m mod 4 = " + str(r) + ", 2n=" + str(2LL * n) +
         (2LL * n > bound ? " > " : " <= ") + "max(3m+5,4m)=" + str(bound);
}

std::string plocal_detail(unsigned long p, int m, int n) {
  const long long lhs = (long long)(p - 2) * n, rhs = (long long)(p - 1) * m;
  return "p=" + str(p) + ", m=" + str(m) + (m >= 0 ? " >= 0" : " < 0") + ", (p-2)n=" + str(lhs) +
         (lhs > rhs ? " > " : " <= ") + "(p-1)m=" + str(rhs);
}

bool is_odd_prime(unsigned long p) { return p > 2 && is_prime(p); }

Verdict region_verdict(int m, int n, const Target& target) {
  return target.plocal ? vanish_plocal(target.p, m, n) : vanish_eta_complete(m, n);
}

}  // namespace

std::string FieldClass::name() const {
  switch (kind) {
    case Kind::EtaComplete: return "eta-complete";
    case Kind::NonrealChar0: return "nonreal-char0";
    case Kind::PositiveCharPerfectFiniteCd: return "positive-char";
    case Kind::FormallyReal: return "formally-real";
    case Kind::Unspecified: return "unspecified";
  }
  return "?";
}

void FieldClass::validate() const {
  if (q == 2) throw InconsistentQuery("exponential characteristic 2 is excluded");
  if (q != 1 && !is_prime(q)) throw InconsistentQuery("exponential characteristic must be 1 or a prime, got " + str(q));
  switch (kind) {
    case Kind::NonrealChar0:
    case Kind::FormallyReal:
      if (q != 1) throw InconsistentQuery(name() + " fields have characteristic 0, so q must be 1");
      break;
    case Kind::PositiveCharPerfectFiniteCd:
      if (q == 1) throw InconsistentQuery("positive-char needs the characteristic q (an odd prime)");
      break;
    default:
      break;
  }
}

std::string Verdict::status_name() const {
  switch (status) {
    case Status::Vanishes: return "Vanishes";
    case Status::IsoEtaLocal: return "IsoEtaLocal";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

std::string Verdict::to_json() const {
  nlohmann::ordered_json doc;
  doc["status"] = status_name();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : trace) steps.push_back({{"theorem", s.theorem}, {"detail", s.detail}, {"citation", s.citation}});
  doc["trace"] = std::move(steps);
  doc["note"] = note;
  doc["stems_coverage"] = stems_coverage;
  return doc.dump(1);
}

Verdict vanish_eta_complete(int m, int n) {
  Verdict v;
  if (m < 0) {
    v.status = Verdict::Status::Vanishes;
    v.trace.push_back({"eta-complete vanishing", "m=" + str(m) + " < 0", kMain});
  } else if (eta_region(m, n)) {
    v.status = Verdict::Status::Vanishes;
    v.trace.push_back({"eta-complete vanishing", eta_detail(m, n), kMain});
  } else {
    v.trace.push_back({"eta-complete vanishing", "not in region: " + eta_detail(m, n), kMain});
  }
  return v;
}

Verdict vanish_plocal(unsigned long p, int m, int n) {
  if (!is_odd_prime(p)) throw InconsistentQuery("p-local vanishing needs an odd prime, got p=" + str(p));
  Verdict v;
  if (m < 0) {
    v.status = Verdict::Status::Vanishes;
    v.trace.push_back({"p-local vanishing", "m=" + str(m) + " < 0", kPLocal});
  } else if (plocal_region(p, m, n)) {
    v.status = Verdict::Status::Vanishes;
    v.trace.push_back({"p-local vanishing", plocal_detail(p, m, n), kPLocal});
  } else {
    v.trace.push_back({"p-local vanishing", "not in region: " + plocal_detail(p, m, n), kPLocal});
  }
  return v;
}

namespace {

Verdict dispatch(int m, int n, const FieldClass& field, const Target& target, const stems::StemTable& table) {
  if (target.plocal) {
    if (!is_odd_prime(target.p)) throw InconsistentQuery("p-local target needs an odd prime, got p=" + str(target.p));
    if (target.p == field.q) throw InconsistentQuery("p must differ from the characteristic q=" + str(field.q));
  }
  Verdict v;
  const std::string q_note = field.q > 1 ? "exponential characteristic inverted (q=" + str(field.q) + ")" : "";

  switch (field.kind) {
    case FieldClass::Kind::EtaComplete: {
      v = region_verdict(m, n, target);
      if (!target.plocal) v.note = q_note;
      return v;
    }
    case FieldClass::Kind::NonrealChar0:
    case FieldClass::Kind::PositiveCharPerfectFiniteCd: {
      Verdict region = region_verdict(m, n, target);
      const bool positive = field.kind == FieldClass::Kind::PositiveCharPerfectFiniteCd;
      v.trace.push_back({positive ? "finite cd completion" : "nonreal base change",
                         positive ? "F perfect with cd F finite, so the sphere equals its eta-completion"
                                  : "nonreal characteristic 0: vanishing descends from finite cd subfields",
                         positive ? kCdFinite : kNonreal});
      v.trace.push_back({"nonreal vanishing", "vanishes in the eta-complete range", kNonreal});
      v.trace.insert(v.trace.end(), region.trace.begin(), region.trace.end());
      v.status = region.status;
      if (!target.plocal) v.note = q_note;
      return v;
    }
    case FieldClass::Kind::FormallyReal: {
      if (m < 0) {
        v.status = Verdict::Status::Vanishes;
        v.trace.push_back({"connectivity", "m=" + str(m) + " < 0", kConnectivity});
        v.trace.push_back({"formally-real vanishing", "negative stems vanish", kFormallyReal});
        return v;
      }
      if (m == 0) {
        v.trace.push_back({"formally-real vanishing", "m=0 is not covered (needs m > 0)", kFormallyReal});
        return v;
      }
      Verdict region = region_verdict(m, n, target);
      v.trace.push_back({"formally-real vanishing",
                         target.plocal ? "needs the p-local eta-complete vanishing and a trivial p-part of pi_m^top"
                                       : "needs the eta-complete vanishing and pi_m^top[1/2] = 0",
                         kFormallyReal});
      v.trace.insert(v.trace.end(), region.trace.begin(), region.trace.end());
      const auto entry = table.lookup(m);
      if (!entry) {
        v.trace.push_back({"stems table", "stems table exhausted: m=" + str(m) + " not in " + table.coverage(), ""});
        return v;
      }
      const bool stem_ok = target.plocal ? entry->p_part_trivial(target.p) : entry->odd_part_trivial();
      const std::string part = target.plocal ? "p-part (p=" + str(target.p) + ")" : "odd part";
      v.trace.push_back({"stems table",
                         "pi_" + str(m) + "^top = " + entry->group().to_string() + "; " + part +
                             (stem_ok ? " trivial" : " nontrivial"),
                         entry->citation});
      if (region.vanishes() && stem_ok) v.status = Verdict::Status::Vanishes;
      return v;
    }
    case FieldClass::Kind::Unspecified: {
      if (m < 0) {
        v.status = Verdict::Status::Vanishes;
        v.trace.push_back({"connectivity", "m=" + str(m) + " < 0", kConnectivity});
      } else {
        v.trace.push_back({"connectivity", "m=" + str(m) + " >= 0; no field hypothesis to go further", kConnectivity});
      }
      return v;
    }
  }
  return v;
}

}  // namespace

Verdict vanish(int m, int n, const FieldClass& field, const Target& target, const stems::StemTable& table) {
  field.validate();
  Verdict v = dispatch(m, n, field, target, table);
  v.stems_coverage = table.coverage();
  return v;
}

bool eta_iso(int m, int n) {
  if (m < 0) return true;
  if (m == 0 && n > 0) return true;
  return 2LL * n > std::max(3LL * m + 5, 4LL * m);
}

Verdict eta_iso_verdict(int m, int n) {
  Verdict v;
  const long long bound = std::max(3LL * m + 5, 4LL * m);
  std::string detail;
  if (m < 0) detail = "m=" + str(m) + " < 0";
  else if (2LL * n > bound) detail = "m=" + str(m) + " >= 0, 2n=" + str(2LL * n) + " > max(3m+5,4m)=" + str(bound);
  else if (m == 0 && n > 0) detail = "m=0 and n=" + str(n) + " > 0";
  else detail = "not in range: 2n=" + str(2LL * n) + " <= max(3m+5,4m)=" + str(bound);
  v.status = eta_iso(m, n) ? Verdict::Status::IsoEtaLocal : Verdict::Status::Unknown;
  v.trace.push_back({"eta-periodic comparison", detail, kEtaInv});
  return v;
}

std::vector<ContractionFact> contraction_facts(int m, int n, const FieldClass& field, const Target& target,
                                               const stems::StemTable& table, int k_max) {
  std::vector<ContractionFact> out;
  const Verdict parent = vanish(m, n, field, target, table);
  if (!parent.vanishes()) return out;
  for (int k = 1; k <= k_max; ++k) {
    ContractionFact fact;
    fact.m = m;
    fact.n = n - k;
    fact.k = k;
    fact.statement = "omega^" + str(k) + " applied to pi_{" + str(m) + "+" + str(n - k) + "alpha}1 is 0";
    fact.trace = parent.trace;
    fact.trace.push_back({"contraction", "omega pi_{m+n alpha} = pi_{m+(n+1) alpha}, applied " + str(k) + " time(s)",
                          "morel:A1"});
    out.push_back(std::move(fact));
  }
  return out;
}

}  // namespace slicestem::oracle
