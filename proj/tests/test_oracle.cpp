#include "doctest.h"
#include "json.hpp"
#include "slicestem/oracle.hpp"
#include "slicestem/stems.hpp"

using namespace slicestem;
using namespace slicestem::oracle;

namespace {

bool raw_eta(int m, int n) {
  if (m < 0) return true;
  const int r = m % 4;
  return (r == 1 || r == 2) && 2 * n > 3 * m + 5 && 2 * n > 4 * m;
}

bool raw_plocal(long p, int m, int n) { return m < 0 || (p - 2) * n > (p - 1) * m; }

bool raw_formally_real(int m, int n, const Target& target, const stems::StemTable& table) {
  if (m < 0) return true;
  if (m == 0) return false;
  const bool region = target.plocal ? raw_plocal(long(target.p), m, n) : raw_eta(m, n);
  const auto entry = table.lookup(m);
  if (!region || !entry) return false;
  return target.plocal ? entry->p_part_trivial(target.p) : entry->odd_part_trivial();
}

bool has_citation(const Verdict& v, const std::string& key) {
  for (const auto& step : v.trace)
    if (step.citation == key) return true;
  return false;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("eta-complete examples") {
    CHECK(vanish_eta_complete(-1, 0).vanishes());
    CHECK(vanish_eta_complete(1, 5).vanishes());
    CHECK_FALSE(vanish_eta_complete(1, 4).vanishes());
    CHECK_FALSE(vanish_eta_complete(3, 100).vanishes());
    CHECK_FALSE(vanish_eta_complete(0, 100).vanishes());
    CHECK(vanish_eta_complete(18, 37).vanishes());
    CHECK_FALSE(vanish_eta_complete(18, 36).vanishes());
    CHECK(has_citation(vanish_eta_complete(5, 20), "thm:main"));
  }

  TEST_CASE("p-local examples") {
    CHECK(vanish_plocal(3, -1, -100).vanishes());
    CHECK(vanish_plocal(3, 0, 1).vanishes());
    CHECK_FALSE(vanish_plocal(3, 0, 0).vanishes());
    CHECK(vanish_plocal(3, 4, 9).vanishes());
    CHECK_FALSE(vanish_plocal(3, 4, 8).vanishes());
    CHECK(vanish_plocal(5, 4, 6).vanishes());
    CHECK_FALSE(vanish_plocal(5, 4, 5).vanishes());
    CHECK(has_citation(vanish_plocal(5, 1, 9), "thm:plocal"));
    CHECK_THROWS_AS(vanish_plocal(2, 0, 1), InconsistentQuery);
    CHECK_THROWS_AS(vanish_plocal(9, 0, 1), InconsistentQuery);
  }

  TEST_CASE("regions equal the inequality oracle exactly") {
    const auto& table = stems::seed_table();
    for (int m = -70; m <= 70; ++m)
      for (int n = -200; n <= 200; ++n) {
        const bool eta = raw_eta(m, n);
        CHECK(vanish_eta_complete(m, n).vanishes() == eta);
        for (unsigned long p : {3ul, 5ul, 7ul}) CHECK(vanish_plocal(p, m, n).vanishes() == raw_plocal(long(p), m, n));
        CHECK(vanish(m, n, FieldClass::eta_complete(), Target::integral(), table).vanishes() == eta);
        CHECK(vanish(m, n, FieldClass::nonreal_char0(), Target::integral(), table).vanishes() == eta);
        CHECK(vanish(m, n, FieldClass::positive_char(5), Target::integral(), table).vanishes() == eta);
        CHECK(vanish(m, n, FieldClass::positive_char(5), Target::local(3), table).vanishes() == raw_plocal(3, m, n));
        CHECK(vanish(m, n, FieldClass::unspecified(), Target::integral(), table).vanishes() == (m < 0));
        CHECK(vanish(m, n, FieldClass::formally_real(), Target::integral(), table).vanishes() ==
              raw_formally_real(m, n, Target::integral(), table));
        CHECK(vanish(m, n, FieldClass::formally_real(), Target::local(3), table).vanishes() ==
              raw_formally_real(m, n, Target::local(3), table));
      }
  }

  TEST_CASE("regions are upward closed and nest across hypotheses") {
    const auto& table = stems::seed_table();
    for (int m = -30; m <= 70; ++m) {
      bool prev_eta = false, prev_p3 = false;
      for (int n = -100; n <= 200; ++n) {
        const bool eta = vanish_eta_complete(m, n).vanishes();
        const bool p3 = vanish_plocal(3, m, n).vanishes();
        if (prev_eta) CHECK(eta);
        if (prev_p3) CHECK(p3);
        prev_eta = eta;
        prev_p3 = p3;
        // the p-local region contains the integral one for every odd p
        if (eta) CHECK(p3);
        if (vanish(m, n, FieldClass::formally_real(), Target::integral(), table).vanishes()) CHECK(eta);
        if (vanish(m, n, FieldClass::unspecified(), Target::integral(), table).vanishes()) CHECK(eta);
      }
    }
  }

  TEST_CASE("the p = 3 region is m < 0 or n > 2m") {
    for (int m = -40; m <= 40; ++m)
      for (int n = -80; n <= 80; ++n) CHECK(vanish_plocal(3, m, n).vanishes() == (m < 0 || n > 2 * m));
  }

  TEST_CASE("formally real instances") {
    const auto& table = stems::seed_table();
    const auto real = FieldClass::formally_real();
    const auto v = vanish(18, 37, real, Target::integral(), table);
    CHECK(v.vanishes());
    CHECK(has_citation(v, "thm:integral1"));
    CHECK(has_citation(v, "thm:main"));
    CHECK(vanish(61, 123, real, Target::integral(), table).vanishes());
    CHECK_FALSE(vanish(18, 36, real, Target::integral(), table).vanishes());
    CHECK_FALSE(vanish(1, 4, real, Target::integral(), table).vanishes());
    CHECK(vanish(1, 5, real, Target::integral(), table).vanishes());
    // pi_10 contains Z/3
    CHECK_FALSE(vanish(10, 100, real, Target::integral(), table).vanishes());
    CHECK_FALSE(vanish(0, 100, real, Target::integral(), table).vanishes());
  }

  TEST_CASE("an untabulated stem yields Unknown with a note in the trace") {
    const auto& table = stems::seed_table();
    const auto v = vanish(25, 100, FieldClass::formally_real(), Target::integral(), table);
    CHECK(v.status == Verdict::Status::Unknown);
    bool exhausted = false;
    for (const auto& step : v.trace) exhausted |= step.detail.find("stems table exhausted") != std::string::npos;
    CHECK(exhausted);
    CHECK(v.stems_coverage == table.coverage());
  }

  TEST_CASE("inconsistent queries") {
    const auto& table = stems::seed_table();
    CHECK_THROWS_AS(vanish(1, 5, FieldClass::eta_complete(2), Target::integral(), table), InconsistentQuery);
    CHECK_THROWS_AS(vanish(1, 5, FieldClass::positive_char(3), Target::local(3), table), InconsistentQuery);
    CHECK_THROWS_AS(vanish(1, 5, FieldClass::eta_complete(), Target::local(2), table), InconsistentQuery);
    CHECK_THROWS_AS(vanish(1, 5, FieldClass::positive_char(1), Target::integral(), table), InconsistentQuery);
    CHECK_THROWS_AS(vanish(1, 5, FieldClass::eta_complete(4), Target::integral(), table), InconsistentQuery);
    CHECK_NOTHROW(vanish(1, 5, FieldClass::positive_char(3), Target::local(5), table));
  }

  TEST_CASE("the exponential characteristic note") {
    const auto& table = stems::seed_table();
    CHECK(vanish(1, 5, FieldClass::positive_char(3), Target::integral(), table).note.find("q=3") != std::string::npos);
    CHECK(vanish(1, 5, FieldClass::nonreal_char0(), Target::integral(), table).note.empty());
  }

  TEST_CASE("verdict JSON") {
    const auto v = vanish(18, 37, FieldClass::formally_real(), Target::integral(), stems::seed_table());
    const auto doc = nlohmann::json::parse(v.to_json());
    CHECK(doc.at("status") == "Vanishes");
    CHECK(doc.at("trace").is_array());
    CHECK(doc.at("trace").size() == v.trace.size());
    CHECK(doc.contains("note"));
  }

  TEST_CASE("contraction facts") {
    const auto& table = stems::seed_table();
    const auto facts = contraction_facts(18, 37, FieldClass::formally_real(), Target::integral(), table, 2);
    REQUIRE(facts.size() == 2);
    CHECK(facts[0].m == 18);
    CHECK(facts[0].n == 36);
    CHECK(facts[1].n == 35);
    CHECK(facts[1].k == 2);
    CHECK(facts[1].trace.back().citation == "morel:A1");
    CHECK(contraction_facts(-1, 0, FieldClass::eta_complete(), Target::integral(), table, 3).size() == 3);
    CHECK(contraction_facts(18, 36, FieldClass::formally_real(), Target::integral(), table, 2).empty());
  }

  TEST_CASE("eta-periodic comparison") {
    CHECK(eta_iso(3, 8));
    CHECK(eta_iso(0, 1));
    CHECK_FALSE(eta_iso(3, 7));
    CHECK_FALSE(eta_iso(0, 0));
    CHECK(eta_iso(-3, -100));
    CHECK(eta_iso_verdict(3, 8).status == Verdict::Status::IsoEtaLocal);
    CHECK(eta_iso_verdict(3, 7).status == Verdict::Status::Unknown);
    CHECK(has_citation(eta_iso_verdict(3, 8), "thm:etainv"));
    for (int m = -20; m <= 40; ++m)
      for (int n = -20; n <= 100; ++n) {
        if (vanish_eta_complete(m, n).vanishes()) CHECK(eta_iso(m, n));
        CHECK(eta_iso(m, n) == (m < 0 || (m == 0 && n > 0) || (2 * n > 3 * m + 5 && 2 * n > 4 * m)));
      }
  }
}
