#include "slicestem/stems.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slicestem::stems {

using Json = nlohmann::ordered_json;

AbelianPGroup StemEntry::group() const {
  std::vector<BigInt> torsion;
  for (const auto& [p, e] : factors) {
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, e);
    torsion.push_back(q);
  }
  return AbelianPGroup(infinite_cyclic ? 1 : 0, std::move(torsion));
}

bool StemEntry::odd_part_trivial() const {
  if (infinite_cyclic) return false;
  for (const auto& [p, e] : factors)
    if (p != 2) return false;
  return true;
}

bool StemEntry::p_part_trivial(unsigned long p) const {
  if (infinite_cyclic) return false;
  for (const auto& [q, e] : factors)
    if (q == p) return false;
  return true;
}

void StemTable::set(int m, StemEntry entry) {
  if (m < 0) throw StemFormatError("stems table: negative stem " + std::to_string(m));
  if (entry.citation.empty()) throw StemFormatError("stems table: entry m=" + std::to_string(m) + " has no citation");
  if ((m == 0) != entry.infinite_cyclic)
    throw StemFormatError(m == 0 ? "stems table: m=0 must be Z" : "stems table: only m=0 may be Z");
  for (const auto& [p, e] : entry.factors)
    if (!is_prime(p) || e == 0)
      throw StemFormatError("stems table: bad factor [" + std::to_string(p) + "," + std::to_string(e) +
                            "] at m=" + std::to_string(m));
  entries_[m] = std::move(entry);
}

std::optional<StemEntry> StemTable::lookup(int m) const {
  if (m < 0) return StemEntry{false, {}, "negative stems vanish"};
  auto it = entries_.find(m);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string StemTable::coverage() const {
  std::string out;
  auto it = entries_.begin();
  while (it != entries_.end()) {
    int lo = it->first, hi = lo;
    auto next = std::next(it);
    while (next != entries_.end() && next->first == hi + 1) hi = next++->first;
    out += (out.empty() ? "" : ", ") + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi));
    it = next;
  }
  return out.empty() ? "empty" : "m in " + out;
}

StemTable StemTable::from_json(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw StemFormatError("stems table: expected a JSON array");
  StemTable table;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("m") || !item["m"].is_number_integer())
      throw StemFormatError("stems table: every entry needs an integer m");
    const int m = item["m"].get<int>();
    StemEntry entry;
    entry.citation = item.value("citation", "");
    const auto& factors = item.contains("factors") ? item["factors"] : Json();
    if (factors.is_string()) {
      if (factors.get<std::string>() != "Z")
        throw StemFormatError("stems table: factors string must be \"Z\" (m=" + std::to_string(m) + ")");
      entry.infinite_cyclic = true;
    } else if (factors.is_array()) {
      for (const auto& f : factors) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_number_unsigned() || !f[1].is_number_unsigned())
          throw StemFormatError("stems table: factor must be [prime, exponent] (m=" + std::to_string(m) + ")");
        entry.factors.emplace_back(f[0].get<unsigned long>(), f[1].get<unsigned>());
      }
    } else {
      throw StemFormatError("stems table: missing factors at m=" + std::to_string(m));
    }
    if (table.entries_.count(m)) throw StemFormatError("stems table: duplicate m=" + std::to_string(m));
    table.set(m, std::move(entry));
  }
  return table;
}

StemTable StemTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StemFormatError("cannot read stems table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string StemTable::to_json() const {
  Json doc = Json::array();
  for (const auto& [m, e] : entries_) {
    Json item;
    item["m"] = m;
    if (e.infinite_cyclic) {
      item["factors"] = "Z";
    } else {
      Json factors = Json::array();
      for (const auto& [p, k] : e.factors) factors.push_back({p, k});
      item["factors"] = std::move(factors);
    }
    item["citation"] = e.citation;
    doc.push_back(std::move(item));
  }
  return doc.dump(1) + "\n";
}

const StemTable& seed_table() {
  static const StemTable table = [] {
    const std::string toda = "Toda, Composition Methods in Homotopy Groups of Spheres (1962), Ch. XIV";
    StemTable t;
    auto put = [&](int m, std::vector<std::pair<unsigned long, unsigned>> f, std::string cite) {
      t.set(m, StemEntry{m == 0, std::move(f), std::move(cite)});
    };
    put(0, {}, "Serre: pi_0 of the sphere spectrum is Z (degree)");
    put(1, {{2, 1}}, toda);
    put(2, {{2, 1}}, toda);
    put(3, {{2, 3}, {3, 1}}, toda);
    put(4, {}, toda);
    put(5, {}, toda);
    put(6, {{2, 1}}, toda);
    put(7, {{2, 4}, {3, 1}, {5, 1}}, toda);
    put(8, {{2, 1}, {2, 1}}, toda);
    put(9, {{2, 1}, {2, 1}, {2, 1}}, toda);
    put(10, {{2, 1}, {3, 1}}, toda);
    put(11, {{2, 3}, {3, 2}, {7, 1}}, toda);
    put(12, {}, toda);
    put(13, {{3, 1}}, toda);
    put(14, {{2, 1}, {2, 1}}, toda);
    put(15, {{2, 5}, {2, 1}, {3, 1}, {5, 1}}, toda);
    put(16, {{2, 1}, {2, 1}}, toda);
    put(17, {{2, 1}, {2, 1}, {2, 1}, {2, 1}}, toda);
    put(18, {{2, 3}, {2, 1}}, "Toda, Composition Methods in Homotopy Groups of Spheres (1962), p. 188");
    put(19, {{2, 3}, {2, 1}, {3, 1}, {11, 1}}, toda);
    put(20, {{2, 3}, {3, 1}}, "Mimura-Toda (1963); Ravenel, Complex Cobordism, Table A3.3");
    put(61, {},
        "Wang-Xu (2017) for the 2-primary part; odd part: Ravenel, Complex Cobordism, Thm 1.1.13, A3.4, A3.5, "
        "Thm 4.4.20");
    return t;
  }();
  return table;
}

}  // namespace slicestem::stems
