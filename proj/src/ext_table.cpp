#include "slicestem/ext_table.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <openssl/evp.h>
#include <unistd.h>

#include "json.hpp"
#include "slicestem/cobar.hpp"
#include "slicestem/linalg.hpp"

namespace slicestem::ext {

using Json = nlohmann::ordered_json;

ExtTable::ExtTable(unsigned long p, unsigned s_max, int t_max) : p_(p), s_max_(s_max), t_max_(t_max) {
  if (!is_prime(p)) throw std::invalid_argument("ExtTable: " + std::to_string(p) + " is not prime");
  if (t_max < 0) throw std::invalid_argument("ExtTable: negative t_max");
}

bool ExtTable::covers(unsigned s, int t) const {
  if (t < 0 || t > t_max_) return false;
  return s <= s_max_ || 2 * (long long)s * (long long)(p_ - 1) > t;
}

AbelianPGroup ExtTable::at(unsigned s, int t) const {
  if (!covers(s, t))
    throw WindowError("E2^{" + std::to_string(s) + "," + std::to_string(t) + "} at p=" + std::to_string(p_) +
                      " lies outside the computed window s<=" + std::to_string(s_max_) +
                      ", t<=" + std::to_string(t_max_));
  auto it = entries_.find({s, t});
  return it == entries_.end() ? AbelianPGroup::trivial() : it->second;
}

void ExtTable::set(unsigned s, int t, AbelianPGroup group) {
  if (s > s_max_ || t < 0 || t > t_max_)
    throw WindowError("ExtTable::set: (" + std::to_string(s) + "," + std::to_string(t) + ") outside window");
  if (group.is_trivial()) entries_.erase({s, t});
  else entries_[{s, t}] = std::move(group);
}

std::vector<std::pair<Bidegree, AbelianPGroup>> ExtTable::nonzero() const {
  std::vector<std::pair<Bidegree, AbelianPGroup>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.first.t, a.first.s) < std::pair(b.first.t, b.first.s);
  });
  return out;
}

std::vector<std::string> ExtTable::invariant_violations() const {
  std::vector<std::string> out;
  for (const auto& [bd, g] : entries_) {
    const std::string at = "(" + std::to_string(bd.s) + "," + std::to_string(bd.t) + ")";
    if (bd.t % 2 != 0) out.push_back("odd t nonzero at " + at + ": " + g.to_string());
    if (2 * (long long)bd.s * (long long)(p_ - 1) > bd.t)
      out.push_back("nonzero below t = 2s(p-1) at " + at + ": " + g.to_string());
    if (!(bd.s == 0 && bd.t == 0) && !g.is_finite()) out.push_back("infinite group at " + at);
    if (!g.is_p_group(p_)) out.push_back("torsion prime to p at " + at + ": " + g.to_string());
  }
  if (at(0, 0) != AbelianPGroup::free(1)) out.push_back("E2^{0,0} is " + at(0, 0).to_string() + ", not Z");
  return out;
}

namespace {

std::vector<AbelianPGroup> compute_column(cobar::CobarComplex& complex, unsigned s_max, int t,
                                          bool check_square_zero) {
  std::vector<linalg::SparseIntMatrix> d;
  const unsigned top = s_max + (check_square_zero ? 1 : 0);
  for (unsigned s = 0; s <= top; ++s) d.push_back(complex.differential(s, t));
  if (check_square_zero)
    for (unsigned s = 0; s + 1 < d.size(); ++s)
      if (!(d[s + 1] * d[s]).is_zero()) complex.check_square_zero(s, t);  // throws with the element
  if (check_square_zero) d.pop_back();
  auto groups = linalg::cochain_homology(d, complex.prime());
  for (unsigned s = 0; s < groups.size(); ++s)
    if (!(s == 0 && t == 0) && !groups[s].is_finite())
      throw std::logic_error("E2^{" + std::to_string(s) + "," + std::to_string(t) + "} at p=" +
                             std::to_string(complex.prime()) + " has positive free rank");
  return groups;
}

}  // namespace

ExtTable compute_ext_table(unsigned long p, unsigned s_max, int t_max, const ComputeOptions& options) {
  ExtTable table(p, s_max, t_max);
  auto presentation = std::make_shared<const bp::BPPresentation>(p, std::max(t_max, 2));

  // odd t have an empty basis; the work lives in the even degrees, heaviest last
  std::vector<int> degrees;
  for (int t = t_max - (t_max % 2); t >= 0; t -= 2) degrees.push_back(t);

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    cobar::CobarComplex complex(presentation);
    for (;;) {
      const std::size_t k = next++;
      if (k >= degrees.size()) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        auto groups = compute_column(complex, s_max, degrees[k], options.check_square_zero);
        std::lock_guard lock(mutex);
        for (unsigned s = 0; s < groups.size(); ++s) table.set(s, degrees[k], std::move(groups[s]));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, unsigned(degrees.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return table;
}

std::string cache_file_name(unsigned long p, unsigned s_max, int t_max) {
  return "ext-p" + std::to_string(p) + "-s" + std::to_string(s_max) + "-t" + std::to_string(t_max) + ".json";
}

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

Json body_of(const ExtTable& table) {
  Json body;
  body["prime"] = std::to_string(table.prime());
  body["s_max"] = std::to_string(table.s_max());
  body["t_max"] = std::to_string(table.t_max());
  body["generator_scheme"] = kGeneratorScheme;
  body["code_version"] = kCodeVersion;
  Json entries = Json::array();
  for (int t = 0; t <= table.t_max(); ++t)
    for (unsigned s = 0; s <= table.s_max(); ++s) {
      const AbelianPGroup g = table.at(s, t);
      Json torsion = Json::array();
      for (const auto& q : g.torsion()) torsion.push_back(q.get_str());
      entries.push_back(Json{{"s", std::to_string(s)},
                             {"t", std::to_string(t)},
                             {"free_rank", std::to_string(g.free_rank())},
                             {"torsion", std::move(torsion)}});
    }
  body["entries"] = std::move(entries);
  return body;
}

unsigned long long parse_count(const Json& v, const char* what) {
  if (!v.is_string()) throw std::invalid_argument(std::string(what) + " is not a decimal string");
  const std::string s = v.get<std::string>();
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument(std::string(what) + " is not a decimal count: \"" + s + "\"");
  return std::stoull(s);
}

}  // namespace

std::string serialize(const ExtTable& table) {
  Json doc = body_of(table);
  doc["checksum"] = "sha256:" + sha256_hex(body_of(table).dump());
  return doc.dump(1) + "\n";
}

std::optional<ExtTable> parse(const std::string& text, std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<ExtTable> {
    if (why) *why = reason;
    return std::nullopt;
  };
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return fail("not a JSON object");
  if (!doc.contains("checksum") || !doc["checksum"].is_string()) return fail("missing checksum");
  const std::string checksum = doc["checksum"].get<std::string>();
  Json body = doc;
  body.erase("checksum");
  if (checksum != "sha256:" + sha256_hex(body.dump())) return fail("checksum mismatch");
  try {
    if (body.value("generator_scheme", "") != kGeneratorScheme) return fail("generator scheme differs");
    if (body.value("code_version", "") != kCodeVersion) return fail("written by a different code version");
    ExtTable table(parse_count(body.at("prime"), "prime"), unsigned(parse_count(body.at("s_max"), "s_max")),
                   int(parse_count(body.at("t_max"), "t_max")));
    for (const auto& e : body.at("entries")) {
      std::vector<BigInt> torsion;
      for (const auto& q : e.at("torsion")) {
        if (!q.is_string()) return fail("torsion entry is not a decimal string");
        torsion.emplace_back(q.get<std::string>());
      }
      table.set(unsigned(parse_count(e.at("s"), "s")), int(parse_count(e.at("t"), "t")),
                AbelianPGroup(parse_count(e.at("free_rank"), "free_rank"), std::move(torsion)));
    }
    return table;
  } catch (const std::exception& ex) {
    return fail(std::string("malformed cache: ") + ex.what());
  }
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp-" << ::getpid() << "-" << std::this_thread::get_id();
  const fs::path temp = path.string() + suffix.str();
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + temp.string());
  }
  fs::rename(temp, path);
}

namespace {

std::optional<ExtTable> read_cache(const std::filesystem::path& path, std::string* why) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (why) *why = "unreadable";
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), why);
}

}  // namespace

CacheResult load_or_compute(const std::filesystem::path& dir, unsigned long p, unsigned s_max, int t_max,
                            const ComputeOptions& options) {
  return load_or_compute_at(dir / cache_file_name(p, s_max, t_max), p, s_max, t_max, options);
}

CacheResult load_or_compute_at(const std::filesystem::path& path, unsigned long p, unsigned s_max, int t_max,
                               const ComputeOptions& options) {
  CacheResult result;
  result.path = path;
  bool existed = std::filesystem::exists(result.path);
  if (existed) {
    std::string why;
    auto cached = read_cache(result.path, &why);
    if (cached && cached->prime() == p && cached->s_max() == s_max && cached->t_max() == t_max) {
      result.table = std::move(*cached);
      result.status = CacheStatus::Hit;
      return result;
    }
    result.note = why.empty() ? "window mismatch" : why;
  }
  result.table = compute_ext_table(p, s_max, t_max, options);
  write_atomically(result.path, serialize(result.table));
  result.status = existed ? CacheStatus::Recomputed : CacheStatus::Computed;
  return result;
}

std::optional<ExtTable> find_covering(const std::filesystem::path& dir, unsigned long p, unsigned s_needed,
                                      int t_needed) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) return std::nullopt;
  static const std::regex pattern(R"(ext-p(\d+)-s(\d+)-t(\d+)\.json)");
  std::vector<std::tuple<int, unsigned, fs::path>> candidates;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, pattern)) continue;
    if (std::stoul(m[1]) != p) continue;
    const unsigned s_max = unsigned(std::stoul(m[2]));
    const int t_max = std::stoi(m[3]);
    if (t_max < t_needed) continue;
    // rows above s_max are still covered where the basis is empty
    const bool enough_s = s_max >= s_needed || 2 * (long long)(s_max + 1) * (long long)(p - 1) > t_needed;
    if (!enough_s) continue;
    candidates.emplace_back(t_max, s_max, entry.path());
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [t_max, s_max, path] : candidates) {
    auto table = read_cache(path, nullptr);
    if (table && table->prime() == p) return table;
  }
  return std::nullopt;
}

std::vector<unsigned long> contributing_primes(unsigned s, int t) {
  std::vector<unsigned long> out;
  if (s == 0 || t < 0) return out;
  for (unsigned long p = 2; 2 * (long long)s * (long long)(p - 1) <= t; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

void MuExt::add(ExtTable table) {
  const unsigned long p = table.prime();
  tables_.insert_or_assign(p, std::move(table));
}

AbelianPGroup MuExt::at(unsigned s, int t) const {
  if (t < 0) return AbelianPGroup::trivial();
  if (s == 0) return t == 0 ? AbelianPGroup::free(1) : AbelianPGroup::trivial();
  if (t % 2 != 0) return AbelianPGroup::trivial();
  AbelianPGroup sum;
  std::vector<unsigned long> missing;
  for (unsigned long p : contributing_primes(s, t)) {
    auto it = tables_.find(p);
    if (it == tables_.end() || !it->second.covers(s, t)) {
      missing.push_back(p);
      continue;
    }
    sum = sum.direct_sum(it->second.at(s, t));
  }
  if (!missing.empty()) {
    std::string list;
    for (unsigned long p : missing) list += (list.empty() ? "" : ", ") + std::to_string(p);
    throw MissingPrimeError(missing, "E2^{" + std::to_string(s) + "," + std::to_string(t) +
                                         "}(MU) needs Ext tables covering it at p = " + list);
  }
  return sum;
}

AbelianPGroup ext_mu(unsigned s, int t) {
  if (t < 0) return AbelianPGroup::trivial();
  if (s == 0) return t == 0 ? AbelianPGroup::free(1) : AbelianPGroup::trivial();
  if (t % 2 != 0) return AbelianPGroup::trivial();
  AbelianPGroup sum;
  for (unsigned long p : contributing_primes(s, t)) sum = sum.direct_sum(cobar::ext_bp(p, s, t));
  return sum;
}

}  // namespace slicestem::ext
