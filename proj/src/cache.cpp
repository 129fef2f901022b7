#include "rubber/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "rubber/chambers.hpp"

namespace rubber::cache {

namespace {

using nlohmann::json;

// Advisory lock on <dir>/.lock held for the duration of a read or write.
class DirLock {
 public:
  DirLock(const std::filesystem::path& dir, bool exclusive) {
    fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

std::optional<json> read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    std::cerr << "warning: corrupt cache file " << file << ", recomputing\n";
    return std::nullopt;
  }
  if (!j.contains("format_version") || j["format_version"] != kFormatVersion) return std::nullopt;
  return j;
}

void write_json(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file);
  out << j.dump(1) << "\n";
}

std::string signature_key(const chambers::ChamberSignature& sig) {
  // FNV-1a over n and the sign bits
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint8_t>(sig.n));
  for (bool p : sig.positive) mix(p ? 1 : 0);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<recursion::EulerTable> ResultCache::load_table(int n_max, int order) {
  DirLock lock(dir_, false);
  auto file = dir_ / ("table_n" + std::to_string(n_max) + "_ord" + std::to_string(order) + ".json");
  auto j = read_json(file);
  if (!j) return std::nullopt;
  try {
    if ((*j)["n_max"] != n_max || (*j)["order"] != order) return std::nullopt;
    std::vector<std::vector<Int>> rows;
    for (const auto& jrow : (*j)["rows"]) {
      std::vector<Int> row;
      for (const auto& cell : jrow) row.emplace_back(cell.get<std::string>());
      rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != n_max - 1) return std::nullopt;
    return recursion::EulerTable(n_max, std::move(rows));
  } catch (const std::exception&) {
    std::cerr << "warning: unreadable cache file " << file << ", recomputing\n";
    return std::nullopt;
  }
}

void ResultCache::store_table(const recursion::EulerTable& table, int order) {
  DirLock lock(dir_, true);
  json rows = json::array();
  for (int n = 2; n <= table.max_n(); ++n) {
    json row = json::array();
    for (int k = 1; k <= n - 1; ++k) row.push_back(to_string(table.entry(n, k)));
    rows.push_back(std::move(row));
  }
  json j = {{"format_version", kFormatVersion},
            {"n_max", table.max_n()},
            {"order", order},
            {"rows", std::move(rows)}};
  write_json(dir_ / ("table_n" + std::to_string(table.max_n()) + "_ord" + std::to_string(order) + ".json"), j);
}

std::optional<GClass> ResultCache::load_class(const RamificationDatum& x) {
  DirLock lock(dir_, false);
  auto file = dir_ / ("class_" + signature_key(chambers::signature(x)) + ".json");
  auto j = read_json(file);
  if (!j) return std::nullopt;
  try {
    std::vector<long long> stored = (*j)["defining_x"].get<std::vector<long long>>();
    RamificationDatum defining = chambers::validate(stored);
    // the key is sound only inside a chamber; re-verify rather than trusting
    // the hash
    if (!chambers::same_chamber(x, defining)) return std::nullopt;
    std::vector<Int> coeffs;
    for (const auto& c : (*j)["coefficients"]) coeffs.emplace_back(c.get<std::string>());
    return GClass::from_coeffs(std::move(coeffs));
  } catch (const std::exception&) {
    std::cerr << "warning: unreadable cache file " << file << ", recomputing\n";
    return std::nullopt;
  }
}

void ResultCache::store_class(const RamificationDatum& x, const GClass& value) {
  DirLock lock(dir_, true);
  json coeffs = json::array();
  if (value.is_zero())
    coeffs.push_back("0");
  else
    for (const Int& c : value.coeffs()) coeffs.push_back(to_string(c));
  json j = {{"format_version", kFormatVersion},
            {"n", x.n()},
            {"defining_x", x.x},
            {"coefficients", std::move(coeffs)}};
  write_json(dir_ / ("class_" + signature_key(chambers::signature(x)) + ".json"), j);
}

}  // namespace rubber::cache
