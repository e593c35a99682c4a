#include "jd/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jd/ints.hpp"
#include "jd/spaces.hpp"

namespace jd {

namespace {

std::optional<std::filesystem::path> cache_file(const SpaceFlavor& f) {
  const char* dir = std::getenv("JD_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) return std::nullopt;
  return p / ("v" + std::to_string(kCacheFormatVersion) + "." + f.key() + ".json");
}

uint64_t payload_checksum(const nlohmann::json& payload) { return fnv1a(payload.dump()); }

}  // namespace

std::optional<SpacePresentation> cache_load_presentation(const SpaceFlavor& f) {
  auto path = cache_file(f);
  if (!path) return std::nullopt;
  std::ifstream in(*path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("formatVersion").get<int>() != kCacheFormatVersion) return std::nullopt;
    if (j.at("flavor").get<std::string>() != f.key()) return std::nullopt;
    nlohmann::json payload = j.at("payload");
    if (j.at("checksum").get<uint64_t>() != payload_checksum(payload)) return std::nullopt;

    SpacePresentation sp;
    sp.flavor = f;
    for (auto& g : payload.at("gens")) sp.gens.push_back(g.get<std::string>());
    for (size_t i = 0; i < sp.gens.size(); ++i) sp.index.emplace(sp.gens[i], static_cast<int>(i));
    int cols = payload.at("relatorCount").get<int>();
    IntMatrix m(static_cast<int>(sp.gens.size()), cols);
    for (auto& entry : payload.at("relations")) {
      int r = entry.at(0).get<int>();
      int c = entry.at(1).get<int>();
      Int v(entry.at(2).get<std::string>());
      m.set(r, c, v);
    }
    sp.group = PresentedGroup(static_cast<int>(sp.gens.size()), std::move(m));
    return sp;
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store_presentation(const SpacePresentation& sp) {
  auto path = cache_file(sp.flavor);
  if (!path) return;
  nlohmann::json payload;
  payload["gens"] = sp.gens;
  payload["relatorCount"] = sp.group.relations().cols;
  nlohmann::json rel = nlohmann::json::array();
  for (int r = 0; r < sp.group.relations().rows; ++r)
    for (auto& [c, v] : sp.group.relations().row[r])
      rel.push_back({r, c, v.get_str()});
  payload["relations"] = std::move(rel);
  nlohmann::json j;
  j["formatVersion"] = kCacheFormatVersion;
  j["flavor"] = sp.flavor.key();
  j["checksum"] = payload_checksum(payload);
  j["payload"] = std::move(payload);
  std::ofstream out(*path);
  if (out) out << j.dump();
}

}  // namespace jd
