#include "artfeat/cli/manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>

#include "artfeat/error.hpp"
#include "artfeat/hash.hpp"

#ifndef ARTFEAT_VERSION
#define ARTFEAT_VERSION "0.0.0"
#endif

namespace artfeat::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string tool_version() { return ARTFEAT_VERSION; }

std::string current_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  j["inputs"] = inputs;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j;
}

void record_output(const fs::path& output, const RunManifest& manifest) {
  const fs::path dir = output.has_parent_path() ? output.parent_path() : fs::path(".");
  const fs::path file = dir / "manifest.json";
  json doc = {{"outputs", json::object()}};
  if (fs::exists(file)) {
    std::ifstream in(file);
    try {
      json old = json::parse(in);
      if (old.is_object() && old.contains("outputs") && old.at("outputs").is_object()) doc = old;
    } catch (const json::exception&) {
      // An unreadable manifest is replaced.
    }
  }
  doc["outputs"][output.filename().string()] = manifest.to_json();
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw SchemaError("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

void hash_inputs(const fs::path& path, std::map<std::string, std::string>& into) {
  if (fs::is_regular_file(path)) {
    into[path.string()] = sha256_file(path);
    return;
  }
  if (!fs::is_directory(path)) return;
  std::set<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path)) {
    if (e.is_regular_file()) files.insert(e.path());
  }
  for (const auto& f : files) into[f.string()] = sha256_file(f);
}

}  // namespace artfeat::cli
