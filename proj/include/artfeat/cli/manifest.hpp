#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace artfeat::cli {

// Provenance of one output file.
struct RunManifest {
  std::string command;              // subcommand name
  std::vector<std::string> argv;    // arguments after the program name
  nlohmann::json config;            // resolved configuration values
  std::map<std::string, std::string> inputs;  // path -> sha256
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string timestamp;  // UTC ISO 8601; SOURCE_DATE_EPOCH when set

  nlohmann::json to_json() const;
};

std::string tool_version();
std::string current_timestamp();

/// Adds `manifest` under outputs[<output file name>] in
/// <output dir>/manifest.json, keeping entries for other outputs.
void record_output(const std::filesystem::path& output, const RunManifest& manifest);

/// Hashes a file, or every regular file below a directory (sorted).
void hash_inputs(const std::filesystem::path& path, std::map<std::string, std::string>& into);

}  // namespace artfeat::cli
