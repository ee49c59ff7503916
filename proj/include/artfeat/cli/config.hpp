#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "artfeat/corpus/io.hpp"
#include "artfeat/features.hpp"

namespace artfeat::cli {

struct SynthDefaults {
  std::size_t n{720};
  std::uint64_t seed{1};
  double noise_sd{1.0};
  std::size_t image_size{96};
};

struct ToolConfig {
  features::ExtractionConfig extraction;
  std::size_t threads{0};  // 0 = hardware concurrency
  corpus::LoadOptions load;
  SynthDefaults synth;

  nlohmann::json to_json() const;
};

// The shipped config/defaults.json, compiled into the binary.
const nlohmann::json& builtin_defaults();

/// Builtin defaults with `overrides` merged on top. Unknown keys and
/// ill-typed values throw SchemaError; out-of-range values DomainError.
ToolConfig resolve_config(const nlohmann::json& overrides = nlohmann::json::object());
ToolConfig load_config(const std::optional<std::filesystem::path>& path);

/// Worker count: `requested` (0 = hardware), capped by ARTFEAT_THREADS
/// when that is set to a positive integer.
std::size_t effective_threads(std::size_t requested);

}  // namespace artfeat::cli
