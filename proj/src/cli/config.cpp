#include "artfeat/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "artfeat/defaults_json.hpp"
#include "artfeat/error.hpp"

namespace artfeat::cli {

namespace {

using json = nlohmann::json;

void check_shape(const json& base, const json& over, const std::string& where) {
  for (const auto& [key, value] : over.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) throw SchemaError("config: unknown key '" + path + "'");
    const json& b = base.at(key);
    if (b.is_object()) {
      if (!value.is_object()) throw SchemaError("config: '" + path + "' must be an object");
      check_shape(b, value, path);
    }
  }
}

template <typename T>
T get(const json& j, const char* path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("config: '") + path + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const char* path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError(std::string("config: '") + path + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

const json& builtin_defaults() {
  static const json defaults = json::parse(detail::kDefaultsJson);
  return defaults;
}

ToolConfig resolve_config(const json& overrides) {
  if (!overrides.is_object()) throw SchemaError("config: top level must be an object");
  check_shape(builtin_defaults(), overrides, "");
  json j = builtin_defaults();
  j.merge_patch(overrides);

  ToolConfig cfg;
  const json& ex = j.at("extraction");
  if (ex.at("resize_max_side").is_null() ||
      (ex.at("resize_max_side").is_string() && ex.at("resize_max_side") == "off")) {
    cfg.extraction.resize_max_side = std::nullopt;
  } else {
    cfg.extraction.resize_max_side = get_count(ex.at("resize_max_side"), "extraction.resize_max_side");
  }
  cfg.extraction.edge_threshold = get<double>(ex.at("edge_threshold"), "extraction.edge_threshold");
  cfg.extraction.hue_mode =
      features::parse_hue_mode(get<std::string>(ex.at("hue_mode"), "extraction.hue_mode"));
  cfg.extraction.hue_scale = get<double>(ex.at("hue_scale"), "extraction.hue_scale");
  cfg.extraction.validate();

  cfg.threads = get_count(j.at("threads"), "threads");

  const json& load = j.at("load");
  const json& window = load.at("sale_year_window");
  if (window.is_null()) {
    cfg.load.sale_year_window = std::nullopt;
  } else {
    const auto w = get<std::vector<int>>(window, "load.sale_year_window");
    if (w.size() != 2 || w[0] > w[1]) {
      throw DomainError("config: load.sale_year_window must be [first, last] or null");
    }
    cfg.load.sale_year_window = std::pair{w[0], w[1]};
  }
  cfg.load.exclude_cities = get<std::vector<std::string>>(load.at("exclude_cities"), "load.exclude_cities");

  const json& s = j.at("synth");
  cfg.synth.n = get_count(s.at("n"), "synth.n");
  cfg.synth.seed = get_count(s.at("seed"), "synth.seed");
  cfg.synth.noise_sd = get<double>(s.at("noise_sd"), "synth.noise_sd");
  cfg.synth.image_size = get_count(s.at("image_size"), "synth.image_size");
  if (!(cfg.synth.noise_sd >= 0.0)) throw DomainError("config: synth.noise_sd must be >= 0");
  return cfg;
}

ToolConfig load_config(const std::optional<std::filesystem::path>& path) {
  if (!path) return resolve_config();
  std::ifstream in(*path);
  if (!in) throw SchemaError("cannot open config " + path->string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(path->string() + ": " + e.what());
  }
  return resolve_config(j);
}

json ToolConfig::to_json() const {
  json j;
  j["extraction"] = {
      {"resize_max_side", extraction.resize_max_side ? json(*extraction.resize_max_side) : json("off")},
      {"edge_threshold", extraction.edge_threshold},
      {"hue_mode", std::string(features::to_string(extraction.hue_mode))},
      {"hue_scale", extraction.hue_scale},
      {"hash", extraction.hash()}};
  j["threads"] = threads;
  j["load"] = {{"sale_year_window", load.sale_year_window
                                        ? json::array({load.sale_year_window->first,
                                                       load.sale_year_window->second})
                                        : json(nullptr)},
               {"exclude_cities", load.exclude_cities}};
  j["synth"] = {{"n", synth.n},
                {"seed", synth.seed},
                {"noise_sd", synth.noise_sd},
                {"image_size", synth.image_size}};
  return j;
}

std::size_t effective_threads(std::size_t requested) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ARTFEAT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

}  // namespace artfeat::cli
