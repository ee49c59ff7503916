#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artfeat/corpus/record.hpp"
#include "artfeat/features.hpp"
#include "artfeat/hedonic/model_spec.hpp"
#include "artfeat/image.hpp"

namespace artfeat::corpus {

struct Share {
  std::string level;
  double weight{0.0};
};

// Sampling ranges for synthetic records. Line and color variances are
// uniform; surface is log-uniform; years are uniform integers.
struct SynthRanges {
  double line_min{0.040}, line_max{0.156};
  double color_min{0.006}, color_max{0.25};
  double surface_min_cm2{16.0}, surface_max_cm2{163500.0};
  int creation_min{1881}, creation_max{1973};
  int sale_min{2000}, sale_max{2018};
  double signature_p{0.564};
  double dated_p{0.617};
  std::vector<Share> material{{"board", 0.047},  {"burlap", 0.061},  {"canvas", 0.815},
                              {"cardboard", 0.022}, {"ceramic", 0.033}, {"others", 0.021}};
  std::vector<Share> city{{"london", 0.358}, {"new york", 0.549}, {"paris", 0.063},
                          {"others", 0.031}};
  std::vector<Share> salesroom{{"christies", 0.518}, {"sothebys", 0.428}, {"others", 0.054}};
  std::vector<Share> painter{{"picasso", 1.0}};

  void validate() const;
};

// A model spec with known coefficients. Keys are design column names
// ("Constant", "Lline", "Surface^2", "city=london", ...); columns without
// a key get coefficient 0.
struct PlantSpec {
  hedonic::ModelSpec spec;
  std::map<std::string, double> coefficients;
  SynthRanges ranges;

  // Throws InvalidPlantSpec for coefficient names that cannot be columns
  // of `spec` or for inconsistent ranges.
  void validate() const;

  static PlantSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

PlantSpec load_plant(const std::filesystem::path& path);

struct SynthOptions {
  std::size_t n{720};
  double noise_sd{1.0};
  std::uint64_t seed{1};
  // When set, one PNG per record is rendered there and features are
  // extracted from it; otherwise features are drawn from the ranges.
  std::optional<std::filesystem::path> image_dir;
  std::size_t image_size{96};
  features::ExtractionConfig extraction{};
};

/// Records plus features with Lprice = X beta + N(0, noise_sd^2) and
/// price_usd = exp(Lprice). Reproducible from options.seed. Throws
/// InvalidPlantSpec when n <= k + 10 or noise_sd < 0.
Corpus generate_synthetic(const PlantSpec& plant, const SynthOptions& options);

/// Saturated rectangles on a saturated background, crossed by paired
/// black/white strokes. Deterministic in (seed, index). Draws that would
/// store a single hue, or no edges or only edges at default settings, are
/// redrawn.
RgbImage render_synthetic_image(std::uint64_t seed, std::size_t index, std::size_t size);

// Benchmark plant: both effort terms, the attributes and all four
// dummy blocks, with "others" / 2000 as reference levels.
PlantSpec benchmark_plant();

// Lcolor x Surface cross effect on top of the benchmark attributes.
PlantSpec cross_effect_plant();

// Features recorded for synthetic records drawn without images.
inline constexpr const char* kSyntheticFeatureHash = "synthetic";

}  // namespace artfeat::corpus
