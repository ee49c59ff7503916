#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artfeat/corpus/record.hpp"
#include "artfeat/features.hpp"

namespace artfeat::corpus {

// Column order of the records CSV.
inline constexpr const char* kRecordColumns[] = {
    "id",           "painter",  "price_usd",   "image_path", "creation_year", "sale_year",
    "surface_cm2",  "signature", "dated",      "material",   "city",          "salesroom"};

inline constexpr const char* kFeatureColumns[] = {
    "id", "line_variance", "color_variance", "defined_hue_fraction", "extraction_config_hash"};

struct LoadOptions {
  // Inclusive sale-year window; std::nullopt accepts any year.
  std::optional<std::pair<int, int>> sale_year_window{std::pair{2000, 2018}};
  // Canonicalized city names whose records are dropped (e.g. a region filter).
  std::vector<std::string> exclude_cities;
};

struct RowIssue {
  std::size_t row{0};  // 1-based line in the source file
  std::string field;
  std::string message;
};

// input_rows == kept + excluded_by_rule() + rejected.size()
struct LoadReport {
  std::size_t input_rows{0};
  std::size_t kept{0};
  std::size_t missing_price{0};
  std::size_t missing_features{0};
  std::size_t outside_sale_window{0};
  std::size_t excluded_city{0};
  std::vector<RowIssue> rejected;
  std::vector<std::string> feature_failures;  // "<id>: <reason>" from image extraction

  std::size_t excluded_by_rule() const noexcept {
    return missing_price + missing_features + outside_sale_window + excluded_city;
  }
  // Line-oriented "key: value" text, then one "rejected ..." line per issue.
  std::string to_text() const;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

struct FeatureTable {
  std::map<std::string, features::FeatureVector> features;
  std::string config_hash;  // shared by every row; empty for an empty table
};

/// Throws SchemaError for missing/unknown columns, malformed values, or
/// rows computed under different extraction configs.
FeatureTable read_features_csv(const std::filesystem::path& path);
void write_features_csv(std::ostream& os, const std::map<std::string, features::FeatureVector>& rows);

/// Records only; every valid record is kept regardless of features.
LoadedCorpus load_records(const std::filesystem::path& records_csv, const LoadOptions& options = {});

/// Records joined with a features CSV. Records without a features row are
/// excluded and counted.
LoadedCorpus load_corpus(const std::filesystem::path& records_csv,
                         const std::filesystem::path& features_csv,
                         const LoadOptions& options = {});

/// Records joined with features extracted from an image directory. Images
/// are looked up by the file name of image_path, falling back to <id>.png,
/// <id>.jpg and <id>.jpeg.
LoadedCorpus load_corpus_from_images(const std::filesystem::path& records_csv,
                                     const std::filesystem::path& image_dir,
                                     const features::ExtractionConfig& config,
                                     const LoadOptions& options = {});

void write_records_csv(std::ostream& os, const std::vector<AuctionRecord>& records);

}  // namespace artfeat::corpus
