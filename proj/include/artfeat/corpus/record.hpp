#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artfeat/features.hpp"

namespace artfeat::corpus {

// Lower-cased, trimmed, apostrophes removed, inner whitespace collapsed:
// "Christie's", " christies " and "CHRISTIES" share the key "christies".
std::string canonical_category(std::string_view text);

class Painter {
 public:
  enum class Kind { Picasso, Renoir, Qi, Other };

  static Painter parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  // Canonical key: "picasso", "renoir", "qi", or the canonicalized name.
  const std::string& key() const noexcept { return key_; }

  friend bool operator==(const Painter&, const Painter&) = default;

 private:
  Painter(Kind kind, std::string key) : kind_(kind), key_(std::move(key)) {}
  Kind kind_;
  std::string key_;
};

struct AuctionRecord {
  std::string id;
  Painter painter = Painter::parse("other");
  double price_usd{0.0};
  std::string image_path;  // optional; relative paths resolve against the records file
  int creation_year{0};
  int sale_year{0};
  double surface_cm2{0.0};
  bool signature{false};
  std::optional<bool> dated;  // absent for corpora that do not record it
  std::string material;
  std::string city;
  std::string salesroom;

  int age() const noexcept { return sale_year - creation_year; }
  friend bool operator==(const AuctionRecord&, const AuctionRecord&) = default;
};

struct Corpus {
  std::vector<AuctionRecord> records;
  std::map<std::string, features::FeatureVector> features;
  std::string provenance;
  std::string extraction_config_hash;

  const features::FeatureVector* features_for(const std::string& id) const;
};

}  // namespace artfeat::corpus
