#include "artfeat/corpus/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "artfeat/corpus/csv.hpp"
#include "artfeat/corpus/image_io.hpp"
#include "artfeat/error.hpp"
#include "artfeat/format.hpp"

namespace artfeat::corpus {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Thrown while parsing one row; converted to a RowIssue by the caller.
struct FieldError {
  std::string field;
  std::string message;
};

double parse_double(std::string_view text, const char* field) {
  const auto t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw FieldError{field, "not a finite number: '" + std::string(text) + "'"};
  }
  return v;
}

int parse_int(std::string_view text, const char* field) {
  const auto t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw FieldError{field, "not an integer: '" + std::string(text) + "'"};
  }
  return v;
}

std::optional<bool> parse_bool(std::string_view text, const char* field, bool required) {
  const std::string t = lower(trim(text));
  if (t.empty()) {
    if (required) throw FieldError{field, "missing value"};
    return std::nullopt;
  }
  if (t == "1" || t == "true" || t == "yes" || t == "y") return true;
  if (t == "0" || t == "false" || t == "no" || t == "n") return false;
  throw FieldError{field, "not a boolean: '" + std::string(text) + "'"};
}

// Maps header names onto column indices, enforcing an exact schema.
std::map<std::string, std::size_t> map_columns(const std::vector<std::string>& header,
                                               std::span<const char* const> expected,
                                               const fs::path& path) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = lower(trim(header[i]));
    if (std::find_if(expected.begin(), expected.end(),
                     [&](const char* e) { return name == e; }) == expected.end()) {
      throw SchemaError(path.string() + ": unknown column '" + header[i] + "'");
    }
    if (!index.emplace(name, i).second) {
      throw SchemaError(path.string() + ": duplicate column '" + header[i] + "'");
    }
  }
  for (const char* e : expected) {
    if (!index.contains(e)) throw SchemaError(path.string() + ": missing column '" + e + "'");
  }
  return index;
}

struct ParsedRow {
  AuctionRecord record;
  bool missing_price{false};
};

ParsedRow parse_record(const std::vector<std::string>& row,
                       const std::map<std::string, std::size_t>& col) {
  auto field = [&](const char* name) -> const std::string& { return row[col.at(name)]; };
  ParsedRow out;
  AuctionRecord& r = out.record;

  r.id = std::string(trim(field("id")));
  if (r.id.empty()) throw FieldError{"id", "empty id"};
  r.painter = Painter::parse(field("painter"));

  if (trim(field("price_usd")).empty()) {
    out.missing_price = true;
  } else {
    r.price_usd = parse_double(field("price_usd"), "price_usd");
    if (!(r.price_usd > 0.0)) throw FieldError{"price_usd", "price must be positive"};
  }
  r.image_path = std::string(trim(field("image_path")));
  r.creation_year = parse_int(field("creation_year"), "creation_year");
  r.sale_year = parse_int(field("sale_year"), "sale_year");
  if (r.sale_year < r.creation_year) {
    throw FieldError{"sale_year", "sale year precedes creation year"};
  }
  r.surface_cm2 = parse_double(field("surface_cm2"), "surface_cm2");
  if (!(r.surface_cm2 > 0.0)) throw FieldError{"surface_cm2", "surface must be positive"};
  r.signature = *parse_bool(field("signature"), "signature", true);
  r.dated = parse_bool(field("dated"), "dated", false);
  r.material = canonical_category(field("material"));
  r.city = canonical_category(field("city"));
  r.salesroom = canonical_category(field("salesroom"));
  return out;
}

enum class FeatureSource { None, Table, Images };

LoadedCorpus load_impl(const fs::path& records_csv, const LoadOptions& options,
                       FeatureSource source, const FeatureTable* table, const fs::path& image_dir,
                       const features::ExtractionConfig* config) {
  const CsvTable csv = read_csv(records_csv);
  const auto col = map_columns(csv.header, kRecordColumns, records_csv);

  std::set<std::string> excluded_cities;
  for (const auto& c : options.exclude_cities) excluded_cities.insert(canonical_category(c));

  LoadedCorpus out;
  LoadReport& rep = out.report;
  Corpus& corpus = out.corpus;
  rep.input_rows = csv.rows.size();
  std::set<std::string> seen_ids;

  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    const std::size_t line = csv.line_numbers[i];
    if (row.size() != csv.header.size()) {
      rep.rejected.push_back({line, "*",
                              "expected " + std::to_string(csv.header.size()) + " fields, got " +
                                  std::to_string(row.size())});
      continue;
    }
    ParsedRow parsed;
    try {
      parsed = parse_record(row, col);
    } catch (const FieldError& e) {
      rep.rejected.push_back({line, e.field, e.message});
      continue;
    }
    AuctionRecord& r = parsed.record;
    if (!seen_ids.insert(r.id).second) {
      rep.rejected.push_back({line, "id", "duplicate id '" + r.id + "'"});
      continue;
    }
    if (parsed.missing_price) {
      ++rep.missing_price;
      continue;
    }
    if (options.sale_year_window &&
        (r.sale_year < options.sale_year_window->first ||
         r.sale_year > options.sale_year_window->second)) {
      ++rep.outside_sale_window;
      continue;
    }
    if (excluded_cities.contains(r.city)) {
      ++rep.excluded_city;
      continue;
    }

    if (source == FeatureSource::Table) {
      const auto it = table->features.find(r.id);
      if (it == table->features.end()) {
        ++rep.missing_features;
        continue;
      }
      corpus.features.emplace(r.id, it->second);
    } else if (source == FeatureSource::Images) {
      std::vector<fs::path> candidates;
      if (!r.image_path.empty()) {
        candidates.push_back(image_dir / fs::path(r.image_path).filename());
        candidates.push_back(image_dir / r.image_path);
      }
      for (const char* ext : {".png", ".jpg", ".jpeg"}) candidates.push_back(image_dir / (r.id + ext));
      const auto found = std::find_if(candidates.begin(), candidates.end(),
                                      [](const fs::path& p) { return fs::is_regular_file(p); });
      if (found == candidates.end()) {
        ++rep.missing_features;
        rep.feature_failures.push_back(r.id + ": no image found");
        continue;
      }
      try {
        corpus.features.emplace(r.id, features::extract_features(decode_image(*found), *config));
      } catch (const Error& e) {
        ++rep.missing_features;
        rep.feature_failures.push_back(r.id + ": " + e.what());
        continue;
      }
    }
    corpus.records.push_back(std::move(r));
  }
  rep.kept = corpus.records.size();

  corpus.provenance = "records: " + records_csv.string();
  if (source == FeatureSource::Table) {
    corpus.extraction_config_hash = table->config_hash;
  } else if (source == FeatureSource::Images) {
    corpus.extraction_config_hash = config->hash();
    corpus.provenance += "; images: " + image_dir.string();
  }
  return out;
}

}  // namespace

std::string LoadReport::to_text() const {
  std::ostringstream os;
  os << "input_rows: " << input_rows << '\n'
     << "kept: " << kept << '\n'
     << "excluded_missing_price: " << missing_price << '\n'
     << "excluded_missing_features: " << missing_features << '\n'
     << "excluded_sale_year_window: " << outside_sale_window << '\n'
     << "excluded_city: " << excluded_city << '\n'
     << "rejected_malformed: " << rejected.size() << '\n';
  for (const auto& r : rejected) {
    os << "rejected row " << r.row << " field " << r.field << ": " << r.message << '\n';
  }
  for (const auto& f : feature_failures) os << "feature_failure " << f << '\n';
  return os.str();
}

FeatureTable read_features_csv(const fs::path& path) {
  const CsvTable csv = read_csv(path);
  const auto col = map_columns(csv.header, kFeatureColumns, path);
  FeatureTable table;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    const std::string where = path.string() + " line " + std::to_string(csv.line_numbers[i]);
    if (row.size() != csv.header.size()) throw SchemaError(where + ": wrong field count");
    features::FeatureVector fv;
    std::string id;
    try {
      id = std::string(trim(row[col.at("id")]));
      fv.line_variance = parse_double(row[col.at("line_variance")], "line_variance");
      fv.color_variance = parse_double(row[col.at("color_variance")], "color_variance");
      fv.defined_hue_fraction =
          parse_double(row[col.at("defined_hue_fraction")], "defined_hue_fraction");
    } catch (const FieldError& e) {
      throw SchemaError(where + ", field " + e.field + ": " + e.message);
    }
    fv.extraction_config_hash = std::string(trim(row[col.at("extraction_config_hash")]));
    if (id.empty()) throw SchemaError(where + ": empty id");
    if (table.features.empty()) {
      table.config_hash = fv.extraction_config_hash;
    } else if (fv.extraction_config_hash != table.config_hash) {
      throw SchemaError(where + ": extraction_config_hash '" + fv.extraction_config_hash +
                        "' differs from '" + table.config_hash +
                        "'; features from different configs cannot be mixed");
    }
    if (!table.features.emplace(id, std::move(fv)).second) {
      throw SchemaError(where + ": duplicate id '" + id + "'");
    }
  }
  return table;
}

void write_features_csv(std::ostream& os,
                        const std::map<std::string, features::FeatureVector>& rows) {
  write_csv_row(os, {std::begin(kFeatureColumns), std::end(kFeatureColumns)});
  for (const auto& [id, fv] : rows) {
    write_csv_row(os, {id, format_full(fv.line_variance), format_full(fv.color_variance),
                       format_full(fv.defined_hue_fraction), fv.extraction_config_hash});
  }
}

LoadedCorpus load_records(const fs::path& records_csv, const LoadOptions& options) {
  return load_impl(records_csv, options, FeatureSource::None, nullptr, {}, nullptr);
}

LoadedCorpus load_corpus(const fs::path& records_csv, const fs::path& features_csv,
                         const LoadOptions& options) {
  const FeatureTable table = read_features_csv(features_csv);
  auto out = load_impl(records_csv, options, FeatureSource::Table, &table, {}, nullptr);
  out.corpus.provenance += "; features: " + features_csv.string();
  return out;
}

LoadedCorpus load_corpus_from_images(const fs::path& records_csv, const fs::path& image_dir,
                                     const features::ExtractionConfig& config,
                                     const LoadOptions& options) {
  config.validate();
  if (!fs::is_directory(image_dir)) {
    throw SchemaError("image directory " + image_dir.string() + " does not exist");
  }
  return load_impl(records_csv, options, FeatureSource::Images, nullptr, image_dir, &config);
}

void write_records_csv(std::ostream& os, const std::vector<AuctionRecord>& records) {
  write_csv_row(os, {std::begin(kRecordColumns), std::end(kRecordColumns)});
  for (const auto& r : records) {
    write_csv_row(os, {r.id, r.painter.key(), format_full(r.price_usd), r.image_path,
                       std::to_string(r.creation_year), std::to_string(r.sale_year),
                       format_full(r.surface_cm2), r.signature ? "1" : "0",
                       r.dated ? (*r.dated ? "1" : "0") : "", r.material, r.city, r.salesroom});
  }
}

}  // namespace artfeat::corpus
