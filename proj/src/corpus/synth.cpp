#include "artfeat/corpus/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "artfeat/corpus/image_io.hpp"
#include "artfeat/error.hpp"
#include "artfeat/hedonic/design.hpp"

namespace artfeat::corpus {

namespace {

using json = nlohmann::json;
using Engine = std::mt19937_64;

void validate_shares(const std::vector<Share>& shares, const char* what) {
  if (shares.empty()) throw InvalidPlantSpec(std::string(what) + " needs at least one level");
  std::set<std::string> seen;
  double total = 0.0;
  for (const auto& s : shares) {
    if (!(s.weight >= 0.0) || !std::isfinite(s.weight)) {
      throw InvalidPlantSpec(std::string(what) + " level '" + s.level + "' has a bad weight");
    }
    if (!seen.insert(s.level).second) {
      throw InvalidPlantSpec(std::string(what) + " level '" + s.level + "' is listed twice");
    }
    total += s.weight;
  }
  if (!(total > 0.0)) throw InvalidPlantSpec(std::string(what) + " weights sum to zero");
}

json shares_to_json(const std::vector<Share>& shares) {
  json j = json::object();
  for (const auto& s : shares) j[s.level] = s.weight;
  return j;
}

std::vector<Share> shares_from_json(const json& j, bool painter) {
  std::vector<Share> out;
  for (const auto& [k, v] : j.items()) {
    out.push_back({painter ? Painter::parse(k).key() : canonical_category(k), v.get<double>()});
  }
  return out;
}

std::string draw_level(Engine& rng, const std::vector<Share>& shares) {
  std::vector<double> w;
  for (const auto& s : shares) w.push_back(s.weight);
  boost::random::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  return shares[pick(rng)].level;
}

// Column name in the design for a coefficient key, or std::nullopt if the
// key cannot name a column of `spec`.
std::optional<std::string> column_for(const hedonic::ModelSpec& spec, const std::string& key) {
  if (key == "Constant") return key;
  if (const auto eq = key.find('='); eq != std::string::npos) {
    hedonic::DummyBlock block{};
    try {
      block = hedonic::parse_dummy_block(key.substr(0, eq));
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!spec.has_block(block)) return std::nullopt;
    const std::string level = block == hedonic::DummyBlock::Painter
                                  ? Painter::parse(key.substr(eq + 1)).key()
                                  : canonical_category(key.substr(eq + 1));
    return std::string(hedonic::to_string(block)) + "=" + level;
  }
  try {
    const auto wanted = hedonic::Term::parse(key).key();
    for (const auto& t : spec.terms) {
      if (t.key() == wanted) return t.name();
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

struct Hsv {
  double h, s, v;
};

Rgb hsv_to_rgb(Hsv c) {
  const double h6 = c.h * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = c.v * (1.0 - c.s);
  const double q = c.v * (1.0 - c.s * f);
  const double t = c.v * (1.0 - c.s * (1.0 - f));
  switch (sector) {
    case 0: return {c.v, t, p};
    case 1: return {q, c.v, p};
    case 2: return {p, c.v, t};
    case 3: return {p, q, c.v};
    case 4: return {t, p, c.v};
    default: return {c.v, p, q};
  }
}

}  // namespace

void SynthRanges::validate() const {
  auto interval = [](double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
      throw InvalidPlantSpec(std::string(what) + " range must satisfy 0 < min <= max");
    }
  };
  interval(line_min, line_max, "line");
  if (line_max > 0.25) throw InvalidPlantSpec("line variance cannot exceed 0.25");
  interval(color_min, color_max, "color");
  interval(surface_min_cm2, surface_max_cm2, "surface");
  if (creation_min > creation_max || sale_min > sale_max) {
    throw InvalidPlantSpec("year ranges must satisfy min <= max");
  }
  if (sale_max < creation_min) throw InvalidPlantSpec("every sale would precede creation");
  for (double p : {signature_p, dated_p}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidPlantSpec("probabilities must lie in [0,1]");
  }
  validate_shares(material, "material");
  validate_shares(city, "city");
  validate_shares(salesroom, "salesroom");
  validate_shares(painter, "painter");
}

void PlantSpec::validate() const {
  try {
    spec.validate();
  } catch (const InvalidSpec& e) {
    throw InvalidPlantSpec(e.what());
  }
  ranges.validate();
  if (spec.response != hedonic::Response::LogPrice) {
    throw InvalidPlantSpec("synthetic prices are planted on the log scale; response must be log_price");
  }
  for (const auto& [key, value] : coefficients) {
    if (!std::isfinite(value)) throw InvalidPlantSpec("coefficient '" + key + "' is not finite");
    if (!column_for(spec, key)) {
      throw InvalidPlantSpec("coefficient '" + key + "' does not name a column of spec '" +
                             spec.name + "'");
    }
  }
}

PlantSpec PlantSpec::from_json(const json& j) {
  if (!j.is_object()) throw InvalidPlantSpec("plant document must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k != "spec" && k != "coefficients" && k != "ranges") {
      throw InvalidPlantSpec("unknown key '" + k + "'");
    }
  }
  PlantSpec plant;
  try {
    plant.spec = hedonic::ModelSpec::from_json(j.at("spec"));
    const json coefficients = j.value("coefficients", json::object());
    for (const auto& [k, v] : coefficients.items()) {
      plant.coefficients[k] = v.get<double>();
    }
    if (j.contains("ranges")) {
      const json& r = j.at("ranges");
      SynthRanges& s = plant.ranges;
      auto pair = [&](const char* key, auto& lo, auto& hi) {
        if (!r.contains(key)) return;
        const auto& a = r.at(key);
        if (!a.is_array() || a.size() != 2) {
          throw InvalidPlantSpec(std::string("range '") + key + "' must be [min, max]");
        }
        a.at(0).get_to(lo);
        a.at(1).get_to(hi);
      };
      for (const auto& [k, v] : r.items()) {
        static const std::set<std::string> known{"line",      "color",       "surface_cm2",
                                                 "creation_year", "sale_year", "signature_p",
                                                 "dated_p",   "material",    "city",
                                                 "salesroom", "painter"};
        if (!known.contains(k)) throw InvalidPlantSpec("unknown range '" + k + "'");
      }
      pair("line", s.line_min, s.line_max);
      pair("color", s.color_min, s.color_max);
      pair("surface_cm2", s.surface_min_cm2, s.surface_max_cm2);
      pair("creation_year", s.creation_min, s.creation_max);
      pair("sale_year", s.sale_min, s.sale_max);
      s.signature_p = r.value("signature_p", s.signature_p);
      s.dated_p = r.value("dated_p", s.dated_p);
      if (r.contains("material")) s.material = shares_from_json(r.at("material"), false);
      if (r.contains("city")) s.city = shares_from_json(r.at("city"), false);
      if (r.contains("salesroom")) s.salesroom = shares_from_json(r.at("salesroom"), false);
      if (r.contains("painter")) s.painter = shares_from_json(r.at("painter"), true);
    }
  } catch (const json::exception& e) {
    throw InvalidPlantSpec(std::string("malformed plant JSON: ") + e.what());
  } catch (const InvalidSpec& e) {
    throw InvalidPlantSpec(e.what());
  }
  plant.validate();
  return plant;
}

json PlantSpec::to_json() const {
  const SynthRanges& s = ranges;
  json r;
  r["line"] = {s.line_min, s.line_max};
  r["color"] = {s.color_min, s.color_max};
  r["surface_cm2"] = {s.surface_min_cm2, s.surface_max_cm2};
  r["creation_year"] = {s.creation_min, s.creation_max};
  r["sale_year"] = {s.sale_min, s.sale_max};
  r["signature_p"] = s.signature_p;
  r["dated_p"] = s.dated_p;
  r["material"] = shares_to_json(s.material);
  r["city"] = shares_to_json(s.city);
  r["salesroom"] = shares_to_json(s.salesroom);
  r["painter"] = shares_to_json(s.painter);
  json c = json::object();
  for (const auto& [k, v] : coefficients) c[k] = v;
  return {{"spec", spec.to_json()}, {"coefficients", c}, {"ranges", r}};
}

PlantSpec load_plant(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidPlantSpec("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidPlantSpec(path.string() + ": " + e.what());
  }
  return PlantSpec::from_json(j);
}

namespace {

RgbImage render_attempt(std::uint64_t seed, std::size_t index, std::size_t size, std::uint32_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x1a2b3c4du, attempt};
  Engine rng(seq);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  boost::random::uniform_int_distribution<std::size_t> coord(0, size - 1);

  auto color = [&] { return hsv_to_rgb({unit(rng), 0.4 + 0.6 * unit(rng), 0.35 + 0.65 * unit(rng)}); };
  RgbImage img(size, size, color());

  std::vector<Rgb> px(img.pixels().begin(), img.pixels().end());
  auto put = [&](std::size_t x, std::size_t y, Rgb c) {
    if (x < size && y < size) px[y * size + x] = c;
  };

  // A hue field: a few dominant hues with small jitter.
  // Rectangles span at most 3/4 of a side so the background always shows.
  const std::size_t span = size * 3 / 4;
  boost::random::uniform_int_distribution<std::size_t> extent(1, span);
  const std::size_t rects = boost::random::uniform_int_distribution<std::size_t>(1, 10)(rng);
  for (std::size_t r = 0; r < rects; ++r) {
    const std::size_t x0 = coord(rng), y0 = coord(rng);
    const std::size_t x1 = std::min(size - 1, x0 + extent(rng) - 1);
    const std::size_t y1 = std::min(size - 1, y0 + extent(rng) - 1);
    const Rgb c = color();
    for (std::size_t y = y0; y <= y1; ++y)
      for (std::size_t x = x0; x <= x1; ++x) put(x, y, c);
  }

  // Paired strokes so that each one crosses the edge threshold regardless
  // of the colors underneath.
  // Each stroke stays inside the image and covers at least a quarter side.
  boost::random::uniform_int_distribution<std::size_t> row(0, size - 2);
  boost::random::uniform_int_distribution<std::size_t> length(size / 4, size);
  const std::size_t strokes = boost::random::uniform_int_distribution<std::size_t>(1, 12)(rng);
  for (std::size_t s = 0; s < strokes; ++s) {
    const bool horizontal = unit(rng) < 0.5;
    const std::size_t at = row(rng);
    const std::size_t len = length(rng);
    const std::size_t a = boost::random::uniform_int_distribution<std::size_t>(0, size - len)(rng);
    const std::size_t b = a + len - 1;
    for (std::size_t t = a; t <= b; ++t) {
      if (horizontal) {
        put(t, at, {0.0, 0.0, 0.0});
        put(t, at + 1, {1.0, 1.0, 1.0});
      } else {
        put(at, t, {0.0, 0.0, 0.0});
        put(at + 1, t, {1.0, 1.0, 1.0});
      }
    }
  }
  return RgbImage(size, size, std::move(px));
}

// At least two hues must survive 8-bit storage, or the color variance of
// the stored file would be zero.
bool has_two_hues(const RgbImage& img) {
  std::optional<double> first;
  for (const auto& p : img.pixels()) {
    const auto q = [](double v) { return std::round(v * 255.0) / 255.0; };
    const auto h = features::hue_value(q(p.r), q(p.g), q(p.b), features::HueMode::Standard);
    if (!h) continue;
    if (!first) first = h;
    else if (*h != *first) return true;
  }
  return false;
}

// Under the default extraction settings, some pixels but not all are edges.
bool has_mixed_edges(const RgbImage& img) {
  const auto edges = features::detect_edges(features::to_grayscale(img), features::ExtractionConfig{});
  const std::size_t set = edges.count_set();
  return set > 0 && set < edges.size();
}

}  // namespace

RgbImage render_synthetic_image(std::uint64_t seed, std::size_t index, std::size_t size) {
  if (size < 8) throw DomainError("synthetic images need a side of at least 8 pixels");
  for (std::uint32_t attempt = 0;; ++attempt) {
    RgbImage img = render_attempt(seed, index, size, attempt);
    if (has_two_hues(img) && has_mixed_edges(img)) return img;
  }
}

Corpus generate_synthetic(const PlantSpec& plant, const SynthOptions& options) {
  plant.validate();
  if (!(options.noise_sd >= 0.0) || !std::isfinite(options.noise_sd)) {
    throw InvalidPlantSpec("noise sd must be a finite value >= 0");
  }
  const SynthRanges& R = plant.ranges;

  Engine rng(options.seed);
  boost::random::uniform_real_distribution<double> line(R.line_min, R.line_max);
  boost::random::uniform_real_distribution<double> color(R.color_min, R.color_max);
  boost::random::uniform_real_distribution<double> log_surface(std::log(R.surface_min_cm2),
                                                               std::log(R.surface_max_cm2));
  boost::random::uniform_int_distribution<int> creation(R.creation_min, R.creation_max);
  boost::random::bernoulli_distribution<double> signature(R.signature_p);
  boost::random::bernoulli_distribution<double> dated(R.dated_p);
  boost::random::normal_distribution<double> noise(0.0, 1.0);

  Corpus corpus;
  corpus.provenance = "synthetic seed " + std::to_string(options.seed);
  if (options.image_dir) {
    options.extraction.validate();
    std::filesystem::create_directories(*options.image_dir);
    corpus.extraction_config_hash = options.extraction.hash();
  } else {
    corpus.extraction_config_hash = kSyntheticFeatureHash;
  }

  for (std::size_t i = 0; i < options.n; ++i) {
    std::ostringstream id;
    id << "syn" << std::setw(6) << std::setfill('0') << (i + 1);
    AuctionRecord r;
    r.id = id.str();
    r.painter = Painter::parse(draw_level(rng, R.painter));
    r.price_usd = 1.0;
    r.creation_year = creation(rng);
    r.sale_year = boost::random::uniform_int_distribution<int>(std::max(R.sale_min, r.creation_year),
                                                              R.sale_max)(rng);
    r.surface_cm2 = std::exp(log_surface(rng));
    r.signature = signature(rng);
    r.dated = dated(rng);
    r.material = draw_level(rng, R.material);
    r.city = draw_level(rng, R.city);
    r.salesroom = draw_level(rng, R.salesroom);
    const double lv = line(rng);
    const double cv = color(rng);

    features::FeatureVector fv;
    if (options.image_dir) {
      const std::string file = r.id + ".png";
      r.image_path = file;
      const RgbImage img = render_synthetic_image(options.seed, i, options.image_size);
      write_png(img, *options.image_dir / file);
      // Features come from the stored 8-bit file so that re-extraction matches.
      fv = features::extract_features(decode_image(*options.image_dir / file), options.extraction);
    } else {
      fv.line_variance = lv;
      fv.color_variance = cv;
      fv.defined_hue_fraction = 1.0;
      fv.extraction_config_hash = kSyntheticFeatureHash;
    }
    corpus.features.emplace(r.id, std::move(fv));
    corpus.records.push_back(std::move(r));
  }

  // Plant Lprice = X beta + noise on the design the spec would build.
  std::vector<std::size_t> rows(corpus.records.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  hedonic::ModelSpec spec = plant.spec;
  spec.subsample = {};
  const auto obs = hedonic::transform_inputs(corpus, rows, hedonic::TransformNeeds::of(spec));
  // Dummy effects are added per record, so a reference level that was never
  // drawn still contributes 0 instead of failing the encoding.
  hedonic::ModelSpec base = spec;
  base.dummies.clear();
  const auto design = hedonic::build_design(base, obs);
  std::size_t k = design.k();
  std::map<std::string, double> planted;
  for (const auto& [key, value] : plant.coefficients) planted[*column_for(spec, key)] = value;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(design.k()));
  for (std::size_t j = 0; j < design.k(); ++j) {
    if (const auto it = planted.find(design.names[j]); it != planted.end()) {
      beta(static_cast<Eigen::Index>(j)) = it->second;
    }
  }
  Eigen::VectorXd mean = design.X * beta;
  for (const auto& d : spec.dummies) {
    const std::string block(hedonic::to_string(d.block));
    std::set<std::string> seen;
    const auto& raw = obs.levels.at(d.block);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const bool kept = d.keep.empty() || std::find(d.keep.begin(), d.keep.end(), raw[i]) != d.keep.end();
      const std::string level = kept ? raw[i] : "others";
      seen.insert(level);
      const auto it = planted.find(block + "=" + level);
      if (it != planted.end()) mean(static_cast<Eigen::Index>(i)) += it->second;
    }
    k += seen.empty() ? 0 : seen.size() - 1;
  }
  if (options.n <= k + 10) {
    throw InvalidPlantSpec("n = " + std::to_string(options.n) + " must exceed k + 10 = " +
                           std::to_string(k + 10));
  }
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const double e = options.noise_sd > 0.0 ? options.noise_sd * noise(rng) : 0.0;
    const double lprice = mean(static_cast<Eigen::Index>(i)) + e;
    const double price = std::exp(lprice);
    if (!(price > 0.0) || !std::isfinite(price)) {
      throw InvalidPlantSpec("planted log price " + std::to_string(lprice) +
                             " cannot be represented as a price");
    }
    corpus.records[i].price_usd = price;
  }
  return corpus;
}

PlantSpec benchmark_plant() {
  PlantSpec p;
  p.spec.name = "benchmark";
  for (const char* t : {"Lline", "Lcolor", "Surface", "Surface^2", "Age", "Signature", "Dated"}) {
    p.spec.terms.push_back(hedonic::Term::parse(t));
  }
  p.spec.dummies = {{hedonic::DummyBlock::Material, "others", {}},
                    {hedonic::DummyBlock::City, "others", {}},
                    {hedonic::DummyBlock::Salesroom, "others", {}},
                    {hedonic::DummyBlock::Salesyear, "2000", {}}};
  p.coefficients = {{"Constant", 4.242},       {"Lline", 0.537},
                    {"Lcolor", 0.404},         {"Surface", 0.105},
                    {"Surface^2", -0.000628},  {"Age", 0.0116},
                    {"Signature", 0.0367},     {"Dated", 0.356},
                    {"material=board", 1.655}, {"material=canvas", 1.977},
                    {"material=cardboard", 1.650}, {"city=new york", 0.741},
                    {"city=london", 0.919},    {"city=paris", 0.163},
                    {"salesroom=christies", 0.661}, {"salesroom=sothebys", 0.639}};
  const double years[] = {-0.466, -0.291, 0.153, 0.708, 0.602, 0.768, 0.930, 1.209, 0.578,
                          0.790,  1.246,  0.991, 1.113, 1.142, 1.506, 0.898, 1.214, 1.437};
  for (int y = 2001; y <= 2018; ++y) {
    p.coefficients["salesyear=" + std::to_string(y)] = years[y - 2001];
  }
  return p;
}

PlantSpec cross_effect_plant() {
  PlantSpec p = benchmark_plant();
  p.spec.name = "cross_effect";
  p.spec.terms.clear();
  for (const char* t : {"Lline", "Lcolor", "Surface", "Lcolor*Surface", "Age", "Signature", "Dated"}) {
    p.spec.terms.push_back(hedonic::Term::parse(t));
  }
  p.coefficients.erase("Surface^2");
  p.coefficients["Constant"] = 3.251;
  p.coefficients["Lline"] = 0.570;
  p.coefficients["Lcolor"] = 0.365;
  p.coefficients["Surface"] = 0.311;
  p.coefficients["Lcolor*Surface"] = -0.05;
  p.coefficients["Age"] = 0.00789;
  p.coefficients["Signature"] = 0.0437;
  p.coefficients["Dated"] = 0.343;
  return p;
}

}  // namespace artfeat::corpus
