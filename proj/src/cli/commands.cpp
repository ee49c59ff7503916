#include "artfeat/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "artfeat/cli/config.hpp"
#include "artfeat/cli/manifest.hpp"
#include "artfeat/corpus/image_io.hpp"
#include "artfeat/corpus/io.hpp"
#include "artfeat/corpus/summary.hpp"
#include "artfeat/corpus/synth.hpp"
#include "artfeat/error.hpp"
#include "artfeat/hash.hpp"
#include "artfeat/hedonic/suite.hpp"

namespace artfeat::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Input: return kExitNoOutput;
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitConfig;
}

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SchemaError("cannot write " + path.string());
  out << bytes;
  if (!out) throw SchemaError("failed writing " + path.string());
}

enum class TableFormat { Markdown, Tsv };

TableFormat table_format(const fs::path& out) {
  const std::string ext = out.extension().string();
  if (ext == ".md" || ext == ".markdown") return TableFormat::Markdown;
  if (ext == ".tsv") return TableFormat::Tsv;
  throw SchemaError("--out must end in .md or .tsv, got '" + out.string() + "'");
}

// Flags shared by every command that extracts features.
struct ExtractionFlags {
  std::string resize;
  double edge_threshold{0.0};
  std::string hue_mode;
  double hue_scale{0.0};
  CLI::Option* resize_opt{nullptr};
  CLI::Option* edge_opt{nullptr};
  CLI::Option* mode_opt{nullptr};
  CLI::Option* scale_opt{nullptr};

  void add(CLI::App& app) {
    resize_opt = app.add_option("--resize", resize, "Longest side after downsampling, or 'off'");
    edge_opt = app.add_option("--edge-threshold", edge_threshold,
                              "Normalized Sobel magnitude threshold in (0,1)");
    mode_opt = app.add_option("--hue-mode", hue_mode, "standard | paper_literal");
    scale_opt = app.add_option("--hue-scale", hue_scale, "Degrees-to-hue multiplier");
  }

  void apply(features::ExtractionConfig& cfg) const {
    if (resize_opt->count()) {
      if (resize == "off") {
        cfg.resize_max_side = std::nullopt;
      } else {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(resize.data(), resize.data() + resize.size(), v);
        if (ec != std::errc{} || p != resize.data() + resize.size()) {
          throw DomainError("--resize must be a pixel count or 'off', got '" + resize + "'");
        }
        cfg.resize_max_side = v;
      }
    }
    if (edge_opt->count()) cfg.edge_threshold = edge_threshold;
    if (mode_opt->count()) cfg.hue_mode = features::parse_hue_mode(hue_mode);
    if (scale_opt->count()) cfg.hue_scale = hue_scale;
    cfg.validate();
  }
};

// Flags for commands that join records with features.
struct CorpusFlags {
  fs::path records;
  fs::path features;
  fs::path images;
  std::string sale_years;
  std::vector<std::string> exclude_cities;
  fs::path report;
  CLI::Option* features_opt{nullptr};
  CLI::Option* images_opt{nullptr};
  CLI::Option* years_opt{nullptr};
  CLI::Option* cities_opt{nullptr};

  void add(CLI::App& app) {
    app.add_option("--corpus", records, "Records CSV")->required();
    features_opt = app.add_option("--features", features, "Features CSV");
    images_opt = app.add_option("--images", images, "Image directory to extract features from");
    features_opt->excludes(images_opt);
    years_opt = app.add_option("--sale-years", sale_years,
                               "Inclusive sale-year window FIRST:LAST, or 'any'");
    cities_opt = app.add_option("--exclude-city", exclude_cities, "City to drop (repeatable)");
    app.add_option("--report", report, "Write the exclusion report to this file");
  }

  corpus::LoadOptions options(const ToolConfig& cfg) const {
    corpus::LoadOptions opts = cfg.load;
    if (years_opt->count()) {
      if (sale_years == "any") {
        opts.sale_year_window = std::nullopt;
      } else {
        const auto colon = sale_years.find(':');
        int a = 0, b = 0;
        const char* s = sale_years.data();
        const char* e = s + sale_years.size();
        bool ok = colon != std::string::npos;
        if (ok) {
          auto r1 = std::from_chars(s, s + colon, a);
          auto r2 = std::from_chars(s + colon + 1, e, b);
          ok = r1.ec == std::errc{} && r1.ptr == s + colon && r2.ec == std::errc{} && r2.ptr == e &&
               a <= b;
        }
        if (!ok) throw DomainError("--sale-years must be FIRST:LAST or 'any'");
        opts.sale_year_window = std::pair{a, b};
      }
    }
    if (cities_opt->count()) opts.exclude_cities = exclude_cities;
    return opts;
  }

  bool has_features() const { return features_opt->count() || images_opt->count(); }

  corpus::LoadedCorpus load(const ToolConfig& cfg, std::ostream& err,
                            std::map<std::string, std::string>& inputs) const {
    const auto opts = options(cfg);
    corpus::LoadedCorpus loaded;
    if (features_opt->count()) {
      loaded = corpus::load_corpus(records, features, opts);
      hash_inputs(features, inputs);
    } else if (images_opt->count()) {
      loaded = corpus::load_corpus_from_images(records, images, cfg.extraction, opts);
      hash_inputs(images, inputs);
    } else {
      loaded = corpus::load_records(records, opts);
    }
    hash_inputs(records, inputs);
    const std::string text = loaded.report.to_text();
    err << text;
    if (!report.empty()) write_file(report, text);
    return loaded;
  }
};

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& args,
                          json config) {
  RunManifest m;
  m.command = command;
  m.argv = args;
  m.config = std::move(config);
  m.version = tool_version();
  m.timestamp = current_timestamp();
  return m;
}

// ---- features ---------------------------------------------------------------

struct FeaturesArgs {
  fs::path input;
  fs::path out;
  std::size_t threads{0};
  CLI::Option* threads_opt{nullptr};
  ExtractionFlags extraction;
};

int cmd_features(const FeaturesArgs& a, const ToolConfig& base, const std::vector<std::string>& args,
                 std::ostream& err) {
  ToolConfig cfg = base;
  a.extraction.apply(cfg.extraction);
  if (a.threads_opt->count()) cfg.threads = a.threads;

  std::vector<fs::path> files;
  if (fs::is_directory(a.input)) {
    for (const auto& e : fs::directory_iterator(a.input)) {
      if (!e.is_regular_file()) continue;
      if (corpus::has_image_extension(e.path())) {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(a.input)) {
    files.push_back(a.input);
  } else {
    err << "error: input " << a.input.string() << " does not exist\n";
    return kExitNoOutput;
  }

  std::vector<std::optional<features::FeatureVector>> results(files.size());
  std::vector<std::string> failures(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        results[i] = features::extract_features(corpus::decode_image(files[i]), cfg.extraction);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  const std::size_t workers = std::min(effective_threads(cfg.threads), std::max<std::size_t>(1, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::map<std::string, features::FeatureVector> rows;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!results[i]) {
      ++failed;
      err << "error: " << files[i].string() << ": " << failures[i] << '\n';
      continue;
    }
    const std::string id = files[i].stem().string();
    if (!rows.emplace(id, *results[i]).second) {
      ++failed;
      err << "error: " << files[i].string() << ": duplicate id '" << id << "'\n";
    }
  }
  err << "features: " << rows.size() << " written, " << failed << " failed\n";
  if (rows.empty()) {
    err << "error: no input image could be processed\n";
    return kExitNoOutput;
  }

  std::ostringstream csv;
  corpus::write_features_csv(csv, rows);
  write_file(a.out, csv.str());

  RunManifest m = make_manifest("features", args, cfg.to_json());
  for (const auto& f : files) m.inputs[f.string()] = sha256_file(f);
  record_output(a.out, m);
  return kExitOk;
}

// ---- fit / periods ------------------------------------------------------------

struct FitArgs {
  CorpusFlags corpus;
  ExtractionFlags extraction;
  fs::path spec;
  fs::path out;
  std::string title;
};

int emit_suite(const hedonic::SuiteResult& suite, const fs::path& out, const std::string& title,
               RunManifest manifest, std::ostream& err) {
  for (const auto& o : suite.outcomes) {
    if (o.status == hedonic::OutcomeStatus::Skipped) {
      err << "notice: spec " << o.name << " skipped: " << o.message << '\n';
    } else if (o.status == hedonic::OutcomeStatus::Failed) {
      err << "error: spec " << o.name << " failed: " << o.message << '\n';
    }
  }
  const std::string text = table_format(out) == TableFormat::Markdown
                               ? hedonic::render_markdown(suite, title)
                               : hedonic::render_tsv(suite);
  write_file(out, text);
  record_output(out, manifest);

  if (suite.fitted() == 0) {
    for (const auto& o : suite.outcomes) {
      if (o.status == hedonic::OutcomeStatus::Failed) {
        return exit_code_for(o.error_category.value_or(ErrorCategory::Numerical));
      }
    }
  }
  return kExitOk;
}

int cmd_fit(const FitArgs& a, const ToolConfig& base, const std::vector<std::string>& args,
            std::ostream& err) {
  ToolConfig cfg = base;
  a.extraction.apply(cfg.extraction);
  table_format(a.out);
  if (!a.corpus.has_features()) throw SchemaError("fit needs --features or --images");
  const auto specs = hedonic::load_suite(a.spec);
  RunManifest m = make_manifest("fit", args, cfg.to_json());
  const auto loaded = a.corpus.load(cfg, err, m.inputs);
  hash_inputs(a.spec, m.inputs);
  m.config["specs"] = json::array();
  for (const auto& s : specs) m.config["specs"].push_back(s.to_json());
  const auto suite = hedonic::run_specification_suite(loaded.corpus, specs);
  return emit_suite(suite, a.out, a.title, std::move(m), err);
}

int cmd_periods(const FitArgs& a, const ToolConfig& base, const std::vector<std::string>& args,
                std::ostream& err) {
  ToolConfig cfg = base;
  a.extraction.apply(cfg.extraction);
  table_format(a.out);
  if (!a.corpus.has_features()) throw SchemaError("periods needs --features or --images");
  hedonic::ModelSpec spec = hedonic::period_base_spec();
  RunManifest m = make_manifest("periods", args, cfg.to_json());
  if (!a.spec.empty()) {
    const auto specs = hedonic::load_suite(a.spec);
    if (specs.size() != 1) throw InvalidSpec("periods takes a single base spec");
    spec = specs.front();
    hash_inputs(a.spec, m.inputs);
  }
  const auto suite_specs = hedonic::period_suite(spec);
  m.config["base_spec"] = spec.to_json();
  const auto loaded = a.corpus.load(cfg, err, m.inputs);
  const auto suite = hedonic::run_specification_suite(loaded.corpus, suite_specs);
  return emit_suite(suite, a.out, a.title, std::move(m), err);
}

// ---- summarize ---------------------------------------------------------------

struct SummarizeArgs {
  CorpusFlags corpus;
  ExtractionFlags extraction;
  fs::path out;
  std::vector<std::string> variables;
  double surface_scale{1000.0};
};

int cmd_summarize(const SummarizeArgs& a, const ToolConfig& base,
                  const std::vector<std::string>& args, std::ostream& err) {
  ToolConfig cfg = base;
  a.extraction.apply(cfg.extraction);
  const TableFormat fmt = table_format(a.out);
  RunManifest m = make_manifest("summarize", args, cfg.to_json());
  const auto loaded = a.corpus.load(cfg, err, m.inputs);
  const auto vars = a.variables.empty() ? corpus::default_summary_variables() : a.variables;
  m.config["variables"] = vars;
  m.config["surface_scale"] = a.surface_scale;
  const auto table = corpus::summary_statistics(loaded.corpus, vars, a.surface_scale);
  write_file(a.out, fmt == TableFormat::Markdown ? corpus::render_summary_markdown(table)
                                                 : corpus::render_summary_tsv(table));
  record_output(a.out, m);
  return kExitOk;
}

// ---- synth -------------------------------------------------------------------

struct SynthArgs {
  std::size_t n{0};
  std::uint64_t seed{0};
  double noise_sd{0.0};
  std::size_t image_size{0};
  std::string plant;
  fs::path out;
  bool images{false};
  CLI::Option* n_opt{nullptr};
  CLI::Option* seed_opt{nullptr};
  CLI::Option* sd_opt{nullptr};
  CLI::Option* size_opt{nullptr};
  ExtractionFlags extraction;
};

int cmd_synth(const SynthArgs& a, const ToolConfig& base, const std::vector<std::string>& args,
              std::ostream& err) {
  ToolConfig cfg = base;
  a.extraction.apply(cfg.extraction);
  if (a.n_opt->count()) cfg.synth.n = a.n;
  if (a.seed_opt->count()) cfg.synth.seed = a.seed;
  if (a.sd_opt->count()) cfg.synth.noise_sd = a.noise_sd;
  if (a.size_opt->count()) cfg.synth.image_size = a.image_size;

  std::map<std::string, std::string> inputs;
  corpus::PlantSpec plant;
  if (a.plant.empty() || a.plant == "benchmark") {
    plant = corpus::benchmark_plant();
  } else if (a.plant == "cross_effect") {
    plant = corpus::cross_effect_plant();
  } else {
    plant = corpus::load_plant(a.plant);
    hash_inputs(a.plant, inputs);
  }

  corpus::SynthOptions opts;
  opts.n = cfg.synth.n;
  opts.seed = cfg.synth.seed;
  opts.noise_sd = cfg.synth.noise_sd;
  opts.image_size = cfg.synth.image_size;
  opts.extraction = cfg.extraction;
  if (a.images) opts.image_dir = a.out / "images";
  auto generated = corpus::generate_synthetic(plant, opts);
  if (a.images) {
    for (auto& r : generated.records) r.image_path = "images/" + r.image_path;
  }

  std::ostringstream records, features;
  corpus::write_records_csv(records, generated.records);
  corpus::write_features_csv(features, generated.features);

  json config = cfg.to_json();
  config["plant"] = plant.to_json();
  config["images"] = a.images;
  RunManifest m = make_manifest("synth", args, config);
  m.inputs = inputs;
  m.seed = cfg.synth.seed;

  write_file(a.out / "records.csv", records.str());
  write_file(a.out / "features.csv", features.str());
  write_file(a.out / "plant.json", plant.to_json().dump(2) + "\n");
  for (const char* f : {"records.csv", "features.csv", "plant.json"}) record_output(a.out / f, m);
  err << "synth: " << generated.records.size() << " records written to " << a.out.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Painting-effort features and hedonic price regressions", "artfeat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tool_version());
  std::string config_path;
  app.add_option("--config", config_path, "JSON file overriding config/defaults.json")
      ->check(CLI::ExistingFile);

  FeaturesArgs fa;
  auto* features = app.add_subcommand("features", "Extract line and color variances from images");
  features->add_option("--input", fa.input, "Image file or directory")->required();
  features->add_option("--out", fa.out, "Features CSV to write")->required();
  fa.threads_opt = features->add_option("--threads", fa.threads, "Worker threads (0 = all cores)");
  fa.extraction.add(*features);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit a suite of hedonic specifications");
  fit_args.corpus.add(*fit);
  fit_args.extraction.add(*fit);
  fit->add_option("--spec", fit_args.spec, "Model spec or suite JSON")->required();
  fit->add_option("--out", fit_args.out, "Table to write (.md or .tsv)")->required();
  fit->add_option("--title", fit_args.title, "Markdown table title");

  FitArgs period_args;
  auto* periods = app.add_subcommand("periods", "Per-period Lline/Lcolor fits");
  period_args.corpus.add(*periods);
  period_args.extraction.add(*periods);
  periods->add_option("--spec", period_args.spec, "Base spec replacing Lline + Lcolor");
  periods->add_option("--out", period_args.out, "Table to write (.md or .tsv)")->required();
  periods->add_option("--title", period_args.title, "Markdown table title");

  SummarizeArgs sa;
  auto* summarize = app.add_subcommand("summarize", "Summary statistics of a corpus");
  sa.corpus.add(*summarize);
  sa.extraction.add(*summarize);
  summarize->add_option("--out", sa.out, "Table to write (.md or .tsv)")->required();
  summarize->add_option("--variables", sa.variables, "Variables to summarize")->delimiter(',');
  summarize->add_option("--surface-scale", sa.surface_scale, "Divisor applied to surface_cm2");

  SynthArgs ya;
  auto* synth = app.add_subcommand("synth", "Generate a planted-coefficient corpus");
  ya.n_opt = synth->add_option("--n", ya.n, "Number of records");
  ya.seed_opt = synth->add_option("--seed", ya.seed, "Random seed");
  ya.sd_opt = synth->add_option("--noise-sd", ya.noise_sd, "Noise standard deviation on Lprice");
  synth->add_option("--plant", ya.plant, "Plant JSON, or 'benchmark' / 'cross_effect'");
  synth->add_option("--out", ya.out, "Output directory")->required();
  synth->add_flag("--images", ya.images, "Render one PNG per record and extract its features");
  ya.size_opt = synth->add_option("--image-size", ya.image_size, "Side of rendered images");
  ya.extraction.add(*synth);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ToolConfig cfg =
        load_config(config_path.empty() ? std::nullopt : std::optional<fs::path>(config_path));
    if (*features) return cmd_features(fa, cfg, args, err);
    if (*fit) return cmd_fit(fit_args, cfg, args, err);
    if (*periods) return cmd_periods(period_args, cfg, args, err);
    if (*summarize) return cmd_summarize(sa, cfg, args, err);
    if (*synth) return cmd_synth(ya, cfg, args, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitUsage;
}

}  // namespace artfeat::cli
