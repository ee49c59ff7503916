// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "artfeat/cli/commands.hpp"
#include "artfeat/corpus/periods.hpp"
#include "artfeat/corpus/synth.hpp"
#include "artfeat/features.hpp"
#include "artfeat/hedonic/suite.hpp"
#include "oracles.hpp"

using namespace artfeat;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass{true};
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

RgbImage noise_image(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Rgb> px(w * h);
  for (auto& p : px) p = {u(rng), u(rng), u(rng)};
  return RgbImage(w, h, std::move(px));
}

// 50 rendered synthetic paintings and 50 uniform-noise images.
std::vector<RgbImage> test_images() {
  std::vector<RgbImage> out;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> side(8, 120);
  for (std::size_t i = 0; i < 50; ++i) out.push_back(corpus::render_synthetic_image(77, i, side(rng)));
  for (std::size_t i = 0; i < 50; ++i) out.push_back(noise_image(rng, side(rng), side(rng)));
  return out;
}

hedonic::FitResult fit(const corpus::Corpus& c, const hedonic::ModelSpec& spec) {
  const auto rows = hedonic::select_rows(c, spec.subsample);
  const auto obs = hedonic::transform_inputs(c, rows, hedonic::TransformNeeds::of(spec));
  return hedonic::ols_fit(hedonic::build_design(spec, obs), spec.robust);
}

Eigen::MatrixXd random_design(std::mt19937_64& rng, int n, int k, Eigen::VectorXd& y) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd X(n, k);
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    for (int j = 1; j < k; ++j) X(i, j) = z(rng) * j + 0.5 * j;
    y(i) = X.row(i).sum() * 0.3 + z(rng) * (1.0 + std::fabs(X(i, 1)));
  }
  return X;
}

hedonic::DesignMatrix as_design(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  hedonic::DesignMatrix d;
  d.X = X;
  d.y = y;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    d.names.push_back(j == 0 ? "Constant" : "x" + std::to_string(j));
    d.blocks.push_back(std::nullopt);
  }
  return d;
}

// ---- criteria ----------------------------------------------------------------

Outcome binary_variance_identity() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> side(1, 512);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = t == 0 ? 1 : side(rng), h = t == 0 ? 1 : side(rng);
    const double density = u(rng);
    std::vector<std::uint8_t> bits(w * h);
    std::size_t ones = 0;
    for (auto& b : bits) ones += (b = u(rng) < density ? 1 : 0);
    const double v = features::line_variance(EdgeMap(w, h, std::move(bits)));
    const long double p = static_cast<long double>(ones) / static_cast<long double>(w * h);
    worst = std::max(worst, static_cast<double>(std::fabs(v - p * (1 - p))));
  }
  const double secs = seconds_since(t0);
  if (worst > 1e-12) fail(o, "max |var - p(1-p)| above 1e-12");
  if (secs >= 5.0) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << "200 maps, max error " << worst << ", " << secs << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome hue_anchors() {
  Outcome o;
  using features::HueMode;
  using features::hue_value;
  auto check = [&](double r, double g, double b, HueMode m, std::optional<double> want, const char* what) {
    const auto got = hue_value(r, g, b, m);
    if (got != want) fail(o, what);
  };
  check(1, 0, 0, HueMode::Standard, 0.0, "red standard");
  check(0, 1, 0, HueMode::Standard, 1.0 / 3.0, "green standard");
  check(0, 0, 1, HueMode::Standard, 2.0 / 3.0, "blue standard");
  check(1, 0, 0, HueMode::PaperLiteral, 0.0, "red paper_literal");
  check(0, 1, 0, HueMode::PaperLiteral, 1.0 / 3.0, "green paper_literal");
  check(0, 0, 1, HueMode::PaperLiteral, 0.5, "blue paper_literal");
  for (double g : {0.0, 0.25, 0.5, 1.0}) {
    check(g, g, g, HueMode::Standard, std::nullopt, "gray standard");
    check(g, g, g, HueMode::PaperLiteral, std::nullopt, "gray paper_literal");
  }
  if (o.pass) o.detail = "red 0, green 1/3, blue 2/3 | 1/2, gray achromatic";
  return o;
}

Outcome variance_oracle() {
  Outcome o;
  const features::ExtractionConfig cfg;
  double worst_line = 0, worst_color = 0;
  for (const auto& img : test_images()) {
    const auto f = features::extract_features(img, cfg);
    const long w = static_cast<long>(img.width()), h = static_cast<long>(img.height());
    std::vector<double> g;
    std::vector<long double> hues;
    for (const auto& p : img.pixels()) {
      g.push_back(oracle::gray(p));
      if (const auto hv = oracle::hue(p.r, p.g, p.b)) hues.push_back(*hv);
    }
    std::vector<long double> bits;
    for (int b : oracle::sobel_bits(g, w, h, cfg.edge_threshold)) bits.push_back(b);
    const double line = static_cast<double>(oracle::population_variance(bits));
    const double color = static_cast<double>(oracle::population_variance(hues));
    worst_line = std::max(worst_line, line == 0 ? std::fabs(f.line_variance) : oracle::rel_err(f.line_variance, line));
    worst_color = std::max(worst_color, color == 0 ? std::fabs(f.color_variance) : oracle::rel_err(f.color_variance, color));
  }
  if (worst_line > 1e-12) fail(o, "line variance rel err " + std::to_string(worst_line));
  if (worst_color > 1e-12) fail(o, "color variance rel err " + std::to_string(worst_color));
  if (o.pass) {
    std::ostringstream s;
    s << "100 images, max rel err line " << worst_line << ", color " << worst_color;
    o.detail = s.str();
  }
  return o;
}

Outcome feature_bounds() {
  Outcome o;
  const features::ExtractionConfig cfg;
  double max_line = 0, max_color = 0;
  auto check = [&](const RgbImage& img) {
    const auto f = features::extract_features(img, cfg);
    if (!(f.line_variance >= 0 && f.line_variance <= 0.25)) fail(o, "line_variance out of bounds");
    if (!(f.color_variance >= 0 && f.color_variance <= 0.25)) fail(o, "color_variance out of bounds");
    max_line = std::max(max_line, f.line_variance);
    max_color = std::max(max_color, f.color_variance);
  };
  for (const auto& img : test_images()) check(img);
  for (std::size_t i = 0; i < 200; ++i) check(corpus::render_synthetic_image(5, i, 96));
  if (o.pass) {
    std::ostringstream s;
    s << "300 images, max line " << max_line << ", max color " << max_color;
    o.detail = s.str();
  }
  return o;
}

Outcome ols_exactness() {
  Outcome o;
  const auto t0 = Clock::now();
  corpus::SynthOptions opt;
  opt.n = 720;
  opt.noise_sd = 0;
  const auto plant = corpus::benchmark_plant();
  const auto f = fit(corpus::generate_synthetic(plant, opt), plant.spec);
  double worst_beta = 0;
  for (std::size_t j = 0; j < f.names.size(); ++j) {
    const auto it = plant.coefficients.find(f.names[j]);
    const double want = it == plant.coefficients.end() ? 0.0 : it->second;
    const double got = f.coefficients(static_cast<Eigen::Index>(j));
    worst_beta = std::max(worst_beta, want == 0 ? std::fabs(got) : oracle::rel_err(got, want));
  }
  if (worst_beta > 1e-10) fail(o, "planted recovery rel err " + std::to_string(worst_beta));

  std::mt19937_64 rng(5);
  double worst_orth = 0, worst_ne = 0;
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd y;
    const auto X = random_design(rng, 100, 8, y);
    const auto r = hedonic::ols_fit(as_design(X, y));
    const double scale = (X.cwiseAbs().transpose() * r.residuals.cwiseAbs()).maxCoeff();
    worst_orth = std::max(worst_orth, (X.transpose() * r.residuals).cwiseAbs().maxCoeff() / scale);
    const auto beta = oracle::normal_equations(X, y);
    for (int j = 0; j < 8; ++j) {
      worst_ne = std::max(worst_ne, oracle::rel_err(r.coefficients(j), static_cast<double>(beta[j])));
    }
  }
  const double secs = seconds_since(t0);
  if (worst_orth > 1e-8) fail(o, "residual orthogonality " + std::to_string(worst_orth));
  if (worst_ne > 1e-9) fail(o, "normal equations rel err " + std::to_string(worst_ne));
  if (secs >= 5.0) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << "beta rel err " << worst_beta << ", X'e " << worst_orth << ", vs normal eq " << worst_ne << ", "
      << secs << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome robust_covariance() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> rows(8, 30), cols(2, 5);
  double worst = 0, worst_ratio = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = rows(rng), k = cols(rng);
    Eigen::VectorXd y;
    const auto X = random_design(rng, n, k, y);
    const auto e = hedonic::ols_fit(as_design(X, y)).residuals;
    const auto hc0 = hedonic::robust_covariance(X, e, hedonic::RobustKind::HC0);
    const auto hc1 = hedonic::robust_covariance(X, e, hedonic::RobustKind::HC1);
    const auto ref = oracle::sandwich_hc0(X, e);
    const double ratio = static_cast<double>(n) / static_cast<double>(n - k);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        const double want = static_cast<double>(ref[a][b]);
        worst = std::max(worst, std::fabs(hc0.covariance(a, b) - want) / std::max(1.0, std::fabs(want)));
        if (hc1.covariance(a, b) != hc0.covariance(a, b) * ratio) {
          worst_ratio = std::max(worst_ratio, std::fabs(hc1.covariance(a, b) / hc0.covariance(a, b) - ratio));
        }
      }
    }
  }
  if (worst > 1e-10) fail(o, "HC0 vs brute force " + std::to_string(worst));
  if (worst_ratio != 0) fail(o, "HC1/HC0 off by " + std::to_string(worst_ratio));
  if (o.pass) {
    std::ostringstream s;
    s << "20 designs, HC0 max err " << worst << ", HC1/HC0 = n/(n-k) exactly";
    o.detail = s.str();
  }
  return o;
}

struct Coverage {
  std::size_t runs{0};
  std::map<std::string, int> within_3se;
  int signs_ok{0};
  double seconds{0};
};

Coverage planted_runs(const corpus::PlantSpec& plant, const std::vector<std::string>& signed_terms, double sign) {
  Coverage c;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    corpus::SynthOptions opt;
    opt.n = 720;
    opt.noise_sd = 1.0;
    opt.seed = seed;
    const auto f = fit(corpus::generate_synthetic(plant, opt), plant.spec);
    ++c.runs;
    for (std::size_t j = 0; j < f.names.size(); ++j) {
      const auto it = plant.coefficients.find(f.names[j]);
      const double want = it == plant.coefficients.end() ? 0.0 : it->second;
      const auto jj = static_cast<Eigen::Index>(j);
      if (std::fabs(f.coefficients(jj) - want) <= 3.0 * f.robust_se(jj)) ++c.within_3se[f.names[j]];
      else c.within_3se.try_emplace(f.names[j], 0);
    }
    bool ok = true;
    for (const auto& t : signed_terms) ok = ok && sign * f.coefficient(t) > 0 && f.p_value(t) < 0.05;
    c.signs_ok += ok;
  }
  c.seconds = seconds_since(t0);
  return c;
}

Outcome planted_benchmark() {
  Outcome o;
  const auto plant = corpus::benchmark_plant();
  const auto c = planted_runs(plant, {"Lline", "Lcolor"}, 1.0);
  int worst = 100;
  std::string worst_name;
  for (const auto& [name, hits] : c.within_3se) {
    if (plant.coefficients.count(name) == 0 && name != "Constant") continue;
    if (hits < worst) worst = hits, worst_name = name;
    if (hits < 95) fail(o, name + " within 3 SE in only " + std::to_string(hits) + " runs");
  }
  if (c.signs_ok < 90) fail(o, "Lline and Lcolor positive with p<0.05 in " + std::to_string(c.signs_ok) + " runs");
  if (c.seconds >= 60) fail(o, "took " + std::to_string(c.seconds) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << "min 3-SE coverage " << worst << "/100 (" << worst_name << "), both significant in "
      << c.signs_ok << "/100, " << c.seconds << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome planted_interaction() {
  Outcome o;
  const auto c = planted_runs(corpus::cross_effect_plant(), {"Lcolor*Surface"}, -1.0);
  if (c.signs_ok < 90) fail(o, "negative with p<0.05 in only " + std::to_string(c.signs_ok) + " runs");
  if (o.pass) o.detail = "Lcolor*Surface negative with p<0.05 in " + std::to_string(c.signs_ok) + "/100";
  return o;
}

Outcome invariance() {
  Outcome o;
  corpus::SynthOptions opt;
  opt.n = 720;
  opt.seed = 9;
  const auto plant = corpus::benchmark_plant();
  const auto corpus = corpus::generate_synthetic(plant, opt);

  auto spec = plant.spec;
  const auto base = fit(corpus, spec);
  spec.surface_scale = 1.0;
  const auto scaled = fit(corpus, spec);
  double worst = oracle::rel_err(scaled.r_squared, base.r_squared);
  for (Eigen::Index j = 0; j < base.t_stats.size(); ++j) {
    worst = std::max(worst, oracle::rel_err(scaled.t_stats(j), base.t_stats(j)));
    worst = std::max(worst, oracle::rel_err(scaled.p_values(j), base.p_values(j)));
  }
  if (worst > 1e-9) fail(o, "scaling changed t/p/R2 by " + std::to_string(worst));

  spec = plant.spec;
  spec.dummies[0].reference = "canvas";
  spec.dummies[1].reference = "new york";
  spec.dummies[3].reference = "2010";
  const auto moved = fit(corpus, spec);
  double worst_res = 0;
  for (Eigen::Index i = 0; i < base.residuals.size(); ++i) {
    worst_res = std::max(worst_res, std::fabs(moved.residuals(i) - base.residuals(i)) /
                                        std::max(1.0, std::fabs(base.residuals(i))));
  }
  if (worst_res > 1e-9) fail(o, "reference change moved residuals by " + std::to_string(worst_res));

  const features::ExtractionConfig cfg;
  int rotations = 0;
  for (const auto& img : test_images()) {
    const double c0 = features::extract_features(img, cfg).color_variance;
    RgbImage r = img;
    for (int q = 1; q <= 3; ++q) {
      r = r.rotated90();
      if (features::extract_features(r, cfg).color_variance != c0) {
        fail(o, "rotation changed color_variance");
      }
      ++rotations;
    }
  }
  if (o.pass) {
    std::ostringstream s;
    s << "scaling " << worst << ", residuals " << worst_res << ", " << rotations << " rotations bit-identical";
    o.detail = s.str();
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome end_to_end() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "artfeat_acceptance_e2e";
  fs::remove_all(root);
  const std::string suite = std::string(ARTFEAT_SOURCE_DIR) + "/config/specs/benchmark_suite.json";
  const std::vector<std::string> outputs{"synth/records.csv", "synth/features.csv", "features.csv",
                                         "fit.md", "fit.tsv"};
  std::vector<std::vector<std::string>> runs;
  for (int run = 0; run < 2 && o.pass; ++run) {
    const fs::path d = root / ("run" + std::to_string(run));
    fs::create_directories(d);
    auto call = [&](std::vector<std::string> args) {
      std::ostringstream out, err;
      const int code = cli::run_cli(args, out, err);
      if (code != 0) fail(o, args[0] + " exited " + std::to_string(code) + ": " + err.str());
    };
    call({"synth", "--out", (d / "synth").string(), "--n", "300", "--seed", "17", "--images",
          "--image-size", "64"});
    call({"features", "--input", (d / "synth" / "images").string(), "--out", (d / "features.csv").string()});
    for (const char* out : {"fit.md", "fit.tsv"}) {
      call({"fit", "--corpus", (d / "synth" / "records.csv").string(), "--features",
            (d / "features.csv").string(), "--spec", suite, "--out", (d / out).string()});
    }
    std::vector<std::string> bytes;
    for (const auto& f : outputs) bytes.push_back(slurp(d / f));
    runs.push_back(std::move(bytes));
  }
  if (o.pass) {
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (runs[0][i].empty()) fail(o, outputs[i] + " is empty");
      if (runs[0][i] != runs[1][i]) fail(o, outputs[i] + " differs between runs");
    }
    if (runs[0][1] != runs[0][2]) fail(o, "re-extracted features differ from synth features");
  }
  fs::remove_all(root);
  if (o.pass) o.detail = "synth --images -> features -> fit twice: 5 outputs byte-identical";
  return o;
}

Outcome period_classifier() {
  Outcome o;
  const int printed[8][2] = {{1881, 1901}, {1902, 1906}, {1907, 1915}, {1916, 1924},
                             {1925, 1936}, {1937, 1943}, {1944, 1953}, {1954, 1973}};
  for (int p = 0; p < 8; ++p) {
    if (corpus::kPicassoPeriods[p].first_year != printed[p][0] || corpus::kPicassoPeriods[p].last_year != printed[p][1]) {
      fail(o, "period " + std::to_string(p + 1) + " range differs");
    }
  }
  int years = 0;
  for (int y = 1881; y <= 1973; ++y) {
    int hits = 0;
    for (int p = 0; p < 8; ++p) hits += y >= printed[p][0] && y <= printed[p][1];
    const int got = corpus::picasso_period(y);
    if (hits != 1 || y < printed[got - 1][0] || y > printed[got - 1][1]) fail(o, "year " + std::to_string(y));
    ++years;
  }
  const int edges[][3] = {{1901, 1902, 1}, {1906, 1907, 2}, {1915, 1916, 3}, {1924, 1925, 4},
                          {1936, 1937, 5}, {1943, 1944, 6}, {1953, 1954, 7}};
  for (const auto& e : edges) {
    if (corpus::picasso_period(e[0]) != e[2] || corpus::picasso_period(e[1]) != e[2] + 1) {
      fail(o, "boundary " + std::to_string(e[0]) + "/" + std::to_string(e[1]));
    }
  }
  if (o.pass) o.detail = std::to_string(years) + " years, 7 boundaries";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 binary-variance identity", binary_variance_identity},
      {"2 hue correctness", hue_anchors},
      {"3 variance oracle equivalence", variance_oracle},
      {"4 feature bounds", feature_bounds},
      {"5 OLS exactness", ols_exactness},
      {"6 robust covariance", robust_covariance},
      {"7 planted benchmark simulation", planted_benchmark},
      {"8 interaction spec", planted_interaction},
      {"9 invariance suite", invariance},
      {"10 end-to-end determinism", end_to_end},
      {"11 period classifier", period_classifier},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
