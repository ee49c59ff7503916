#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "artfeat/cli/commands.hpp"
#include "artfeat/cli/config.hpp"
#include "artfeat/corpus/csv.hpp"
#include "artfeat/corpus/image_io.hpp"
#include "artfeat/corpus/synth.hpp"

using namespace artfeat;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("artfeat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

const std::string kSpecs = std::string(ARTFEAT_SOURCE_DIR) + "/config/specs/";

}  // namespace

TEST_F(CliTest, Version) {
  const auto r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0."), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"features", "--input", at("x")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"synth", "--out", at("s"), "--n", "abc"}).code, cli::kExitUsage);
}

TEST_F(CliTest, FeaturesSkipsUndecodable) {
  fs::create_directories(dir / "img");
  for (int i = 0; i < 3; ++i) {
    corpus::write_png(corpus::render_synthetic_image(9, i, 40), dir / "img" / ("p" + std::to_string(i) + ".png"));
  }
  std::ofstream(dir / "img" / "broken.png") << "garbage";
  const auto r = run({"features", "--input", at("img"), "--out", at("f.csv"), "--threads", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("broken.png"), std::string::npos);
  const auto t = corpus::read_csv(dir / "f.csv");
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0][0], "p0");

  const std::string first = slurp(dir / "f.csv");
  ASSERT_EQ(run({"features", "--input", at("img"), "--out", at("f.csv"), "--threads", "1"}).code, 0);
  EXPECT_EQ(slurp(dir / "f.csv"), first);
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST_F(CliTest, FeaturesNothingDecodable) {
  fs::create_directories(dir / "img");
  std::ofstream(dir / "img" / "a.png") << "garbage";
  const auto r = run({"features", "--input", at("img"), "--out", at("f.csv")});
  EXPECT_EQ(r.code, cli::kExitNoOutput);
  EXPECT_FALSE(fs::exists(dir / "f.csv"));
}

TEST_F(CliTest, FeaturesBadConfig) {
  fs::create_directories(dir / "img");
  corpus::write_png(corpus::render_synthetic_image(1, 0, 16), dir / "img" / "a.png");
  EXPECT_EQ(run({"features", "--input", at("img"), "--out", at("f.csv"), "--edge-threshold", "-1"}).code,
            cli::kExitConfig);
  EXPECT_EQ(run({"features", "--input", at("img"), "--out", at("f.csv"), "--hue-mode", "hsl"}).code,
            cli::kExitConfig);
}

TEST_F(CliTest, SynthAndFitRecoverPlant) {
  auto r = run({"synth", "--out", at("s"), "--n", "300", "--noise-sd", "0", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"records.csv", "features.csv", "plant.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / "s" / f)) << f;
  }
  std::ofstream(dir / "spec.json") << corpus::benchmark_plant().spec.to_json().dump();
  r = run({"fit", "--corpus", at("s/records.csv"), "--features", at("s/features.csv"), "--spec",
           at("spec.json"), "--out", at("fit.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(dir / "fit.tsv"));
  std::string line;
  std::getline(in, line);
  const auto plant = corpus::benchmark_plant();
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string spec, term, est;
    std::getline(cells, spec, '\t');
    std::getline(cells, term, '\t');
    std::getline(cells, est, '\t');
    const auto it = plant.coefficients.find(term);
    if (it == plant.coefficients.end()) continue;
    EXPECT_NEAR(std::stod(est), it->second, 1e-10 * std::max(1.0, std::fabs(it->second))) << term;
    ++checked;
  }
  EXPECT_EQ(checked, plant.coefficients.size());
}

TEST_F(CliTest, FitUnknownTermNamed) {
  ASSERT_EQ(run({"synth", "--out", at("s"), "--n", "100"}).code, 0);
  std::ofstream(dir / "spec.json") << R"({"terms": ["Lline", "Lbrightness"]})";
  const auto r = run({"fit", "--corpus", at("s/records.csv"), "--features", at("s/features.csv"),
                      "--spec", at("spec.json"), "--out", at("fit.md")});
  EXPECT_EQ(r.code, cli::kExitConfig);
  EXPECT_NE(r.err.find("Lbrightness"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "fit.md"));
}

TEST_F(CliTest, FitSuiteMarkdown) {
  ASSERT_EQ(run({"synth", "--out", at("s"), "--n", "400"}).code, 0);
  const auto r = run({"fit", "--corpus", at("s/records.csv"), "--features", at("s/features.csv"),
                      "--spec", kSpecs + "benchmark_suite.json", "--out", at("t.md"), "--title",
                      "Benchmark"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto md = slurp(dir / "t.md");
  EXPECT_NE(md.find("(6)"), std::string::npos);
  EXPECT_NE(md.find("Observations"), std::string::npos);
  EXPECT_NE(r.err.find("kept: 400"), std::string::npos);
}

TEST_F(CliTest, FitFeaturesAndImagesExclusive) {
  const auto r = run({"fit", "--corpus", "a", "--features", "b", "--images", "c", "--spec", "d",
                      "--out", at("x.md")});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST_F(CliTest, PeriodsColumns) {
  ASSERT_EQ(run({"synth", "--out", at("s"), "--n", "400"}).code, 0);
  const auto r = run({"periods", "--corpus", at("s/records.csv"), "--features", at("s/features.csv"),
                      "--out", at("p.md")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto md = slurp(dir / "p.md");
  for (int p = 1; p <= 8; ++p) EXPECT_NE(md.find("(" + std::to_string(p) + ")"), std::string::npos);
}

TEST_F(CliTest, SummarizeTsv) {
  ASSERT_EQ(run({"synth", "--out", at("s"), "--n", "100"}).code, 0);
  auto r = run({"summarize", "--corpus", at("s/records.csv"), "--features", at("s/features.csv"),
                "--out", at("sum.tsv"), "--variables", "Price,Age,City"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(dir / "sum.tsv");
  EXPECT_NE(text.find("Age\t\t100\t"), std::string::npos);
  r = run({"summarize", "--corpus", at("s/records.csv"), "--out", at("sum.md"), "--variables",
           "Price,Brightness"});
  EXPECT_EQ(r.code, cli::kExitConfig);
  EXPECT_NE(r.err.find("Brightness"), std::string::npos);
}

TEST_F(CliTest, ConfigOverride) {
  std::ofstream(dir / "cfg.json") << R"({"synth": {"n": 77}})";
  ASSERT_EQ(run({"--config", at("cfg.json"), "synth", "--out", at("s")}).code, 0);
  EXPECT_EQ(corpus::read_csv(dir / "s" / "records.csv").rows.size(), 77u);
  std::ofstream(dir / "bad.json") << R"({"synth": {"count": 77}})";
  EXPECT_EQ(run({"--config", at("bad.json"), "synth", "--out", at("s2")}).code, cli::kExitConfig);
}

TEST(Config, DefaultsMatchLibrary) {
  const auto cfg = cli::resolve_config();
  const features::ExtractionConfig lib;
  EXPECT_EQ(cfg.extraction.hash(), lib.hash());
  EXPECT_EQ(cfg.load.sale_year_window, corpus::LoadOptions{}.sale_year_window);
  EXPECT_EQ(cfg.synth.n, 720u);
  EXPECT_EQ(cfg.synth.noise_sd, 1.0);
  const auto off = cli::resolve_config(json::parse(R"({"extraction": {"resize_max_side": "off"}})"));
  EXPECT_FALSE(off.extraction.resize_max_side.has_value());
}

TEST_F(CliTest, ManifestRecordsOutputs) {
  ASSERT_EQ(run({"synth", "--out", at("s"), "--n", "60", "--seed", "11"}).code, 0);
  const auto m = json::parse(slurp(dir / "s" / "manifest.json"));
  ASSERT_TRUE(m.contains("outputs"));
  const auto& rec = m["outputs"]["records.csv"];
  EXPECT_EQ(rec["command"], "synth");
  EXPECT_EQ(rec["seed"], 11);
  EXPECT_TRUE(rec.contains("config"));
  EXPECT_TRUE(rec.contains("version"));
}
