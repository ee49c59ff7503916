#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace artfeat::hedonic {

// Continuous regressors available to a term. Lline/Lcolor are the log of
// 1000x the feature variances; Surface is area divided by the spec's
// surface_scale; Signature/Dated are 0/1.
enum class Variable { Lline, Lcolor, Surface, Age, Signature, Dated };

enum class DummyBlock { Material, City, Salesroom, Salesyear, Painter };

enum class RobustKind { HC0, HC1 };

enum class Response { LogPrice, Price };

std::string_view to_string(Variable v);
std::string_view to_string(DummyBlock b);
std::string_view to_string(RobustKind k);
std::string_view to_string(Response r);
DummyBlock parse_dummy_block(std::string_view text);
RobustKind parse_robust_kind(std::string_view text);

// A regressor column: the product of one or more variables. "Lline^2" is
// {Lline, Lline}; "Lcolor*Surface" is {Lcolor, Surface}.
class Term {
 public:
  explicit Term(std::vector<Variable> factors);
  // Accepts e.g. "Lline", "Surface^2", "Lline*Lcolor", "Lline^2*Surface".
  static Term parse(std::string_view text);

  const std::vector<Variable>& factors() const noexcept { return factors_; }
  std::string name() const;
  // Order-insensitive identity: Lline*Lcolor and Lcolor*Lline are the same term.
  std::vector<Variable> key() const;
  bool uses(Variable v) const;

 private:
  std::vector<Variable> factors_;
};

struct DummySpec {
  DummyBlock block{DummyBlock::Material};
  // Level left out of the encoding; defaults to the first level in sorted order.
  std::optional<std::string> reference;
  // When non-empty, levels outside this list are folded into "others".
  std::vector<std::string> keep;
};

struct Subsample {
  std::vector<std::string> painters;  // canonical painter keys; empty = all
  std::vector<int> periods;           // Picasso periods 1..8; empty = all
  bool empty() const noexcept { return painters.empty() && periods.empty(); }
};

struct ModelSpec {
  std::string name;
  Response response{Response::LogPrice};
  std::vector<Term> terms;
  std::vector<DummySpec> dummies;
  RobustKind robust{RobustKind::HC1};
  double surface_scale{1000.0};
  Subsample subsample;

  // Throws InvalidSpec on duplicate terms/blocks or bad parameters.
  void validate() const;
  bool uses(Variable v) const;
  bool has_block(DummyBlock b) const;

  static ModelSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// A suite document is either {"specs": [...]}, a bare array of specs, or a
// single spec object. Unnamed specs are numbered "(1)", "(2)", ...
std::vector<ModelSpec> parse_suite(const nlohmann::json& j);
std::vector<ModelSpec> load_suite(const std::filesystem::path& path);

}  // namespace artfeat::hedonic
