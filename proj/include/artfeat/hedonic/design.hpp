#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "artfeat/corpus/record.hpp"
#include "artfeat/hedonic/model_spec.hpp"

namespace artfeat::hedonic {

// Regression-ready columns for a set of corpus records. Columns a spec
// does not need are left empty.
struct Observations {
  std::vector<std::string> ids;
  std::vector<double> response;     // Lprice or price, per the spec
  std::vector<double> lline;        // ln(1000 * line_variance)
  std::vector<double> lcolor;       // ln(1000 * color_variance)
  std::vector<double> surface_cm2;  // raw area; the spec applies its scale
  std::vector<double> age;
  std::vector<double> signature;
  std::vector<double> dated;
  std::map<DummyBlock, std::vector<std::string>> levels;

  std::size_t size() const noexcept { return ids.size(); }
};

struct TransformNeeds {
  Response response{Response::LogPrice};
  bool line{false};
  bool color{false};
  bool dated{false};

  static TransformNeeds of(const ModelSpec& spec);
};

// Indices of records that have features and satisfy the subsample filter.
std::vector<std::size_t> select_rows(const corpus::Corpus& corpus, const Subsample& filter);

/// Log transforms and derived attributes. Throws NonPositiveValue naming
/// the record and field for a non-positive log argument, and MissingValue
/// when a needed field is absent.
Observations transform_inputs(const corpus::Corpus& corpus, std::span<const std::size_t> rows,
                              const TransformNeeds& needs);

struct DesignMatrix {
  std::vector<std::string> names;                 // "Constant" first
  std::vector<std::optional<DummyBlock>> blocks;  // owning dummy block per column
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<std::string> row_ids;
  std::vector<std::string> notes;  // e.g. singleton dummy categories

  std::size_t n() const noexcept { return static_cast<std::size_t>(X.rows()); }
  std::size_t k() const noexcept { return static_cast<std::size_t>(X.cols()); }
};

/// Intercept, then terms in spec order, then one indicator per non-reference
/// level of each dummy block (levels sorted). Dummy columns are named
/// "<block>=<level>". Throws InvalidSpec for a reference level not present
/// in the data, InsufficientData when n <= k, and CollinearColumns when a
/// column is a linear combination of earlier ones.
DesignMatrix build_design(const ModelSpec& spec, const Observations& obs);

}  // namespace artfeat::hedonic
