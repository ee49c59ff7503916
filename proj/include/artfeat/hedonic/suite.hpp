#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artfeat/corpus/record.hpp"
#include "artfeat/error.hpp"
#include "artfeat/hedonic/model_spec.hpp"
#include "artfeat/hedonic/ols.hpp"

namespace artfeat::hedonic {

enum class OutcomeStatus { Fitted, Skipped, Failed };

struct SpecOutcome {
  std::string name;
  OutcomeStatus status{OutcomeStatus::Fitted};
  std::string message;  // reason for Skipped / Failed
  std::optional<ErrorCategory> error_category;
  std::vector<DummyBlock> controls;  // dummy blocks in the spec, for table rendering
  std::optional<FitResult> fit;
};

struct SuiteResult {
  std::vector<SpecOutcome> outcomes;

  std::size_t fitted() const;
};

/// Fits every spec on the records that have features and pass the spec's
/// subsample filter. Empty subsamples are Skipped; errors in one spec are
/// recorded as Failed and do not stop the others.
SuiteResult run_specification_suite(const corpus::Corpus& corpus,
                                    const std::vector<ModelSpec>& specs);

/// Lline + Lcolor only, restricted to Picasso.
ModelSpec period_base_spec();

/// One copy of `base` per Picasso period 1..8, named "(1)".."(8)".
std::vector<ModelSpec> period_suite(const ModelSpec& base);

// Paper-style table: one column per spec, "coef*** (se)" cells, dummy
// blocks collapsed to "control", then Observations / R-squared / Adj.
std::string render_markdown(const SuiteResult& suite, const std::string& title = {});

// Long format, one row per (spec, column) with full-precision numbers.
std::string render_tsv(const SuiteResult& suite);

}  // namespace artfeat::hedonic
