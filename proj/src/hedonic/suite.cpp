#include "artfeat/hedonic/suite.hpp"

#include <algorithm>

#include "artfeat/hedonic/design.hpp"

namespace artfeat::hedonic {

std::size_t SuiteResult::fitted() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(),
                    [](const SpecOutcome& o) { return o.status == OutcomeStatus::Fitted; }));
}

SuiteResult run_specification_suite(const corpus::Corpus& corpus,
                                    const std::vector<ModelSpec>& specs) {
  SuiteResult suite;
  for (const ModelSpec& spec : specs) {
    SpecOutcome out;
    out.name = spec.name;
    for (const auto& d : spec.dummies) out.controls.push_back(d.block);
    try {
      spec.validate();
      const auto rows = select_rows(corpus, spec.subsample);
      if (rows.empty()) {
        out.status = OutcomeStatus::Skipped;
        out.message = "empty subsample";
      } else {
        const Observations obs = transform_inputs(corpus, rows, TransformNeeds::of(spec));
        const DesignMatrix design = build_design(spec, obs);
        out.fit = ols_fit(design, spec.robust);
      }
    } catch (const Error& e) {
      out.status = OutcomeStatus::Failed;
      out.message = e.what();
      out.error_category = e.category();
    }
    suite.outcomes.push_back(std::move(out));
  }
  return suite;
}

ModelSpec period_base_spec() {
  ModelSpec spec;
  spec.terms = {Term::parse("Lline"), Term::parse("Lcolor")};
  spec.subsample.painters = {"picasso"};
  return spec;
}

std::vector<ModelSpec> period_suite(const ModelSpec& base) {
  std::vector<ModelSpec> out;
  for (int p = 1; p <= 8; ++p) {
    ModelSpec s = base;
    s.name = "(" + std::to_string(p) + ")";
    s.subsample.periods = {p};
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace artfeat::hedonic
