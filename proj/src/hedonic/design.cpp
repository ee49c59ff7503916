#include "artfeat/hedonic/design.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "artfeat/corpus/periods.hpp"
#include "artfeat/error.hpp"
#include "artfeat/hedonic/ols.hpp"

namespace artfeat::hedonic {

namespace {

constexpr DummyBlock kAllBlocks[] = {DummyBlock::Material, DummyBlock::City,
                                     DummyBlock::Salesroom, DummyBlock::Salesyear,
                                     DummyBlock::Painter};

std::string level_of(const corpus::AuctionRecord& r, DummyBlock block) {
  switch (block) {
    case DummyBlock::Material: return r.material;
    case DummyBlock::City: return r.city;
    case DummyBlock::Salesroom: return r.salesroom;
    case DummyBlock::Salesyear: return std::to_string(r.sale_year);
    case DummyBlock::Painter: return r.painter.key();
  }
  return {};
}

double log_of(double value, const std::string& id, const char* field) {
  if (!(value > 0.0)) throw NonPositiveValue(id, field, value);
  return std::log(value);
}

const std::vector<double>& variable_column(const Observations& obs, Variable v,
                                           const std::vector<double>& surface) {
  switch (v) {
    case Variable::Lline: return obs.lline;
    case Variable::Lcolor: return obs.lcolor;
    case Variable::Surface: return surface;
    case Variable::Age: return obs.age;
    case Variable::Signature: return obs.signature;
    case Variable::Dated: return obs.dated;
  }
  return obs.age;
}

}  // namespace

TransformNeeds TransformNeeds::of(const ModelSpec& spec) {
  TransformNeeds needs;
  needs.response = spec.response;
  needs.line = spec.uses(Variable::Lline);
  needs.color = spec.uses(Variable::Lcolor);
  needs.dated = spec.uses(Variable::Dated);
  return needs;
}

std::vector<std::size_t> select_rows(const corpus::Corpus& corpus, const Subsample& filter) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& r = corpus.records[i];
    if (!corpus.features_for(r.id)) continue;
    if (!filter.painters.empty() &&
        std::find(filter.painters.begin(), filter.painters.end(), r.painter.key()) ==
            filter.painters.end()) {
      continue;
    }
    if (!filter.periods.empty()) {
      const auto& first = corpus::kPicassoPeriods.front();
      const auto& last = corpus::kPicassoPeriods.back();
      if (r.creation_year < first.first_year || r.creation_year > last.last_year) continue;
      const int period = corpus::picasso_period(r.creation_year);
      if (std::find(filter.periods.begin(), filter.periods.end(), period) == filter.periods.end()) {
        continue;
      }
    }
    rows.push_back(i);
  }
  return rows;
}

Observations transform_inputs(const corpus::Corpus& corpus, std::span<const std::size_t> rows,
                              const TransformNeeds& needs) {
  Observations obs;
  const std::size_t n = rows.size();
  obs.ids.reserve(n);
  obs.response.reserve(n);
  for (DummyBlock b : kAllBlocks) obs.levels[b].reserve(n);

  for (std::size_t row : rows) {
    const auto& r = corpus.records.at(row);
    obs.ids.push_back(r.id);
    obs.response.push_back(needs.response == Response::LogPrice
                               ? log_of(r.price_usd, r.id, "price_usd")
                               : r.price_usd);
    if (needs.line || needs.color) {
      const auto* fv = corpus.features_for(r.id);
      if (!fv) throw MissingValue(r.id, "features");
      if (needs.line) obs.lline.push_back(log_of(1000.0 * fv->line_variance, r.id, "line_variance"));
      if (needs.color) {
        obs.lcolor.push_back(log_of(1000.0 * fv->color_variance, r.id, "color_variance"));
      }
    }
    obs.surface_cm2.push_back(r.surface_cm2);
    obs.age.push_back(static_cast<double>(r.age()));
    obs.signature.push_back(r.signature ? 1.0 : 0.0);
    if (needs.dated) {
      if (!r.dated) throw MissingValue(r.id, "dated");
      obs.dated.push_back(*r.dated ? 1.0 : 0.0);
    }
    for (DummyBlock b : kAllBlocks) obs.levels[b].push_back(level_of(r, b));
  }
  return obs;
}

DesignMatrix build_design(const ModelSpec& spec, const Observations& obs) {
  spec.validate();
  const std::size_t n = obs.size();

  std::vector<double> surface(obs.surface_cm2.size());
  std::transform(obs.surface_cm2.begin(), obs.surface_cm2.end(), surface.begin(),
                 [&](double s) { return s / spec.surface_scale; });

  std::vector<std::string> names{"Constant"};
  std::vector<std::optional<DummyBlock>> blocks{std::nullopt};
  std::vector<std::vector<double>> columns{std::vector<double>(n, 1.0)};
  std::vector<std::string> notes;

  for (const Term& term : spec.terms) {
    std::vector<double> col(n, 1.0);
    for (Variable v : term.factors()) {
      const auto& src = variable_column(obs, v, surface);
      if (src.size() != n) {
        throw InvalidSpec("term '" + term.name() + "' needs '" + std::string(to_string(v)) +
                          "', which was not prepared");
      }
      for (std::size_t i = 0; i < n; ++i) col[i] *= src[i];
    }
    names.push_back(term.name());
    blocks.push_back(std::nullopt);
    columns.push_back(std::move(col));
  }

  for (const DummySpec& d : spec.dummies) {
    const std::string block_name(to_string(d.block));
    const auto it = obs.levels.find(d.block);
    if (it == obs.levels.end() || it->second.size() != n) {
      throw InvalidSpec("dummy block '" + block_name + "' has no data");
    }
    std::vector<std::string> level(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& raw = it->second[i];
      const bool kept =
          d.keep.empty() || std::find(d.keep.begin(), d.keep.end(), raw) != d.keep.end();
      level[i] = kept ? raw : "others";
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& l : level) ++counts[l];
    if (counts.empty()) continue;

    const std::string reference = d.reference.value_or(counts.begin()->first);
    if (!counts.contains(reference)) {
      throw InvalidSpec("reference category '" + reference + "' of dummy block '" + block_name +
                        "' is not present in the data");
    }
    for (const auto& [name, count] : counts) {
      if (count == 1) {
        notes.push_back(block_name + "=" + name + " has a single observation");
      }
      if (name == reference) continue;
      std::vector<double> col(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) col[i] = level[i] == name ? 1.0 : 0.0;
      names.push_back(block_name + "=" + name);
      blocks.push_back(d.block);
      columns.push_back(std::move(col));
    }
  }

  const std::size_t k = columns.size();
  if (n <= k) throw InsufficientData(n, k);

  DesignMatrix dm;
  dm.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      dm.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }
  dm.y = Eigen::Map<const Eigen::VectorXd>(obs.response.data(),
                                           static_cast<Eigen::Index>(obs.response.size()));
  if (static_cast<std::size_t>(dm.y.size()) != n) {
    throw InvalidSpec("response column has the wrong length");
  }

  const auto dependent = dependent_columns(dm.X);
  if (!dependent.empty()) {
    std::vector<std::string> bad;
    for (std::size_t j : dependent) bad.push_back(names[j]);
    throw CollinearColumns(std::move(bad));
  }

  dm.names = std::move(names);
  dm.blocks = std::move(blocks);
  dm.row_ids = obs.ids;
  dm.notes = std::move(notes);
  return dm;
}

}  // namespace artfeat::hedonic
