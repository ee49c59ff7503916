#include "artfeat/corpus/summary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "artfeat/error.hpp"
#include "artfeat/format.hpp"

namespace artfeat::corpus {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double compensated_sum(std::span<const double> values, double shift) {
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    const double x = v - shift;
    const double t = sum + x;
    c += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

std::string display_name(const std::string& key) {
  static const std::map<std::string, std::string> names{
      {"price", "Price"},         {"line", "Line"},
      {"color", "Color"},         {"lprice", "Lprice"},
      {"lline", "Lline"},         {"lcolor", "Lcolor"},
      {"age", "Age"},             {"salesyear", "Salesyear"},
      {"surface", "Surface"},     {"signature", "Signature"},
      {"dated", "Dated"},         {"material", "Material"},
      {"city", "City"},           {"salesroom", "Salesroom"},
      {"painter", "Painter"}};
  const auto it = names.find(key);
  return it == names.end() ? key : it->second;
}

std::string row_label(const SummaryRow& row, double surface_scale) {
  if (!row.level.empty()) return row.level;
  if (row.variable == "Price") return "Price($)";
  if (row.variable == "Surface") return "Surface(" + format_sig(surface_scale, 6) + "cm2)";
  return row.variable;
}

}  // namespace

Stats describe(std::span<const double> values) {
  Stats s;
  s.n = values.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (values.empty()) {
    s.mean = s.sd = s.min = s.max = nan;
    return s;
  }
  const auto n = static_cast<double>(values.size());
  s.mean = compensated_sum(values, 0.0) / n;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  if (values.size() < 2) {
    s.sd = nan;
    return s;
  }
  double ss = 0.0, c = 0.0;
  for (double v : values) {
    const double d = (v - s.mean) * (v - s.mean);
    const double t = ss + d;
    c += ss >= d ? (ss - t) + d : (d - t) + ss;
    ss = t;
  }
  s.sd = std::sqrt((ss + c) / (n - 1.0));
  return s;
}

std::vector<std::string> default_summary_variables() {
  return {"Price",     "Line",   "Color", "Age",      "Salesyear", "Surface",
          "Signature", "Dated",  "Material", "City",  "Salesroom"};
}

SummaryTable summary_statistics(const Corpus& corpus, const std::vector<std::string>& variables,
                                double surface_scale) {
  if (!(surface_scale > 0.0)) throw DomainError("surface scale must be positive");
  SummaryTable table;
  table.surface_scale = surface_scale;

  static const std::set<std::string> kBlocks{"material", "city", "salesroom", "painter"};
  static const std::set<std::string> kScalars{"price", "lprice", "line",      "color",
                                              "lline", "lcolor", "age",       "salesyear",
                                              "surface", "signature", "dated"};
  for (const auto& raw : variables) {
    const std::string key = lower(raw);
    const std::string name = display_name(key);
    if (kScalars.contains(key)) {
      std::vector<double> values;
      for (const auto& r : corpus.records) {
        const auto* fv = corpus.features_for(r.id);
        if (key == "price") values.push_back(r.price_usd);
        else if (key == "lprice") values.push_back(std::log(r.price_usd));
        else if (key == "age") values.push_back(r.age());
        else if (key == "salesyear") values.push_back(r.sale_year);
        else if (key == "surface") values.push_back(r.surface_cm2 / surface_scale);
        else if (key == "signature") values.push_back(r.signature ? 1.0 : 0.0);
        else if (key == "dated") { if (r.dated) values.push_back(*r.dated ? 1.0 : 0.0); }
        else if (!fv) continue;
        else if (key == "line") values.push_back(fv->line_variance);
        else if (key == "color") values.push_back(fv->color_variance);
        else if (key == "lline") values.push_back(std::log(1000.0 * fv->line_variance));
        else if (key == "lcolor") values.push_back(std::log(1000.0 * fv->color_variance));
      }
      table.rows.push_back({name, {}, describe(values)});
      continue;
    }
    if (!kBlocks.contains(key)) throw UnknownVariable(raw);

    std::vector<std::string> levels;
    for (const auto& r : corpus.records) {
      if (key == "material") levels.push_back(r.material);
      else if (key == "city") levels.push_back(r.city);
      else if (key == "salesroom") levels.push_back(r.salesroom);
      else levels.push_back(r.painter.key());
    }
    SummaryRow heading{name, {}, describe({})};
    heading.heading = true;
    table.rows.push_back(std::move(heading));
    const std::set<std::string> distinct(levels.begin(), levels.end());
    for (const auto& level : distinct) {
      std::vector<double> indicator(levels.size());
      std::transform(levels.begin(), levels.end(), indicator.begin(),
                     [&](const std::string& l) { return l == level ? 1.0 : 0.0; });
      table.rows.push_back({name, level, describe(indicator)});
    }
  }
  return table;
}

std::string render_summary_markdown(const SummaryTable& table) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"VARIABLES", "N", "Mean", "Sd", "Min", "Max"});
  for (const auto& row : table.rows) {
    if (row.heading) {
      cells.push_back({row.variable, "", "", "", "", ""});
      continue;
    }
    const auto& s = row.stats;
    cells.push_back({row_label(row, table.surface_scale), std::to_string(s.n), format_sig(s.mean),
                     format_sig(s.sd), format_sig(s.min), format_sig(s.max)});
  }
  std::vector<std::size_t> width(6, 0);
  for (const auto& r : cells)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& r) {
    os << '|';
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << ' ' << r[c] << std::string(width[c] - r[c].size(), ' ') << " |";
    }
    os << '\n';
  };
  emit(cells.front());
  os << '|';
  for (std::size_t c = 0; c < width.size(); ++c) {
    os << (c == 0 ? ":" : "") << std::string(width[c] + 1, '-') << (c == 0 ? "" : ":") << '|';
  }
  os << '\n';
  for (std::size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
  return os.str();
}

std::string render_summary_tsv(const SummaryTable& table) {
  std::ostringstream os;
  os << "variable\tlevel\tn\tmean\tsd\tmin\tmax\n";
  for (const auto& row : table.rows) {
    if (row.heading) continue;
    const auto& s = row.stats;
    os << row.variable << '\t' << row.level << '\t' << s.n << '\t' << format_full(s.mean) << '\t'
       << format_full(s.sd) << '\t' << format_full(s.min) << '\t' << format_full(s.max) << '\n';
  }
  return os.str();
}

}  // namespace artfeat::corpus
