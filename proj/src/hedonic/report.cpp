#include <algorithm>
#include <sstream>

#include "artfeat/format.hpp"
#include "artfeat/hedonic/suite.hpp"

namespace artfeat::hedonic {

namespace {

std::string block_label(DummyBlock b) {
  std::string s(to_string(b));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string status_text(const SpecOutcome& o) {
  return o.status == OutcomeStatus::Skipped ? "skipped" : "failed";
}

bool is_effort_term(const std::string& name) {
  std::size_t start = 0;
  while (start <= name.size()) {
    const auto star = name.find('*', start);
    const std::string part = name.substr(start, star == std::string::npos ? star : star - start);
    if (part.rfind("Lline", 0) != 0 && part.rfind("Lcolor", 0) != 0) return false;
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return true;
}

// Pipe table with every column padded to its widest cell.
void emit_aligned(std::ostringstream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 3);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    os << '|';
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string& cell = c < r.size() ? r[c] : std::string();
      os << ' ' << cell << std::string(width[c] - cell.size(), ' ') << " |";
    }
    os << '\n';
  };
  line(rows.front());
  os << '|';
  for (std::size_t w : width) os << ' ' << std::string(w, '-') << " |";
  os << '\n';
  for (std::size_t i = 1; i < rows.size(); ++i) line(rows[i]);
}

}  // namespace

std::string render_markdown(const SuiteResult& suite, const std::string& title) {
  std::ostringstream os;
  if (!title.empty()) os << "### " << title << "\n\n";

  // Row order: effort terms, then the remaining non-dummy columns, each by
  // first appearance; controls; Constant.
  std::vector<std::string> terms;
  std::vector<DummyBlock> controls;
  for (const auto& o : suite.outcomes) {
    for (DummyBlock b : o.controls) {
      if (std::find(controls.begin(), controls.end(), b) == controls.end()) controls.push_back(b);
    }
    if (!o.fit) continue;
    for (std::size_t j = 0; j < o.fit->names.size(); ++j) {
      const auto& name = o.fit->names[j];
      if (o.fit->blocks[j] || name == "Constant") continue;
      if (std::find(terms.begin(), terms.end(), name) == terms.end()) terms.push_back(name);
    }
  }
  std::stable_partition(terms.begin(), terms.end(), is_effort_term);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"VARIABLES"};
  for (const auto& o : suite.outcomes) header.push_back(o.name);
  rows.push_back(std::move(header));

  auto term_row = [&](const std::string& term) {
    std::vector<std::string> cells{term};
    for (const auto& o : suite.outcomes) {
      std::string cell;
      if (o.fit) {
        if (const auto j = o.fit->index_of(term)) {
          const auto idx = static_cast<Eigen::Index>(*j);
          cell = format_sig(o.fit->coefficients(idx)) +
                 std::string(significance_stars(o.fit->p_values(idx))) + " (" +
                 format_sig(o.fit->robust_se(idx)) + ")";
        }
      }
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  };
  for (const auto& term : terms) term_row(term);
  for (DummyBlock b : controls) {
    std::vector<std::string> cells{block_label(b)};
    for (const auto& o : suite.outcomes) {
      const bool has = std::find(o.controls.begin(), o.controls.end(), b) != o.controls.end();
      cells.push_back(has ? "control" : "");
    }
    rows.push_back(std::move(cells));
  }
  term_row("Constant");

  auto stat_row = [&](const std::string& label, auto&& value) {
    std::vector<std::string> cells{label};
    for (const auto& o : suite.outcomes) cells.push_back(o.fit ? value(*o.fit) : status_text(o));
    rows.push_back(std::move(cells));
  };
  stat_row("Observations", [](const FitResult& f) { return std::to_string(f.n); });
  stat_row("R-squared", [](const FitResult& f) { return format_sig(f.r_squared, 3); });
  stat_row("Adj. R-squared", [](const FitResult& f) { return format_sig(f.adj_r_squared, 3); });
  emit_aligned(os, rows);

  RobustKind kind = RobustKind::HC1;
  for (const auto& o : suite.outcomes) {
    if (o.fit) kind = o.fit->robust_kind;
  }
  os << "\nRobust (" << to_string(kind)
     << ") standard errors in parentheses. *** p<0.01, ** p<0.05, * p<0.1\n";

  bool header_written = false;
  for (const auto& o : suite.outcomes) {
    std::vector<std::string> lines;
    if (!o.fit) {
      lines.push_back(status_text(o) + ": " + o.message);
    } else {
      lines.push_back("condition number " + format_sig(o.fit->condition_number, 3));
      for (const auto& n : o.fit->notes) lines.push_back("note: " + n);
    }
    for (const auto& l : lines) {
      if (!header_written) {
        os << '\n';
        header_written = true;
      }
      os << "- " << o.name << ": " << l << '\n';
    }
  }
  return os.str();
}

std::string render_tsv(const SuiteResult& suite) {
  std::ostringstream os;
  os << "spec\tterm\testimate\trobust_se\tt_stat\tp_value\tstars\n";
  for (const auto& o : suite.outcomes) {
    if (!o.fit) {
      os << o.name << "\tStatus\t" << status_text(o) << ": " << o.message << "\t\t\t\t\n";
      continue;
    }
    const FitResult& f = *o.fit;
    for (std::size_t j = 0; j < f.names.size(); ++j) {
      const auto idx = static_cast<Eigen::Index>(j);
      os << o.name << '\t' << f.names[j] << '\t' << format_full(f.coefficients(idx)) << '\t'
         << format_full(f.robust_se(idx)) << '\t' << format_full(f.t_stats(idx)) << '\t'
         << format_full(f.p_values(idx)) << '\t' << significance_stars(f.p_values(idx)) << '\n';
    }
    os << o.name << "\tObservations\t" << f.n << "\t\t\t\t\n";
    os << o.name << "\tR-squared\t" << format_full(f.r_squared) << "\t\t\t\t\n";
    os << o.name << "\tAdj R-squared\t" << format_full(f.adj_r_squared) << "\t\t\t\t\n";
    os << o.name << "\tCondition number\t" << format_full(f.condition_number) << "\t\t\t\t\n";
    os << o.name << "\tRobust kind\t" << to_string(f.robust_kind) << "\t\t\t\t\n";
  }
  return os.str();
}

}  // namespace artfeat::hedonic
