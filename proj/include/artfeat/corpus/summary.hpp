#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "artfeat/corpus/record.hpp"

namespace artfeat::corpus {

struct Stats {
  std::size_t n{0};
  double mean{0.0};
  double sd{0.0};  // sample sd (N - 1); NaN when n < 2
  double min{0.0};
  double max{0.0};
};

// NaN fields for an empty input.
Stats describe(std::span<const double> values);

struct SummaryRow {
  std::string variable;
  std::string level;  // category for dummy blocks, empty otherwise
  Stats stats;
  bool heading{false};  // block title row, no statistics
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  double surface_scale{1000.0};
};

// Price, Line, Color, Age, Salesyear, Surface, Signature, Dated, Material,
// City, Salesroom.
std::vector<std::string> default_summary_variables();

/// Variables (case-insensitive): Price, Line, Color, Lprice, Lline, Lcolor,
/// Age, Salesyear, Surface, Signature, Dated, and the blocks Material, City,
/// Salesroom, Painter, which expand to one 0/1 share row per category.
/// Line/Color rows use records with features; Dated uses records that carry
/// it. Throws UnknownVariable.
SummaryTable summary_statistics(const Corpus& corpus, const std::vector<std::string>& variables,
                                double surface_scale = 1000.0);

std::string render_summary_markdown(const SummaryTable& table);
std::string render_summary_tsv(const SummaryTable& table);

}  // namespace artfeat::corpus
