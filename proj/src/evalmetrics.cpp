#include "cosim/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "cosim/errors.hpp"
#include "cosim/text.hpp"

namespace cosim {

std::string_view correlation_name(Correlation kind) {
  switch (kind) {
    case Correlation::pearson: return "pearson";
    case Correlation::uncentered: return "uncentered";
    case Correlation::spearman: return "spearman";
  }
  return "?";
}

Correlation parse_correlation(std::string_view name) {
  if (name == "pearson") return Correlation::pearson;
  if (name == "uncentered") return Correlation::uncentered;
  if (name == "spearman") return Correlation::spearman;
  throw ConfigError("unknown correlation '" + std::string(name) + "' (expected pearson|uncentered|spearman)");
}

namespace {

void require_lengths(std::span<const double> x, std::span<const double> y, std::size_t min) {
  if (x.size() != y.size()) {
    throw DimensionError("length mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.size() < min) {
    throw DimensionError("need at least " + std::to_string(min) + " paired scores, got " +
                         std::to_string(x.size()));
  }
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a;
  return s / static_cast<double>(v.size());
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  require_lengths(x, y, 2);
  if (is_constant(x) || is_constant(y)) throw ZeroVarianceError("correlation of a constant series");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVarianceError("correlation of a constant series");
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

double uncentered_pearson(std::span<const double> x, std::span<const double> y) {
  require_lengths(x, y, 1);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateVectorError("uncentered correlation of a zero vector");
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  require_lengths(x, y, 2);
  if (is_constant(x) || is_constant(y)) throw ZeroVarianceError("rank correlation of a constant series");
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  return pearson(rx, ry);
}

double correlate(Correlation kind, std::span<const double> x, std::span<const double> y) {
  switch (kind) {
    case Correlation::pearson: return pearson(x, y);
    case Correlation::uncentered: return uncentered_pearson(x, y);
    case Correlation::spearman: return spearman(x, y);
  }
  throw ConfigError("unknown correlation kind");
}

JoinResult join_on_id(std::span<const std::string> prediction_ids, std::span<const GoldRecord> gold) {
  std::unordered_map<std::string_view, std::size_t> gold_index;
  for (std::size_t i = 0; i < gold.size(); ++i) gold_index.emplace(gold[i].id, i);

  JoinResult out;
  std::vector<bool> used(gold.size(), false);
  for (std::size_t r = 0; r < prediction_ids.size(); ++r) {
    const auto it = gold_index.find(prediction_ids[r]);
    if (it == gold_index.end()) {
      out.predictions_without_gold.push_back(prediction_ids[r]);
      continue;
    }
    used[it->second] = true;
    out.pairing.ids.push_back(prediction_ids[r]);
    out.pairing.prediction_rows.push_back(r);
    out.pairing.gold.push_back(gold[it->second].change);
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!used[i]) out.gold_without_prediction.push_back(gold[i].id);
  }
  return out;
}

std::vector<ResultRow> results_table(std::span<const LanguageScores> inputs, Correlation kind) {
  std::vector<ResultRow> rows;
  rows.reserve(inputs.size());
  for (const auto& in : inputs) {
    if (in.metric_labels.size() != in.metric_changes.size()) {
      throw DimensionError("metric labels and columns differ in count for " + in.language);
    }
    ResultRow row{in.language, in.model_label, in.metric_labels, {}, 0.0};
    for (const auto& col : in.metric_changes) row.metric_scores.push_back(correlate(kind, col, in.gold));
    row.blend = correlate(kind, in.blend, in.gold);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::vector<std::vector<std::string>> render_cells(std::span<const ResultRow> rows, int decimals) {
  const auto fmt = [&](double v) { return decimals < 0 ? text::format_real(v) : text::format_fixed(v, decimals); };
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"language", "model"};
  if (!rows.empty()) {
    for (const auto& label : rows.front().metric_labels) header.push_back(label);
  }
  header.push_back("blend");
  cells.push_back(std::move(header));
  for (const auto& r : rows) {
    std::vector<std::string> line = {r.language, r.model_label};
    for (double s : r.metric_scores) line.push_back(fmt(s));
    line.push_back(fmt(r.blend));
    cells.push_back(std::move(line));
  }
  return cells;
}

}  // namespace

void write_results_tsv(std::ostream& out, std::span<const ResultRow> rows, int decimals) {
  for (const auto& line : render_cells(rows, decimals)) {
    for (std::size_t c = 0; c < line.size(); ++c) out << (c ? "\t" : "") << line[c];
    out << '\n';
  }
}

void write_results_text(std::ostream& out, std::span<const ResultRow> rows, int decimals) {
  const auto cells = render_cells(rows, decimals);
  std::vector<std::size_t> width;
  for (const auto& line : cells) {
    if (width.size() < line.size()) width.resize(line.size(), 0);
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], text::scalar_length(line[c]));
  }
  for (const auto& line : cells) {
    std::string rendered;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) rendered += "  ";
      rendered += line[c];
      if (c + 1 < line.size()) rendered.append(width[c] - text::scalar_length(line[c]), ' ');
    }
    out << rendered << '\n';
  }
}

}  // namespace cosim
