#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosim/dataset.hpp"

namespace cosim {

enum class Correlation { pearson, uncentered, spearman };

std::string_view correlation_name(Correlation kind);
/// "pearson", "uncentered", "spearman". Throws ConfigError.
Correlation parse_correlation(std::string_view name);

/// Centered Pearson coefficient. Needs m >= 2 and non-constant inputs.
/// Throws DimensionError, ZeroVarianceError.
double pearson(std::span<const double> x, std::span<const double> y);

/// Σxᵢyᵢ / (‖x‖‖y‖). Throws DimensionError, DegenerateVectorError.
double uncentered_pearson(std::span<const double> x, std::span<const double> y);

/// 1-based fractional ranks; tied values share the mean of their ranks.
std::vector<double> mid_ranks(std::span<const double> values);

/// Pearson of mid-ranks.
double spearman(std::span<const double> x, std::span<const double> y);

double correlate(Correlation kind, std::span<const double> x, std::span<const double> y);

/// Predictions joined to gold by id, in prediction order.
struct ScorePairing {
  std::vector<std::string> ids;
  std::vector<std::size_t> prediction_rows;  // index into the prediction arrays
  std::vector<double> gold;
};

struct JoinResult {
  ScorePairing pairing;
  std::vector<std::string> predictions_without_gold;
  std::vector<std::string> gold_without_prediction;

  bool complete() const noexcept {
    return predictions_without_gold.empty() && gold_without_prediction.empty();
  }
};

JoinResult join_on_id(std::span<const std::string> prediction_ids, std::span<const GoldRecord> gold);

/// Inputs for one results-table row.
struct LanguageScores {
  std::string language;
  std::string model_label;
  std::vector<std::string> metric_labels;
  std::vector<std::vector<double>> metric_changes;  // aligned with gold
  std::vector<double> blend;
  std::vector<double> gold;
};

struct ResultRow {
  std::string language;
  std::string model_label;
  std::vector<std::string> metric_labels;
  std::vector<double> metric_scores;
  double blend = 0.0;
};

/// One row per language, per-metric columns in the given order followed by
/// the blend. Correlation errors propagate.
std::vector<ResultRow> results_table(std::span<const LanguageScores> inputs, Correlation kind);

/// TSV with header `language model <metric>... blend`. `decimals` < 0 prints
/// full precision.
void write_results_tsv(std::ostream& out, std::span<const ResultRow> rows, int decimals = 3);
/// Column-aligned plain text rendering of the same table.
void write_results_text(std::ostream& out, std::span<const ResultRow> rows, int decimals = 3);

}  // namespace cosim
