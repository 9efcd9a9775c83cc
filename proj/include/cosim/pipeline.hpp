#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cosim/dataset.hpp"
#include "cosim/providers.hpp"
#include "cosim/vecmath.hpp"

namespace cosim {

/// Similarity of a pair in each context under one metric, and the change.
struct MetricChange {
  Metric metric = Metric::cosine;
  double sc1 = 0.0;
  double sc2 = 0.0;
  double change = 0.0;  // sc1 - sc2

  friend bool operator==(const MetricChange&, const MetricChange&) = default;
};

struct ChangeSet {
  std::string pair_id;
  std::vector<MetricChange> entries;  // in BlendConfig metric order
  double blended = 0.0;

  /// Throws UnknownMetricError if the metric was not scored.
  const MetricChange& entry(Metric metric) const;

  friend bool operator==(const ChangeSet&, const ChangeSet&) = default;
};

/// Metrics and simplex weights for the final blend C = Σ wᵢCᵢ.
class BlendConfig {
 public:
  static constexpr double kWeightSumTolerance = 1e-12;

  /// Throws ConfigError (empty, duplicate metrics, length mismatch) or
  /// InvalidWeightsError (negative, non-finite, or |Σw - 1| > 1e-12).
  BlendConfig(std::vector<Metric> metrics, std::vector<double> weights, bool standardize = true);

  /// Equal weights 1/n.
  static BlendConfig uniform(std::vector<Metric> metrics, bool standardize = true);

  const std::vector<Metric>& metrics() const noexcept { return metrics_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool standardize() const noexcept { return standardize_; }
  std::size_t size() const noexcept { return metrics_.size(); }

 private:
  std::vector<Metric> metrics_;
  std::vector<double> weights_;
  bool standardize_;
};

/// Convex combination Σ wᵢvᵢ, accumulated left to right. Zero weights are
/// skipped so a corner weight vector reproduces its column bit-exactly, and
/// the result is clamped to [min vᵢ, max vᵢ] to absorb rounding.
double convex_combination(std::span<const double> values, std::span<const double> weights);

/// The two pooled word vectors of a record in context 1 or 2.
std::pair<WordVector, WordVector> context_word_vectors(const PairRecord& record, int which,
                                                       const EmbeddingStore& store);

/// SC for one context: as_similarity(metric, metric(v₁, v₂)).
/// Throws MissingEmbeddingError and alignment errors.
double score_context(const PairRecord& record, int which, const EmbeddingStore& store, Metric metric);

/// Cᵢ = SC₁ − SC₂.
double change_for_metric(const PairRecord& record, const EmbeddingStore& store, Metric metric);

/// Throws ConfigError when the lengths differ.
double blend_changes(std::span<const double> changes, const BlendConfig& config);

struct ColumnStats {
  double mean = 0.0;
  double stddev = 0.0;  // population (divide by N)
};

/// Population z-scores. Throws StandardizationError on zero variance or an
/// empty column.
ColumnStats column_stats(std::span<const double> column);
std::vector<double> standardize_column(std::span<const double> column);

struct RecordFailure {
  std::string pair_id;
  std::string message;
};

struct PipelineResult {
  std::vector<ChangeSet> changes;
  std::vector<RecordFailure> failures;
  std::vector<ColumnStats> standardization;  // per metric, empty when raw
};

struct PipelineOptions {
  unsigned threads = 1;
};

/// Scores every record, standardizes per-metric change columns if the
/// config asks for it, and blends. Records that fail are reported and
/// excluded. Throws PipelineError if every record fails, StandardizationError
/// on a constant change column.
PipelineResult run_pipeline(std::span<const PairRecord> records, const EmbeddingStore& store,
                            const BlendConfig& config, const PipelineOptions& options = {});

/// Prediction TSV: id, sc1_<m>…, sc2_<m>…, change_<m>…, change_blend.
void write_predictions(std::ostream& out, std::span<const ChangeSet> changes, std::span<const Metric> metrics);

struct PredictionTable {
  std::vector<std::string> ids;
  std::vector<Metric> metrics;                  // metrics with a change_<m> column
  std::vector<std::vector<double>> changes;     // one column per metric
  std::vector<double> blend;                    // empty if no change_blend column
};

/// Reads the columns of a prediction file that evaluation and tuning need.
/// Throws FormatError, DuplicateIdError.
PredictionTable read_predictions(std::istream& in);

}  // namespace cosim
