#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosim {

/// Embedding of one target word in one context. Always non-empty and
/// finite; all arithmetic is carried out in double precision.
class WordVector {
 public:
  /// Throws DimensionError when empty, InvalidValueError on NaN/inf.
  explicit WordVector(std::vector<double> values);
  WordVector(std::initializer_list<double> values)
      : WordVector(std::vector<double>(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const WordVector&, const WordVector&) = default;

 private:
  std::vector<double> values_;
};

enum class Metric { cosine, euclidean };

/// Stable identifiers: "cosine", "euclidean".
std::string_view metric_name(Metric metric);
/// Throws UnknownMetricError.
Metric parse_metric(std::string_view name);
/// Comma-separated list, e.g. "euclidean,cosine". Rejects duplicates.
std::vector<Metric> parse_metric_list(std::string_view csv);

/// Σaᵢbᵢ / (‖a‖‖b‖). Throws DimensionError, DegenerateVectorError.
double cosine_similarity(const WordVector& a, const WordVector& b);

/// √Σ(aᵢ−bᵢ)². Throws DimensionError.
double euclidean_distance(const WordVector& a, const WordVector& b);

/// The metric's raw value (similarity for cosine, distance for euclidean).
double raw_metric(Metric metric, const WordVector& a, const WordVector& b);

/// Orients a raw metric value so that larger always means more similar:
/// identity for cosine, negation for euclidean.
double as_similarity(Metric metric, double raw);

/// Componentwise arithmetic mean. Throws EmptyPoolError, DimensionError.
WordVector mean_pool(std::span<const WordVector> vectors);

}  // namespace cosim
