#include "cosim/vecmath.hpp"

#include <cmath>

#include "cosim/errors.hpp"
#include "cosim/text.hpp"

namespace cosim {

namespace {

void require_same_dim(const WordVector& a, const WordVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

}  // namespace

WordVector::WordVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("word vector must have dim >= 1");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidValueError("word vector has a non-finite component");
  }
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::cosine: return "cosine";
    case Metric::euclidean: return "euclidean";
  }
  throw UnknownMetricError("unknown metric id " + std::to_string(static_cast<int>(metric)));
}

Metric parse_metric(std::string_view name) {
  if (name == "cosine") return Metric::cosine;
  if (name == "euclidean") return Metric::euclidean;
  throw UnknownMetricError("unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> parse_metric_list(std::string_view csv) {
  std::vector<Metric> metrics;
  for (auto field : text::split(csv, ',')) {
    const Metric m = parse_metric(text::trim(field));
    for (Metric seen : metrics) {
      if (seen == m) throw ConfigError("metric '" + std::string(metric_name(m)) + "' listed twice");
    }
    metrics.push_back(m);
  }
  return metrics;
}

double cosine_similarity(const WordVector& a, const WordVector& b) {
  require_same_dim(a, b);
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw DegenerateVectorError("cosine of a zero-norm vector");
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

double euclidean_distance(const WordVector& a, const WordVector& b) {
  require_same_dim(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double raw_metric(Metric metric, const WordVector& a, const WordVector& b) {
  switch (metric) {
    case Metric::cosine: return cosine_similarity(a, b);
    case Metric::euclidean: return euclidean_distance(a, b);
  }
  throw UnknownMetricError("unknown metric id " + std::to_string(static_cast<int>(metric)));
}

double as_similarity(Metric metric, double raw) {
  if (!std::isfinite(raw)) throw InvalidValueError("raw metric value is not finite");
  switch (metric) {
    case Metric::cosine: return raw;
    case Metric::euclidean: return -raw;
  }
  throw UnknownMetricError("unknown metric id " + std::to_string(static_cast<int>(metric)));
}

WordVector mean_pool(std::span<const WordVector> vectors) {
  if (vectors.empty()) throw EmptyPoolError("cannot pool an empty set of vectors");
  if (vectors.size() == 1) return vectors.front();
  const std::size_t dim = vectors.front().dim();
  std::vector<double> sum(dim, 0.0);
  for (const auto& v : vectors) {
    require_same_dim(vectors.front(), v);
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  const auto n = static_cast<double>(vectors.size());
  for (auto& s : sum) s /= n;
  return WordVector(std::move(sum));
}

}  // namespace cosim
