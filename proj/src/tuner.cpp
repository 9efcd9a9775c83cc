#include "cosim/tuner.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "cosim/errors.hpp"
#include "cosim/pipeline.hpp"
#include "cosim/text.hpp"
#include "parallel.hpp"

namespace cosim {

namespace {

// Appends every composition of `remaining` into `parts` parts, largest
// leading part first.
void compositions(std::size_t remaining, std::size_t parts, std::vector<std::size_t>& prefix,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = remaining + 1; first-- > 0;) {
    prefix.push_back(first);
    compositions(remaining - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<double>> grid_points(std::size_t n, double step) {
  if (n == 0) throw ConfigError("grid needs at least one metric");
  if (!(step > 0.0 && step <= 1.0)) throw ConfigError("step must lie in (0, 1], got " + text::format_real(step));
  const double k_real = std::round(1.0 / step);
  if (std::abs(k_real * step - 1.0) > 1e-9) {
    throw ConfigError("step " + text::format_real(step) + " does not divide 1");
  }
  const auto k = static_cast<std::size_t>(k_real);

  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> prefix;
  compositions(k, n, prefix, counts);

  std::vector<std::vector<double>> points;
  points.reserve(counts.size());
  for (const auto& c : counts) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(c[i]) / k_real;
    points.push_back(std::move(w));
  }
  return points;
}

TuneResult grid_search(std::span<const std::vector<double>> columns, std::span<const double> gold,
                       const TuneOptions& options) {
  if (columns.empty()) throw ConfigError("grid search needs at least one change column");
  if (gold.size() < 2) throw DimensionError("grid search needs at least 2 rows");
  for (const auto& col : columns) {
    if (col.size() != gold.size()) {
      throw DimensionError("change column has " + std::to_string(col.size()) + " rows, gold has " +
                           std::to_string(gold.size()));
    }
  }

  TuneResult result;
  for (auto& w : grid_points(columns.size(), options.step)) result.trace.push_back({std::move(w), 0.0});

  detail::parallel_for(result.trace.size(), options.threads, [&](std::size_t p) {
    TuneEntry& entry = result.trace[p];
    std::vector<double> blend(gold.size());
    std::vector<double> row(columns.size());
    for (std::size_t r = 0; r < gold.size(); ++r) {
      for (std::size_t m = 0; m < columns.size(); ++m) row[m] = columns[m][r];
      blend[r] = convex_combination(row, entry.weights);
    }
    try {
      entry.score = correlate(options.objective, blend, gold);
    } catch (const ZeroVarianceError&) {
      entry.score = -std::numeric_limits<double>::infinity();
    } catch (const DegenerateVectorError&) {
      entry.score = -std::numeric_limits<double>::infinity();
    }
  });

  std::size_t best = 0;
  for (std::size_t p = 1; p < result.trace.size(); ++p) {
    if (result.trace[p].score > result.trace[best].score) best = p;
  }
  result.best_weights = result.trace[best].weights;
  result.best_score = result.trace[best].score;
  return result;
}

void write_trace(std::ostream& out, const TuneResult& result, std::span<const std::string> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "\t" : "") << "w_" << labels[i];
  out << "\tscore\n";
  for (const auto& e : result.trace) {
    for (std::size_t i = 0; i < e.weights.size(); ++i) out << (i ? "\t" : "") << text::format_real(e.weights[i]);
    out << '\t' << (std::isinf(e.score) ? std::string("-inf") : text::format_real(e.score)) << '\n';
  }
}

}  // namespace cosim
