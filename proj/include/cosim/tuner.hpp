#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cosim/evalmetrics.hpp"

namespace cosim {

/// All weight vectors with n components drawn from {0, step, ..., 1} that
/// sum to 1, ordered lexicographically from [1,0,...] to [...,0,1]. `step`
/// must satisfy k·step = 1 (within 1e-9) for an integer k. Throws ConfigError.
std::vector<std::vector<double>> grid_points(std::size_t n, double step);

struct TuneEntry {
  std::vector<double> weights;
  double score = 0.0;  // -inf when the blend is constant
};

struct TuneResult {
  std::vector<double> best_weights;
  double best_score = 0.0;
  std::vector<TuneEntry> trace;  // grid order
};

struct TuneOptions {
  double step = 0.01;
  Correlation objective = Correlation::uncentered;
  unsigned threads = 1;
};

/// Exhaustive search over grid_points(columns.size(), step) maximizing
/// objective(blend, gold). Ties keep the earliest grid point.
/// Throws ConfigError, DimensionError.
TuneResult grid_search(std::span<const std::vector<double>> columns, std::span<const double> gold,
                       const TuneOptions& options = {});

/// TSV trace: w_<label>... score, one line per grid point.
void write_trace(std::ostream& out, const TuneResult& result, std::span<const std::string> labels);

}  // namespace cosim
