#include "cosim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_set>

#include "cosim/errors.hpp"
#include "cosim/text.hpp"
#include "parallel.hpp"

namespace cosim {

const MetricChange& ChangeSet::entry(Metric metric) const {
  for (const auto& e : entries) {
    if (e.metric == metric) return e;
  }
  throw UnknownMetricError("metric '" + std::string(metric_name(metric)) + "' not scored for pair '" +
                           pair_id + "'");
}

BlendConfig::BlendConfig(std::vector<Metric> metrics, std::vector<double> weights, bool standardize)
    : metrics_(std::move(metrics)), weights_(std::move(weights)), standardize_(standardize) {
  if (metrics_.empty()) throw ConfigError("blend needs at least one metric");
  if (weights_.size() != metrics_.size()) {
    throw ConfigError("got " + std::to_string(weights_.size()) + " weights for " +
                      std::to_string(metrics_.size()) + " metrics");
  }
  for (std::size_t i = 0; i < metrics_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (metrics_[i] == metrics_[j]) {
        throw ConfigError("metric '" + std::string(metric_name(metrics_[i])) + "' listed twice");
      }
    }
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeightsError("weights must be finite and non-negative, got " + text::format_real(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw InvalidWeightsError("weights must sum to 1, got " + text::format_real(sum));
  }
}

BlendConfig BlendConfig::uniform(std::vector<Metric> metrics, bool standardize) {
  const std::size_t n = metrics.size();
  std::vector<double> weights(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  return BlendConfig(std::move(metrics), std::move(weights), standardize);
}

double convex_combination(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw ConfigError("got " + std::to_string(values.size()) + " values for " +
                      std::to_string(weights.size()) + " weights");
  }
  if (values.empty()) throw ConfigError("empty blend");
  // -0.0 is the additive identity, so a lone nonzero-weight term passes
  // through unchanged (including its sign).
  double acc = -0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] != 0.0) acc += weights[i] * values[i];
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return std::clamp(acc, *lo, *hi);
}

std::pair<WordVector, WordVector> context_word_vectors(const PairRecord& record, int which,
                                                       const EmbeddingStore& store) {
  const ContextEmbedding& emb = store.at({record.id, which});
  const std::string where = "pair '" + record.id + "' context" + std::to_string(which);
  if (emb.context_text != record.context(which)) {
    throw AlignmentError("embedding text for " + where + " does not match the dataset context");
  }
  return {extract_word_vector(emb, record.surface1(which), where),
          extract_word_vector(emb, record.surface2(which), where)};
}

double score_context(const PairRecord& record, int which, const EmbeddingStore& store, Metric metric) {
  const auto [v1, v2] = context_word_vectors(record, which, store);
  return as_similarity(metric, raw_metric(metric, v1, v2));
}

double change_for_metric(const PairRecord& record, const EmbeddingStore& store, Metric metric) {
  return score_context(record, 1, store, metric) - score_context(record, 2, store, metric);
}

double blend_changes(std::span<const double> changes, const BlendConfig& config) {
  if (changes.size() != config.size()) {
    throw ConfigError("got " + std::to_string(changes.size()) + " changes for " +
                      std::to_string(config.size()) + " metrics");
  }
  return convex_combination(changes, config.weights());
}

ColumnStats column_stats(std::span<const double> column) {
  if (column.empty()) throw StandardizationError("cannot standardize an empty column");
  if (std::all_of(column.begin(), column.end(), [&](double v) { return v == column.front(); })) {
    throw StandardizationError("change column has zero variance");
  }
  const auto n = static_cast<double>(column.size());
  double sum = 0.0;
  for (double v : column) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) throw StandardizationError("change column has zero variance");
  return {mean, sd};
}

std::vector<double> standardize_column(std::span<const double> column) {
  const ColumnStats stats = column_stats(column);
  std::vector<double> z(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) z[i] = (column[i] - stats.mean) / stats.stddev;
  return z;
}

PipelineResult run_pipeline(std::span<const PairRecord> records, const EmbeddingStore& store,
                            const BlendConfig& config, const PipelineOptions& options) {
  const auto& metrics = config.metrics();
  std::vector<std::optional<ChangeSet>> slots(records.size());
  std::vector<std::string> errors(records.size());

  detail::parallel_for(records.size(), options.threads, [&](std::size_t i) {
    const PairRecord& rec = records[i];
    try {
      const auto ctx1 = context_word_vectors(rec, 1, store);
      const auto ctx2 = context_word_vectors(rec, 2, store);
      ChangeSet cs{rec.id, {}, 0.0};
      for (Metric m : metrics) {
        MetricChange e{m, as_similarity(m, raw_metric(m, ctx1.first, ctx1.second)),
                       as_similarity(m, raw_metric(m, ctx2.first, ctx2.second)), 0.0};
        e.change = e.sc1 - e.sc2;
        cs.entries.push_back(e);
      }
      slots[i] = std::move(cs);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  PipelineResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (slots[i]) {
      result.changes.push_back(std::move(*slots[i]));
    } else {
      result.failures.push_back({records[i].id, std::move(errors[i])});
    }
  }
  if (!records.empty() && result.changes.empty()) {
    throw PipelineError("all " + std::to_string(records.size()) + " records failed; first: " +
                        result.failures.front().pair_id + ": " + result.failures.front().message);
  }

  // Blend columns: raw changes, or their z-scores.
  std::vector<std::vector<double>> columns(metrics.size());
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    columns[m].reserve(result.changes.size());
    for (const auto& cs : result.changes) columns[m].push_back(cs.entries[m].change);
    if (config.standardize() && !result.changes.empty()) {
      try {
        const ColumnStats stats = column_stats(columns[m]);
        for (auto& v : columns[m]) v = (v - stats.mean) / stats.stddev;
        result.standardization.push_back(stats);
      } catch (const StandardizationError& e) {
        throw StandardizationError("metric '" + std::string(metric_name(metrics[m])) + "': " + e.what());
      }
    }
  }
  std::vector<double> row(metrics.size());
  for (std::size_t r = 0; r < result.changes.size(); ++r) {
    for (std::size_t m = 0; m < metrics.size(); ++m) row[m] = columns[m][r];
    result.changes[r].blended = blend_changes(row, config);
  }
  return result;
}

void write_predictions(std::ostream& out, std::span<const ChangeSet> changes, std::span<const Metric> metrics) {
  out << "id";
  for (const char* prefix : {"sc1_", "sc2_", "change_"}) {
    for (Metric m : metrics) out << '\t' << prefix << metric_name(m);
  }
  out << "\tchange_blend\n";
  for (const ChangeSet& cs : changes) {
    out << cs.pair_id;
    for (Metric m : metrics) out << '\t' << text::format_real(cs.entry(m).sc1);
    for (Metric m : metrics) out << '\t' << text::format_real(cs.entry(m).sc2);
    for (Metric m : metrics) out << '\t' << text::format_real(cs.entry(m).change);
    out << '\t' << text::format_real(cs.blended) << '\n';
  }
}

PredictionTable read_predictions(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw)) throw FormatError(1, "empty prediction file");
  const auto header = text::split(text::chomp(raw), '\t');
  if (header.empty() || header.front() != "id") throw FormatError(1, "prediction header must start with 'id'");

  PredictionTable table;
  // column index -> destination (-1 ignored, -2 blend, m >= 0 change column m)
  std::vector<int> role(header.size(), -1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string_view name = header[c];
    if (name == "change_blend") {
      role[c] = -2;
    } else if (name.rfind("change_", 0) == 0) {
      try {
        table.metrics.push_back(parse_metric(name.substr(7)));
      } catch (const UnknownMetricError& e) {
        throw FormatError(1, e.what());
      }
      role[c] = static_cast<int>(table.metrics.size()) - 1;
    } else if (name.rfind("sc1_", 0) != 0 && name.rfind("sc2_", 0) != 0) {
      throw FormatError(1, "unexpected prediction column '" + std::string(name) + "'");
    }
  }
  const bool has_blend = std::find(role.begin(), role.end(), -2) != role.end();
  table.changes.resize(table.metrics.size());

  std::unordered_set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != header.size()) {
      throw FormatError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                     std::to_string(fields.size()));
    }
    std::string id(fields[0]);
    if (!seen.insert(id).second) {
      throw DuplicateIdError("line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
    }
    table.ids.push_back(std::move(id));
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (role[c] == -1) continue;
      const auto v = text::parse_real(fields[c]);
      if (!v) throw FormatError(line_no, "'" + std::string(fields[c]) + "' is not a finite number");
      if (role[c] == -2) {
        table.blend.push_back(*v);
      } else {
        table.changes[static_cast<std::size_t>(role[c])].push_back(*v);
      }
    }
  }
  if (!has_blend) table.blend.clear();
  return table;
}

}  // namespace cosim
