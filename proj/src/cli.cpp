#include "cosim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

#include "cosim/dataset.hpp"
#include "cosim/errors.hpp"
#include "cosim/evalmetrics.hpp"
#include "cosim/pipeline.hpp"
#include "cosim/providers.hpp"
#include "cosim/text.hpp"
#include "cosim/tuner.hpp"

namespace cosim::cli {

namespace {

/// Bad flags, unreadable inputs, provider outages: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string data;
  std::string lang = "en";
  bool strip_markup = false;

  std::string provider = "synthetic";
  std::string embeddings;
  std::string endpoint;
  std::size_t batch = 32;
  std::size_t in_flight = 1;
  double timeout_s = 30.0;
  int retries = 3;
  std::size_t dim = 32;
  std::uint64_t seed = 0;

  std::string metrics = "euclidean,cosine";
  std::string weights;
  bool no_standardize = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<std::string> pred;
  std::vector<std::string> gold;
  std::vector<std::string> labels;
  std::vector<std::string> models;
  std::string eval_metric = "uncentered";
  bool full_precision = false;

  double step = 0.01;
  std::string out;
};

std::ifstream open_input(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + std::string(what) + " '" + path + "'");
  return in;
}

/// Writes to --out when given, else to the output stream.
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write '" + path + "'");
  fn(file);
  file.flush();
  if (!file) throw UsageError("failed writing '" + path + "'");
}

std::vector<PairRecord> load_records(const RunConfig& cfg) {
  if (cfg.data.empty()) throw UsageError("--data is required");
  const Language lang = parse_language(cfg.lang);
  auto in = open_input(cfg.data, "data file");
  return parse_records(in, lang, ParseOptions{cfg.strip_markup});
}

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& cfg) {
  if (cfg.provider == "synthetic") {
    if (cfg.dim == 0) throw UsageError("--dim must be >= 1");
    return std::make_unique<SyntheticProvider>(cfg.seed, cfg.dim);
  }
  if (cfg.provider == "file") {
    if (cfg.embeddings.empty()) throw UsageError("--provider file needs --embeddings");
    return std::make_unique<FileProvider>(cfg.embeddings);
  }
  if (cfg.provider == "http") {
    if (cfg.endpoint.empty()) throw UsageError("--provider http needs --endpoint or COSIM_ENDPOINT");
    FetchOptions opts;
    opts.batch = cfg.batch;
    opts.max_in_flight = cfg.in_flight;
    opts.retries = cfg.retries;
    opts.timeout = std::chrono::milliseconds(static_cast<long long>(cfg.timeout_s * 1000));
    return std::make_unique<HttpProvider>(cfg.endpoint, opts);
  }
  throw UsageError("unknown provider '" + cfg.provider + "' (expected file|synthetic|http)");
}

EmbeddingStore provide(const RunConfig& cfg, std::span<const PairRecord> records) {
  try {
    return make_provider(cfg)->provide(records);
  } catch (const Error& e) {
    throw UsageError(std::string("embedding provider failed: ") + e.what());
  }
}

BlendConfig make_blend(const RunConfig& cfg) {
  auto metrics = parse_metric_list(cfg.metrics);
  const bool standardize = !cfg.no_standardize;
  if (cfg.weights.empty()) return BlendConfig::uniform(std::move(metrics), standardize);
  std::vector<double> weights;
  for (auto field : text::split(cfg.weights, ',')) {
    const auto w = text::parse_real(field);
    if (!w) throw ConfigError("weight '" + std::string(field) + "' is not a number");
    weights.push_back(*w);
  }
  return BlendConfig(std::move(metrics), std::move(weights), standardize);
}

std::vector<GoldRecord> load_gold(const std::string& path) {
  auto in = open_input(path, "gold file");
  return parse_gold(in);
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.data.empty()) throw UsageError("--data is required");
  const Language lang = parse_language(cfg.lang);
  auto in = open_input(cfg.data, "data file");
  const ValidationReport report = validate_stream(in, lang, ParseOptions{cfg.strip_markup});

  out << report.row_count << " records (" << report.accepted << " accepted, " << report.rejected
      << " rejected)\n";
  for (const auto& [code, count] : report.per_language) out << code << '\t' << count << '\n';
  for (const auto& d : report.diagnostics) {
    if (d.line) {
      err << cfg.data << ":" << d.line << ": " << d.problem << '\n';
    } else {
      err << cfg.data << ": record " << d.record << " (id " << d.id << ") " << d.field << ": " << d.problem
          << '\n';
    }
  }
  return report.clean() ? kOk : kDataProblem;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto records = load_records(cfg);
  const EmbeddingStore store = provide(cfg, records);
  std::size_t bytes = 0;
  with_output(cfg.out, out, [&](std::ostream& os) { bytes = write_embeddings(store, os); });
  err << "wrote " << store.size() << " context embeddings (dimension " << store.dimension() << ", "
      << bytes << " bytes, provenance " << store.provenance() << ")\n";
  return kOk;
}

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BlendConfig blend = make_blend(cfg);
  const auto records = load_records(cfg);
  const EmbeddingStore store = provide(cfg, records);
  const PipelineResult result = run_pipeline(records, store, blend, PipelineOptions{cfg.threads});

  with_output(cfg.out, out, [&](std::ostream& os) { write_predictions(os, result.changes, blend.metrics()); });

  for (const auto& f : result.failures) err << "skipped " << f.pair_id << ": " << f.message << '\n';
  for (std::size_t m = 0; m < result.standardization.size(); ++m) {
    err << "standardized change_" << metric_name(blend.metrics()[m])
        << " (population): mean=" << text::format_real(result.standardization[m].mean)
        << " sd=" << text::format_real(result.standardization[m].stddev) << '\n';
  }
  err << "scored " << result.changes.size() << " of " << records.size() << " records\n";
  return result.failures.empty() ? kOk : kDataProblem;
}

std::string cell(const std::optional<double>& v, int decimals) {
  if (!v) return "n/a";
  return decimals < 0 ? text::format_real(*v) : text::format_fixed(*v, decimals);
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.pred.empty() || cfg.pred.size() != cfg.gold.size()) {
    throw UsageError("give one --gold per --pred");
  }
  if (!cfg.labels.empty() && cfg.labels.size() != cfg.pred.size()) {
    throw UsageError("give one --lang per --pred");
  }
  if (!cfg.models.empty() && cfg.models.size() != cfg.pred.size()) {
    throw UsageError("give one --model-label per --pred");
  }
  const Correlation kind = parse_correlation(cfg.eval_metric);
  const int decimals = cfg.full_precision ? -1 : 3;

  std::vector<LanguageScores> inputs;
  bool orphans = false;
  for (std::size_t i = 0; i < cfg.pred.size(); ++i) {
    auto pin = open_input(cfg.pred[i], "prediction file");
    const PredictionTable table = read_predictions(pin);
    if (table.blend.empty()) throw FormatError(1, cfg.pred[i] + " has no change_blend column");
    const auto gold = load_gold(cfg.gold[i]);
    const JoinResult join = join_on_id(table.ids, gold);
    for (const auto& id : join.predictions_without_gold) err << "orphan prediction id " << id << '\n';
    for (const auto& id : join.gold_without_prediction) err << "orphan gold id " << id << '\n';
    orphans = orphans || !join.complete();

    LanguageScores ls;
    ls.language = cfg.labels.empty() ? "-" : cfg.labels[i];
    ls.model_label = cfg.models.empty() ? "-" : cfg.models[i];
    ls.gold = join.pairing.gold;
    for (std::size_t m = 0; m < table.metrics.size(); ++m) {
      ls.metric_labels.emplace_back(metric_name(table.metrics[m]));
      std::vector<double> col;
      for (std::size_t r : join.pairing.prediction_rows) col.push_back(table.changes[m][r]);
      ls.metric_changes.push_back(std::move(col));
    }
    for (std::size_t r : join.pairing.prediction_rows) ls.blend.push_back(table.blend[r]);
    inputs.push_back(std::move(ls));
  }
  if (orphans) {
    err << "prediction and gold ids do not match\n";
    return kDataProblem;
  }

  std::vector<ResultRow> rows;
  try {
    rows = results_table(inputs, kind);
  } catch (const Error& e) {
    err << correlation_name(kind) << " correlation failed: " << e.what() << '\n';
    return kDataProblem;
  }

  out << "# " << correlation_name(kind) << " correlation\n";
  write_results_text(out, rows, decimals);
  out << "\n# blend under every correlation\n";
  std::vector<std::vector<std::string>> summary = {{"language", "pearson", "spearman", "uncentered"}};
  for (const auto& in : inputs) {
    std::vector<std::string> line = {in.language};
    for (Correlation c : {Correlation::pearson, Correlation::spearman, Correlation::uncentered}) {
      std::optional<double> v;
      try {
        v = correlate(c, in.blend, in.gold);
      } catch (const Error& e) {
        err << in.language << " " << correlation_name(c) << ": " << e.what() << '\n';
      }
      line.push_back(cell(v, decimals));
    }
    summary.push_back(std::move(line));
  }
  for (const auto& line : summary) {
    for (std::size_t c = 0; c < line.size(); ++c) out << (c ? "\t" : "") << line[c];
    out << '\n';
  }
  if (!cfg.out.empty()) {
    with_output(cfg.out, out, [&](std::ostream& os) { write_results_tsv(os, rows, decimals); });
  }
  return kOk;
}

int cmd_tune(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.gold.size() != 1) throw UsageError("tune needs exactly one --gold");
  if (cfg.pred.size() > 1) throw UsageError("tune takes at most one --pred");
  TuneOptions opts;
  opts.step = cfg.step;
  opts.objective = parse_correlation(cfg.eval_metric);
  opts.threads = cfg.threads;
  grid_points(1, opts.step);  // reject a bad step before any work

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;
  if (!cfg.pred.empty()) {
    auto pin = open_input(cfg.pred.front(), "prediction file");
    PredictionTable table = read_predictions(pin);
    if (table.metrics.empty()) throw FormatError(1, "prediction file has no change_<metric> columns");
    ids = std::move(table.ids);
    for (Metric m : table.metrics) labels.emplace_back(metric_name(m));
    columns = std::move(table.changes);
  } else {
    const auto metrics = parse_metric_list(cfg.metrics);
    const auto records = load_records(cfg);
    const EmbeddingStore store = provide(cfg, records);
    const PipelineResult result = run_pipeline(records, store, BlendConfig::uniform(metrics, false),
                                               PipelineOptions{cfg.threads});
    for (const auto& f : result.failures) err << "skipped " << f.pair_id << ": " << f.message << '\n';
    columns.resize(metrics.size());
    for (const auto& cs : result.changes) {
      ids.push_back(cs.pair_id);
      for (std::size_t m = 0; m < metrics.size(); ++m) columns[m].push_back(cs.entries[m].change);
    }
    for (Metric m : metrics) labels.emplace_back(metric_name(m));
  }

  const auto gold = load_gold(cfg.gold.front());
  const JoinResult join = join_on_id(ids, gold);
  for (const auto& id : join.predictions_without_gold) err << "no gold for id " << id << ", ignored\n";
  std::vector<std::vector<double>> aligned(columns.size());
  for (std::size_t m = 0; m < columns.size(); ++m) {
    for (std::size_t r : join.pairing.prediction_rows) aligned[m].push_back(columns[m][r]);
    if (!cfg.no_standardize) aligned[m] = standardize_column(aligned[m]);
  }

  const TuneResult result = grid_search(aligned, join.pairing.gold, opts);
  if (!cfg.out.empty()) {
    with_output(cfg.out, out, [&](std::ostream& os) { write_trace(os, result, labels); });
  }

  int decimals = 2;
  while (decimals < 9 && std::abs(std::round(opts.step * std::pow(10.0, decimals)) -
                                  opts.step * std::pow(10.0, decimals)) > 1e-9) {
    ++decimals;
  }
  out << "best_weights [";
  for (std::size_t i = 0; i < result.best_weights.size(); ++i) {
    out << (i ? ", " : "") << text::format_fixed(result.best_weights[i], decimals);
  }
  out << "] (";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << labels[i];
  out << ") " << correlation_name(opts.objective) << "="
      << (std::isinf(result.best_score) ? std::string("-inf") : text::format_fixed(result.best_score, 3))
      << " over " << result.trace.size() << " grid points\n";
  return kOk;
}

void add_data_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--data", cfg.data, "Pair file (8-column TSV)");
  cmd->add_option("--lang", cfg.lang, "Language code: en|hr|fi|sl");
  cmd->add_flag("--strip-markup", cfg.strip_markup, "Remove <strong> markers from contexts");
}

void add_provider_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--provider", cfg.provider, "Embedding source: file|synthetic|http");
  cmd->add_option("--embeddings", cfg.embeddings, "Embedding file for --provider file");
  cmd->add_option("--endpoint", cfg.endpoint, "Embedding service base URL")->envname("COSIM_ENDPOINT");
  cmd->add_option("--batch", cfg.batch, "Texts per service request");
  cmd->add_option("--in-flight", cfg.in_flight, "Concurrent service requests");
  cmd->add_option("--timeout", cfg.timeout_s, "Service timeout in seconds");
  cmd->add_option("--retries", cfg.retries, "Retries per failed batch");
  cmd->add_option("--dim", cfg.dim, "Synthetic embedding dimension");
  cmd->add_option("--seed", cfg.seed, "Synthetic embedding seed");
}

void add_blend_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--metrics", cfg.metrics, "Comma-separated metrics (euclidean,cosine)");
  cmd->add_flag("--no-standardize", cfg.no_standardize, "Blend raw changes instead of z-scores");
  cmd->add_option("--threads", cfg.threads, "Worker threads");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Graded effect of context on word similarity"};
  app.name("cosim");
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a pair file and report counts");
  add_data_options(validate, cfg);

  auto* embed = app.add_subcommand("embed", "Run a provider and write an embedding file");
  add_data_options(embed, cfg);
  add_provider_options(embed, cfg);
  embed->add_option("--out", cfg.out, "Embedding file to write (default stdout)");

  auto* score = app.add_subcommand("score", "Predict per-pair similarity changes");
  add_data_options(score, cfg);
  add_provider_options(score, cfg);
  add_blend_options(score, cfg);
  score->add_option("--weights", cfg.weights, "Comma-separated blend weights summing to 1");
  score->add_option("--out", cfg.out, "Prediction TSV (default stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Correlate predictions with gold changes");
  evaluate->add_option("--pred", cfg.pred, "Prediction TSV (repeat per language)");
  evaluate->add_option("--gold", cfg.gold, "Gold TSV (repeat per language)");
  evaluate->add_option("--lang", cfg.labels, "Row label (repeat per language)");
  evaluate->add_option("--model-label", cfg.models, "Model column label (repeat per language)");
  evaluate->add_option("--eval-metric", cfg.eval_metric, "pearson|uncentered|spearman");
  evaluate->add_flag("--full-precision", cfg.full_precision, "Print 17 significant digits");
  evaluate->add_option("--out", cfg.out, "Results table TSV");

  auto* tune = app.add_subcommand("tune", "Grid-search blend weights against gold");
  add_data_options(tune, cfg);
  add_provider_options(tune, cfg);
  add_blend_options(tune, cfg);
  tune->add_option("--pred", cfg.pred, "Prediction TSV providing change_<metric> columns");
  tune->add_option("--gold", cfg.gold, "Gold TSV");
  tune->add_option("--step", cfg.step, "Grid step; must divide 1");
  tune->add_option("--eval-metric", cfg.eval_metric, "pearson|uncentered|spearman");
  tune->add_option("--out", cfg.out, "Trace TSV");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg, out, err);
    if (*embed) return cmd_embed(cfg, out, err);
    if (*score) return cmd_score(cfg, out, err);
    if (*evaluate) return cmd_evaluate(cfg, out, err);
    if (*tune) return cmd_tune(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: ConfigError: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidWeightsError& e) {
    err << "error: InvalidWeightsError: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownMetricError& e) {
    err << "error: UnknownMetricError: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataProblem;
  }
  return kUsage;
}

}  // namespace cosim::cli
