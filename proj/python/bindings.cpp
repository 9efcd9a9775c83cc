#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cosim/alignment.hpp"
#include "cosim/cli.hpp"
#include "cosim/dataset.hpp"
#include "cosim/errors.hpp"
#include "cosim/evalmetrics.hpp"
#include "cosim/pipeline.hpp"
#include "cosim/providers.hpp"
#include "cosim/tuner.hpp"
#include "cosim/vecmath.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::vector<cosim::PairRecord> records_from_text(const std::string& tsv, const std::string& lang,
                                                 bool strip_markup) {
  std::istringstream in(tsv);
  return cosim::parse_records(in, cosim::parse_language(lang), cosim::ParseOptions{strip_markup});
}

py::dict record_to_dict(const cosim::PairRecord& r) {
  return py::dict("id"_a = r.id, "language"_a = std::string(cosim::language_code(r.language)),
                  "word1"_a = r.word1, "word2"_a = r.word2, "context1"_a = r.context1,
                  "context2"_a = r.context2, "word1_context1"_a = r.word1_context1,
                  "word2_context1"_a = r.word2_context1, "word1_context2"_a = r.word1_context2,
                  "word2_context2"_a = r.word2_context2);
}

std::vector<cosim::WordVector> to_vectors(const std::vector<std::vector<double>>& raw) {
  std::vector<cosim::WordVector> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.emplace_back(v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_cosim, m) {
  m.doc() = "Graded effect of context on word similarity: metrics, blending, tuning, evaluation.";

  auto base = py::register_exception<cosim::Error>(m, "CosimError", PyExc_ValueError);
  // Translators run newest-first, so the base class is registered before subclasses.
  py::register_exception<cosim::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<cosim::DegenerateVectorError>(m, "DegenerateVectorError", base.ptr());
  py::register_exception<cosim::InvalidValueError>(m, "InvalidValueError", base.ptr());
  py::register_exception<cosim::UnknownMetricError>(m, "UnknownMetricError", base.ptr());
  py::register_exception<cosim::EmptyPoolError>(m, "EmptyPoolError", base.ptr());
  py::register_exception<cosim::DuplicateIdError>(m, "DuplicateIdError", base.ptr());
  py::register_exception<cosim::WordNotFoundError>(m, "WordNotFoundError", base.ptr());
  py::register_exception<cosim::AlignmentError>(m, "AlignmentError", base.ptr());
  py::register_exception<cosim::MissingEmbeddingError>(m, "MissingEmbeddingError", base.ptr());
  py::register_exception<cosim::InvalidWeightsError>(m, "InvalidWeightsError", base.ptr());
  py::register_exception<cosim::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<cosim::PipelineError>(m, "PipelineError", base.ptr());
  py::register_exception<cosim::StandardizationError>(m, "StandardizationError", base.ptr());
  py::register_exception<cosim::ZeroVarianceError>(m, "ZeroVarianceError", base.ptr());
  py::register_exception<cosim::BackendError>(m, "BackendError", base.ptr());
  py::register_exception<cosim::ProtocolError>(m, "ProtocolError", base.ptr());
  auto format = py::register_exception<cosim::FormatError>(m, "FormatError", base.ptr());
  py::register_exception<cosim::EncodingError>(m, "EncodingError", format.ptr());

  m.def(
      "cosine_similarity",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosim::cosine_similarity(cosim::WordVector(a), cosim::WordVector(b));
      },
      "a"_a, "b"_a);
  m.def(
      "euclidean_distance",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosim::euclidean_distance(cosim::WordVector(a), cosim::WordVector(b));
      },
      "a"_a, "b"_a);
  m.def(
      "as_similarity",
      [](const std::string& metric, double raw) { return cosim::as_similarity(cosim::parse_metric(metric), raw); },
      "metric"_a, "raw"_a);
  m.def(
      "mean_pool",
      [](const std::vector<std::vector<double>>& vectors) {
        const auto pooled = cosim::mean_pool(to_vectors(vectors));
        return std::vector<double>(pooled.values().begin(), pooled.values().end());
      },
      "vectors"_a);

  m.def(
      "locate_occurrence",
      [](const std::string& context, const std::string& form) {
        const auto span = cosim::locate_occurrence(context, form);
        return py::make_tuple(span.start, span.end);
      },
      "context"_a, "surface_form"_a);

  m.def(
      "parse_records",
      [](const std::string& tsv, const std::string& lang, bool strip_markup) {
        py::list out;
        for (const auto& r : records_from_text(tsv, lang, strip_markup)) out.append(record_to_dict(r));
        return out;
      },
      "tsv"_a, "language"_a = "en", "strip_markup"_a = false);
  m.def(
      "validate",
      [](const std::string& tsv, const std::string& lang) {
        std::istringstream in(tsv);
        const auto report = cosim::validate_stream(in, cosim::parse_language(lang));
        py::list diags;
        for (const auto& d : report.diagnostics) {
          diags.append(py::dict("line"_a = d.line, "record"_a = d.record, "id"_a = d.id, "field"_a = d.field,
                                "problem"_a = d.problem));
        }
        return py::dict("row_count"_a = report.row_count, "accepted"_a = report.accepted,
                        "rejected"_a = report.rejected, "per_language"_a = report.per_language,
                        "diagnostics"_a = diags);
      },
      "tsv"_a, "language"_a = "en");

  m.def(
      "blend_changes",
      [](const std::vector<double>& changes, const std::vector<std::string>& metrics,
         const std::vector<double>& weights) {
        std::vector<cosim::Metric> ids;
        for (const auto& name : metrics) ids.push_back(cosim::parse_metric(name));
        return cosim::blend_changes(changes, cosim::BlendConfig(ids, weights, false));
      },
      "changes"_a, "metrics"_a, "weights"_a);

  m.def(
      "score_synthetic",
      [](const std::string& tsv, const std::string& lang, std::uint64_t seed, std::size_t dim,
         const std::vector<std::string>& metrics, std::vector<double> weights, bool standardize) {
        const auto records = records_from_text(tsv, lang, false);
        const auto store = cosim::synthetic_embeddings(records, seed, dim);
        std::vector<cosim::Metric> ids;
        for (const auto& name : metrics) ids.push_back(cosim::parse_metric(name));
        const auto config = weights.empty() ? cosim::BlendConfig::uniform(ids, standardize)
                                            : cosim::BlendConfig(ids, std::move(weights), standardize);
        const auto result = cosim::run_pipeline(records, store, config);
        py::list rows;
        for (const auto& cs : result.changes) {
          py::dict per_metric;
          for (const auto& e : cs.entries) {
            per_metric[py::str(std::string(cosim::metric_name(e.metric)))] =
                py::dict("sc1"_a = e.sc1, "sc2"_a = e.sc2, "change"_a = e.change);
          }
          rows.append(py::dict("id"_a = cs.pair_id, "metrics"_a = per_metric, "blend"_a = cs.blended));
        }
        return rows;
      },
      "tsv"_a, "language"_a = "en", "seed"_a = 0, "dim"_a = 32,
      "metrics"_a = std::vector<std::string>{"euclidean", "cosine"}, "weights"_a = std::vector<double>{},
      "standardize"_a = true);

  m.def(
      "correlate",
      [](const std::string& kind, const std::vector<double>& x, const std::vector<double>& y) {
        return cosim::correlate(cosim::parse_correlation(kind), x, y);
      },
      "kind"_a, "x"_a, "y"_a);
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return cosim::pearson(x, y); });
  m.def("uncentered_pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) { return cosim::uncentered_pearson(x, y); });
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return cosim::spearman(x, y); });

  m.def("grid_points", &cosim::grid_points, "n"_a, "step"_a);
  m.def(
      "grid_search",
      [](const std::vector<std::vector<double>>& columns, const std::vector<double>& gold, double step,
         const std::string& objective) {
        cosim::TuneOptions opts;
        opts.step = step;
        opts.objective = cosim::parse_correlation(objective);
        const auto result = cosim::grid_search(columns, gold, opts);
        py::list trace;
        for (const auto& e : result.trace) trace.append(py::make_tuple(e.weights, e.score));
        return py::dict("best_weights"_a = result.best_weights, "best_score"_a = result.best_score,
                        "trace"_a = trace);
      },
      "columns"_a, "gold"_a, "step"_a = 0.01, "objective"_a = "uncentered");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cosim::cli::run(std::move(args), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "args"_a, "Run a cosim command in-process; returns (exit_code, stdout, stderr).");
}
