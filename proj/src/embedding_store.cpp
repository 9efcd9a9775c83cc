#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "cosim/errors.hpp"
#include "cosim/providers.hpp"
#include "wire.hpp"

namespace cosim {

namespace wire {

ContextEmbedding parse_tokens(const json& tokens, std::string text) {
  if (!tokens.is_array()) throw std::invalid_argument("\"tokens\" must be an array");
  ContextEmbedding emb{std::move(text), {}};
  emb.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const json& tok = tokens[i];
    const std::string where = "token " + std::to_string(i);
    if (!tok.is_object()) throw std::invalid_argument(where + " is not an object");
    for (const char* field : {"t", "s", "e", "v"}) {
      if (!tok.contains(field)) throw std::invalid_argument(where + " lacks \"" + field + "\"");
    }
    if (!tok["t"].is_string()) throw std::invalid_argument(where + ": \"t\" must be a string");
    if (!tok["s"].is_number_unsigned() || !tok["e"].is_number_unsigned()) {
      throw std::invalid_argument(where + ": \"s\" and \"e\" must be non-negative integers");
    }
    const json& v = tok["v"];
    if (!v.is_array() || v.empty()) throw std::invalid_argument(where + ": \"v\" must be a non-empty array");
    std::vector<double> values;
    values.reserve(v.size());
    for (const json& x : v) {
      if (!x.is_number()) throw std::invalid_argument(where + ": \"v\" holds a non-number");
      values.push_back(x.get<double>());
    }
    emb.tokens.push_back(Token{tok["t"].get<std::string>(), tok["s"].get<std::size_t>(),
                               tok["e"].get<std::size_t>(), WordVector(std::move(values))});
  }
  return emb;
}

json tokens_to_json(const ContextEmbedding& embedding) {
  json tokens = json::array();
  for (const Token& tok : embedding.tokens) {
    json v = json::array();
    for (double x : tok.vector.values()) v.push_back(x);
    tokens.push_back({{"t", tok.text}, {"s", tok.start}, {"e", tok.end}, {"v", std::move(v)}});
  }
  return tokens;
}

}  // namespace wire

EmbeddingStore::EmbeddingStore(std::size_t dimension, std::string provenance)
    : dimension_(dimension), provenance_(std::move(provenance)) {
  if (dimension_ == 0) throw DimensionError("embedding dimension must be >= 1");
}

void EmbeddingStore::insert(ContextKey key, ContextEmbedding embedding) {
  if (key.context != 1 && key.context != 2) {
    throw ConfigError("context index must be 1 or 2, got " + std::to_string(key.context));
  }
  embedding.validate();
  if (!embedding.tokens.empty() && embedding.dimension() != dimension_) {
    throw DimensionError("embedding for pair '" + key.pair_id + "' context " +
                         std::to_string(key.context) + " has dimension " +
                         std::to_string(embedding.dimension()) + ", store has " +
                         std::to_string(dimension_));
  }
  const std::string id = key.pair_id;
  const int ctx = key.context;
  if (!entries_.emplace(std::move(key), std::move(embedding)).second) {
    throw ConfigError("duplicate embedding for pair '" + id + "' context " + std::to_string(ctx));
  }
}

const ContextEmbedding* EmbeddingStore::find(const ContextKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const ContextEmbedding& EmbeddingStore::at(const ContextKey& key) const {
  if (const auto* e = find(key)) return *e;
  throw MissingEmbeddingError("no embedding for pair '" + key.pair_id + "' context " +
                              std::to_string(key.context));
}

EmbeddingStore load_embeddings(std::istream& source) {
  using wire::json;
  std::string line;
  std::size_t line_no = 0;

  const auto parse_line = [&](std::string_view what) {
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw FormatError(line_no, std::string(what) + " must be a JSON object");
      return j;
    } catch (const json::exception& e) {
      throw FormatError(line_no, "malformed JSON: " + std::string(e.what()));
    }
  };

  if (!std::getline(source, line)) throw FormatError(1, "missing header line");
  ++line_no;
  const json header = parse_line("header");
  if (!header.contains("format") || header["format"] != kEmbeddingFormat) {
    throw FormatError(line_no, "header format must be \"" + std::string(kEmbeddingFormat) + "\"");
  }
  if (!header.contains("dimension") || !header["dimension"].is_number_unsigned() ||
      header["dimension"].get<std::size_t>() == 0) {
    throw FormatError(line_no, "header dimension must be a positive integer");
  }
  if (!header.contains("provenance") || !header["provenance"].is_string()) {
    throw FormatError(line_no, "header provenance must be a string");
  }
  EmbeddingStore store(header["dimension"].get<std::size_t>(), header["provenance"].get<std::string>());

  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const json rec = parse_line("record");
    if (!rec.contains("pair_id") || !rec["pair_id"].is_string()) {
      throw FormatError(line_no, "\"pair_id\" must be a string");
    }
    if (!rec.contains("context") || !rec["context"].is_number_integer() ||
        (rec["context"] != 1 && rec["context"] != 2)) {
      throw FormatError(line_no, "\"context\" must be 1 or 2");
    }
    if (!rec.contains("text") || !rec["text"].is_string()) throw FormatError(line_no, "\"text\" must be a string");
    if (!rec.contains("tokens")) throw FormatError(line_no, "missing \"tokens\"");

    ContextKey key{rec["pair_id"].get<std::string>(), rec["context"].get<int>()};
    if (store.contains(key)) {
      throw FormatError(line_no, "duplicate entry for pair '" + key.pair_id + "' context " +
                                     std::to_string(key.context));
    }
    ContextEmbedding emb;
    try {
      emb = wire::parse_tokens(rec["tokens"], rec["text"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(line_no, e.what());
    } catch (const InvalidValueError& e) {
      throw FormatError(line_no, e.what());
    } catch (const DimensionError& e) {
      throw DimensionError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      store.insert(std::move(key), std::move(emb));
    } catch (const DimensionError& e) {
      throw DimensionError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const AlignmentError& e) {
      throw AlignmentError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return store;
}

std::size_t write_embeddings(const EmbeddingStore& store, std::ostream& out) {
  using wire::json;
  std::size_t bytes = 0;
  const auto emit = [&](const json& j) {
    const std::string line = j.dump() + '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    if (!out) throw IoError("failed writing embedding file");
    bytes += line.size();
  };
  emit({{"format", kEmbeddingFormat}, {"dimension", store.dimension()}, {"provenance", store.provenance()}});
  for (const auto& [key, emb] : store.entries()) {
    emit({{"pair_id", key.pair_id},
          {"context", key.context},
          {"text", emb.context_text},
          {"tokens", wire::tokens_to_json(emb)}});
  }
  out.flush();
  if (!out) throw IoError("failed writing embedding file");
  return bytes;
}

EmbeddingStore FileProvider::provide(std::span<const PairRecord>) const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file '" + path_ + "'");
  return load_embeddings(in);
}

}  // namespace cosim
