#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "cosim/alignment.hpp"
#include "cosim/dataset.hpp"

namespace cosim {

/// Identifies one context of one pair.
struct ContextKey {
  std::string pair_id;
  int context = 1;  // 1 or 2

  friend auto operator<=>(const ContextKey&, const ContextKey&) = default;
  friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

/// Validated per-context token embeddings with one shared dimension.
/// Immutable once handed out; iteration order is (pair_id, context).
class EmbeddingStore {
 public:
  EmbeddingStore(std::size_t dimension, std::string provenance);

  /// Validates the embedding and its dimension. Throws DimensionError,
  /// AlignmentError, EncodingError, or ConfigError on a duplicate key.
  void insert(ContextKey key, ContextEmbedding embedding);

  const ContextEmbedding* find(const ContextKey& key) const;
  /// Throws MissingEmbeddingError.
  const ContextEmbedding& at(const ContextKey& key) const;
  bool contains(const ContextKey& key) const { return find(key) != nullptr; }

  std::size_t dimension() const noexcept { return dimension_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<ContextKey, ContextEmbedding>& entries() const noexcept { return entries_; }

  friend bool operator==(const EmbeddingStore&, const EmbeddingStore&) = default;

 private:
  std::size_t dimension_;
  std::string provenance_;
  std::map<ContextKey, ContextEmbedding> entries_;
};

inline constexpr std::string_view kEmbeddingFormat = "ctxemb/1";

/// Reads the JSON Lines embedding file. Throws FormatError (with line),
/// DimensionError, AlignmentError.
EmbeddingStore load_embeddings(std::istream& source);

/// Canonical serialization: sorted keys, store order, shortest round-trip
/// numbers. Returns the number of bytes written; throws IoError.
std::size_t write_embeddings(const EmbeddingStore& store, std::ostream& out);

/// Deterministic stand-in for a contextual model: whitespace tokens, each
/// vector a function of (seed, token text) plus a perturbation keyed by
/// (seed, token text, context key).
EmbeddingStore synthetic_embeddings(std::span<const PairRecord> records, std::uint64_t seed,
                                    std::size_t dimension);

struct FetchOptions {
  std::size_t batch = 32;  // texts per request
  std::chrono::milliseconds timeout{30'000};
  int retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::size_t max_in_flight = 1;
};

/// Client for the remote embedding service (POST /embed). Throws
/// BackendError once a batch exhausts its retries, ProtocolError on any
/// response that fails validation.
EmbeddingStore fetch_embeddings(std::string_view endpoint, std::span<const PairRecord> records,
                                const FetchOptions& options = {});

struct ServiceHealth {
  std::string status;
  std::string model;
};

/// GET /health. Throws BackendError or ProtocolError.
ServiceHealth check_health(std::string_view endpoint, std::chrono::milliseconds timeout);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual EmbeddingStore provide(std::span<const PairRecord> records) const = 0;
};

class FileProvider final : public EmbeddingProvider {
 public:
  explicit FileProvider(std::string path) : path_(std::move(path)) {}
  EmbeddingStore provide(std::span<const PairRecord> records) const override;

 private:
  std::string path_;
};

class SyntheticProvider final : public EmbeddingProvider {
 public:
  SyntheticProvider(std::uint64_t seed, std::size_t dimension) : seed_(seed), dimension_(dimension) {}
  EmbeddingStore provide(std::span<const PairRecord> records) const override;

 private:
  std::uint64_t seed_;
  std::size_t dimension_;
};

class HttpProvider final : public EmbeddingProvider {
 public:
  HttpProvider(std::string endpoint, FetchOptions options)
      : endpoint_(std::move(endpoint)), options_(options) {}
  EmbeddingStore provide(std::span<const PairRecord> records) const override;

 private:
  std::string endpoint_;
  FetchOptions options_;
};

}  // namespace cosim
