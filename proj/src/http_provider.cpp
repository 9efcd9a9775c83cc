#include <httplib.h>

#include <algorithm>
#include <future>
#include <thread>
#include <unordered_map>

#include "cosim/errors.hpp"
#include "cosim/providers.hpp"
#include "wire.hpp"

namespace cosim {

namespace {

using wire::json;

struct Endpoint {
  std::string host;  // scheme://host[:port]
  std::string path_prefix;
};

Endpoint split_endpoint(std::string_view endpoint) {
  std::string url(endpoint);
  if (url.find("://") == std::string::npos) url = "http://" + url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme_end = url.find("://") + 3;
  const auto slash = url.find('/', scheme_end);
  if (slash == std::string::npos) return {url, ""};
  return {url.substr(0, slash), url.substr(slash)};
}

httplib::Client make_client(const Endpoint& ep, std::chrono::milliseconds timeout) {
  httplib::Client cli(ep.host);
  if (!cli.is_valid()) throw BackendError("unsupported endpoint '" + ep.host + "'");
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);
  return cli;
}

struct Request {
  std::string language;
  std::vector<std::pair<std::string, ContextKey>> ids;  // wire id -> key
  std::vector<std::string> texts;
};

struct BatchResult {
  std::size_t dimension = 0;
  std::vector<std::pair<ContextKey, ContextEmbedding>> items;
};

std::string id_list(const Request& req) {
  std::string out;
  for (const auto& [id, key] : req.ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

BatchResult decode_response(const std::string& body, const Request& req) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("response is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc["dimension"].is_number_unsigned() ||
      doc["dimension"].get<std::size_t>() == 0) {
    throw ProtocolError("response lacks a positive integer \"dimension\"");
  }
  if (!doc.contains("items") || !doc["items"].is_array()) throw ProtocolError("response lacks \"items\" array");

  BatchResult out;
  out.dimension = doc["dimension"].get<std::size_t>();
  std::unordered_map<std::string, std::size_t> pending;
  for (std::size_t i = 0; i < req.ids.size(); ++i) pending.emplace(req.ids[i].first, i);

  for (const json& item : doc["items"]) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() || !item.contains("tokens")) {
      throw ProtocolError("response item lacks \"id\" or \"tokens\"");
    }
    const std::string id = item["id"].get<std::string>();
    const auto it = pending.find(id);
    if (it == pending.end()) throw ProtocolError("response item '" + id + "' was not requested or repeats");
    const std::size_t idx = it->second;
    pending.erase(it);
    try {
      ContextEmbedding emb = wire::parse_tokens(item["tokens"], req.texts[idx]);
      emb.validate();
      if (!emb.tokens.empty() && emb.dimension() != out.dimension) {
        throw DimensionError("token dimension " + std::to_string(emb.dimension()) +
                             " differs from declared " + std::to_string(out.dimension));
      }
      out.items.emplace_back(req.ids[idx].second, std::move(emb));
    } catch (const std::invalid_argument& e) {
      throw ProtocolError("item '" + id + "': " + e.what());
    } catch (const Error& e) {
      throw ProtocolError("item '" + id + "': " + e.what());
    }
  }
  if (!pending.empty()) throw ProtocolError("response is missing " + std::to_string(pending.size()) + " item(s)");
  return out;
}

BatchResult send_batch(const Endpoint& ep, const Request& req, const FetchOptions& options) {
  json texts = json::array();
  for (std::size_t i = 0; i < req.ids.size(); ++i) {
    texts.push_back({{"id", req.ids[i].first}, {"text", req.texts[i]}});
  }
  const std::string body = json{{"texts", std::move(texts)}, {"language", req.language}}.dump();

  auto cli = make_client(ep, options.timeout);
  std::string last_failure;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options.initial_backoff * (1 << (attempt - 1)));
    auto res = cli.Post(ep.path_prefix + "/embed", body, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500 || res->status == 429) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw BackendError("embedding service rejected batch with HTTP " + std::to_string(res->status) +
                         " (contexts: " + id_list(req) + ")");
    }
    return decode_response(res->body, req);
  }
  throw BackendError("embedding service failed after " + std::to_string(options.retries) +
                     " retries (" + last_failure + "); contexts: " + id_list(req));
}

}  // namespace

ServiceHealth check_health(std::string_view endpoint, std::chrono::milliseconds timeout) {
  const Endpoint ep = split_endpoint(endpoint);
  auto cli = make_client(ep, timeout);
  auto res = cli.Get(ep.path_prefix + "/health");
  if (!res) throw BackendError("health check failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw BackendError("health check returned HTTP " + std::to_string(res->status));
  try {
    const json doc = json::parse(res->body);
    return {doc.at("status").get<std::string>(), doc.at("model").get<std::string>()};
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed health document: ") + e.what());
  }
}

EmbeddingStore fetch_embeddings(std::string_view endpoint, std::span<const PairRecord> records,
                                const FetchOptions& options) {
  if (records.empty()) throw ConfigError("no records to embed");
  if (options.batch == 0) throw ConfigError("batch size must be >= 1");
  const Endpoint ep = split_endpoint(endpoint);

  // Batches never mix languages; contexts keep record order.
  std::vector<Request> requests;
  for (const PairRecord& r : records) {
    const std::string lang(language_code(r.language));
    for (int c : {1, 2}) {
      if (requests.empty() || requests.back().language != lang || requests.back().ids.size() == options.batch) {
        requests.push_back({lang, {}, {}});
      }
      requests.back().ids.emplace_back(r.id + ":" + std::to_string(c), ContextKey{r.id, c});
      requests.back().texts.emplace_back(r.context(c));
    }
  }

  std::vector<BatchResult> results(requests.size());
  const std::size_t window = std::max<std::size_t>(1, options.max_in_flight);
  for (std::size_t first = 0; first < requests.size(); first += window) {
    const std::size_t last = std::min(requests.size(), first + window);
    std::vector<std::future<BatchResult>> inflight;
    for (std::size_t i = first; i < last; ++i) {
      inflight.push_back(std::async(std::launch::async, send_batch, std::cref(ep), std::cref(requests[i]),
                                    std::cref(options)));
    }
    for (std::size_t i = first; i < last; ++i) results[i] = inflight[i - first].get();
  }

  std::string provenance = "http:" + std::string(endpoint);
  try {
    provenance += ":model=" + check_health(endpoint, options.timeout).model;
  } catch (const Error&) {
    // health is informational only
  }
  EmbeddingStore store(results.front().dimension, provenance);
  for (auto& batch : results) {
    if (batch.dimension != store.dimension()) {
      throw ProtocolError("service changed dimension between batches (" + std::to_string(store.dimension()) +
                          " vs " + std::to_string(batch.dimension) + ")");
    }
    for (auto& [key, emb] : batch.items) {
      if (store.contains(key)) continue;  // duplicated pair ids across records
      store.insert(key, std::move(emb));
    }
  }
  return store;
}

EmbeddingStore HttpProvider::provide(std::span<const PairRecord> records) const {
  return fetch_embeddings(endpoint_, records, options_);
}

}  // namespace cosim
