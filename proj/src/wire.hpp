#pragma once

// JSON conversion shared by the embedding file and the remote protocol.

#include <json.hpp>
#include <string>

#include "cosim/alignment.hpp"

namespace cosim::wire {

using json = nlohmann::json;

/// Converts a token array ({"t","s","e","v"} objects) for `text`.
/// Throws std::invalid_argument describing the first schema violation;
/// callers map it to their own error type. Span and dimension checks are
/// left to ContextEmbedding::validate().
ContextEmbedding parse_tokens(const json& tokens, std::string text);

json tokens_to_json(const ContextEmbedding& embedding);

}  // namespace cosim::wire
