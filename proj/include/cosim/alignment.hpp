#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cosim/vecmath.hpp"

namespace cosim {

/// Half-open range of Unicode scalar offsets.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start; }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  WordVector vector;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Per-token embeddings of one context.
struct ContextEmbedding {
  std::string context_text;
  std::vector<Token> tokens;

  /// Dimension of the token vectors, or 0 if there are no tokens.
  std::size_t dimension() const noexcept { return tokens.empty() ? 0 : tokens.front().vector.dim(); }

  /// Checks span ordering, bounds against the text (in scalar values) and
  /// dimension uniformity. Throws AlignmentError, DimensionError,
  /// EncodingError.
  void validate() const;

  friend bool operator==(const ContextEmbedding&, const ContextEmbedding&) = default;
};

/// First case-sensitive occurrence of `surface_form`; failing that, the
/// first case-insensitive one. Throws WordNotFoundError mentioning
/// `context_id` when given.
CharSpan locate_occurrence(std::string_view context, std::string_view surface_form,
                           std::string_view context_id = {});

/// Indices of all tokens overlapping `span` by at least one character.
/// Throws AlignmentError when none do or the span is out of range.
std::vector<std::size_t> span_to_tokens(const CharSpan& span, const ContextEmbedding& embedding);

/// Mean of the token vectors covering the first occurrence of the form.
WordVector extract_word_vector(const ContextEmbedding& embedding, std::string_view surface_form,
                               std::string_view context_id = {});

}  // namespace cosim
