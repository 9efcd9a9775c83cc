#include "cosim/alignment.hpp"

#include "cosim/errors.hpp"
#include "cosim/text.hpp"

namespace cosim {

void ContextEmbedding::validate() const {
  if (!text::is_valid_utf8(context_text)) throw EncodingError(0, "context text is not valid UTF-8");
  const std::size_t length = text::scalar_length(context_text);
  const std::size_t dim = dimension();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (tok.start >= tok.end || tok.end > length) {
      throw AlignmentError("token " + std::to_string(i) + " span [" + std::to_string(tok.start) +
                           ", " + std::to_string(tok.end) + ") outside context of length " +
                           std::to_string(length));
    }
    if (i > 0 && tok.start < tokens[i - 1].end) {
      throw AlignmentError("token " + std::to_string(i) + " overlaps or precedes token " +
                           std::to_string(i - 1));
    }
    if (tok.vector.dim() != dim) {
      throw DimensionError("token " + std::to_string(i) + " has dimension " +
                           std::to_string(tok.vector.dim()) + ", expected " + std::to_string(dim));
    }
  }
}

CharSpan locate_occurrence(std::string_view context, std::string_view surface_form,
                           std::string_view context_id) {
  const auto where = [&] {
    std::string msg = "'" + std::string(surface_form) + "' not found in context";
    if (!context_id.empty()) msg += " " + std::string(context_id);
    return msg;
  };
  if (surface_form.empty()) throw WordNotFoundError("empty surface form");
  auto haystack = text::decode_utf8(context);
  auto needle = text::decode_utf8(surface_form);
  if (!haystack || !needle) throw EncodingError(0, "invalid UTF-8 while locating " + where());

  auto pos = haystack->find(*needle);
  if (pos == std::u32string::npos) pos = text::fold(*haystack).find(text::fold(*needle));
  if (pos == std::u32string::npos) throw WordNotFoundError(where());
  return {pos, pos + needle->size()};
}

std::vector<std::size_t> span_to_tokens(const CharSpan& span, const ContextEmbedding& embedding) {
  if (span.start >= span.end || span.end > text::scalar_length(embedding.context_text)) {
    throw AlignmentError("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                         ") is outside the context");
  }
  std::vector<std::size_t> cover;
  for (std::size_t i = 0; i < embedding.tokens.size(); ++i) {
    const Token& tok = embedding.tokens[i];
    if (tok.start < span.end && tok.end > span.start) cover.push_back(i);
  }
  if (cover.empty()) {
    throw AlignmentError("no token overlaps span [" + std::to_string(span.start) + ", " +
                         std::to_string(span.end) + ")");
  }
  return cover;
}

WordVector extract_word_vector(const ContextEmbedding& embedding, std::string_view surface_form,
                               std::string_view context_id) {
  const CharSpan span = locate_occurrence(embedding.context_text, surface_form, context_id);
  const auto cover = span_to_tokens(span, embedding);
  if (cover.size() == 1) return embedding.tokens[cover.front()].vector;
  std::vector<WordVector> pieces;
  pieces.reserve(cover.size());
  for (std::size_t i : cover) pieces.push_back(embedding.tokens[i].vector);
  return mean_pool(pieces);
}

}  // namespace cosim
