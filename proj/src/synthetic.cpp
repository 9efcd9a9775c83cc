#include "cosim/errors.hpp"
#include "cosim/providers.hpp"
#include "cosim/text.hpp"

namespace cosim {

namespace {

// SplitMix64 (Steele, Lea, Flood): a fixed, splittable generator whose
// output is identical on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

constexpr std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Uniform in [-1, 1).
double unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

constexpr double kContextWeight = 0.5;

ContextEmbedding embed_context(std::string_view context, const ContextKey& key, std::uint64_t seed,
                               std::size_t dimension) {
  const auto decoded = text::decode_utf8(context);
  if (!decoded) throw EncodingError(0, "context of pair '" + key.pair_id + "' is not valid UTF-8");
  const std::u32string& cps = *decoded;

  const std::uint64_t key_hash =
      mix(fnv1a(key.pair_id) ^ (static_cast<std::uint64_t>(key.context) * 0xD1B54A32D192ED03ULL));

  ContextEmbedding emb{std::string(context), {}};
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < cps.size() && !is_space(cps[i])) ++i;
    std::string tok = text::encode_utf8(std::u32string_view(cps).substr(start, i - start));

    const std::uint64_t text_hash = fnv1a(tok);
    std::uint64_t base_state = mix(seed ^ text_hash);
    std::uint64_t ctx_state = mix(mix(seed + 0x632BE59BD9B4E019ULL) ^ text_hash ^ key_hash);
    std::vector<double> v(dimension);
    for (auto& x : v) {
      const double base = unit(base_state);
      x = base + kContextWeight * unit(ctx_state);
    }
    emb.tokens.push_back(Token{std::move(tok), start, i, WordVector(std::move(v))});
  }
  return emb;
}

}  // namespace

EmbeddingStore synthetic_embeddings(std::span<const PairRecord> records, std::uint64_t seed,
                                    std::size_t dimension) {
  EmbeddingStore store(dimension, "synthetic:seed=" + std::to_string(seed) +
                                      ":dim=" + std::to_string(dimension));
  for (const PairRecord& r : records) {
    for (int c : {1, 2}) {
      ContextKey key{r.id, c};
      if (store.contains(key)) continue;
      auto emb = embed_context(r.context(c), key, seed, dimension);
      store.insert(std::move(key), std::move(emb));
    }
  }
  return store;
}

EmbeddingStore SyntheticProvider::provide(std::span<const PairRecord> records) const {
  return synthetic_embeddings(records, seed_, dimension_);
}

}  // namespace cosim
