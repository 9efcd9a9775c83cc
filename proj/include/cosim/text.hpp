#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cosim::text {

// UTF-8 helpers. Offsets everywhere in the library count Unicode scalar
// values, never bytes.

bool is_valid_utf8(std::string_view bytes);

/// Decodes strict UTF-8 (no overlongs, no surrogates). Returns nullopt on
/// any invalid sequence.
std::optional<std::u32string> decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view code_points);

/// Number of scalar values; input must be valid UTF-8.
std::size_t scalar_length(std::string_view bytes);

/// Simple one-to-one case folding for the Latin, Greek and Cyrillic blocks.
/// Code points outside those blocks map to themselves, so folding never
/// changes string length.
char32_t simple_fold(char32_t c);
std::u32string fold(std::u32string_view s);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

/// Strips one trailing '\r' (CRLF input).
std::string_view chomp(std::string_view line);

/// Parses a finite double occupying the whole field.
std::optional<double> parse_real(std::string_view field);

/// printf-style "%.<digits>g". 17 digits round-trips every double.
std::string format_real(double value, int significant_digits = 17);
std::string format_fixed(double value, int decimals);

}  // namespace cosim::text
