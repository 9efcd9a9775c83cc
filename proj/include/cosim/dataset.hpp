#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosim {

/// Task language tracks.
enum class Language { en, hr, fi, sl };

std::string_view language_code(Language lang);
/// Accepts "en", "hr", "fi", "sl". Throws ConfigError.
Language parse_language(std::string_view code);

/// One row of a pair file.
struct PairRecord {
  std::string id;
  Language language = Language::en;
  std::string word1;
  std::string word2;
  std::string context1;
  std::string context2;
  std::string word1_context1;
  std::string word2_context1;
  std::string word1_context2;
  std::string word2_context2;

  /// In-context surface forms of (word1, word2) for context 1 or 2.
  std::string_view surface1(int context) const { return context == 1 ? word1_context1 : word1_context2; }
  std::string_view surface2(int context) const { return context == 1 ? word2_context1 : word2_context2; }
  std::string_view context(int which) const { return which == 1 ? context1 : context2; }

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

/// Column names in file order.
inline constexpr std::array<std::string_view, 8> kPairColumns = {
    "word1",          "word2",          "context1",       "context2",
    "word1_context1", "word2_context1", "word1_context2", "word2_context2"};

struct GoldRecord {
  std::string id;
  double change = 0.0;

  friend bool operator==(const GoldRecord&, const GoldRecord&) = default;
};

struct Diagnostic {
  std::size_t line = 0;    // 1-based source line, 0 for record-level problems
  std::size_t record = 0;  // 0-based record index for record-level problems
  std::string id;
  std::string field;
  std::string problem;
};

struct ValidationReport {
  std::size_t row_count = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> per_language;
  std::vector<Diagnostic> diagnostics;

  bool clean() const noexcept { return diagnostics.empty(); }
};

struct ParseOptions {
  /// Removes <strong>/</strong> target markers from contexts before use.
  bool strip_markup = false;
};

/// Result of a lenient scan: well-formed rows plus one diagnostic per
/// malformed row.
struct ScanResult {
  std::vector<PairRecord> records;
  std::vector<Diagnostic> problems;
  std::size_t data_rows = 0;
};

ScanResult scan_records(std::istream& source, Language language, const ParseOptions& options = {});

/// Strict parse. The first line is a header iff its first field is "word1"
/// (or "id" followed by "word1", which declares an id column). Without an id
/// column, ids are zero-based data-row ordinals.
/// Throws FormatError (with line number) or EncodingError.
std::vector<PairRecord> parse_records(std::istream& source, Language language,
                                      const ParseOptions& options = {});

/// Writes a header with an id column followed by one row per record.
void write_records(std::ostream& out, std::span<const PairRecord> records);

/// Reports empty fields, surface forms missing from their context, and
/// per-language counts. Never throws, never mutates.
ValidationReport validate_records(std::span<const PairRecord> records);

/// Scan + validate: malformed rows count as rejected with their diagnostics.
ValidationReport validate_stream(std::istream& source, Language language,
                                 const ParseOptions& options = {});

/// `id<TAB>change` rows with optional `id\tchange` header.
/// Throws FormatError, EncodingError, DuplicateIdError.
std::vector<GoldRecord> parse_gold(std::istream& source);

std::string strip_markup(std::string_view context);

}  // namespace cosim
