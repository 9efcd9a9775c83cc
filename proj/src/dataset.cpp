#include "cosim/dataset.hpp"

#include <istream>
#include <ostream>
#include <unordered_set>

#include "cosim/alignment.hpp"
#include "cosim/errors.hpp"
#include "cosim/text.hpp"

namespace cosim {

std::string_view language_code(Language lang) {
  switch (lang) {
    case Language::en: return "en";
    case Language::hr: return "hr";
    case Language::fi: return "fi";
    case Language::sl: return "sl";
  }
  return "?";
}

Language parse_language(std::string_view code) {
  if (code == "en") return Language::en;
  if (code == "hr") return Language::hr;
  if (code == "fi") return Language::fi;
  if (code == "sl") return Language::sl;
  throw ConfigError("unknown language code '" + std::string(code) + "' (expected en|hr|fi|sl)");
}

std::string strip_markup(std::string_view context) {
  std::string out;
  out.reserve(context.size());
  std::size_t pos = 0;
  while (pos < context.size()) {
    if (context.substr(pos, 8) == "<strong>") {
      pos += 8;
    } else if (context.substr(pos, 9) == "</strong>") {
      pos += 9;
    } else {
      out.push_back(context[pos++]);
    }
  }
  return out;
}

namespace {

bool is_pair_header(const std::vector<std::string_view>& fields, bool& has_id) {
  if (!fields.empty() && fields[0] == "word1") {
    has_id = false;
    return true;
  }
  if (fields.size() > 1 && fields[0] == "id" && fields[1] == "word1") {
    has_id = true;
    return true;
  }
  return false;
}

}  // namespace

ScanResult scan_records(std::istream& source, Language language, const ParseOptions& options) {
  ScanResult result;
  std::string raw;
  std::size_t line_no = 0;
  bool has_id = false;
  bool first = true;
  while (std::getline(source, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    if (!text::is_valid_utf8(line)) {
      ++result.data_rows;
      result.problems.push_back({line_no, 0, {}, {}, "invalid UTF-8"});
      first = false;
      continue;
    }
    const auto fields = text::split(line, '\t');
    if (first) {
      first = false;
      if (is_pair_header(fields, has_id)) {
        const std::size_t expected = kPairColumns.size() + (has_id ? 1 : 0);
        if (fields.size() != expected) {
          result.problems.push_back({line_no, 0, {}, {}, "header has " + std::to_string(fields.size()) +
                                                          " columns, expected " + std::to_string(expected)});
        }
        continue;
      }
    }
    if (line.empty()) continue;

    ++result.data_rows;
    const std::size_t expected = kPairColumns.size() + (has_id ? 1 : 0);
    if (fields.size() != expected) {
      result.problems.push_back({line_no, 0, {}, {}, "expected " + std::to_string(expected) +
                                                      " tab-separated fields, found " +
                                                      std::to_string(fields.size())});
      continue;
    }
    std::size_t f = 0;
    PairRecord rec;
    rec.language = language;
    rec.id = has_id ? std::string(fields[f++]) : std::to_string(result.records.size());
    for (auto* slot : {&rec.word1, &rec.word2, &rec.context1, &rec.context2, &rec.word1_context1,
                       &rec.word2_context1, &rec.word1_context2, &rec.word2_context2}) {
      *slot = std::string(fields[f++]);
    }
    if (options.strip_markup) {
      rec.context1 = strip_markup(rec.context1);
      rec.context2 = strip_markup(rec.context2);
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::vector<PairRecord> parse_records(std::istream& source, Language language,
                                      const ParseOptions& options) {
  ScanResult scan = scan_records(source, language, options);
  if (!scan.problems.empty()) {
    const Diagnostic& d = scan.problems.front();
    if (d.problem == "invalid UTF-8") throw EncodingError(d.line, d.problem);
    throw FormatError(d.line, d.problem);
  }
  return std::move(scan.records);
}

void write_records(std::ostream& out, std::span<const PairRecord> records) {
  out << "id";
  for (auto col : kPairColumns) out << '\t' << col;
  out << '\n';
  for (const auto& r : records) {
    out << r.id << '\t' << r.word1 << '\t' << r.word2 << '\t' << r.context1 << '\t' << r.context2
        << '\t' << r.word1_context1 << '\t' << r.word2_context1 << '\t' << r.word1_context2 << '\t'
        << r.word2_context2 << '\n';
  }
}

ValidationReport validate_records(std::span<const PairRecord> records) {
  ValidationReport report;
  report.row_count = records.size();
  std::unordered_set<std::string_view> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PairRecord& r = records[i];
    ++report.per_language[std::string(language_code(r.language))];
    const std::size_t before = report.diagnostics.size();
    if (!ids.insert(r.id).second) report.diagnostics.push_back({0, i, r.id, "id", "duplicate id"});

    const std::array<const std::string*, 8> values = {&r.word1,          &r.word2,
                                                      &r.context1,       &r.context2,
                                                      &r.word1_context1, &r.word2_context1,
                                                      &r.word1_context2, &r.word2_context2};
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (text::trim(*values[c]).empty()) {
        report.diagnostics.push_back({0, i, r.id, std::string(kPairColumns[c]), "empty field"});
      }
    }
    // surface form column index -> context column index
    constexpr std::array<std::pair<std::size_t, std::size_t>, 4> occurrences = {
        {{4, 2}, {5, 2}, {6, 3}, {7, 3}}};
    for (auto [form, ctx] : occurrences) {
      if (text::trim(*values[form]).empty() || text::trim(*values[ctx]).empty()) continue;
      try {
        locate_occurrence(*values[ctx], *values[form]);
      } catch (const Error&) {
        report.diagnostics.push_back({0, i, r.id, std::string(kPairColumns[form]),
                                      "not found in " + std::string(kPairColumns[ctx])});
      }
    }
    if (report.diagnostics.size() == before) {
      ++report.accepted;
    } else {
      ++report.rejected;
    }
  }
  return report;
}

ValidationReport validate_stream(std::istream& source, Language language,
                                 const ParseOptions& options) {
  ScanResult scan = scan_records(source, language, options);
  ValidationReport report = validate_records(scan.records);
  for (auto& d : scan.problems) {
    if (d.problem.rfind("header", 0) != 0) {
      ++report.row_count;
      ++report.rejected;
    }
    report.diagnostics.push_back(std::move(d));
  }
  return report;
}

std::vector<GoldRecord> parse_gold(std::istream& source) {
  std::vector<GoldRecord> gold;
  std::unordered_set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(source, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    if (!text::is_valid_utf8(line)) throw EncodingError(line_no, "invalid UTF-8");
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    if (line_no == 1 && fields.size() == 2 && fields[0] == "id" && fields[1] == "change") continue;
    if (fields.size() != 2) {
      throw FormatError(line_no, "expected 2 fields (id, change), found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw FormatError(line_no, "empty id");
    const auto change = text::parse_real(fields[1]);
    if (!change) throw FormatError(line_no, "change '" + std::string(fields[1]) + "' is not a finite number");
    std::string id(fields[0]);
    if (!seen.insert(id).second) {
      throw DuplicateIdError("line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
    }
    gold.push_back({std::move(id), *change});
  }
  return gold;
}

}  // namespace cosim
