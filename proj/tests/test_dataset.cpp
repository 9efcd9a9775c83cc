#include <doctest.h>

#include <sstream>

#include "cosim/dataset.hpp"
#include "cosim/errors.hpp"
#include "fixtures.hpp"

using namespace cosim;

namespace {

std::vector<PairRecord> parse(const std::string& text, Language lang = Language::en) {
  std::istringstream in(text);
  return parse_records(in, lang);
}

std::string row(std::size_t fields) {
  static const char* cols[] = {"bank", "shore", "The bank of the shore", "A shore by the bank",
                               "bank", "shore", "bank", "shore", "extra"};
  std::string s;
  for (std::size_t i = 0; i < fields; ++i) s += (i ? "\t" : "") + std::string(cols[i % 9]);
  return s;
}

}  // namespace

TEST_CASE("parse_records reads the eight columns in order") {
  const auto recs =
      parse("bank\tshore\tThe bank of the river\tThe bank raised rates\tbank\tshore\tbank\tshore\n");
  REQUIRE(recs.size() == 1);
  const auto& r = recs[0];
  CHECK(r.id == "0");
  CHECK(r.word1 == "bank");
  CHECK(r.word2 == "shore");
  CHECK(r.context1 == "The bank of the river");
  CHECK(r.context2 == "The bank raised rates");
  CHECK(r.word1_context1 == "bank");
  CHECK(r.word2_context1 == "shore");
  CHECK(r.word1_context2 == "bank");
  CHECK(r.word2_context2 == "shore");
}

TEST_CASE("parse_records header, CRLF and ordinals") {
  const std::string header =
      "word1\tword2\tcontext1\tcontext2\tword1_context1\tword2_context1\tword1_context2\tword2_context2\r\n";
  const auto recs = parse(header + row(8) + "\r\n" + row(8) + "\r\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].id == "0");
  CHECK(recs[1].id == "1");
  CHECK(recs[1].word2_context2 == "shore");  // no stray '\r'
}

TEST_CASE("parse_records honours an id column") {
  std::istringstream in("id\tword1\tword2\tcontext1\tcontext2\tword1_context1\tword2_context1\tword1_context2\t"
                        "word2_context2\nen_17\t" +
                        row(8) + "\n");
  const auto recs = parse_records(in, Language::fi);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].id == "en_17");
  CHECK(recs[0].language == Language::fi);
}

TEST_CASE("parse_records rejects wrong arity with the row number") {
  try {
    parse(row(8) + "\n" + row(7) + "\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse(row(9) + "\n"), FormatError);
}

TEST_CASE("parse_records rejects invalid UTF-8") {
  CHECK_THROWS_AS(parse("bank\xFF" + row(8).substr(4) + "\n"), EncodingError);
}

TEST_CASE("parse_records strips <strong> markers on request") {
  std::istringstream in("bank\tshore\tThe <strong>bank</strong> of\tx <strong>shore</strong>\tbank\tshore\tbank\tshore\n");
  const auto recs = parse_records(in, Language::en, ParseOptions{true});
  CHECK(recs[0].context1 == "The bank of");
  CHECK(recs[0].context2 == "x shore");
}

TEST_CASE("validate_records reports planted defects") {
  auto recs = cosim::testing::synthetic_records(24, 5, Language::fi);
  auto clean = validate_records(recs);
  CHECK(clean.row_count == 24);
  CHECK(clean.accepted == 24);
  CHECK(clean.diagnostics.empty());
  CHECK(clean.per_language.at("fi") == 24);

  recs[3].word1_context1 = "zebra";
  recs[5].word2 = "   ";
  const auto before = recs;
  const auto report = validate_records(recs);
  CHECK(recs == before);  // never mutates
  REQUIRE(report.diagnostics.size() == 2);
  CHECK(report.diagnostics[0].record == 3);
  CHECK(report.diagnostics[0].field == "word1_context1");
  CHECK(report.diagnostics[1].field == "word2");
  CHECK(report.accepted + report.rejected == report.row_count);
  CHECK(report.rejected == 2);

  CHECK(validate_records({}).row_count == 0);
}

TEST_CASE("validate_records accepts case-insensitive matches and flags duplicate ids") {
  auto recs = cosim::testing::synthetic_records(3);
  recs[0].word1_context1[0] = static_cast<char>(std::toupper(recs[0].word1_context1[0]));
  recs[2].id = recs[1].id;
  const auto report = validate_records(recs);
  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].field == "id");
}

TEST_CASE("validate_stream counts malformed rows as rejected") {
  std::istringstream in(row(8) + "\n" + row(7) + "\n" + row(8) + "\n");
  const auto report = validate_stream(in, Language::en);
  CHECK(report.row_count == 3);
  CHECK(report.accepted == 2);
  CHECK(report.rejected == 1);
  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].line == 2);
}

TEST_CASE("parse_gold") {
  {
    std::istringstream in("0\t1.5\n1\t-0.25");
    const auto gold = parse_gold(in);
    REQUIRE(gold.size() == 2);
    CHECK(gold[0] == GoldRecord{"0", 1.5});
    CHECK(gold[1] == GoldRecord{"1", -0.25});
  }
  {
    std::istringstream in("id\tchange\n7\t2\n");
    CHECK(parse_gold(in).size() == 1);
  }
  std::istringstream bad("0\tabc");
  CHECK_THROWS_AS(parse_gold(bad), FormatError);
  std::istringstream dup("0\t1.0\n0\t2.0");
  CHECK_THROWS_AS(parse_gold(dup), DuplicateIdError);
  std::istringstream nonfinite("0\tnan");
  CHECK_THROWS_AS(parse_gold(nonfinite), FormatError);
  std::istringstream arity("0\t1\t2");
  CHECK_THROWS_AS(parse_gold(arity), FormatError);
}

TEST_CASE("property: write_records then parse_records round-trips") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto recs = cosim::testing::synthetic_records(1 + seed % 9, seed, Language::sl);
    for (auto& r : recs) r.id = "sl-" + r.id + "-" + std::to_string(seed);
    recs.front().context1 += " čćžšđ";
    std::stringstream ss;
    write_records(ss, recs);
    CHECK(parse_records(ss, Language::sl) == recs);
  }
}

TEST_CASE("language codes") {
  for (auto lang : {Language::en, Language::hr, Language::fi, Language::sl}) {
    CHECK(parse_language(language_code(lang)) == lang);
  }
  CHECK_THROWS_AS(parse_language("de"), ConfigError);
}
