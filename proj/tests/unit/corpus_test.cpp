#include <gtest/gtest.h>

#include <sstream>

#include "support/temp_dir.hpp"
#include "tmhc/corpus.hpp"
#include "tmhc/error.hpp"
#include "tmhc/io.hpp"

namespace tmhc {
namespace {

using testing::TempDir;

TEST(TextDir, LoadsFilesAndJoinsLabels) {
  TempDir dir;
  std::filesystem::create_directories(dir / "docs");
  write_file(dir / "docs/b.txt", "second");
  write_file(dir / "docs/a.txt", "first");
  write_file(dir / "labels.tsv", "# id\tclass\na\tsports\nb\tpolitics\n");

  const Corpus c = load_text_dir(dir / "docs", dir / "labels.tsv");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.documents()[0].id, "a");
  EXPECT_EQ(c.documents()[0].gold_class, "sports");
  EXPECT_EQ(c.documents()[1].text, "second");
  EXPECT_EQ(c.classes(), (std::set<std::string>{"politics", "sports"}));
}

TEST(TextDir, NoLabelsMeansNoClasses) {
  TempDir dir;
  write_file(dir / "only.txt", "body");
  const Corpus c = load_text_dir(dir.path());
  EXPECT_EQ(c.size(), 1u);
  EXPECT_TRUE(c.classes().empty());
  EXPECT_FALSE(c.documents()[0].gold_class);
}

TEST(TextDir, LabelForMissingDocumentIsAnError) {
  TempDir dir;
  std::filesystem::create_directories(dir / "docs");
  write_file(dir / "docs/a.txt", "x");
  write_file(dir / "docs/b.txt", "y");
  write_file(dir / "labels.tsv", "a\tsports\nb\tpolitics\nc\tother\n");
  try {
    load_text_dir(dir / "docs", dir / "labels.tsv");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "unmatched label id: c");
  }
}

TEST(TextDir, DocumentWithoutLabelIsAnError) {
  TempDir dir;
  std::filesystem::create_directories(dir / "docs");
  write_file(dir / "docs/a.txt", "x");
  write_file(dir / "docs/z.txt", "y");
  write_file(dir / "labels.tsv", "a\tsports\n");
  EXPECT_THROW(load_text_dir(dir / "docs", dir / "labels.tsv"), InputError);
}

TEST(TextDir, EmptyFileNeedsLenient) {
  TempDir dir;
  write_file(dir / "empty.txt", "");
  EXPECT_THROW(load_text_dir(dir.path()), InputError);
  LoadOptions lenient;
  lenient.lenient = true;
  EXPECT_EQ(load_text_dir(dir.path(), std::nullopt, lenient).size(), 1u);
}

TEST(Jsonl, LoadsInLineOrder) {
  std::istringstream in(R"({"id":"1","text":"a","class":"x"}
{"id":"2","text":"b","class":"x"}
{"id":"3","text":"c","class":"y"}
)");
  const Corpus c = parse_jsonl(in);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.documents()[2].id, "3");
  EXPECT_EQ(c.classes().size(), 2u);
}

TEST(Jsonl, EmptyInputGivesEmptyCorpus) {
  std::istringstream in("");
  EXPECT_TRUE(parse_jsonl(in).empty());
}

TEST(Jsonl, ReportsLineNumbers) {
  std::istringstream missing_id("{\"id\":\"1\",\"text\":\"a\"}\n{\"text\":\"b\"}\n");
  try {
    parse_jsonl(missing_id);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "line 2: missing id");
  }
  std::istringstream malformed("{\"id\":\"1\",\"text\":\"a\"}\n{not json\n");
  try {
    parse_jsonl(malformed);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 2:", 0), 0u);
  }
}

TEST(Jsonl, DuplicateIdNamesTheId) {
  std::istringstream in("{\"id\":\"dup\",\"text\":\"a\"}\n{\"id\":\"dup\",\"text\":\"b\"}\n");
  try {
    parse_jsonl(in);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate id: dup"), std::string::npos);
  }
}

TEST(Jsonl, RoundTripIsIdentity) {
  const Corpus original({{"a", "text with \"quotes\"\nand newline", "x"},
                         {"b", "ünïcode", std::nullopt},
                         {"c", "tab\there", "y"}});
  std::stringstream buf;
  save_jsonl(original, buf);
  EXPECT_EQ(parse_jsonl(buf), original);
}

TEST(Jsonl, LoadingTwiceIsDeterministic) {
  TempDir dir;
  write_file(dir / "c.jsonl", "{\"id\":\"1\",\"text\":\"a\",\"class\":\"x\"}\n");
  EXPECT_EQ(load_jsonl(dir / "c.jsonl"), load_jsonl(dir / "c.jsonl"));
}

constexpr const char* kReuters = R"(<!DOCTYPE lewis SYSTEM "lewis.dtd">
<REUTERS TOPICS="YES" LEWISSPLIT="TRAIN" NEWID="1">
<DATE>26-FEB-1987</DATE>
<TOPICS><D>earn</D></TOPICS>
<PLACES><D>usa</D></PLACES>
<UNKNOWN attr=1>skipped</UNKNOWN>
<TEXT>&#2;
<TITLE>PROFIT UP</TITLE>
<BODY>Shares &amp; profit rose; AT&T said 5 &lt; 6 &#3;</BODY></TEXT>
</REUTERS>
<REUTERS TOPICS="YES" NEWID=2>
<TOPICS><D>acq</D><D>earn</D></TOPICS>
<TEXT><BODY>Merger agreed.</BODY></TEXT>
</REUTERS>
<REUTERS TOPICS="NO" NEWID="3">
<TOPICS></TOPICS>
<TEXT><BODY>No topic here.</BODY></TEXT>
</REUTERS>
)";

TEST(Sgml, ParsesRecords) {
  const auto r = parse_sgml_lenient(kReuters);
  ASSERT_EQ(r.corpus.size(), 2u);
  const auto& d1 = r.corpus.documents()[0];
  EXPECT_EQ(d1.id, "1");
  EXPECT_EQ(d1.gold_class, "earn");
  EXPECT_EQ(d1.text, "Shares & profit rose; AT&T said 5 < 6 ");
  EXPECT_EQ(r.corpus.documents()[1].gold_class, "acq");  // first of two topics
  EXPECT_EQ(r.corpus.classes(), (std::set<std::string>{"acq", "earn"}));
  EXPECT_EQ(r.dropped_unlabeled, 1u);
}

TEST(Sgml, KeepUnlabeledRetainsTopiclessRecords) {
  LoadOptions options;
  options.keep_unlabeled = true;
  const auto r = parse_sgml_lenient(kReuters, options);
  ASSERT_EQ(r.corpus.size(), 3u);
  EXPECT_FALSE(r.corpus.documents()[2].gold_class);
}

TEST(Sgml, TruncatedRecordIsCountedAndSkipped) {
  const std::string text =
      "<REUTERS NEWID=\"7\"><TOPICS><D>grain</D></TOPICS><BODY>cut off"
      "<REUTERS NEWID=\"8\"><TOPICS><D>corn</D></TOPICS><BODY>ok</BODY></REUTERS>"
      "<REUTERS NEWID=\"9\"><TOPICS><D>corn</D>";
  const auto r = parse_sgml_lenient(text);
  EXPECT_EQ(r.truncated_records, 2u);
  ASSERT_EQ(r.corpus.size(), 1u);
  EXPECT_EQ(r.corpus.documents()[0].id, "8");
}

TEST(Sgml, NoRecordsIsAnError) {
  try {
    parse_sgml_lenient("<html>nothing</html>");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "no SGML records");
  }
}

}  // namespace
}  // namespace tmhc
