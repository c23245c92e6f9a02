#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "oracle/similarity_oracle.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"
#include "tmhc/error.hpp"
#include "tmhc/similarity.hpp"

namespace tmhc {
namespace {

TopicMapDoc sports_doc(std::string id = "a") {
  return {std::move(id), {"sports"}, {{"sports", "cricket"}}, {{"cricket", "pakistan"}}};
}

TEST(SimPair, IdenticalDocsScoreOne) {
  const auto r = sim_pair(sports_doc(), sports_doc("b"));
  EXPECT_EQ(r.score, 1.0);
  EXPECT_EQ(r.breakdown.common(), 3u);
  EXPECT_EQ(r.breakdown.total(), 3u);
}

TEST(SimPair, WorkedExampleThreeSevenths) {
  const TopicMapDoc a{"a", {"sports", "politics"}, {{"sports", "cricket"}, {"politics", "election"}}, {{"cricket", "pakistan"}}};
  const TopicMapDoc b{"b", {"sports"}, {{"sports", "cricket"}, {"sports", "hockey"}}, {{"cricket", "pakistan"}, {"cricket", "karachi"}}};
  const auto r = sim_pair(a, b);
  EXPECT_EQ(r.breakdown, (SimilarityBreakdown{1, 1, 1, 2, 3, 2}));
  EXPECT_EQ(r.score, 3.0 / 7.0);
  EXPECT_NEAR(r.score, 0.428571, 1e-6);
  EXPECT_EQ(oracle::similarity(a, b), r.score);
}

TEST(SimPair, DisjointScoresZero) {
  const TopicMapDoc b{"b", {"economy"}, {{"economy", "bank"}}, {}};
  EXPECT_EQ(sim_pair(sports_doc(), b).score, 0.0);
}

TEST(SimPair, EmptyVersusEmptyIsZero) {
  const TopicMapDoc e{"e", {}, {}, {}};
  EXPECT_EQ(sim_pair(e, e).score, 0.0);
  EXPECT_EQ(sim_pair(e, sports_doc()).score, 0.0);
}

TEST(SimPair, SumDenominatorCapsSelfSimilarityAtHalf) {
  EXPECT_EQ(sim_pair(sports_doc(), sports_doc(), Denominator::sum_size).score, 0.5);
}

TEST(SimPair, RandomPairProperties) {
  testing::Gen gen(2024);
  for (int i = 0; i < 10000; ++i) {
    const TopicMapDoc a = gen.topic_map_doc("a");
    const TopicMapDoc b = gen.topic_map_doc("b");
    const double ab = sim_pair(a, b).score;
    ASSERT_EQ(ab, sim_pair(b, a).score);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0);
    ASSERT_EQ(ab, oracle::similarity(a, b));
    if (!a.empty()) {
      ASSERT_EQ(sim_pair(a, a).score, 1.0);
    }
  }
}

TEST(SimPair, Monotonicity) {
  testing::Gen gen(7);
  for (int i = 0; i < 2000; ++i) {
    TopicMapDoc a = gen.topic_map_doc("a");
    TopicMapDoc b = gen.topic_map_doc("b");
    const double base = sim_pair(a, b).score;
    const std::string fresh = "fresh" + std::to_string(i);

    TopicMapDoc a2 = a, b2 = b;
    a2.topics.insert(fresh);
    b2.topics.insert(fresh);
    EXPECT_GE(sim_pair(a2, b2).score, base);

    TopicMapDoc a3 = a;
    a3.topics.insert(fresh);
    EXPECT_LE(sim_pair(a3, b).score, base);
  }
}

TEST(BuildMatrix, SingleDoc) {
  const std::vector<TopicMapDoc> docs = {sports_doc()};
  const auto m = build_matrix(docs);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m(0, 0), 1.0);
}

TEST(BuildMatrix, TwoDisjointDocs) {
  const std::vector<TopicMapDoc> docs = {sports_doc("a"), TopicMapDoc{"b", {"economy"}, {}, {}}};
  const auto m = build_matrix(docs);
  EXPECT_EQ(m.values(), (std::vector<double>{1, 0, 0, 1}));
  EXPECT_EQ(m.doc_ids(), (std::vector<std::string>{"a", "b"}));
}

TEST(BuildMatrix, EqualDocsGiveEqualRows) {
  const std::vector<TopicMapDoc> docs = {sports_doc("a"), sports_doc("b"), TopicMapDoc{"c", {"sports"}, {}, {}}};
  const auto m = build_matrix(docs);
  EXPECT_EQ(m(0, 1), 1.0);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(0, j), m(1, j));
}

TEST(BuildMatrix, DuplicateIdIsNamed) {
  const std::vector<TopicMapDoc> docs = {sports_doc("same"), sports_doc("same")};
  try {
    build_matrix(docs);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("same"), std::string::npos);
  }
}

TEST(BuildMatrix, BitIdenticalAcrossThreadCountsAndBruteForce) {
  testing::Gen gen(11);
  std::vector<TopicMapDoc> docs;
  for (int i = 0; i < 97; ++i) docs.push_back(gen.topic_map_doc("d" + std::to_string(i)));
  const auto one = build_matrix(docs, {Denominator::union_size, 1});
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    EXPECT_EQ(build_matrix(docs, {Denominator::union_size, threads}), one) << threads;
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      ASSERT_EQ(one(i, j), sim_pair(docs[i], docs[j]).score);
    }
  }
}

SimilarityMatrix sample_matrix() {
  SimilarityMatrix m({"x", "y,z", "w"});
  m.set(0, 0, 1.0);
  m.set(1, 1, 1.0);
  m.set(2, 2, 0.0);
  m.set(0, 1, 3.0 / 7.0);
  m.set(0, 2, 0.1);
  m.set(1, 2, 2.0 / 3.0);
  return m;
}

TEST(MatrixIo, CsvRoundTripIsExact) {
  const auto m = sample_matrix();
  std::stringstream s;
  write_matrix_csv(m, s);
  EXPECT_EQ(read_matrix_csv(s), m);
}

TEST(MatrixIo, BinaryLayout) {
  const auto m = sample_matrix();
  std::stringstream s;
  write_matrix_binary(m, s);
  const std::string bytes = s.str();
  ASSERT_EQ(bytes.size(), 4u + 4u + 6u * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "TMSM");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 3u);
  EXPECT_EQ(bytes[5], 0);
  double second = 0;
  std::memcpy(&second, bytes.data() + 16, sizeof(second));
  EXPECT_EQ(second, 3.0 / 7.0);
}

TEST(MatrixIo, BinaryRoundTripKeepsValues) {
  const auto m = sample_matrix();
  std::stringstream s;
  write_matrix_binary(m, s);
  const auto back = read_matrix_binary(s);
  EXPECT_EQ(back.values(), m.values());
  EXPECT_EQ(back.doc_ids(), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(MatrixIo, BadMagicAndTruncation) {
  std::stringstream bad("XXXX\x01\x00\x00\x00");
  EXPECT_THROW(read_matrix_binary(bad), InputError);
  std::stringstream s;
  write_matrix_binary(sample_matrix(), s);
  std::stringstream cut(s.str().substr(0, 20));
  EXPECT_THROW(read_matrix_binary(cut), InputError);
}

TEST(MatrixIo, SaveLoadDispatchesOnExtension) {
  testing::TempDir dir;
  const auto m = sample_matrix();
  save_matrix(m, dir / "m.csv");
  save_matrix(m, dir / "m.tmsm");
  EXPECT_EQ(load_matrix(dir / "m.csv"), m);
  EXPECT_EQ(load_matrix(dir / "m.tmsm").values(), m.values());
}

}  // namespace
}  // namespace tmhc
