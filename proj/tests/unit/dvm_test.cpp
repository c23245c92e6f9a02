#include <gtest/gtest.h>

#include <cmath>

#include "support/planted.hpp"
#include "tmhc/dvm.hpp"
#include "tmhc/error.hpp"

namespace tmhc {
namespace {

Corpus corpus_of(const std::vector<std::string>& texts) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) docs.push_back({"d" + std::to_string(i), texts[i], std::nullopt});
  return Corpus(std::move(docs), true);
}

DocVector vec(std::vector<std::pair<std::uint32_t, double>> e) { return {std::move(e)}; }

TEST(Tfidf, UbiquitousTermGetsZeroWeight) {
  const TfidfModel m = tfidf_vectorize(corpus_of({"a b", "a c"}), {});
  EXPECT_EQ(m.vocabulary, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(m.weight(0, "a"), 0.0);
  EXPECT_EQ(m.weight(1, "a"), 0.0);
  EXPECT_NEAR(m.weight(0, "b"), 0.693147, 1e-6);
  EXPECT_EQ(m.weight(0, "b"), std::log(2.0));
  EXPECT_EQ(m.weight(0, "c"), 0.0);
}

TEST(Tfidf, TermFrequencyMultiplies) {
  const TfidfModel m = tfidf_vectorize(corpus_of({"b b b", "c"}), {});
  EXPECT_EQ(m.weight(0, "b"), 3.0 * std::log(2.0));
}

TEST(Tfidf, EmptyDocumentAndStopwords) {
  const TfidfModel m = tfidf_vectorize(corpus_of({"", "The market", "market"}), default_stopwords());
  EXPECT_TRUE(m.vectors[0].entries.empty());
  EXPECT_EQ(m.vocabulary, std::vector<std::string>{"market"});
}

TEST(Tfidf, TokensAreLowercasedAlphanumericRuns) {
  const TfidfModel m = tfidf_vectorize(corpus_of({"Q3-results: GDP2011!", "x"}), {});
  EXPECT_EQ(m.vocabulary, (std::vector<std::string>{"gdp2011", "q3", "results", "x"}));
}

TEST(Cosine, Examples) {
  const DocVector a = vec({{0, 1.0}, {1, 1.0}});
  const DocVector b = vec({{0, 1.0}, {2, 1.0}});
  EXPECT_NEAR(cosine(a, b), 0.5, 1e-15);
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-15);
  EXPECT_EQ(cosine(vec({{0, 2.0}}), vec({{1, 3.0}})), 0.0);
  EXPECT_EQ(cosine(vec({}), a), 0.0);
  EXPECT_EQ(cosine(vec({{0, 0.0}}), a), 0.0);
}

TEST(Cosine, MatrixIsSymmetricAndThreadIndependent) {
  const Corpus c = testing::planted_corpus(5, 6);
  const TfidfModel m = tfidf_vectorize(c, default_stopwords());
  std::vector<std::string> ids;
  for (const auto& d : c.documents()) ids.push_back(d.id);
  const auto one = build_cosine_matrix(m.vectors, ids, 1);
  EXPECT_EQ(build_cosine_matrix(m.vectors, ids, 4), one);
  for (std::size_t i = 0; i < one.size(); ++i) {
    for (std::size_t j = 0; j < one.size(); ++j) {
      ASSERT_EQ(one(i, j), one(j, i));
      ASSERT_GE(one(i, j), 0.0);
      ASSERT_LE(one(i, j), 1.0);
    }
  }
}

std::vector<std::string> ids_for(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("d" + std::to_string(i));
  return ids;
}

// Two groups of 3 on disjoint coordinates with a little in-group variation.
std::vector<DocVector> orthogonal_groups() {
  return {vec({{0, 1.0}, {1, 0.2}}), vec({{0, 0.8}, {1, 0.5}}), vec({{0, 0.3}, {1, 1.0}}),
          vec({{2, 1.0}, {3, 0.1}}), vec({{2, 0.4}, {3, 0.9}}), vec({{2, 0.7}, {3, 0.7}})};
}

TEST(BisectingKMeans, KOneAndKN) {
  const auto v = orthogonal_groups();
  EXPECT_EQ(bisecting_kmeans(v, ids_for(6), 1).cluster_of, std::vector<std::size_t>(6, 0));
  const Clustering all = bisecting_kmeans(v, ids_for(6), 6);
  EXPECT_EQ(all.k, 6u);
  EXPECT_EQ(all.cluster_of, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
}

TEST(BisectingKMeans, BadK) {
  const auto v = orthogonal_groups();
  EXPECT_THROW(bisecting_kmeans(v, ids_for(6), 0), InputError);
  EXPECT_THROW(bisecting_kmeans(v, ids_for(6), 7), InputError);
}

TEST(BisectingKMeans, OrthogonalGroupsRecoveredForAnySeed) {
  const auto v = orthogonal_groups();
  const std::vector<std::size_t> expected = {0, 0, 0, 1, 1, 1};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    for (std::size_t trials : {1u, 5u}) {
      BisectingOptions o;
      o.seed = seed;
      o.trials = trials;
      ASSERT_EQ(bisecting_kmeans(v, ids_for(6), 2, o).cluster_of, expected) << "seed " << seed;
    }
  }
}

// The planted split is a 2-means fixed point: every document is strictly
// closer (by cosine) to its own group's normalized centroid.
TEST(BisectingKMeans, PlantedSplitIsFixedPoint) {
  const auto v = orthogonal_groups();
  auto centroid = [&](std::size_t from) {
    std::map<std::uint32_t, double> sum;
    for (std::size_t i = from; i < from + 3; ++i) {
      double norm = 0;
      for (auto [t, w] : v[i].entries) norm += w * w;
      for (auto [t, w] : v[i].entries) sum[t] += w / std::sqrt(norm);
    }
    return DocVector{{sum.begin(), sum.end()}};
  };
  const DocVector c0 = centroid(0), c1 = centroid(3);
  for (std::size_t i = 0; i < 6; ++i) {
    const double own = cosine(v[i], i < 3 ? c0 : c1);
    const double other = cosine(v[i], i < 3 ? c1 : c0);
    EXPECT_GT(own, other);
  }
}

TEST(BisectingKMeans, DeterministicPerSeed) {
  const Corpus c = testing::planted_corpus(9, 10);
  const TfidfModel m = tfidf_vectorize(c, default_stopwords());
  const auto ids = ids_for(c.size());
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    BisectingOptions o;
    o.seed = seed;
    const Clustering a = bisecting_kmeans(m.vectors, ids, 4, o);
    EXPECT_EQ(a, bisecting_kmeans(m.vectors, ids, 4, o));
    EXPECT_EQ(a.k, 4u);
  }
}

TEST(BisectingKMeans, ZeroVectorsStillSplit) {
  const std::vector<DocVector> v(4);
  const Clustering c = bisecting_kmeans(v, ids_for(4), 3);
  EXPECT_EQ(c.k, 3u);
  EXPECT_EQ(c.size(), 4u);
}

}  // namespace
}  // namespace tmhc
