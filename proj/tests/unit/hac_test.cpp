#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "oracle/hac_oracle.hpp"
#include "support/generators.hpp"
#include "tmhc/error.hpp"
#include "tmhc/hac.hpp"

namespace tmhc {
namespace {

SimilarityMatrix three_docs() {
  SimilarityMatrix m({"0", "1", "2"});
  for (std::size_t i = 0; i < 3; ++i) m.set(i, i, 1.0);
  m.set(0, 1, 0.9);
  m.set(0, 2, 0.1);
  m.set(1, 2, 0.2);
  return m;
}

std::vector<std::vector<std::size_t>> groups(const Clustering& c) {
  std::vector<std::vector<std::size_t>> out(c.k);
  for (std::size_t d = 0; d < c.size(); ++d) out[c.cluster_of[d]].push_back(d);
  return out;
}

TEST(Hac, ThreeDocAverageLinkage) {
  const Dendrogram d = hac(three_docs(), Linkage::average);
  ASSERT_EQ(d.merges.size(), 2u);
  EXPECT_EQ(d.merges[0], (Merge{0, 1, 0.9}));
  EXPECT_EQ(d.merges[1].left, 3u);
  EXPECT_EQ(d.merges[1].right, 2u);
  EXPECT_NEAR(d.merges[1].similarity, 0.15, 1e-15);
}

TEST(Hac, ThreeDocOtherLinkages) {
  EXPECT_EQ(hac(three_docs(), Linkage::single).merges[1].similarity, 0.2);
  EXPECT_EQ(hac(three_docs(), Linkage::complete).merges[1].similarity, 0.1);
}

TEST(Hac, SingleLeaf) {
  SimilarityMatrix m({"only"});
  m.set(0, 0, 1.0);
  const Dendrogram d = hac(m);
  EXPECT_TRUE(d.merges.empty());
  EXPECT_EQ(cut(d, 1).k, 1u);
}

TEST(Hac, IdentityBlocksBreakTiesByLowestIds) {
  SimilarityMatrix m({"a", "b", "c", "d"});
  for (std::size_t i = 0; i < 4; ++i) m.set(i, i, 1.0);
  m.set(0, 1, 1.0);
  m.set(2, 3, 1.0);
  const Dendrogram d = hac(m);
  EXPECT_EQ(d.merges[0], (Merge{0, 1, 1.0}));
  EXPECT_EQ(d.merges[1], (Merge{2, 3, 1.0}));
  EXPECT_EQ(d.merges[2], (Merge{4, 5, 0.0}));
}

TEST(Hac, AllZeroMatrixMergesInIdOrder) {
  SimilarityMatrix m({"a", "b", "c"});
  const Dendrogram d = hac(m);
  EXPECT_EQ(d.merges[0], (Merge{0, 1, 0.0}));
  EXPECT_EQ(d.merges[1], (Merge{3, 2, 0.0}));
}

TEST(Hac, MatchesBruteForceOnRandomMatrices) {
  testing::Gen gen(4096);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + gen.below(8);
    // few levels force ties; 1024 levels are nearly tie-free
    const std::size_t levels = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 4 : 1024;
    const SimilarityMatrix m = gen.quantized_matrix(n, levels);
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
      ASSERT_EQ(hac(m, l).merges, oracle::brute_force_hac(m, l)) << "trial " << trial << " " << to_string(l);
    }
  }
}

TEST(Hac, MergeSimilaritiesNonIncreasing) {
  testing::Gen gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const SimilarityMatrix m = gen.quantized_matrix(2 + gen.below(30), 64);
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
      const auto merges = hac(m, l).merges;
      for (std::size_t i = 1; i < merges.size(); ++i) ASSERT_LE(merges[i].similarity, merges[i - 1].similarity);
    }
  }
}

TEST(Cut, ThreeDocExamples) {
  const Dendrogram d = hac(three_docs());
  EXPECT_EQ(groups(cut(d, 2)), (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
  EXPECT_EQ(groups(cut(d, 3)), (std::vector<std::vector<std::size_t>>{{0}, {1}, {2}}));
  EXPECT_EQ(groups(cut(d, 1)), (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
}

TEST(Cut, OutOfRangeK) {
  const Dendrogram d = hac(three_docs());
  EXPECT_THROW(cut(d, 0), InputError);
  EXPECT_THROW(cut(d, 4), InputError);
}

TEST(Cut, PartitionsIntoExactlyKNonEmptyClusters) {
  testing::Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.below(25);
    const Dendrogram d = hac(gen.quantized_matrix(n, 16));
    for (std::size_t k = 1; k <= n; ++k) {
      const Clustering c = cut(d, k);
      ASSERT_EQ(c.k, k);
      ASSERT_EQ(c.size(), n);
      std::vector<std::size_t> sizes(k, 0);
      for (std::size_t x : c.cluster_of) ++sizes.at(x);
      ASSERT_TRUE(std::none_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; }));
    }
  }
}

TEST(Cut, PermutationEquivariantOnDistinctEntries) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen.below(10);
    std::vector<double> pool(n * n);
    std::iota(pool.begin(), pool.end(), 1.0);
    std::shuffle(pool.begin(), pool.end(), gen.rng());
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("d" + std::to_string(i));
    SimilarityMatrix m(ids);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, i, 1.0);
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, pool[next++] / static_cast<double>(n * n + 1));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen.rng());
    std::vector<std::string> pids;
    for (std::size_t i = 0; i < n; ++i) pids.push_back(ids[perm[i]]);
    SimilarityMatrix pm(pids);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) pm.set(i, j, m(perm[i], perm[j]));
    }
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
      const std::size_t k = 1 + gen.below(n);
      const Clustering a = cut(hac(m, l), k);
      const Clustering b = cut(hac(pm, l), k);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          ASSERT_EQ(a.cluster_of[perm[x]] == a.cluster_of[perm[y]], b.cluster_of[x] == b.cluster_of[y]);
        }
      }
    }
  }
}

TEST(Linkage, ParseAndPrint) {
  for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) EXPECT_EQ(parse_linkage(to_string(l)), l);
  EXPECT_THROW(parse_linkage("ward"), InputError);
}

TEST(Dendrogram, JsonShape) {
  std::ostringstream out;
  write_dendrogram_json(hac(three_docs()), out);
  const std::string s = out.str();
  EXPECT_NE(s.find("\"leaves\""), std::string::npos);
  EXPECT_NE(s.find("\"merges\""), std::string::npos);
  EXPECT_NE(s.find("0.9"), std::string::npos);
}

TEST(ClusteringCsv, RoundTrip) {
  const Clustering c = Clustering::from_labels({"x", "y", "z,w"}, {7, 3, 7});
  EXPECT_EQ(c.cluster_of, (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(c.k, 2u);
  std::stringstream s;
  write_clustering_csv(c, s);
  EXPECT_EQ(s.str().substr(0, 19), "doc_id,cluster_id\nx");
  EXPECT_EQ(read_clustering_csv(s), c);
}

}  // namespace
}  // namespace tmhc
