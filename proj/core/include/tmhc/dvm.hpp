#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tmhc/clustering.hpp"
#include "tmhc/corpus.hpp"
#include "tmhc/similarity.hpp"

namespace tmhc {

/// Sparse tf-idf vector; entries sorted by term id, weights >= 0.
struct DocVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  friend bool operator==(const DocVector&, const DocVector&) = default;
};

struct TfidfModel {
  /// Sorted; term id = position.
  std::vector<std::string> vocabulary;
  std::vector<DocVector> vectors;

  /// Weight of `term` in document `doc`, 0 if absent.
  double weight(std::size_t doc, std::string_view term) const;
};

/// A small English stopword list.
const std::set<std::string>& default_stopwords();

/// Tokens are lowercased maximal letter/digit runs; weight = tf * ln(n / df).
TfidfModel tfidf_vectorize(const Corpus& corpus, const std::set<std::string>& stopwords);

/// dot / (|a| |b|), clamped to [0, 1]; 0 if either norm is 0.
double cosine(const DocVector& a, const DocVector& b);

SimilarityMatrix build_cosine_matrix(std::span<const DocVector> vectors,
                                     std::vector<std::string> doc_ids, unsigned threads = 0);

struct BisectingOptions {
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 50;
};

/// Splits the largest cluster with spherical 2-means until there are k.
/// Each split keeps the best of `trials` seeded restarts by mean
/// document-to-centroid cosine. Throws InputError if k == 0 or k > n.
Clustering bisecting_kmeans(std::span<const DocVector> vectors, std::vector<std::string> doc_ids,
                            std::size_t k, const BisectingOptions& options = {});

}  // namespace tmhc
