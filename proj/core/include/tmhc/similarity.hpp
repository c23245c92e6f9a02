#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tmhc/topic_map_doc.hpp"

namespace tmhc {

/// How the per-level totals in the construct-overlap score are formed.
enum class Denominator {
  union_size,  ///< |A ∪ B| per level; sim(D, D) = 1
  sum_size,    ///< |A| + |B| per level; self-similarity capped at 0.5
};

struct SimilarityBreakdown {
  std::size_t common_topics = 0;
  std::size_t common_tags = 0;
  std::size_t common_values = 0;
  std::size_t total_topics = 0;
  std::size_t total_tags = 0;
  std::size_t total_values = 0;

  std::size_t common() const { return common_topics + common_tags + common_values; }
  std::size_t total() const { return total_topics + total_tags + total_values; }

  friend bool operator==(const SimilarityBreakdown&, const SimilarityBreakdown&) = default;
};

struct PairSimilarity {
  double score = 0.0;
  SimilarityBreakdown breakdown;
};

/// (shared topics + shared tags + shared values) / (sum of level totals).
/// Zero when both documents are empty.
PairSimilarity sim_pair(const TopicMapDoc& a, const TopicMapDoc& b,
                        Denominator denominator = Denominator::union_size);

/// Dense symmetric n x n matrix, row-major.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::vector<std::string> doc_ids);
  SimilarityMatrix(std::vector<std::string> doc_ids, std::vector<double> values);

  std::size_t size() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  friend bool operator==(const SimilarityMatrix&, const SimilarityMatrix&) = default;

 private:
  std::vector<std::string> doc_ids_;
  std::vector<double> values_;
};

struct MatrixOptions {
  Denominator denominator = Denominator::union_size;
  /// Worker threads for the upper triangle; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Entry (i, j) = sim_pair(docs[i], docs[j]).score. Output does not depend on
/// the thread count. Throws InputError on duplicate doc ids.
SimilarityMatrix build_matrix(std::span<const TopicMapDoc> docs, const MatrixOptions& options = {});

/// Header row of doc ids, then n rows of n values.
void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out);
SimilarityMatrix read_matrix_csv(std::istream& in);

/// "TMSM", u32 n (little endian), then the upper triangle including the
/// diagonal as little-endian IEEE-754 doubles, row-major. Ids are not stored;
/// reading yields ids "0".."n-1".
void write_matrix_binary(const SimilarityMatrix& m, std::ostream& out);
SimilarityMatrix read_matrix_binary(std::istream& in);

/// Dispatches on the ".tmsm" extension; anything else is CSV.
void save_matrix(const SimilarityMatrix& m, const std::filesystem::path& path);
SimilarityMatrix load_matrix(const std::filesystem::path& path);

}  // namespace tmhc
