#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tmhc/clustering.hpp"
#include "tmhc/similarity.hpp"

namespace tmhc {

enum class Linkage { single, complete, average };

Linkage parse_linkage(std::string_view name);
std::string_view to_string(Linkage linkage);

struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double similarity = 0.0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Leaves are 0..n-1; the cluster created by merges[m] has node id n + m.
/// In each merge `left` is the cluster whose smallest leaf is smaller.
struct Dendrogram {
  std::vector<std::string> leaf_ids;
  std::vector<Merge> merges;

  std::size_t leaf_count() const { return leaf_ids.size(); }

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

/// Greedy agglomeration: always merges the pair of active clusters with the
/// highest linkage similarity. Ties go to the lexicographically smallest
/// (left, right) node-id pair.
Dendrogram hac(const SimilarityMatrix& matrix, Linkage linkage = Linkage::average);

/// Replays the first n - k merges. Throws InputError unless 1 <= k <= n.
Clustering cut(const Dendrogram& dendrogram, std::size_t k);

/// {"leaves": [...], "merges": [{"left":..,"right":..,"similarity":..}, ...]}
void write_dendrogram_json(const Dendrogram& d, std::ostream& out);

}  // namespace tmhc
