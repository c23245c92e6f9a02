#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tmhc {

/// Flat partition of documents. Cluster ids are dense in [0, k) and numbered
/// in order of each cluster's first document.
struct Clustering {
  std::vector<std::string> doc_ids;
  std::vector<std::size_t> cluster_of;
  std::size_t k = 0;

  std::size_t size() const { return doc_ids.size(); }

  /// Relabels arbitrary ids to the canonical dense numbering.
  static Clustering from_labels(std::vector<std::string> doc_ids,
                                const std::vector<std::size_t>& labels);

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

/// `doc_id,cluster_id` with a header line.
void write_clustering_csv(const Clustering& c, std::ostream& out);
Clustering read_clustering_csv(std::istream& in);

}  // namespace tmhc
