#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tmhc/clustering.hpp"

namespace tmhc {

/// Class x cluster counts c_ij with margins n_i (class) and c_j (cluster).
class ContingencyTable {
 public:
  ContingencyTable() = default;
  /// `counts[i][j]`; rows are classes, columns clusters. All rows equal length.
  explicit ContingencyTable(std::vector<std::vector<std::size_t>> counts,
                            std::vector<std::string> class_labels = {});

  std::size_t classes() const { return counts_.size(); }
  std::size_t clusters() const { return cluster_totals_.size(); }
  std::size_t count(std::size_t cls, std::size_t cluster) const { return counts_[cls][cluster]; }
  std::size_t class_total(std::size_t cls) const { return class_totals_[cls]; }
  std::size_t cluster_total(std::size_t cluster) const { return cluster_totals_[cluster]; }
  std::size_t total() const { return total_; }

  const std::vector<std::vector<std::size_t>>& counts() const { return counts_; }
  const std::vector<std::size_t>& class_totals() const { return class_totals_; }
  const std::vector<std::size_t>& cluster_totals() const { return cluster_totals_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }

 private:
  std::vector<std::vector<std::size_t>> counts_;
  std::vector<std::size_t> class_totals_;
  std::vector<std::size_t> cluster_totals_;
  std::vector<std::string> class_labels_;
  std::size_t total_ = 0;
};

/// Rows follow sorted class labels, columns cluster ids 0..k-1. Throws
/// InputError naming the first clustered document without a gold class.
ContingencyTable contingency(const Clustering& clustering,
                             const std::map<std::string, std::string>& gold);

enum class LogBase { two, natural };

double f_measure(const ContingencyTable& t);
double purity(const ContingencyTable& t);
double entropy(const ContingencyTable& t, LogBase base = LogBase::two);

struct MetricReport {
  std::string dataset;
  std::string algorithm;
  std::size_t k = 0;
  double f_measure = 0.0;
  double purity = 0.0;
  double entropy = 0.0;
};

MetricReport evaluate(const ContingencyTable& t, std::string dataset, std::string algorithm,
                      LogBase base = LogBase::two);

}  // namespace tmhc
