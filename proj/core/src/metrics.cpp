#include "tmhc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tmhc/error.hpp"

namespace tmhc {

ContingencyTable::ContingencyTable(std::vector<std::vector<std::size_t>> counts,
                                   std::vector<std::string> class_labels)
    : counts_(std::move(counts)), class_labels_(std::move(class_labels)) {
  const std::size_t clusters = counts_.empty() ? 0 : counts_.front().size();
  class_totals_.assign(counts_.size(), 0);
  cluster_totals_.assign(clusters, 0);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i].size() != clusters) throw InputError("ragged contingency table");
    for (std::size_t j = 0; j < clusters; ++j) {
      class_totals_[i] += counts_[i][j];
      cluster_totals_[j] += counts_[i][j];
    }
    total_ += class_totals_[i];
  }
  if (!class_labels_.empty() && class_labels_.size() != counts_.size()) {
    throw InputError("class label count does not match table rows");
  }
}

ContingencyTable contingency(const Clustering& clustering,
                             const std::map<std::string, std::string>& gold) {
  std::map<std::string, std::size_t> class_index;
  std::vector<std::size_t> class_of(clustering.size());
  for (std::size_t d = 0; d < clustering.size(); ++d) {
    auto it = gold.find(clustering.doc_ids[d]);
    if (it == gold.end()) throw InputError("document without gold class: " + clustering.doc_ids[d]);
    class_index.emplace(it->second, 0);
  }
  std::vector<std::string> labels;
  for (auto& [label, index] : class_index) {
    index = labels.size();
    labels.push_back(label);
  }

  std::size_t clusters = clustering.k;
  for (std::size_t c : clustering.cluster_of) clusters = std::max(clusters, c + 1);
  std::vector<std::vector<std::size_t>> counts(labels.size(), std::vector<std::size_t>(clusters, 0));
  for (std::size_t d = 0; d < clustering.size(); ++d) {
    const std::size_t cls = class_index.at(gold.at(clustering.doc_ids[d]));
    ++counts[cls][clustering.cluster_of[d]];
  }
  return ContingencyTable(std::move(counts), std::move(labels));
}

double f_measure(const ContingencyTable& t) {
  if (t.total() == 0) return 0.0;
  double f = 0.0;
  for (std::size_t i = 0; i < t.classes(); ++i) {
    const double n_i = static_cast<double>(t.class_total(i));
    if (n_i == 0.0) continue;
    double best = 0.0;
    for (std::size_t j = 0; j < t.clusters(); ++j) {
      const double c_ij = static_cast<double>(t.count(i, j));
      const double c_j = static_cast<double>(t.cluster_total(j));
      if (c_ij == 0.0) continue;
      const double prec = c_ij / c_j;
      const double rec = c_ij / n_i;
      best = std::max(best, 2.0 * prec * rec / (prec + rec));
    }
    f += n_i / static_cast<double>(t.total()) * best;
  }
  return f;
}

double purity(const ContingencyTable& t) {
  // N is the sum of cluster sizes, which equals total() for a flat clustering
  double big_n = 0.0;
  for (std::size_t c : t.cluster_totals()) big_n += static_cast<double>(c);
  if (big_n == 0.0) return 0.0;
  // (c_j / N) * (max_i c_ij / c_j) summed over j is the summed maxima over N;
  // summing integers first keeps a perfect clustering at exactly 1.
  std::size_t tops = 0;
  for (std::size_t j = 0; j < t.clusters(); ++j) {
    std::size_t top = 0;
    for (std::size_t i = 0; i < t.classes(); ++i) top = std::max(top, t.count(i, j));
    tops += top;
  }
  return static_cast<double>(tops) / big_n;
}

double entropy(const ContingencyTable& t, LogBase base) {
  double big_n = 0.0;
  for (std::size_t c : t.cluster_totals()) big_n += static_cast<double>(c);
  if (big_n == 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < t.clusters(); ++j) {
    const double c_j = static_cast<double>(t.cluster_total(j));
    if (c_j == 0.0) continue;
    double e = 0.0;
    for (std::size_t i = 0; i < t.classes(); ++i) {
      const double p = static_cast<double>(t.count(i, j)) / c_j;
      if (p > 0.0) e -= p * (base == LogBase::two ? std::log2(p) : std::log(p));
    }
    total += (c_j / big_n) * e;
  }
  return total;
}

MetricReport evaluate(const ContingencyTable& t, std::string dataset, std::string algorithm,
                      LogBase base) {
  std::size_t k = 0;
  for (std::size_t c : t.cluster_totals()) k += c > 0 ? 1 : 0;
  return {std::move(dataset), std::move(algorithm), k, f_measure(t), purity(t), entropy(t, base)};
}

}  // namespace tmhc
