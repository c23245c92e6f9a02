#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "tmhc/dvm.hpp"
#include "tmhc/error.hpp"

namespace tmhc {

namespace {

struct Split {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  double quality = 0.0;
};

/// Spherical 2-means over a subset of documents. Documents are used as unit
/// vectors; centroids are unit-normalized sums.
class TwoMeans {
 public:
  TwoMeans(std::span<const DocVector> vectors, std::size_t dims, std::size_t max_iterations)
      : vectors_(vectors), dims_(dims), max_iterations_(max_iterations), inv_norm_(vectors.size()) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      double s = 0.0;
      for (const auto& [t, w] : vectors[i].entries) s += w * w;
      inv_norm_[i] = s > 0.0 ? 1.0 / std::sqrt(s) : 0.0;
    }
  }

  std::optional<Split> run(const std::vector<std::size_t>& members, std::size_t seed_a,
                           std::size_t seed_b) const {
    std::vector<double> c0(dims_, 0.0);
    std::vector<double> c1(dims_, 0.0);
    add_unit(c0, seed_a);
    add_unit(c1, seed_b);
    normalize(c0);
    normalize(c1);

    std::vector<char> side(members.size(), 2);  // 2 = unassigned
    for (std::size_t iter = 0; iter < max_iterations_; ++iter) {
      bool changed = false;
      for (std::size_t m = 0; m < members.size(); ++m) {
        const char s = similarity(members[m], c1) > similarity(members[m], c0) ? 1 : 0;
        if (s != side[m]) {
          side[m] = s;
          changed = true;
        }
      }
      if (!changed) break;
      std::fill(c0.begin(), c0.end(), 0.0);
      std::fill(c1.begin(), c1.end(), 0.0);
      for (std::size_t m = 0; m < members.size(); ++m) add_unit(side[m] ? c1 : c0, members[m]);
      normalize(c0);
      normalize(c1);
    }

    Split split;
    double total = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (side[m]) {
        split.right.push_back(members[m]);
        total += similarity(members[m], c1);
      } else {
        split.left.push_back(members[m]);
        total += similarity(members[m], c0);
      }
    }
    if (split.left.empty() || split.right.empty()) return std::nullopt;
    split.quality = total / static_cast<double>(members.size());
    return split;
  }

 private:
  void add_unit(std::vector<double>& c, std::size_t doc) const {
    for (const auto& [t, w] : vectors_[doc].entries) c[t] += w * inv_norm_[doc];
  }

  static void normalize(std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    if (s == 0.0) return;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : c) v *= inv;
  }

  double similarity(std::size_t doc, const std::vector<double>& c) const {
    double s = 0.0;
    for (const auto& [t, w] : vectors_[doc].entries) s += w * c[t];
    return s * inv_norm_[doc];
  }

  std::span<const DocVector> vectors_;
  std::size_t dims_;
  std::size_t max_iterations_;
  std::vector<double> inv_norm_;
};

}  // namespace

Clustering bisecting_kmeans(std::span<const DocVector> vectors, std::vector<std::string> doc_ids,
                            std::size_t k, const BisectingOptions& options) {
  const std::size_t n = vectors.size();
  if (doc_ids.size() != n) throw InputError("vector count does not match id count");
  if (k == 0 || k > n) {
    throw InputError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  if (options.trials == 0) throw InputError("trials must be at least 1");

  std::size_t dims = 0;
  for (const auto& v : vectors) {
    for (const auto& [t, w] : v.entries) dims = std::max<std::size_t>(dims, t + 1);
  }
  const TwoMeans two_means(vectors, dims, std::max<std::size_t>(options.max_iterations, 1));
  std::mt19937_64 rng(options.seed);

  std::vector<std::vector<std::size_t>> clusters(1);
  for (std::size_t i = 0; i < n; ++i) clusters[0].push_back(i);

  while (clusters.size() < k) {
    // largest cluster; ties go to the earliest one
    std::size_t target = 0;
    for (std::size_t c = 1; c < clusters.size(); ++c) {
      if (clusters[c].size() > clusters[target].size()) target = c;
    }
    const auto& members = clusters[target];
    const std::size_t m = members.size();

    std::optional<Split> best;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const std::size_t a = static_cast<std::size_t>(rng() % m);
      std::size_t b = static_cast<std::size_t>(rng() % (m - 1));
      if (b >= a) ++b;
      auto split = two_means.run(members, members[a], members[b]);
      if (split && (!best || split->quality > best->quality)) best = std::move(split);
    }
    if (!best) {
      // every restart collapsed to one side (e.g. identical documents)
      best.emplace();
      best->left.assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>((m + 1) / 2));
      best->right.assign(members.begin() + static_cast<std::ptrdiff_t>((m + 1) / 2), members.end());
    }
    clusters[target] = std::move(best->left);
    clusters.push_back(std::move(best->right));
  }

  std::vector<std::size_t> labels(n);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t doc : clusters[c]) labels[doc] = c;
  }
  return Clustering::from_labels(std::move(doc_ids), labels);
}

}  // namespace tmhc
