#include "tmhc/hac.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "tmhc/error.hpp"

namespace tmhc {

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  throw InputError("unknown linkage: " + std::string(name));
}

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Slot s holds the active cluster whose smallest leaf is s. For average
/// linkage the working matrix keeps raw similarity sums so that merged
/// values stay exact and independent of merge history.
class Agglomerator {
 public:
  Agglomerator(const SimilarityMatrix& m, Linkage linkage)
      : n_(m.size()), linkage_(linkage), w_(m.values()), size_(n_, 1), node_(n_),
        active_(n_, true), best_(n_, kNone) {
    for (std::size_t s = 0; s < n_; ++s) node_[s] = s;
    for (std::size_t s = 0; s < n_; ++s) rescan(s);
  }

  std::vector<Merge> run() {
    std::vector<Merge> merges;
    merges.reserve(n_ > 0 ? n_ - 1 : 0);
    for (std::size_t step = 0; step + 1 < n_; ++step) {
      std::size_t p = kNone;
      for (std::size_t s = 0; s < n_; ++s) {
        if (!active_[s] || best_[s] == kNone) continue;
        if (p == kNone || better(s, best_[s], p, best_[p])) p = s;
      }
      const std::size_t q = best_[p];
      const double sim = value(p, q);
      const std::size_t node = n_ + step;
      merges.push_back({node_[p], node_[q], sim});
      merge(p, q, node);
    }
    return merges;
  }

 private:
  double& raw(std::size_t a, std::size_t b) { return w_[a * n_ + b]; }

  double value(std::size_t a, std::size_t b) const {
    const double v = w_[a * n_ + b];
    if (linkage_ != Linkage::average) return v;
    return v / (static_cast<double>(size_[a]) * static_cast<double>(size_[b]));
  }

  /// Is pair (a, b) preferred over (c, d)? Higher similarity first, then the
  /// smaller (left, right) node-id pair.
  bool better(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    const double vab = value(a, b);
    const double vcd = value(c, d);
    if (vab != vcd) return vab > vcd;
    if (node_[a] != node_[c]) return node_[a] < node_[c];
    return node_[b] < node_[d];
  }

  void rescan(std::size_t s) {
    std::size_t best = kNone;
    for (std::size_t t = s + 1; t < n_; ++t) {
      if (active_[t] && (best == kNone || better(s, t, s, best))) best = t;
    }
    best_[s] = best;
  }

  void merge(std::size_t p, std::size_t q, std::size_t node) {
    for (std::size_t x = 0; x < n_; ++x) {
      if (!active_[x] || x == p || x == q) continue;
      double& wp = raw(p, x);
      const double wq = raw(q, x);
      switch (linkage_) {
        case Linkage::single: wp = std::max(wp, wq); break;
        case Linkage::complete: wp = std::min(wp, wq); break;
        case Linkage::average: wp = wp + wq; break;
      }
      raw(x, p) = wp;
    }
    active_[q] = false;
    best_[q] = kNone;
    size_[p] += size_[q];
    node_[p] = node;

    rescan(p);
    for (std::size_t x = 0; x < q; ++x) {
      if (!active_[x] || x == p) continue;
      if (best_[x] == p || best_[x] == q) {
        rescan(x);
      } else if (x < p && (best_[x] == kNone || better(x, p, x, best_[x]))) {
        best_[x] = p;
      }
    }
  }

  std::size_t n_;
  Linkage linkage_;
  std::vector<double> w_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> node_;
  std::vector<bool> active_;
  std::vector<std::size_t> best_;
};

}  // namespace

Dendrogram hac(const SimilarityMatrix& matrix, Linkage linkage) {
  Dendrogram d;
  d.leaf_ids = matrix.doc_ids();
  d.merges = Agglomerator(matrix, linkage).run();
  return d;
}

Clustering cut(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaf_count();
  if (k < 1 || k > n) {
    throw InputError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  if (dendrogram.merges.size() + 1 != n) throw InputError("dendrogram is incomplete");

  std::vector<std::size_t> parent(2 * n - 1);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  for (std::size_t m = 0; m < n - k; ++m) {
    const auto& merge = dendrogram.merges[m];
    parent[merge.left] = n + m;
    parent[merge.right] = n + m;
  }
  std::vector<std::size_t> root(n);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    std::size_t r = leaf;
    while (parent[r] != r) r = parent[r];
    root[leaf] = r;
  }
  return Clustering::from_labels(dendrogram.leaf_ids, root);
}

void write_dendrogram_json(const Dendrogram& d, std::ostream& out) {
  nlohmann::ordered_json j;
  j["leaves"] = d.leaf_ids;
  j["merges"] = nlohmann::ordered_json::array();
  for (const auto& m : d.merges) {
    j["merges"].push_back({{"left", m.left}, {"right", m.right}, {"similarity", m.similarity}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace tmhc
