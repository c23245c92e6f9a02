#include "tmhc/dvm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "tmhc/error.hpp"
#include "tmhc/normalize.hpp"

namespace tmhc {

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
      "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
      "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
      "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
      "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
      "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
      "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "said", "same",
      "she", "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
      "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
      "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
      "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
      "yourselves"};
  return words;
}

double TfidfModel::weight(std::size_t doc, std::string_view term) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), term);
  if (it == vocabulary.end() || *it != term) return 0.0;
  const auto id = static_cast<std::uint32_t>(it - vocabulary.begin());
  const auto& entries = vectors.at(doc).entries;
  auto e = std::lower_bound(entries.begin(), entries.end(), id,
                            [](const auto& entry, std::uint32_t t) { return entry.first < t; });
  return e != entries.end() && e->first == id ? e->second : 0.0;
}

TfidfModel tfidf_vectorize(const Corpus& corpus, const std::set<std::string>& stopwords) {
  std::vector<std::map<std::string, std::size_t>> counts;
  counts.reserve(corpus.size());
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus.documents()) {
    auto& tf = counts.emplace_back();
    for (auto& token : word_tokens(normalize_text(doc.text))) {
      if (stopwords.contains(token)) continue;
      ++tf[std::move(token)];
    }
    for (const auto& [term, c] : tf) ++df[term];
  }

  TfidfModel model;
  model.vocabulary.reserve(df.size());
  std::map<std::string_view, std::uint32_t> ids;
  for (const auto& [term, d] : df) {
    ids.emplace(term, static_cast<std::uint32_t>(model.vocabulary.size()));
    model.vocabulary.push_back(term);
  }

  const auto n = static_cast<double>(corpus.size());
  for (const auto& tf : counts) {
    DocVector v;
    v.entries.reserve(tf.size());
    for (const auto& [term, c] : tf) {
      const double idf = std::log(n / static_cast<double>(df.at(term)));
      v.entries.emplace_back(ids.at(term), static_cast<double>(c) * idf);
    }
    model.vectors.push_back(std::move(v));
  }
  return model;
}

namespace {

double norm(const DocVector& v) {
  double s = 0.0;
  for (const auto& [t, w] : v.entries) s += w * w;
  return std::sqrt(s);
}

double dot(const DocVector& a, const DocVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

double cosine_with_norms(const DocVector& a, const DocVector& b, double na, double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

}  // namespace

double cosine(const DocVector& a, const DocVector& b) {
  return cosine_with_norms(a, b, norm(a), norm(b));
}

SimilarityMatrix build_cosine_matrix(std::span<const DocVector> vectors,
                                     std::vector<std::string> doc_ids, unsigned threads) {
  if (doc_ids.size() != vectors.size()) throw InputError("vector count does not match id count");
  const std::size_t n = vectors.size();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = norm(vectors[i]);

  SimilarityMatrix m(std::move(doc_ids));
  unsigned t = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  if (n < 64) t = 1;
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += t) {
      for (std::size_t j = i; j < n; ++j) {
        m.set(i, j, cosine_with_norms(vectors[i], vectors[j], norms[i], norms[j]));
      }
    }
  };
  if (t == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < t; ++w) pool.emplace_back(worker, w);
  }
  return m;
}

}  // namespace tmhc
