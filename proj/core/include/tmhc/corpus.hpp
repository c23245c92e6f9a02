#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tmhc {

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> gold_class;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Ordered, immutable collection of documents. Construction validates that
/// ids are non-empty and unique and, unless `allow_empty_text` is set, that
/// every document has a body.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents, bool allow_empty_text = false);

  const std::vector<Document>& documents() const { return documents_; }
  const std::set<std::string>& classes() const { return classes_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  /// Documents that carry a gold class, in load order.
  Corpus labeled_only() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Document> documents_;
  std::set<std::string> classes_;
};

struct LoadOptions {
  /// Permit documents with empty text.
  bool lenient = false;
  /// SGML only: keep records whose <TOPICS> list is empty.
  bool keep_unlabeled = false;
};

/// One document per regular file in `dir` (sorted by file name); the id is
/// the file name without its extension. When `labels_path` is given every
/// document must have a label and every label must name a document.
Corpus load_text_dir(const std::filesystem::path& dir,
                     const std::optional<std::filesystem::path>& labels_path = std::nullopt,
                     const LoadOptions& options = {});

/// Reads `id<TAB>class` lines; `#` lines and blank lines are skipped.
std::vector<std::pair<std::string, std::string>> load_labels(const std::filesystem::path& path);

Corpus load_jsonl(const std::filesystem::path& path, const LoadOptions& options = {});
Corpus parse_jsonl(std::istream& in, const LoadOptions& options = {});
void save_jsonl(const Corpus& corpus, std::ostream& out);
void save_jsonl(const Corpus& corpus, const std::filesystem::path& path);

struct SgmlLoadResult {
  Corpus corpus;
  std::size_t truncated_records = 0;
  std::size_t dropped_unlabeled = 0;
  std::size_t missing_id_records = 0;
  std::size_t duplicate_records = 0;
};

/// Reuters-21578 style <REUTERS> records. Tolerates unescaped entities and
/// unknown tags; does not need the DTD. Text comes from <BODY>, the class
/// from the first <TOPICS><D> entry.
SgmlLoadResult load_sgml_lenient(const std::filesystem::path& path, const LoadOptions& options = {});
SgmlLoadResult parse_sgml_lenient(std::string_view content, const LoadOptions& options = {});

}  // namespace tmhc
