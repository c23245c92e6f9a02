#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tmhc/corpus.hpp"
#include "tmhc/topic_map_doc.hpp"
#include "tmhc/xtm.hpp"

namespace tmhc {

/// Phrase -> (topic, tag) lookup plus per-tag value phrases. Immutable after
/// construction; all strings stored normalized, entries sorted by pattern.
class Gazetteer {
 public:
  struct Entry {
    std::string pattern;
    std::string topic;
    std::string tag;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct ValueRule {
    std::string tag;
    std::vector<std::string> value_patterns;
    friend bool operator==(const ValueRule&, const ValueRule&) = default;
  };

  Gazetteer() = default;
  /// Normalizes and deduplicates. Throws InputError on an empty pattern or a
  /// pattern mapped to two different (topic, tag) pairs.
  Gazetteer(std::vector<Entry> entries, std::vector<ValueRule> value_rules);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<ValueRule>& value_rules() const { return value_rules_; }
  bool empty() const { return entries_.empty() && value_rules_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::vector<ValueRule> value_rules_;
};

/// TSV: `pattern<TAB>topic<TAB>tag` or `VALUE<TAB>tag<TAB>pattern`.
/// Blank lines and lines starting with '#' are skipped.
Gazetteer load_gazetteer(const std::filesystem::path& path);
Gazetteer parse_gazetteer(std::istream& in);

struct ExtractionReport {
  std::string doc_id;
  std::size_t matched_patterns = 0;
  std::size_t distinct_topics = 0;
  std::size_t distinct_tags = 0;
  std::size_t distinct_values = 0;

  friend bool operator==(const ExtractionReport&, const ExtractionReport&) = default;
};

/// Extracts constructs by whole-word phrase matching over normalized text.
/// An entry pattern contributes its topic and (topic, tag); a value pattern
/// contributes (tag, value) only if that tag was matched in the same text.
/// `matched_patterns` counts distinct entry and value patterns that fired.
class Extractor {
 public:
  explicit Extractor(const Gazetteer& gazetteer);

  std::pair<TopicMapDoc, ExtractionReport> extract(const Document& doc) const;

 private:
  struct Phrase {
    std::vector<std::string> tokens;
    std::size_t target;  // index into entries() or values_
  };
  using PhraseIndex = std::unordered_map<std::string, std::vector<Phrase>>;

  static std::set<std::size_t> match(const PhraseIndex& index, const std::vector<std::string>& tokens);

  Gazetteer gazetteer_;
  PhraseIndex entry_index_;
  PhraseIndex value_index_;
  std::vector<std::pair<std::string, std::string>> values_;  // (tag, value)
};

std::pair<TopicMapDoc, ExtractionReport> extract(const Document& doc, const Gazetteer& gazetteer);

/// Inverse of extract_tm_doc for the toolkit profile: one class topic per
/// topic, one instance topic per distinct tag name (instanceOf each of its
/// topics), one resourceData occurrence per value.
XtmTopicMap emit_xtm(const TopicMapDoc& doc);

}  // namespace tmhc
