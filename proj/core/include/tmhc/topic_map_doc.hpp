#pragma once

#include <set>
#include <string>
#include <utility>

namespace tmhc {

/// The three construct levels extracted from one document: topics
/// ("sports"), topic-tags as (topic, tag) pairs ("sports", "cricket") and
/// tag-values as (tag, value) pairs ("cricket", "pakistan"). All strings are
/// in normalize_text() form.
struct TopicMapDoc {
  using Pair = std::pair<std::string, std::string>;

  std::string doc_id;
  std::set<std::string> topics;
  std::set<Pair> tags;
  std::set<Pair> tag_values;

  bool empty() const { return topics.empty() && tags.empty() && tag_values.empty(); }
  std::size_t construct_count() const { return topics.size() + tags.size() + tag_values.size(); }

  friend bool operator==(const TopicMapDoc&, const TopicMapDoc&) = default;
};

/// True when every tag's topic is in `topics` and every value's tag occurs as
/// the tag element of some pair in `tags`.
bool is_consistent(const TopicMapDoc& doc);

}  // namespace tmhc
