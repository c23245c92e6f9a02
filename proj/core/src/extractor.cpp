#include "tmhc/extractor.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "tmhc/error.hpp"
#include "tmhc/io.hpp"
#include "tmhc/normalize.hpp"

namespace tmhc {

Gazetteer::Gazetteer(std::vector<Entry> entries, std::vector<ValueRule> value_rules) {
  std::map<std::string, std::pair<std::string, std::string>> by_pattern;
  for (auto& e : entries) {
    std::string pattern = normalize_text(e.pattern);
    std::string topic = normalize_text(e.topic);
    std::string tag = normalize_text(e.tag);
    if (word_tokens(pattern).empty()) throw InputError("empty pattern: '" + e.pattern + "'");
    if (topic.empty() || tag.empty()) throw InputError("empty topic or tag for pattern: " + pattern);
    auto [it, inserted] = by_pattern.try_emplace(pattern, topic, tag);
    if (!inserted && it->second != std::pair{topic, tag}) {
      throw InputError("conflicting pattern: " + pattern);
    }
  }
  for (auto& [pattern, mapping] : by_pattern) {
    entries_.push_back({pattern, mapping.first, mapping.second});
  }

  std::map<std::string, std::set<std::string>> by_tag;
  for (auto& rule : value_rules) {
    std::string tag = normalize_text(rule.tag);
    if (tag.empty()) throw InputError("value rule with empty tag");
    auto& values = by_tag[tag];
    for (const auto& v : rule.value_patterns) {
      std::string value = normalize_text(v);
      if (word_tokens(value).empty()) throw InputError("empty value pattern for tag: " + tag);
      values.insert(std::move(value));
    }
  }
  for (auto& [tag, values] : by_tag) {
    value_rules_.push_back({tag, std::vector<std::string>(values.begin(), values.end())});
  }
}

Gazetteer parse_gazetteer(std::istream& in) {
  std::vector<Gazetteer::Entry> entries;
  std::vector<Gazetteer::ValueRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const bool complete = fields.size() == 3 &&
                          std::none_of(fields.begin(), fields.end(),
                                       [](const std::string& f) { return normalize_text(f).empty(); });
    if (!complete) {
      throw InputError("line " + std::to_string(line_no) + ": malformed gazetteer line");
    }
    try {
      if (fields[0] == "VALUE") {
        rules.push_back({fields[1], {fields[2]}});
      } else {
        entries.push_back({fields[0], fields[1], fields[2]});
      }
      // validate incrementally so errors carry the offending line
      if (fields[0] != "VALUE") Gazetteer({entries.back()}, {});
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return Gazetteer(std::move(entries), std::move(rules));
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  try {
    return parse_gazetteer(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Extractor::Extractor(const Gazetteer& gazetteer) : gazetteer_(gazetteer) {
  const auto& entries = gazetteer_.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto tokens = word_tokens(entries[i].pattern);
    auto first = tokens.front();
    entry_index_[first].push_back({std::move(tokens), i});
  }
  for (const auto& rule : gazetteer_.value_rules()) {
    for (const auto& value : rule.value_patterns) {
      auto tokens = word_tokens(value);
      auto first = tokens.front();
      value_index_[first].push_back({std::move(tokens), values_.size()});
      values_.emplace_back(rule.tag, value);
    }
  }
}

std::set<std::size_t> Extractor::match(const PhraseIndex& index, const std::vector<std::string>& tokens) {
  std::set<std::size_t> hits;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = index.find(tokens[i]);
    if (it == index.end()) continue;
    for (const auto& phrase : it->second) {
      if (phrase.tokens.size() > tokens.size() - i) continue;
      if (std::equal(phrase.tokens.begin(), phrase.tokens.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        hits.insert(phrase.target);
      }
    }
  }
  return hits;
}

std::pair<TopicMapDoc, ExtractionReport> Extractor::extract(const Document& doc) const {
  TopicMapDoc tm;
  tm.doc_id = doc.id;
  const auto tokens = word_tokens(normalize_text(doc.text));

  std::size_t fired = 0;
  std::set<std::string> present_tags;
  for (std::size_t e : match(entry_index_, tokens)) {
    const auto& entry = gazetteer_.entries()[e];
    tm.topics.insert(entry.topic);
    tm.tags.emplace(entry.topic, entry.tag);
    present_tags.insert(entry.tag);
    ++fired;
  }
  for (std::size_t v : match(value_index_, tokens)) {
    const auto& [tag, value] = values_[v];
    if (!present_tags.contains(tag)) continue;
    tm.tag_values.emplace(tag, value);
    ++fired;
  }

  ExtractionReport report{doc.id, fired, tm.topics.size(), tm.tags.size(), tm.tag_values.size()};
  return {std::move(tm), std::move(report)};
}

std::pair<TopicMapDoc, ExtractionReport> extract(const Document& doc, const Gazetteer& gazetteer) {
  return Extractor(gazetteer).extract(doc);
}

XtmTopicMap emit_xtm(const TopicMapDoc& doc) {
  if (!is_consistent(doc)) throw InputError("inconsistent topic map document: " + doc.doc_id);
  XtmTopicMap map;
  std::map<std::string, std::string> topic_ids;
  for (const auto& topic : doc.topics) {
    std::string id = "topic-" + std::to_string(topic_ids.size() + 1);
    topic_ids.emplace(topic, id);
    map.topics.push_back({id, {topic}, {}, {}});
  }

  std::map<std::string, XtmTopic> tag_topics;
  for (const auto& [topic, tag] : doc.tags) {
    auto [it, inserted] = tag_topics.try_emplace(tag);
    if (inserted) {
      it->second.id = "tag-" + std::to_string(tag_topics.size());
      it->second.base_names.push_back(tag);
    }
    it->second.instance_of.push_back(topic_ids.at(topic));
  }
  for (const auto& [tag, value] : doc.tag_values) {
    tag_topics.at(tag).occurrences.push_back({XtmOccurrence::Kind::resource_data, value, std::nullopt});
  }
  for (auto& [tag, topic] : tag_topics) map.topics.push_back(std::move(topic));
  return map;
}

}  // namespace tmhc
