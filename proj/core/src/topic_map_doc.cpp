#include "tmhc/topic_map_doc.hpp"

namespace tmhc {

bool is_consistent(const TopicMapDoc& doc) {
  std::set<std::string> tag_names;
  for (const auto& [topic, tag] : doc.tags) {
    if (!doc.topics.contains(topic)) return false;
    tag_names.insert(tag);
  }
  for (const auto& [tag, value] : doc.tag_values) {
    if (!tag_names.contains(tag)) return false;
  }
  return true;
}

}  // namespace tmhc
