#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmhc/topic_map_doc.hpp"

namespace tmhc {

enum class ParseMode { strict, lenient };

struct XtmOccurrence {
  enum class Kind { resource_data, resource_ref };

  Kind kind = Kind::resource_data;
  std::string value;
  std::optional<std::string> type_ref;

  friend bool operator==(const XtmOccurrence&, const XtmOccurrence&) = default;
};

struct XtmTopic {
  std::string id;
  std::vector<std::string> base_names;
  std::vector<std::string> instance_of;
  std::vector<XtmOccurrence> occurrences;

  friend bool operator==(const XtmTopic&, const XtmTopic&) = default;
};

struct XtmMember {
  std::optional<std::string> role_ref;
  std::vector<std::string> player_refs;

  friend bool operator==(const XtmMember&, const XtmMember&) = default;
};

struct XtmAssociation {
  std::optional<std::string> type_ref;
  std::vector<XtmMember> members;

  friend bool operator==(const XtmAssociation&, const XtmAssociation&) = default;
};

/// Topic references hold the bare id (no leading '#').
/// Topic order is not significant: equality compares topics by id.
struct XtmTopicMap {
  std::vector<XtmTopic> topics;
  std::vector<XtmAssociation> associations;

  const XtmTopic* find(std::string_view id) const;

  friend bool operator==(const XtmTopicMap& a, const XtmTopicMap& b);
};

struct XtmParseResult {
  XtmTopicMap map;
  /// Lenient-mode findings: dangling refs, skipped topics or occurrences.
  std::vector<std::string> warnings;
};

/// Parses an XTM 1.0 document. Elements outside the XTM vocabulary, scopes,
/// variants and subject identities are ignored. Malformed XML raises
/// InputError with the byte offset; strict mode additionally rejects
/// dangling topic refs, undeclared xlink prefixes and incomplete constructs.
XtmParseResult parse_xtm(std::string_view bytes, ParseMode mode = ParseMode::strict);

/// Deterministic XTM 1.0 output: topics sorted by id, everything else in
/// stored order. parse_xtm(serialize_xtm(m)).map == m for valid maps.
std::string serialize_xtm(const XtmTopicMap& map);

/// Applies the toolkit's XTM profile:
///   topic without instanceOf        -> topic (its base name)
///   topic instanceOf a class topic  -> tag (class name, own name)
///   resourceData on a tag topic     -> tag-value (own name, data)
/// Unnamed topics referenced by the profile get a name synthesized from
/// their id in lenient mode and raise InputError in strict mode.
TopicMapDoc extract_tm_doc(const XtmTopicMap& map, std::string doc_id,
                           ParseMode mode = ParseMode::lenient);

}  // namespace tmhc
