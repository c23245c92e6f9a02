#include "tmhc/xtm.hpp"

#include <expat.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "tmhc/error.hpp"
#include "tmhc/normalize.hpp"

namespace tmhc {

namespace {

constexpr std::string_view kXtmNamespace = "http://www.topicmaps.org/xtm/1.0/";
constexpr std::string_view kXlinkNamespace = "http://www.w3.org/1999/xlink";

std::string_view local_name(std::string_view qname) {
  const auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

std::string_view prefix_of(std::string_view qname) {
  const auto colon = qname.find(':');
  return colon == std::string_view::npos ? std::string_view{} : qname.substr(0, colon);
}

/// Where a <topicRef> inside the current element should be recorded.
enum class RefSlot { none, topic_instance_of, occurrence_type, association_type, role, player };

/// SAX-style builder. Expat runs without namespace processing so undeclared
/// prefixes can be tolerated in lenient mode; prefixes are tracked by hand.
class XtmBuilder {
 public:
  explicit XtmBuilder(ParseMode mode) : mode_(mode) {}

  void start(const char* name, const char** attrs) {
    const std::string_view qname = name;
    const std::string_view local = local_name(qname);

    // namespace scope bookkeeping
    std::vector<std::string> declared;
    for (const char** a = attrs; *a != nullptr; a += 2) {
      const std::string_view attr = a[0];
      if (attr.starts_with("xmlns:")) declared.emplace_back(attr.substr(6));
    }
    for (auto& p : declared) prefixes_.insert(p);
    scopes_.push_back(std::move(declared));
    check_prefix(qname);
    for (const char** a = attrs; *a != nullptr; a += 2) {
      const std::string_view attr = a[0];
      if (!attr.starts_with("xmlns")) check_prefix(attr);
    }

    const std::string parent = stack_.empty() ? std::string{} : stack_.back();
    stack_.emplace_back(local);

    if (stack_.size() == 1) {
      if (local != "topicMap" && mode_ == ParseMode::strict) {
        fail("root element is <" + std::string(qname) + ">, expected <topicMap>");
      }
      return;
    }
    if (inside("variant") || inside("scope") || inside("subjectIdentity") || inside("mergeMap")) {
      return;
    }

    if (local == "topic" && parent == "topicMap") {
      topic_.emplace();
      auto id = attr(attrs, "id");
      if (!id || id->empty()) {
        if (mode_ == ParseMode::strict) fail("topic without id");
        warn("topic without id skipped");
        skip_topic_ = true;
      } else {
        topic_->id = *id;
      }
    } else if (local == "association" && parent == "topicMap") {
      association_.emplace();
    } else if (local == "baseNameString" && parent == "baseName" && topic_) {
      capture_ = true;
      text_.clear();
    } else if (local == "occurrence" && topic_) {
      occurrence_.emplace();
      occurrence_has_value_ = false;
    } else if (local == "resourceData" && occurrence_) {
      capture_ = true;
      text_.clear();
    } else if (local == "resourceRef" && occurrence_) {
      if (auto href = attr(attrs, "href")) {
        occurrence_->kind = XtmOccurrence::Kind::resource_ref;
        occurrence_->value = *href;
        occurrence_has_value_ = true;
      }
    } else if (local == "member" && association_) {
      association_->members.emplace_back();
    } else if (local == "topicRef") {
      auto href = attr(attrs, "href");
      if (!href) {
        if (mode_ == ParseMode::strict) fail("topicRef without xlink:href");
        warn("topicRef without xlink:href ignored");
        return;
      }
      record_ref(parent, *href);
    }
  }

  void end(const char* name) {
    const std::string_view local = local_name(name);
    for (auto& p : scopes_.back()) prefixes_.erase(prefixes_.find(p));
    scopes_.pop_back();
    stack_.pop_back();
    if (inside("variant") || inside("scope") || inside("subjectIdentity") || inside("mergeMap") ||
        local == "variant" || local == "scope" || local == "subjectIdentity" || local == "mergeMap") {
      return;
    }

    if (local == "baseNameString" && capture_ && topic_ && !occurrence_) {
      topic_->base_names.push_back(text_);
      capture_ = false;
    } else if (local == "resourceData" && capture_ && occurrence_) {
      occurrence_->kind = XtmOccurrence::Kind::resource_data;
      occurrence_->value = text_;
      occurrence_has_value_ = true;
      capture_ = false;
    } else if (local == "occurrence" && occurrence_) {
      if (!occurrence_has_value_ || occurrence_->value.empty()) {
        if (mode_ == ParseMode::strict) fail("occurrence without value in topic " + topic_->id);
        warn("empty occurrence skipped in topic " + topic_->id);
      } else {
        topic_->occurrences.push_back(std::move(*occurrence_));
      }
      occurrence_.reset();
    } else if (local == "topic" && topic_ && stack_.size() == 1) {
      if (!skip_topic_) {
        if (!ids_.insert(topic_->id).second) fail("duplicate topic id: " + topic_->id);
        map_.topics.push_back(std::move(*topic_));
      }
      topic_.reset();
      skip_topic_ = false;
    } else if (local == "association" && association_ && stack_.size() == 1) {
      std::size_t players = 0;
      for (const auto& m : association_->members) players += m.player_refs.size();
      if (players < 2) {
        if (mode_ == ParseMode::strict) fail("association with fewer than 2 players");
        warn("association with fewer than 2 players skipped");
      } else {
        map_.associations.push_back(std::move(*association_));
      }
      association_.reset();
    }
  }

  void text(const char* s, int len) {
    if (capture_) text_.append(s, static_cast<std::size_t>(len));
  }

  /// Resolves refs once the whole document is known.
  void finish() {
    std::vector<std::string> dangling;
    for (const auto& ref : refs_) {
      if (!ids_.contains(ref)) dangling.push_back(ref);
    }
    for (const auto& ref : dangling) {
      if (mode_ == ParseMode::strict) throw InputError("dangling ref: #" + ref);
      warn("dangling ref: #" + ref);
    }
  }

  XtmParseResult take() { return {std::move(map_), std::move(warnings_)}; }

  [[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

 private:
  bool inside(std::string_view element) const {
    return std::find(stack_.begin(), stack_.end(), element) != stack_.end();
  }

  void check_prefix(std::string_view qname) {
    const auto prefix = prefix_of(qname);
    if (prefix.empty() || prefix == "xml" || prefixes_.contains(std::string(prefix))) return;
    if (mode_ == ParseMode::strict) fail("undeclared namespace prefix: " + std::string(prefix));
    if (warned_prefixes_.insert(std::string(prefix)).second) {
      warn("undeclared namespace prefix: " + std::string(prefix));
    }
  }

  static std::optional<std::string> attr(const char** attrs, std::string_view local) {
    for (const char** a = attrs; *a != nullptr; a += 2) {
      if (local_name(a[0]) == local && !std::string_view(a[0]).starts_with("xmlns")) {
        return std::string(a[1]);
      }
    }
    return std::nullopt;
  }

  void record_ref(const std::string& parent, const std::string& href) {
    std::string id = href.starts_with('#') ? href.substr(1) : href;
    RefSlot slot = RefSlot::none;
    if (parent == "instanceOf") {
      if (occurrence_) slot = RefSlot::occurrence_type;
      else if (association_) slot = RefSlot::association_type;
      else if (topic_) slot = RefSlot::topic_instance_of;
    } else if (parent == "roleSpec" && association_ && !association_->members.empty()) {
      slot = RefSlot::role;
    } else if (parent == "member" && association_ && !association_->members.empty()) {
      slot = RefSlot::player;
    }
    switch (slot) {
      case RefSlot::topic_instance_of: topic_->instance_of.push_back(id); break;
      case RefSlot::occurrence_type: occurrence_->type_ref = id; break;
      case RefSlot::association_type: association_->type_ref = id; break;
      case RefSlot::role: association_->members.back().role_ref = id; break;
      case RefSlot::player: association_->members.back().player_refs.push_back(id); break;
      case RefSlot::none: return;
    }
    if (slot == RefSlot::topic_instance_of && skip_topic_) return;
    refs_.push_back(std::move(id));
  }

  void warn(std::string msg) { warnings_.push_back(std::move(msg)); }

  ParseMode mode_;
  XtmTopicMap map_;
  std::vector<std::string> warnings_;
  std::vector<std::string> stack_;
  std::vector<std::vector<std::string>> scopes_;
  std::multiset<std::string> prefixes_;
  std::set<std::string> warned_prefixes_;
  std::set<std::string> ids_;
  std::vector<std::string> refs_;

  std::optional<XtmTopic> topic_;
  bool skip_topic_ = false;
  std::optional<XtmOccurrence> occurrence_;
  bool occurrence_has_value_ = false;
  std::optional<XtmAssociation> association_;
  bool capture_ = false;
  std::string text_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += attribute ? "&quot;" : "\""; break;
      case '\r': out += "&#xD;"; break;
      case '\n': out += attribute ? "&#xA;" : "\n"; break;
      case '\t': out += attribute ? "&#x9;" : "\t"; break;
      default: out += c;
    }
  }
}

void topic_ref(std::string& out, std::string_view id, std::string_view indent) {
  out += indent;
  out += "<topicRef xlink:href=\"#";
  escape_into(out, id, true);
  out += "\"/>\n";
}

}  // namespace

const XtmTopic* XtmTopicMap::find(std::string_view id) const {
  for (const auto& t : topics) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

bool operator==(const XtmTopicMap& a, const XtmTopicMap& b) {
  if (a.topics.size() != b.topics.size() || a.associations != b.associations) return false;
  auto sorted = [](const std::vector<XtmTopic>& topics) {
    std::vector<const XtmTopic*> out;
    for (const auto& t : topics) out.push_back(&t);
    std::sort(out.begin(), out.end(), [](auto* x, auto* y) { return x->id < y->id; });
    return out;
  };
  const auto sa = sorted(a.topics);
  const auto sb = sorted(b.topics);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (!(*sa[i] == *sb[i])) return false;
  }
  return true;
}

XtmParseResult parse_xtm(std::string_view bytes, ParseMode mode) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");

  struct Context {
    XtmBuilder builder;
    std::optional<std::string> error;
    XML_Parser parser;
  } ctx{XtmBuilder(mode), std::nullopt, parser.get()};

  XML_SetUserData(parser.get(), &ctx);
  XML_SetElementHandler(
      parser.get(),
      [](void* data, const XML_Char* name, const XML_Char** attrs) {
        auto* c = static_cast<Context*>(data);
        try {
          c->builder.start(name, attrs);
        } catch (const InputError& e) {
          c->error = e.what();
          XML_StopParser(c->parser, XML_FALSE);
        }
      },
      [](void* data, const XML_Char* name) {
        auto* c = static_cast<Context*>(data);
        try {
          c->builder.end(name);
        } catch (const InputError& e) {
          c->error = e.what();
          XML_StopParser(c->parser, XML_FALSE);
        }
      });
  XML_SetCharacterDataHandler(parser.get(), [](void* data, const XML_Char* s, int len) {
    static_cast<Context*>(data)->builder.text(s, len);
  });

  const auto status =
      XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (ctx.error) throw InputError(*ctx.error);
  if (status != XML_STATUS_OK) {
    throw InputError("malformed XML at byte " +
                     std::to_string(XML_GetCurrentByteIndex(parser.get())) + ": " +
                     XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  ctx.builder.finish();
  return ctx.builder.take();
}

std::string serialize_xtm(const XtmTopicMap& map) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<topicMap xmlns=\"";
  out += kXtmNamespace;
  out += "\" xmlns:xlink=\"";
  out += kXlinkNamespace;
  out += "\"";
  if (map.topics.empty() && map.associations.empty()) {
    out += "/>\n";
    return out;
  }
  out += ">\n";

  std::vector<const XtmTopic*> topics;
  for (const auto& t : map.topics) topics.push_back(&t);
  std::sort(topics.begin(), topics.end(), [](auto* a, auto* b) { return a->id < b->id; });

  for (const XtmTopic* t : topics) {
    out += "  <topic id=\"";
    escape_into(out, t->id, true);
    out += "\">\n";
    for (const auto& cls : t->instance_of) {
      out += "    <instanceOf>\n";
      topic_ref(out, cls, "      ");
      out += "    </instanceOf>\n";
    }
    for (const auto& name : t->base_names) {
      out += "    <baseName>\n      <baseNameString>";
      escape_into(out, name, false);
      out += "</baseNameString>\n    </baseName>\n";
    }
    for (const auto& occ : t->occurrences) {
      out += "    <occurrence>\n";
      if (occ.type_ref) {
        out += "      <instanceOf>\n";
        topic_ref(out, *occ.type_ref, "        ");
        out += "      </instanceOf>\n";
      }
      if (occ.kind == XtmOccurrence::Kind::resource_ref) {
        out += "      <resourceRef xlink:href=\"";
        escape_into(out, occ.value, true);
        out += "\"/>\n";
      } else {
        out += "      <resourceData>";
        escape_into(out, occ.value, false);
        out += "</resourceData>\n";
      }
      out += "    </occurrence>\n";
    }
    out += "  </topic>\n";
  }

  for (const auto& assoc : map.associations) {
    out += "  <association>\n";
    if (assoc.type_ref) {
      out += "    <instanceOf>\n";
      topic_ref(out, *assoc.type_ref, "      ");
      out += "    </instanceOf>\n";
    }
    for (const auto& member : assoc.members) {
      out += "    <member>\n";
      if (member.role_ref) {
        out += "      <roleSpec>\n";
        topic_ref(out, *member.role_ref, "        ");
        out += "      </roleSpec>\n";
      }
      for (const auto& player : member.player_refs) topic_ref(out, player, "      ");
      out += "    </member>\n";
    }
    out += "  </association>\n";
  }
  out += "</topicMap>\n";
  return out;
}

TopicMapDoc extract_tm_doc(const XtmTopicMap& map, std::string doc_id, ParseMode mode) {
  std::unordered_map<std::string_view, const XtmTopic*> by_id;
  for (const auto& t : map.topics) by_id.emplace(t.id, &t);

  // Name of a topic the profile needs; empty when it has to be skipped.
  auto name_of = [&](std::string_view id, const XtmTopic* t, std::string_view role) {
    if (t != nullptr) {
      for (const auto& base : t->base_names) {
        std::string n = normalize_text(base);
        if (!n.empty()) return n;
      }
    }
    if (mode == ParseMode::strict) {
      throw InputError(std::string(role) + " topic without base name: " + std::string(id));
    }
    return normalize_text(id);
  };
  auto is_class = [](const XtmTopic* t) { return t != nullptr && t->instance_of.empty(); };

  TopicMapDoc doc;
  doc.doc_id = std::move(doc_id);

  for (const auto& t : map.topics) {
    if (!t.instance_of.empty()) continue;
    for (const auto& base : t.base_names) {
      std::string n = normalize_text(base);
      if (!n.empty()) {
        doc.topics.insert(std::move(n));
        break;
      }
    }
  }

  for (const auto& t : map.topics) {
    if (t.instance_of.empty()) continue;
    std::string tag;
    for (const auto& cls_id : t.instance_of) {
      auto it = by_id.find(cls_id);
      const XtmTopic* cls = it == by_id.end() ? nullptr : it->second;
      // Unresolved refs only survive lenient parsing; treat them as classes.
      if (cls != nullptr && !is_class(cls)) continue;
      std::string topic = name_of(cls_id, cls, "class");
      if (topic.empty()) continue;
      if (tag.empty()) tag = name_of(t.id, &t, "tag");
      if (tag.empty()) break;
      doc.topics.insert(topic);
      doc.tags.emplace(std::move(topic), tag);
    }
    if (tag.empty()) continue;
    for (const auto& occ : t.occurrences) {
      if (occ.kind != XtmOccurrence::Kind::resource_data) continue;
      std::string value = normalize_text(occ.value);
      if (!value.empty()) doc.tag_values.emplace(tag, std::move(value));
    }
  }
  return doc;
}

}  // namespace tmhc
