#include "tmhc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "tmhc/error.hpp"
#include "tmhc/io.hpp"
#include "tmhc/normalize.hpp"

namespace tmhc {

namespace fs = std::filesystem;
using nlohmann::json;

Corpus::Corpus(std::vector<Document> documents, bool allow_empty_text)
    : documents_(std::move(documents)) {
  std::unordered_set<std::string> seen;
  for (const auto& doc : documents_) {
    if (doc.id.empty()) throw InputError("document with empty id");
    if (!seen.insert(doc.id).second) throw InputError("duplicate id: " + doc.id);
    if (doc.text.empty() && !allow_empty_text) {
      throw InputError("empty document: " + doc.id);
    }
    if (doc.gold_class) classes_.insert(*doc.gold_class);
  }
}

Corpus Corpus::labeled_only() const {
  std::vector<Document> kept;
  for (const auto& doc : documents_) {
    if (doc.gold_class) kept.push_back(doc);
  }
  return Corpus(std::move(kept), true);
}

std::vector<std::pair<std::string, std::string>> load_labels(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<std::string, std::string>> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw InputError(path.string() + ": line " + std::to_string(line_no) +
                       ": expected id<TAB>class");
    }
    labels.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return labels;
}

Corpus load_text_dir(const fs::path& dir, const std::optional<fs::path>& labels_path,
                     const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    docs.push_back({file.stem().string(), sanitize_utf8(read_file(file)), std::nullopt});
  }

  if (labels_path) {
    std::map<std::string, std::string> labels;
    for (auto& [id, cls] : load_labels(*labels_path)) labels[id] = cls;

    std::vector<std::string> missing;
    for (auto& doc : docs) {
      auto it = labels.find(doc.id);
      if (it == labels.end()) {
        missing.push_back(doc.id);
      } else {
        doc.gold_class = it->second;
        labels.erase(it);
      }
    }
    if (!missing.empty()) {
      std::string msg = "documents without a label:";
      for (const auto& id : missing) msg += " " + id;
      throw InputError(msg);
    }
    if (!labels.empty()) {
      std::string msg = "unmatched label id:";
      for (const auto& [id, cls] : labels) msg += " " + id;
      throw InputError(msg);
    }
  }
  return Corpus(std::move(docs), options.lenient);
}

Corpus parse_jsonl(std::istream& in, const LoadOptions& options) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + "malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw InputError(where + "expected a JSON object");

    auto id_it = obj.find("id");
    if (id_it == obj.end() || id_it->is_null()) throw InputError(where + "missing id");
    if (!id_it->is_string()) throw InputError(where + "id must be a string");
    auto text_it = obj.find("text");
    if (text_it == obj.end() || text_it->is_null()) throw InputError(where + "missing text");
    if (!text_it->is_string()) throw InputError(where + "text must be a string");

    Document doc{id_it->get<std::string>(), sanitize_utf8(text_it->get<std::string>()), std::nullopt};
    if (auto cls = obj.find("class"); cls != obj.end() && !cls->is_null()) {
      if (!cls->is_string()) throw InputError(where + "class must be a string");
      doc.gold_class = cls->get<std::string>();
    }
    if (doc.id.empty()) throw InputError(where + "missing id");
    if (!seen.insert(doc.id).second) throw InputError(where + "duplicate id: " + doc.id);
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs), options.lenient);
}

Corpus load_jsonl(const fs::path& path, const LoadOptions& options) {
  std::istringstream in(read_file(path));
  try {
    return parse_jsonl(in, options);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents()) {
    json obj = {{"id", doc.id}, {"text", doc.text}};
    if (doc.gold_class) obj["class"] = *doc.gold_class;
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void save_jsonl(const Corpus& corpus, const fs::path& path) {
  std::ostringstream out;
  save_jsonl(corpus, out);
  write_file(path, out.str());
}

// --- lenient SGML -----------------------------------------------------------

namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

/// Case-insensitive search for `needle` (already lowercase) from `from`.
std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    std::size_t k = 0;
    while (k < needle.size() && lower(hay[i + k]) == needle[k]) ++k;
    if (k == needle.size()) return i;
  }
  return std::string_view::npos;
}

/// Finds "<name" followed by '>', '/', or whitespace.
std::size_t find_open_tag(std::string_view hay, std::string_view name, std::size_t from) {
  const std::string needle = "<" + std::string(name);
  for (std::size_t pos = ifind(hay, needle, from); pos != std::string_view::npos;
       pos = ifind(hay, needle, pos + 1)) {
    const std::size_t after = pos + needle.size();
    if (after >= hay.size()) return std::string_view::npos;
    const char c = hay[after];
    if (c == '>' || c == '/' || std::isspace(static_cast<unsigned char>(c))) return pos;
  }
  return std::string_view::npos;
}

std::optional<std::string> attribute(std::string_view start_tag, std::string_view name) {
  std::size_t pos = 0;
  while ((pos = ifind(start_tag, name, pos)) != std::string_view::npos) {
    const bool boundary = pos > 0 && std::isspace(static_cast<unsigned char>(start_tag[pos - 1]));
    std::size_t i = pos + name.size();
    while (i < start_tag.size() && std::isspace(static_cast<unsigned char>(start_tag[i]))) ++i;
    if (!boundary || i >= start_tag.size() || start_tag[i] != '=') {
      pos += name.size();
      continue;
    }
    ++i;
    while (i < start_tag.size() && std::isspace(static_cast<unsigned char>(start_tag[i]))) ++i;
    if (i >= start_tag.size()) return std::nullopt;
    if (start_tag[i] == '"' || start_tag[i] == '\'') {
      const char quote = start_tag[i];
      const std::size_t end = start_tag.find(quote, i + 1);
      if (end == std::string_view::npos) return std::nullopt;
      return std::string(start_tag.substr(i + 1, end - i - 1));
    }
    std::size_t end = i;
    while (end < start_tag.size() && !std::isspace(static_cast<unsigned char>(start_tag[end])) &&
           start_tag[end] != '>' && start_tag[end] != '/') {
      ++end;
    }
    return std::string(start_tag.substr(i, end - i));
  }
  return std::nullopt;
}

/// Inner content of the first <name>...</name> inside `record`. A
/// self-closing or missing element gives nullopt.
std::optional<std::string_view> element_content(std::string_view record, std::string_view name) {
  const std::size_t open = find_open_tag(record, name, 0);
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t gt = record.find('>', open);
  if (gt == std::string_view::npos) return std::nullopt;
  if (record[gt - 1] == '/') return std::string_view{};
  const std::string close = "</" + std::string(name);
  const std::size_t end = ifind(record, close, gt + 1);
  if (end == std::string_view::npos) return std::nullopt;
  return record.substr(gt + 1, end - gt - 1);
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

/// Decodes the common named and numeric entities; anything unrecognized is
/// kept verbatim. Control-character references (Reuters' &#3;) are dropped.
std::string decode_entities(std::string_view text) {
  static const std::map<std::string, std::string, std::less<>> named = {
      {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", " "}};
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out += text[i];
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += '&';
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    if (!name.empty() && name[0] == '#') {
      unsigned long cp = 0;
      bool ok = name.size() > 1;
      const bool hex = ok && (name[1] == 'x' || name[1] == 'X');
      for (std::size_t k = hex ? 2 : 1; ok && k < name.size(); ++k) {
        const char c = name[k];
        int digit = -1;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        if (digit < 0 || cp > 0x10FFFF) ok = false;
        else cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(digit);
      }
      if (ok && hex && name.size() == 2) ok = false;
      if (ok && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
        if (cp >= 0x20 || cp == '\n' || cp == '\t' || cp == '\r') append_utf8(out, cp);
        i = semi;
        continue;
      }
    } else if (auto it = named.find(name); it != named.end()) {
      out += it->second;
      i = semi;
      continue;
    }
    out += '&';
  }
  return out;
}

}  // namespace

SgmlLoadResult parse_sgml_lenient(std::string_view content, const LoadOptions& options) {
  SgmlLoadResult result;
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t records = 0;

  std::size_t pos = find_open_tag(content, "reuters", 0);
  while (pos != std::string_view::npos) {
    ++records;
    const std::size_t next = find_open_tag(content, "reuters", pos + 1);
    const std::size_t close = ifind(content, "</reuters>", pos);
    if (close == std::string_view::npos || (next != std::string_view::npos && next < close)) {
      ++result.truncated_records;
      pos = next;
      continue;
    }
    const std::string_view record = content.substr(pos, close - pos);
    pos = next;

    const std::size_t gt = record.find('>');
    const auto id = attribute(record.substr(0, gt), "newid");
    if (!id || id->empty()) {
      ++result.missing_id_records;
      continue;
    }

    std::optional<std::string> gold;
    if (auto topics = element_content(record, "topics")) {
      if (auto first = element_content(*topics, "d")) {
        std::string label = decode_entities(*first);
        const auto b = label.find_first_not_of(" \t\r\n");
        const auto e = label.find_last_not_of(" \t\r\n");
        if (b != std::string::npos) gold = label.substr(b, e - b + 1);
      }
    }
    if (!gold && !options.keep_unlabeled) {
      ++result.dropped_unlabeled;
      continue;
    }
    if (!seen.insert(*id).second) {
      ++result.duplicate_records;
      continue;
    }
    std::string text;
    if (auto body = element_content(record, "body")) text = sanitize_utf8(decode_entities(*body));
    docs.push_back({*id, std::move(text), std::move(gold)});
  }
  if (records == 0) throw InputError("no SGML records");
  result.corpus = Corpus(std::move(docs), true);
  return result;
}

SgmlLoadResult load_sgml_lenient(const fs::path& path, const LoadOptions& options) {
  const std::string content = read_file(path);
  try {
    return parse_sgml_lenient(content, options);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace tmhc
