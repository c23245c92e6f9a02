#include "tmhc/clustering.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "tmhc/error.hpp"
#include "tmhc/io.hpp"

namespace tmhc {

Clustering Clustering::from_labels(std::vector<std::string> doc_ids,
                                   const std::vector<std::size_t>& labels) {
  if (doc_ids.size() != labels.size()) throw InputError("label count does not match doc count");
  Clustering c;
  c.doc_ids = std::move(doc_ids);
  c.cluster_of.reserve(labels.size());
  std::unordered_map<std::size_t, std::size_t> dense;
  for (std::size_t label : labels) {
    auto [it, inserted] = dense.try_emplace(label, dense.size());
    c.cluster_of.push_back(it->second);
  }
  c.k = dense.size();
  return c;
}

void write_clustering_csv(const Clustering& c, std::ostream& out) {
  out << "doc_id,cluster_id\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << csv_field(c.doc_ids[i]) << ',' << c.cluster_of[i] << '\n';
  }
}

Clustering read_clustering_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> ids;
  std::vector<std::size_t> labels;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (line_no == 1 && fields.size() == 2 && fields[0] == "doc_id") continue;
    const std::string where = "clustering line " + std::to_string(line_no) + ": ";
    if (fields.size() != 2 || fields[0].empty()) throw InputError(where + "expected doc_id,cluster_id");
    std::size_t label = 0;
    const auto& f = fields[1];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), label);
    if (ec != std::errc{} || ptr != f.data() + f.size()) {
      throw InputError(where + "bad cluster id '" + f + "'");
    }
    if (!seen.insert(fields[0]).second) throw InputError(where + "duplicate doc id: " + fields[0]);
    ids.push_back(std::move(fields[0]));
    labels.push_back(label);
  }
  return Clustering::from_labels(std::move(ids), labels);
}

}  // namespace tmhc
