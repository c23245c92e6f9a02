#include "tmhc/similarity.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "tmhc/error.hpp"
#include "tmhc/io.hpp"

namespace tmhc {

namespace {

template <typename Set>
std::size_t intersection_size(const Set& a, const Set& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::size_t level_total(std::size_t a, std::size_t b, std::size_t common, Denominator d) {
  return d == Denominator::union_size ? a + b - common : a + b;
}

unsigned resolve_threads(unsigned requested, std::size_t rows) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (rows < 64) t = 1;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(rows, 1)));
}

}  // namespace

PairSimilarity sim_pair(const TopicMapDoc& a, const TopicMapDoc& b, Denominator denominator) {
  SimilarityBreakdown s;
  s.common_topics = intersection_size(a.topics, b.topics);
  s.common_tags = intersection_size(a.tags, b.tags);
  s.common_values = intersection_size(a.tag_values, b.tag_values);
  s.total_topics = level_total(a.topics.size(), b.topics.size(), s.common_topics, denominator);
  s.total_tags = level_total(a.tags.size(), b.tags.size(), s.common_tags, denominator);
  s.total_values = level_total(a.tag_values.size(), b.tag_values.size(), s.common_values, denominator);

  const std::size_t total = s.total();
  const double score = total == 0 ? 0.0 : static_cast<double>(s.common()) / static_cast<double>(total);
  return {score, s};
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> doc_ids)
    : doc_ids_(std::move(doc_ids)), values_(doc_ids_.size() * doc_ids_.size(), 0.0) {}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> doc_ids, std::vector<double> values)
    : doc_ids_(std::move(doc_ids)), values_(std::move(values)) {
  if (values_.size() != doc_ids_.size() * doc_ids_.size()) {
    throw InputError("similarity matrix size does not match id count");
  }
}

void SimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
  values_[i * size() + j] = value;
  values_[j * size() + i] = value;
}

SimilarityMatrix build_matrix(std::span<const TopicMapDoc> docs, const MatrixOptions& options) {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  ids.reserve(docs.size());
  for (const auto& d : docs) {
    if (!seen.insert(d.doc_id).second) throw InputError("duplicate doc id: " + d.doc_id);
    ids.push_back(d.doc_id);
  }

  SimilarityMatrix m(std::move(ids));
  const std::size_t n = docs.size();
  const unsigned threads = resolve_threads(options.threads, n);

  // Rows are dealt round-robin so the triangle's uneven rows balance out.
  // Each (i, j) is written by exactly one worker.
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += threads) {
      for (std::size_t j = i; j < n; ++j) {
        m.set(i, j, sim_pair(docs[i], docs[j], options.denominator).score);
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  return m;
}

// --- export -------------------------------------------------------------------

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out) {
  const std::size_t n = m.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j) out << ',';
    out << csv_field(m.doc_ids()[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

namespace {

double parse_value(const std::string& field, std::size_t row) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InputError("matrix row " + std::to_string(row + 1) + ": bad number '" + field + "'");
  }
  return v;
}

void validate_matrix(const SimilarityMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("matrix value out of [0,1] at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      if (v != m(j, i)) {
        throw InputError("matrix not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
}

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.put(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_f64(std::ostream& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int b = 0; b < 8; ++b) out.put(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw InputError("truncated binary matrix");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
  }
  return v;
}

}  // namespace

SimilarityMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return SimilarityMatrix{};
  std::vector<std::string> ids;
  if (!line.empty() && line != "\r") ids = split_csv_line(line);
  const std::size_t n = ids.size();

  std::vector<double> values;
  values.reserve(n * n);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (row >= n || fields.size() != n) {
      throw InputError("matrix row " + std::to_string(row + 1) + ": expected " + std::to_string(n) +
                       " values");
    }
    for (const auto& f : fields) values.push_back(parse_value(f, row));
    ++row;
  }
  if (row != n) throw InputError("matrix has " + std::to_string(row) + " rows, expected " + std::to_string(n));
  SimilarityMatrix m(std::move(ids), std::move(values));
  validate_matrix(m);
  return m;
}

void write_matrix_binary(const SimilarityMatrix& m, std::ostream& out) {
  const std::size_t n = m.size();
  out.write("TMSM", 4);
  put_u32(out, static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) put_f64(out, m(i, j));
  }
}

SimilarityMatrix read_matrix_binary(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, "TMSM", 4) != 0) throw InputError("not a TMSM matrix");
  const auto n = static_cast<std::size_t>(get_le(in, 4));
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  SimilarityMatrix m(std::move(ids));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m.set(i, j, std::bit_cast<double>(get_le(in, 8)));
  }
  validate_matrix(m);
  return m;
}

void save_matrix(const SimilarityMatrix& m, const std::filesystem::path& path) {
  std::ostringstream out;
  if (path.extension() == ".tmsm") {
    write_matrix_binary(m, out);
  } else {
    write_matrix_csv(m, out);
  }
  write_file(path, out.str());
}

SimilarityMatrix load_matrix(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  try {
    return path.extension() == ".tmsm" ? read_matrix_binary(in) : read_matrix_csv(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace tmhc
