#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmhc/hac.hpp"
#include "tmhc/metrics.hpp"
#include "tmhc/similarity.hpp"

namespace tmhc {

enum class Algorithm { tmhc, dvm_hac, bkm };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algorithm);

struct DatasetSpec {
  std::string name;
  /// "jsonl", "sgml" or "textdir".
  std::string loader;
  std::filesystem::path path;
  /// textdir only.
  std::optional<std::filesystem::path> labels;
};

struct KPolicy {
  /// Empty means the gold class count of each dataset.
  std::optional<std::size_t> fixed;
};

struct BenchConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<Algorithm> algorithms;
  KPolicy k_policy;
  std::uint64_t seed = 0;
  Linkage linkage = Linkage::average;
  std::filesystem::path gazetteer;
  Denominator denominator = Denominator::union_size;

  /// Throws InputError when no dataset or algorithm is configured or a
  /// fixed k is 0.
  void validate() const;
};

/// key = value lines, '#' comments. Keys: datasets (repeatable, value
/// `name loader path [labels]`), algorithms (comma list), k_policy
/// (`gold_class_count` or `fixed(K)`), seed, linkage, gazetteer, denominator
/// (`union` or `sum`). Relative paths resolve against `base_dir`.
BenchConfig parse_bench_config(std::string_view text, const std::filesystem::path& base_dir = {});
BenchConfig load_bench_config(const std::filesystem::path& path);

struct BenchRow {
  std::string dataset;
  std::string algorithm;
  double f_measure = 0.0;
  double purity = 0.0;
  double entropy = 0.0;
  /// Seconds spent in the clustering stage only.
  double wall_time = 0.0;
  std::size_t doc_count = 0;
  std::size_t k = 0;
  /// Set when the cell could not be computed; metrics are then meaningless.
  std::optional<std::string> error;
};

struct BenchResult {
  /// Sorted by dataset, then algorithm name.
  std::vector<BenchRow> rows;

  std::size_t error_count() const;
};

/// Runs every dataset x algorithm cell. Loader or algorithm failures become
/// error rows; the run continues. Only documents with a gold class take part.
BenchResult run_bench(const BenchConfig& config);

enum class Metric { f_measure, purity, entropy };
enum class TableFormat { csv, json, markdown };

/// One table per metric: rows = datasets, columns = algorithms. Markdown
/// rounds to two decimals; csv and json carry full precision.
std::string render_table(const BenchResult& result, Metric metric, TableFormat format);
std::string render_tables(const BenchResult& result, TableFormat format);

/// Every row with all fields except wall_time, so identical runs match byte
/// for byte.
std::string render_raw_json(const BenchResult& result);

/// fmeasure.{csv,md}, purity.{csv,md}, entropy.{csv,md}, raw.json.
void write_bench_outputs(const BenchResult& result, const std::filesystem::path& out_dir);

}  // namespace tmhc
