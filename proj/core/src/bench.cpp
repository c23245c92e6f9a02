#include "tmhc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tmhc/corpus.hpp"
#include "tmhc/dvm.hpp"
#include "tmhc/error.hpp"
#include "tmhc/extractor.hpp"
#include "tmhc/io.hpp"

namespace tmhc {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Algorithm parse_algorithm(std::string_view name) {
  if (name == "tmhc") return Algorithm::tmhc;
  if (name == "dvm_hac") return Algorithm::dvm_hac;
  if (name == "bkm") return Algorithm::bkm;
  throw InputError("unknown algorithm: " + std::string(name));
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::tmhc: return "tmhc";
    case Algorithm::dvm_hac: return "dvm_hac";
    case Algorithm::bkm: return "bkm";
  }
  return "?";
}

void BenchConfig::validate() const {
  if (datasets.empty()) throw InputError("bench config: no datasets");
  if (algorithms.empty()) throw InputError("bench config: no algorithms");
  if (k_policy.fixed && *k_policy.fixed == 0) throw InputError("bench config: fixed k must be >= 1");
  std::set<std::string> names;
  for (const auto& d : datasets) {
    if (!names.insert(d.name).second) throw InputError("bench config: duplicate dataset " + d.name);
  }
  const bool needs_gazetteer =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::tmhc) != algorithms.end();
  if (needs_gazetteer && gazetteer.empty()) throw InputError("bench config: tmhc needs a gazetteer");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(unquote(w));
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s.front() == '-') throw InputError("bench config: bad " + what + ": " + s);
  return static_cast<std::size_t>(v);
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text, const fs::path& base_dir) {
  BenchConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_algorithms = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "bench config line " + std::to_string(line_no) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    try {
      if (key == "datasets") {
        const auto f = split_words(value);
        if (f.size() < 3 || f.size() > 4) throw InputError("expected `name loader path [labels]`");
        if (f[1] != "jsonl" && f[1] != "sgml" && f[1] != "textdir") {
          throw InputError("unknown loader: " + f[1]);
        }
        DatasetSpec d{f[0], f[1], resolve(base_dir, f[2]), std::nullopt};
        if (f.size() == 4) d.labels = resolve(base_dir, f[3]);
        config.datasets.push_back(std::move(d));
      } else if (key == "algorithms") {
        if (saw_algorithms) throw InputError("algorithms given twice");
        saw_algorithms = true;
        std::string list = value;
        std::replace(list.begin(), list.end(), ',', ' ');
        for (const auto& name : split_words(list)) {
          const Algorithm a = parse_algorithm(name);
          if (std::find(config.algorithms.begin(), config.algorithms.end(), a) == config.algorithms.end()) {
            config.algorithms.push_back(a);
          }
        }
      } else if (key == "k_policy") {
        if (value == "gold_class_count") {
          config.k_policy.fixed.reset();
        } else if (value.starts_with("fixed(") && value.ends_with(")")) {
          config.k_policy.fixed = parse_count(value.substr(6, value.size() - 7), "k");
        } else {
          throw InputError("k_policy must be gold_class_count or fixed(K)");
        }
      } else if (key == "seed") {
        config.seed = parse_count(value, "seed");
      } else if (key == "linkage") {
        config.linkage = parse_linkage(value);
      } else if (key == "gazetteer") {
        config.gazetteer = resolve(base_dir, value);
      } else if (key == "denominator") {
        if (value == "union") config.denominator = Denominator::union_size;
        else if (value == "sum") config.denominator = Denominator::sum_size;
        else throw InputError("denominator must be union or sum");
      } else {
        throw InputError("unknown key: " + key);
      }
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
  }
  config.validate();
  return config;
}

BenchConfig load_bench_config(const fs::path& path) {
  return parse_bench_config(read_file(path), path.parent_path());
}

std::size_t BenchResult::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.error.has_value(); }));
}

namespace {

Corpus load_dataset(const DatasetSpec& d) {
  LoadOptions options;
  options.lenient = true;
  if (d.loader == "jsonl") return load_jsonl(d.path, options);
  if (d.loader == "sgml") return load_sgml_lenient(d.path, options).corpus;
  if (d.loader == "textdir") return load_text_dir(d.path, d.labels, options);
  throw InputError("unknown loader: " + d.loader);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  config.validate();
  BenchResult result;

  std::optional<Gazetteer> gazetteer;
  std::optional<std::string> gazetteer_error;
  if (std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::tmhc) !=
      config.algorithms.end()) {
    try {
      gazetteer = load_gazetteer(config.gazetteer);
    } catch (const Error& e) {
      gazetteer_error = e.what();
    }
  }

  for (const auto& dataset : config.datasets) {
    auto error_rows = [&](const std::string& msg, std::size_t docs) {
      for (Algorithm a : config.algorithms) {
        BenchRow row;
        row.dataset = dataset.name;
        row.algorithm = std::string(to_string(a));
        row.doc_count = docs;
        row.error = msg;
        result.rows.push_back(std::move(row));
      }
    };

    Corpus corpus;
    try {
      corpus = load_dataset(dataset).labeled_only();
    } catch (const Error& e) {
      error_rows(e.what(), 0);
      continue;
    }
    const std::size_t n = corpus.size();
    const std::size_t k = config.k_policy.fixed.value_or(corpus.classes().size());
    if (k == 0 || k > n) {
      error_rows("k = " + std::to_string(k) + " is not in [1, " + std::to_string(n) + "]", n);
      continue;
    }

    std::map<std::string, std::string> gold;
    std::vector<std::string> ids;
    for (const auto& doc : corpus.documents()) {
      gold.emplace(doc.id, *doc.gold_class);
      ids.push_back(doc.id);
    }

    std::optional<TfidfModel> tfidf;
    for (Algorithm algorithm : config.algorithms) {
      BenchRow row;
      row.dataset = dataset.name;
      row.algorithm = std::string(to_string(algorithm));
      row.doc_count = n;
      row.k = k;
      try {
        Clustering clustering;
        if (algorithm == Algorithm::tmhc) {
          if (!gazetteer) throw InputError(gazetteer_error.value_or("no gazetteer"));
          const Extractor extractor(*gazetteer);
          std::vector<TopicMapDoc> docs;
          docs.reserve(n);
          for (const auto& doc : corpus.documents()) docs.push_back(extractor.extract(doc).first);
          const auto start = Clock::now();
          const auto matrix = build_matrix(docs, {config.denominator, 0});
          clustering = cut(hac(matrix, config.linkage), k);
          row.wall_time = seconds_since(start);
        } else {
          if (!tfidf) tfidf = tfidf_vectorize(corpus, default_stopwords());
          const auto start = Clock::now();
          if (algorithm == Algorithm::dvm_hac) {
            const auto matrix = build_cosine_matrix(tfidf->vectors, ids);
            clustering = cut(hac(matrix, config.linkage), k);
          } else {
            BisectingOptions options;
            options.seed = config.seed;
            clustering = bisecting_kmeans(tfidf->vectors, ids, k, options);
          }
          row.wall_time = seconds_since(start);
        }
        const auto report = evaluate(contingency(clustering, gold), dataset.name, row.algorithm);
        row.f_measure = report.f_measure;
        row.purity = report.purity;
        row.entropy = report.entropy;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      result.rows.push_back(std::move(row));
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.dataset, a.algorithm) < std::tie(b.dataset, b.algorithm);
  });
  return result;
}

// --- rendering --------------------------------------------------------------

namespace {

std::string_view metric_key(Metric m) {
  switch (m) {
    case Metric::f_measure: return "f_measure";
    case Metric::purity: return "purity";
    case Metric::entropy: return "entropy";
  }
  return "?";
}

std::string_view metric_title(Metric m) {
  switch (m) {
    case Metric::f_measure: return "F-Measure";
    case Metric::purity: return "Purity";
    case Metric::entropy: return "Entropy";
  }
  return "?";
}

double metric_value(const BenchRow& row, Metric m) {
  switch (m) {
    case Metric::f_measure: return row.f_measure;
    case Metric::purity: return row.purity;
    case Metric::entropy: return row.entropy;
  }
  return 0.0;
}

struct Grid {
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;
  std::map<std::pair<std::string, std::string>, const BenchRow*> cells;
};

Grid grid_of(const BenchResult& result) {
  Grid g;
  std::set<std::string> datasets;
  std::set<std::string> algorithms;
  for (const auto& row : result.rows) {
    datasets.insert(row.dataset);
    algorithms.insert(row.algorithm);
    g.cells[{row.dataset, row.algorithm}] = &row;
  }
  g.datasets.assign(datasets.begin(), datasets.end());
  g.algorithms.assign(algorithms.begin(), algorithms.end());
  return g;
}

ordered_json table_json(const Grid& g, Metric metric) {
  ordered_json table;
  table["metric"] = metric_key(metric);
  table["columns"] = g.algorithms;
  table["rows"] = ordered_json::array();
  for (const auto& d : g.datasets) {
    ordered_json row;
    row["dataset"] = d;
    ordered_json values = ordered_json::object();
    for (const auto& a : g.algorithms) {
      auto it = g.cells.find({d, a});
      if (it == g.cells.end() || it->second->error) {
        values[a] = nullptr;
      } else {
        values[a] = metric_value(*it->second, metric);
      }
    }
    row["values"] = std::move(values);
    table["rows"].push_back(std::move(row));
  }
  return table;
}

}  // namespace

std::string render_table(const BenchResult& result, Metric metric, TableFormat format) {
  const Grid g = grid_of(result);
  auto cell = [&](const std::string& d, const std::string& a, bool rounded) -> std::string {
    auto it = g.cells.find({d, a});
    if (it == g.cells.end()) return "";
    if (it->second->error) return "error";
    const double v = metric_value(*it->second, metric);
    return rounded ? format_fixed(v, 2) : format_double(v);
  };

  std::string out;
  switch (format) {
    case TableFormat::csv: {
      out += "dataset";
      for (const auto& a : g.algorithms) out += "," + csv_field(a);
      out += '\n';
      for (const auto& d : g.datasets) {
        out += csv_field(d);
        for (const auto& a : g.algorithms) out += "," + cell(d, a, false);
        out += '\n';
      }
      break;
    }
    case TableFormat::markdown: {
      out += "### ";
      out += metric_title(metric);
      out += "\n\n| dataset |";
      for (const auto& a : g.algorithms) out += " " + a + " |";
      out += "\n|---|";
      for (std::size_t i = 0; i < g.algorithms.size(); ++i) out += "---|";
      out += '\n';
      for (const auto& d : g.datasets) {
        out += "| " + d + " |";
        for (const auto& a : g.algorithms) out += " " + cell(d, a, true) + " |";
        out += '\n';
      }
      break;
    }
    case TableFormat::json:
      out = table_json(g, metric).dump(2) + "\n";
      break;
  }
  return out;
}

std::string render_tables(const BenchResult& result, TableFormat format) {
  constexpr Metric metrics[] = {Metric::f_measure, Metric::purity, Metric::entropy};
  if (format == TableFormat::json) {
    const Grid g = grid_of(result);
    ordered_json all = ordered_json::array();
    for (Metric m : metrics) all.push_back(table_json(g, m));
    return all.dump(2) + "\n";
  }
  std::string out;
  for (Metric m : metrics) {
    if (!out.empty()) out += '\n';
    out += render_table(result, m, format);
  }
  return out;
}

std::string render_raw_json(const BenchResult& result) {
  ordered_json raw;
  raw["entropy_log_base"] = 2;
  raw["rows"] = ordered_json::array();
  for (const auto& row : result.rows) {
    ordered_json r;
    r["dataset"] = row.dataset;
    r["algorithm"] = row.algorithm;
    r["k"] = row.k;
    r["doc_count"] = row.doc_count;
    if (row.error) {
      r["error"] = *row.error;
    } else {
      r["f_measure"] = row.f_measure;
      r["purity"] = row.purity;
      r["entropy"] = row.entropy;
    }
    raw["rows"].push_back(std::move(r));
  }
  return raw.dump(2) + "\n";
}

void write_bench_outputs(const BenchResult& result, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory: " + out_dir.string());
  const std::pair<Metric, const char*> files[] = {
      {Metric::f_measure, "fmeasure"}, {Metric::purity, "purity"}, {Metric::entropy, "entropy"}};
  for (const auto& [metric, stem] : files) {
    write_file(out_dir / (std::string(stem) + ".csv"), render_table(result, metric, TableFormat::csv));
    write_file(out_dir / (std::string(stem) + ".md"), render_table(result, metric, TableFormat::markdown));
  }
  write_file(out_dir / "raw.json", render_raw_json(result));
}

}  // namespace tmhc
