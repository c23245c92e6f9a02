#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmhc/bench.hpp"
#include "tmhc/corpus.hpp"
#include "tmhc/error.hpp"
#include "tmhc/extractor.hpp"
#include "tmhc/hac.hpp"
#include "tmhc/io.hpp"
#include "tmhc/metrics.hpp"
#include "tmhc/similarity.hpp"
#include "tmhc/xtm.hpp"

namespace tmhc::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CorpusFlags {
  std::string jsonl;
  std::string text_dir;
  std::string sgml;
  std::string labels;
  bool keep_unlabeled = false;
  bool lenient = false;

  void add_to(CLI::App& app) {
    auto* j = app.add_option("--jsonl", jsonl, "JSONL corpus (id, text, class)");
    auto* t = app.add_option("--text-dir", text_dir, "directory with one document per file");
    auto* s = app.add_option("--sgml", sgml, "Reuters-21578 style SGML file");
    j->excludes(t)->excludes(s);
    t->excludes(s);
    app.add_option("--labels", labels, "id<TAB>class labels for --text-dir");
    app.add_flag("--keep-unlabeled", keep_unlabeled, "keep SGML records without topics");
    app.add_flag("--lenient", lenient, "allow empty documents");
  }

  Corpus load(std::ostream& err, bool quiet) const {
    LoadOptions options;
    options.lenient = lenient;
    options.keep_unlabeled = keep_unlabeled;
    if (!jsonl.empty()) return load_jsonl(jsonl, options);
    if (!sgml.empty()) {
      auto result = load_sgml_lenient(sgml, options);
      if (!quiet && result.truncated_records > 0) {
        err << "warning: skipped " << result.truncated_records << " truncated SGML records\n";
      }
      return std::move(result.corpus);
    }
    if (!text_dir.empty()) {
      std::optional<fs::path> labels_path;
      if (!labels.empty()) labels_path = labels;
      return load_text_dir(text_dir, labels_path, options);
    }
    throw InputError("one of --jsonl, --text-dir or --sgml is required");
  }
};

Denominator parse_denominator(const std::string& s) {
  if (s == "union") return Denominator::union_size;
  if (s == "sum") return Denominator::sum_size;
  throw InputError("--denominator must be union or sum");
}

/// Reads every *.xtm file of `dir` in file-name order.
std::vector<TopicMapDoc> load_xtm_dir(const fs::path& dir, ParseMode mode) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xtm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TopicMapDoc> docs;
  for (const auto& file : files) {
    try {
      const auto parsed = parse_xtm(read_file(file), mode);
      docs.push_back(extract_tm_doc(parsed.map, decode_file_stem(file.stem().string()), mode));
    } catch (const InputError& e) {
      throw InputError(file.string() + ": " + e.what());
    }
  }
  return docs;
}

std::map<std::string, std::string> labels_map(const fs::path& path) {
  std::map<std::string, std::string> out;
  for (auto& [id, cls] : load_labels(path)) out[id] = cls;
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory: " + dir.string());
}

int cmd_extract(const CorpusFlags& corpus_flags, const std::string& gazetteer_path,
                const std::string& out_dir, bool quiet, std::ostream& out, std::ostream& err) {
  const Gazetteer gazetteer = load_gazetteer(gazetteer_path);
  const Corpus corpus = corpus_flags.load(err, quiet);
  ensure_dir(out_dir);

  const Extractor extractor(gazetteer);
  ordered_json reports = ordered_json::array();
  std::string labels;
  for (const auto& doc : corpus.documents()) {
    auto [tm, report] = extractor.extract(doc);
    write_file(fs::path(out_dir) / (encode_file_stem(doc.id) + ".xtm"), serialize_xtm(emit_xtm(tm)));
    reports.push_back({{"doc_id", report.doc_id},
                       {"matched_patterns", report.matched_patterns},
                       {"distinct_topics", report.distinct_topics},
                       {"distinct_tags", report.distinct_tags},
                       {"distinct_values", report.distinct_values}});
    if (doc.gold_class) labels += doc.id + "\t" + *doc.gold_class + "\n";
  }
  ordered_json report_doc;
  report_doc["documents"] = std::move(reports);
  write_file(fs::path(out_dir) / "report.json", report_doc.dump(2) + "\n");
  if (!labels.empty()) write_file(fs::path(out_dir) / "labels.tsv", labels);
  if (!quiet) out << "extracted " << corpus.size() << " documents into " << out_dir << "\n";
  return kSuccess;
}

int cmd_similarity(const std::string& xtm_dir, const std::string& out_path,
                   const std::string& denominator, unsigned threads, bool lenient, bool quiet,
                   std::ostream& out) {
  const auto docs = load_xtm_dir(xtm_dir, lenient ? ParseMode::lenient : ParseMode::strict);
  const auto matrix = build_matrix(docs, {parse_denominator(denominator), threads});
  save_matrix(matrix, out_path);
  if (!quiet) out << "wrote " << matrix.size() << "x" << matrix.size() << " matrix to " << out_path << "\n";
  return kSuccess;
}

struct ClusterArgs {
  std::string matrix;
  std::string xtm_dir;
  std::optional<std::size_t> k;
  std::string linkage = "average";
  std::string labels;
  std::string out_dir;
  std::string denominator = "union";
  unsigned threads = 0;
  bool lenient = false;
};

int cmd_cluster(const ClusterArgs& a, bool quiet, std::ostream& out) {
  const Linkage linkage = parse_linkage(a.linkage);
  SimilarityMatrix matrix;
  if (!a.matrix.empty()) {
    matrix = load_matrix(a.matrix);
  } else {
    const auto docs = load_xtm_dir(a.xtm_dir, a.lenient ? ParseMode::lenient : ParseMode::strict);
    matrix = build_matrix(docs, {parse_denominator(a.denominator), a.threads});
  }

  std::size_t k = 0;
  if (a.k) {
    k = *a.k;
  } else {
    fs::path labels_path = a.labels;
    if (labels_path.empty() && !a.xtm_dir.empty() && fs::exists(fs::path(a.xtm_dir) / "labels.tsv")) {
      labels_path = fs::path(a.xtm_dir) / "labels.tsv";
    }
    if (labels_path.empty()) throw InputError("--k is required when no labels are available");
    const auto gold = labels_map(labels_path);
    std::set<std::string> classes;
    for (const auto& id : matrix.doc_ids()) {
      if (auto it = gold.find(id); it != gold.end()) classes.insert(it->second);
    }
    k = classes.size();
  }

  const Dendrogram dendrogram = hac(matrix, linkage);
  const Clustering clustering = cut(dendrogram, k);

  ensure_dir(a.out_dir);
  std::ostringstream csv;
  write_clustering_csv(clustering, csv);
  write_file(fs::path(a.out_dir) / "clustering.csv", csv.str());
  std::ostringstream json;
  write_dendrogram_json(dendrogram, json);
  write_file(fs::path(a.out_dir) / "dendrogram.json", json.str());
  if (!quiet) out << "clustered " << clustering.size() << " documents into " << clustering.k << " clusters\n";
  return kSuccess;
}

struct EvaluateArgs {
  std::string clustering;
  std::string labels;
  std::string log_base = "2";
  std::string format = "json";
  std::string out_path;
  std::string dataset;
  std::string algorithm;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  LogBase base;
  if (a.log_base == "2") base = LogBase::two;
  else if (a.log_base == "e") base = LogBase::natural;
  else throw InputError("--log-base must be 2 or e");
  if (a.format != "json" && a.format != "csv") throw InputError("--format must be json or csv");

  std::istringstream in(read_file(a.clustering));
  const Clustering clustering = read_clustering_csv(in);
  const auto table = contingency(clustering, labels_map(a.labels));
  const MetricReport r = evaluate(table, a.dataset, a.algorithm, base);

  std::string text;
  if (a.format == "json") {
    ordered_json j;
    j["dataset"] = r.dataset;
    j["algorithm"] = r.algorithm;
    j["k"] = r.k;
    j["f_measure"] = r.f_measure;
    j["purity"] = r.purity;
    j["entropy"] = r.entropy;
    j["log_base"] = a.log_base;
    text = j.dump(2) + "\n";
  } else {
    text = "dataset,algorithm,k,f_measure,purity,entropy\n" + csv_field(r.dataset) + "," +
           csv_field(r.algorithm) + "," + std::to_string(r.k) + "," + format_double(r.f_measure) + "," +
           format_double(r.purity) + "," + format_double(r.entropy) + "\n";
  }
  if (a.out_path.empty()) {
    out << text;
  } else {
    write_file(a.out_path, text);
  }
  return kSuccess;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir, bool quiet,
              std::ostream& out, std::ostream& err) {
  const BenchConfig config = load_bench_config(config_path);
  const BenchResult result = run_bench(config);
  write_bench_outputs(result, out_dir);
  if (!quiet) {
    out << render_tables(result, TableFormat::markdown);
    out << "\nclustering wall time (s):\n";
    for (const auto& row : result.rows) {
      out << "  " << row.dataset << " / " << row.algorithm << ": " << format_fixed(row.wall_time, 4) << "\n";
    }
  }
  for (const auto& row : result.rows) {
    if (row.error) err << "error: " << row.dataset << " / " << row.algorithm << ": " << *row.error << "\n";
  }
  if (result.error_count() > 0) {
    err << "bench finished with " << result.error_count() << " error rows (partial success)\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topic-map based document clustering toolkit", "tmhc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  auto* extract = app.add_subcommand("extract", "extract topic maps from a corpus into XTM files");
  CorpusFlags extract_corpus;
  std::string gazetteer;
  std::string extract_out;
  extract_corpus.add_to(*extract);
  extract->add_option("--gazetteer", gazetteer, "gazetteer TSV")->required();
  extract->add_option("--out", extract_out, "output directory")->required();

  auto* similarity = app.add_subcommand("similarity", "build the document similarity matrix");
  std::string sim_xtm_dir, sim_out, sim_denominator = "union";
  unsigned sim_threads = 0;
  bool sim_lenient = false;
  similarity->add_option("--xtm-dir", sim_xtm_dir, "directory of .xtm files")->required();
  similarity->add_option("--out", sim_out, "matrix file (.csv, or .tmsm for binary)")->required();
  similarity->add_option("--denominator", sim_denominator, "union or sum")->capture_default_str();
  similarity->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
  similarity->add_flag("--lenient", sim_lenient, "parse XTM leniently");

  auto* cluster = app.add_subcommand("cluster", "hierarchical agglomerative clustering");
  ClusterArgs cluster_args;
  auto* m = cluster->add_option("--matrix", cluster_args.matrix, "similarity matrix (.csv or .tmsm)");
  auto* x = cluster->add_option("--xtm-dir", cluster_args.xtm_dir, "directory of .xtm files");
  m->excludes(x);
  cluster->add_option("--k", cluster_args.k, "number of clusters (default: gold class count)");
  cluster->add_option("--linkage", cluster_args.linkage, "single, complete or average")->capture_default_str();
  cluster->add_option("--labels", cluster_args.labels, "labels file used for the default k");
  cluster->add_option("--out", cluster_args.out_dir, "output directory")->required();
  cluster->add_option("--denominator", cluster_args.denominator, "union or sum")->capture_default_str();
  cluster->add_option("--threads", cluster_args.threads, "worker threads (0 = all cores)");
  cluster->add_flag("--lenient", cluster_args.lenient, "parse XTM leniently");

  auto* evaluate = app.add_subcommand("evaluate", "score a clustering against gold labels");
  EvaluateArgs eval_args;
  evaluate->add_option("--clustering", eval_args.clustering, "clustering CSV")->required();
  evaluate->add_option("--labels", eval_args.labels, "id<TAB>class labels")->required();
  evaluate->add_option("--log-base", eval_args.log_base, "entropy log base: 2 or e")->capture_default_str();
  evaluate->add_option("--format", eval_args.format, "json or csv")->capture_default_str();
  evaluate->add_option("--out", eval_args.out_path, "write the report here instead of stdout");
  evaluate->add_option("--dataset", eval_args.dataset, "dataset name for the report");
  evaluate->add_option("--algorithm", eval_args.algorithm, "algorithm name for the report");

  auto* bench = app.add_subcommand("bench", "run the multi-algorithm comparison");
  std::string bench_config, bench_out;
  bench->add_option("--config", bench_config, "bench config file")->required();
  bench->add_option("--out", bench_out, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (extract->parsed()) return cmd_extract(extract_corpus, gazetteer, extract_out, quiet, out, err);
    if (similarity->parsed()) {
      return cmd_similarity(sim_xtm_dir, sim_out, sim_denominator, sim_threads, sim_lenient, quiet, out);
    }
    if (cluster->parsed()) {
      if (cluster_args.matrix.empty() && cluster_args.xtm_dir.empty()) {
        throw InputError("one of --matrix or --xtm-dir is required");
      }
      return cmd_cluster(cluster_args, quiet, out);
    }
    if (evaluate->parsed()) return cmd_evaluate(eval_args, out);
    if (bench->parsed()) return cmd_bench(bench_config, bench_out, quiet, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace tmhc::cli
