#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mathns/cluster.hpp"
#include "mathns/corpus.hpp"
#include "mathns/error.hpp"
#include "mathns/evalns.hpp"
#include "mathns/extraction.hpp"
#include "mathns/idspace.hpp"
#include "mathns/nsbuild.hpp"
#include "mathns/reduce.hpp"
#include "mathns/simindex.hpp"
#include "mathns/textproc.hpp"

namespace mathns {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

enum class Stage { Extract = 0, Stats, Vectorize, Cluster, Evaluate, Namespaces };

inline constexpr Stage kAllStages[] = {Stage::Extract, Stage::Stats, Stage::Vectorize,
                                       Stage::Cluster, Stage::Evaluate, Stage::Namespaces};

inline std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Extract: return "extract";
    case Stage::Stats: return "stats";
    case Stage::Vectorize: return "vectorize";
    case Stage::Cluster: return "cluster";
    case Stage::Evaluate: return "evaluate";
    case Stage::Namespaces: return "namespaces";
  }
  return "?";
}

inline Stage parse_stage(std::string_view s) {
  for (Stage st : kAllStages)
    if (stage_name(st) == s) return st;
  throw ConfigError("unknown stage '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct ReductionConfig {
  std::string method = "none";  ///< none | svd | nmf
  std::vector<int> ranks;
  bool normalize_embedding = true;
};

struct ClusteringConfig {
  std::string algorithm = "kmeans";  ///< kmeans | minibatch | agglomerative | snn_dbscan | nmf
  std::vector<int> k{5};
  int restarts = 10;
  int max_iter = 300;
  std::size_t batch_size = 1024;
  int iters = 100;
  std::optional<TruncationPolicy> truncation;
  Linkage linkage = Linkage::Ward;
  std::size_t max_points = 5000;
  std::size_t snn_k = 10;
  std::vector<int> eps{3};
  std::size_t minpts = 3;
  Measure measure = Measure::Cosine;
  bool snn_union = false;
};

struct EvaluationConfig {
  double purity_threshold = 0.8;
  std::size_t min_size = 3;
  std::size_t baseline_trials = 1000;
};

struct HierarchyConfig {
  std::string path;  ///< empty: no hierarchy mapping
  double min_cos = 0.2;
  std::size_t min_matches = 2;
};

struct PipelineConfig {
  std::string corpus;
  std::string labels;  ///< empty: categories come from the corpus
  std::string stop_symbols, stop_definitions;
  std::string lexicon, suffix_rules;
  ExtractionConfig extraction;
  Association mode = Association::Weak;
  DefinitionKeys definition_keys = DefinitionKeys::Tokens;
  Weighting weighting = Weighting::TfIdf;
  std::size_t min_df = 2;
  bool normalize = true;
  std::size_t min_identifiers = 2;
  ReductionConfig reduction;
  ClusteringConfig clustering;
  EvaluationConfig evaluation;
  NamespaceOptions namespaces;
  HierarchyConfig hierarchy;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

namespace detail {

inline void check_keys(const nlohmann::json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

inline std::string resolve_path(const fs::path& base, const std::string& p) {
  if (p.empty()) return p;
  const fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal().string();
}

inline void require_file(const std::string& path, const char* what) {
  if (!path.empty() && !fs::is_regular_file(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

}  // namespace detail

/// Builds a config from JSON. Relative paths resolve against `base_dir`;
/// every referenced input file must exist and `seed` is required.
inline PipelineConfig parse_config(const nlohmann::json& j, const fs::path& base_dir) {
  using detail::read;
  detail::check_keys(j, "config",
                     {"corpus", "labels", "stop_lists", "lexicon", "extraction", "space", "reduction", "clustering",
                      "evaluation", "namespaces", "hierarchy", "seed", "output_dir"});
  PipelineConfig c;
  if (!j.contains("seed") || !j["seed"].is_number_integer()) throw ConfigError("config needs an integer 'seed'");
  c.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("corpus")) throw ConfigError("config needs 'corpus'");
  read(j, "corpus", c.corpus);
  read(j, "labels", c.labels);
  read(j, "output_dir", c.output_dir);
  if (j.contains("stop_lists")) {
    const auto& s = j["stop_lists"];
    detail::check_keys(s, "stop_lists", {"symbols", "definitions"});
    read(s, "symbols", c.stop_symbols);
    read(s, "definitions", c.stop_definitions);
  }
  if (j.contains("lexicon")) {
    const auto& s = j["lexicon"];
    detail::check_keys(s, "lexicon", {"words", "suffixes"});
    read(s, "words", c.lexicon);
    read(s, "suffixes", c.suffix_rules);
  }
  if (j.contains("extraction")) {
    const auto& e = j["extraction"];
    detail::check_keys(e, "extraction", {"method", "alpha", "beta", "gamma", "sigma_d", "sigma_s", "threshold"});
    std::string method = std::string(method_name(c.extraction.method));
    read(e, "method", method);
    c.extraction.method = parse_method(method);
    auto& r = c.extraction.ranker;
    read(e, "alpha", r.alpha);
    read(e, "beta", r.beta);
    read(e, "gamma", r.gamma);
    read(e, "sigma_d", r.sigma_d);
    read(e, "sigma_s", r.sigma_s);
    read(e, "threshold", r.retain_threshold);
    r.validate();
  }
  if (j.contains("space")) {
    const auto& s = j["space"];
    detail::check_keys(s, "space", {"mode", "definition_keys", "weighting", "min_df", "normalize", "min_identifiers"});
    std::string mode = std::string(association_name(c.mode)), keys = "tokens", weighting = "tfidf";
    read(s, "mode", mode);
    read(s, "definition_keys", keys);
    read(s, "weighting", weighting);
    c.mode = parse_association(mode);
    c.definition_keys = parse_definition_keys(keys);
    c.weighting = parse_weighting(weighting);
    read(s, "min_df", c.min_df);
    read(s, "normalize", c.normalize);
    read(s, "min_identifiers", c.min_identifiers);
  }
  if (j.contains("reduction")) {
    const auto& s = j["reduction"];
    detail::check_keys(s, "reduction", {"method", "rank", "normalize_embedding"});
    read(s, "method", c.reduction.method);
    read(s, "rank", c.reduction.ranks);
    read(s, "normalize_embedding", c.reduction.normalize_embedding);
    if (c.reduction.method != "none" && c.reduction.method != "svd" && c.reduction.method != "nmf")
      throw ConfigError("reduction.method must be none, svd or nmf");
    if (c.reduction.method != "none" && c.reduction.ranks.empty()) throw ConfigError("reduction.rank list is empty");
  }
  if (j.contains("clustering")) {
    const auto& s = j["clustering"];
    detail::check_keys(s, "clustering",
                       {"algorithm", "k", "restarts", "max_iter", "batch_size", "iters", "truncation", "linkage",
                        "max_points", "snn_k", "eps", "minpts", "measure", "snn_union"});
    auto& cl = c.clustering;
    read(s, "algorithm", cl.algorithm);
    read(s, "k", cl.k);
    read(s, "restarts", cl.restarts);
    read(s, "max_iter", cl.max_iter);
    read(s, "batch_size", cl.batch_size);
    read(s, "iters", cl.iters);
    read(s, "max_points", cl.max_points);
    read(s, "snn_k", cl.snn_k);
    read(s, "eps", cl.eps);
    read(s, "minpts", cl.minpts);
    read(s, "snn_union", cl.snn_union);
    std::string linkage = "ward", measure = "cosine";
    read(s, "linkage", linkage);
    read(s, "measure", measure);
    cl.linkage = parse_linkage(linkage);
    cl.measure = parse_measure(measure);
    if (s.contains("truncation")) {
      const auto& t = s["truncation"];
      detail::check_keys(t, "clustering.truncation", {"top_c", "norm_fraction"});
      if (t.contains("top_c")) cl.truncation = TopC{t["top_c"].get<std::size_t>()};
      if (t.contains("norm_fraction")) cl.truncation = NormFraction{t["norm_fraction"].get<double>()};
    }
    static const std::set<std::string> algorithms = {"kmeans", "minibatch", "agglomerative", "snn_dbscan", "nmf"};
    if (!algorithms.count(cl.algorithm)) throw ConfigError("unknown clustering algorithm '" + cl.algorithm + "'");
    if (cl.algorithm == "nmf" && c.reduction.method != "none")
      throw ConfigError("clustering.algorithm nmf factorizes the matrix itself; set reduction.method to none");
    if (cl.algorithm == "snn_dbscan" ? cl.eps.empty() : cl.k.empty()) throw ConfigError("clustering grid is empty");
  }
  if (j.contains("evaluation")) {
    const auto& s = j["evaluation"];
    detail::check_keys(s, "evaluation", {"purity_threshold", "min_size", "baseline_trials"});
    read(s, "purity_threshold", c.evaluation.purity_threshold);
    read(s, "min_size", c.evaluation.min_size);
    read(s, "baseline_trials", c.evaluation.baseline_trials);
  }
  if (j.contains("namespaces")) {
    const auto& s = j["namespaces"];
    detail::check_keys(s, "namespaces", {"fuzzy_threshold"});
    read(s, "fuzzy_threshold", c.namespaces.fuzzy_threshold);
  }
  if (j.contains("hierarchy")) {
    const auto& s = j["hierarchy"];
    if (s.is_string()) {
      c.hierarchy.path = s.get<std::string>();
    } else {
      detail::check_keys(s, "hierarchy", {"path", "min_cos", "min_matches"});
      read(s, "path", c.hierarchy.path);
      read(s, "min_cos", c.hierarchy.min_cos);
      read(s, "min_matches", c.hierarchy.min_matches);
    }
  }

  for (auto* p : {&c.corpus, &c.labels, &c.stop_symbols, &c.stop_definitions, &c.lexicon, &c.suffix_rules,
                  &c.hierarchy.path, &c.output_dir})
    *p = detail::resolve_path(base_dir, *p);
  detail::require_file(c.corpus, "corpus");
  detail::require_file(c.labels, "labels file");
  detail::require_file(c.stop_symbols, "symbol stop list");
  detail::require_file(c.stop_definitions, "definition stop list");
  detail::require_file(c.lexicon, "lexicon");
  detail::require_file(c.suffix_rules, "suffix rules");
  detail::require_file(c.hierarchy.path, "hierarchy");
  return c;
}

inline PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, fs::absolute(path).parent_path());
}

// ---------------------------------------------------------------------------
// Artifact I/O
// ---------------------------------------------------------------------------

namespace artifacts {

inline constexpr const char* kRelations = "relations.jsonl";
inline constexpr const char* kIdentifiers = "identifiers.jsonl";
inline constexpr const char* kStats = "stats.json";
inline constexpr const char* kMatrix = "matrix.mtx";
inline constexpr const char* kMatrixMeta = "matrix_meta.json";
inline constexpr const char* kAssignments = "assignments.tsv";
inline constexpr const char* kClusterRuns = "cluster_runs.json";
inline constexpr const char* kPurity = "purity.json";
inline constexpr const char* kAssignment = "assignment.tsv";
inline constexpr const char* kNamespaces = "namespaces.json";
inline constexpr const char* kHierarchyMap = "hierarchy_map.json";

inline void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

template <class Json>
void write_json(const fs::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

inline std::string read_text(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error("missing artifact " + path.string() + " (run the earlier stages first)");
  return str::read_file(path.string());
}

inline nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::vector<nlohmann::json> out;
  for (const auto& line : str::split(read_text(path), '\n')) {
    if (str::trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<Relation> read_relations(const fs::path& dir) {
  std::vector<Relation> out;
  for (const auto& j : read_jsonl(dir / kRelations)) out.push_back(relation_from_json(j));
  return out;
}

inline std::vector<IdentifierCounts> read_identifiers(const fs::path& dir) {
  std::vector<IdentifierCounts> out;
  for (const auto& j : read_jsonl(dir / kIdentifiers)) {
    IdentifierCounts c;
    c.doc_id = j.at("doc_id").get<std::string>();
    c.counts = j.at("identifiers").get<std::map<std::string, std::size_t>>();
    c.skipped = j.value("skipped_fragments", std::size_t{0});
    c.excluded = j.value("excluded_symbols", std::size_t{0});
    out.push_back(std::move(c));
  }
  return out;
}

/// Wide TSV: header `doc_id<TAB>run...`, one row per document.
struct AssignmentTable {
  std::vector<std::string> runs;
  std::vector<std::string> doc_ids;
  std::vector<ClusterAssignment> columns;
};

inline std::string format_assignment_table(const AssignmentTable& t) {
  std::ostringstream out;
  out << "doc_id";
  for (const auto& r : t.runs) out << '\t' << r;
  out << '\n';
  for (std::size_t i = 0; i < t.doc_ids.size(); ++i) {
    out << t.doc_ids[i];
    for (const auto& c : t.columns) out << '\t' << c.labels[i];
    out << '\n';
  }
  return out.str();
}

inline AssignmentTable parse_assignment_table(const std::string& text) {
  AssignmentTable t;
  const auto lines = str::split(text, '\n');
  if (lines.empty() || !str::starts_with(lines[0], "doc_id")) throw ParseError("assignment table has no header");
  const auto header = str::split(lines[0], '\t');
  t.runs.assign(header.begin() + 1, header.end());
  t.columns.resize(t.runs.size());
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (str::trim(lines[li]).empty()) continue;
    const auto cells = str::split(lines[li], '\t');
    if (cells.size() != header.size()) throw ParseError("assignment row has the wrong number of columns");
    t.doc_ids.push_back(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c) t.columns[c - 1].labels.push_back(std::stoi(cells[c]));
  }
  for (auto& c : t.columns) {
    int mx = -1;
    for (int l : c.labels) mx = std::max(mx, l);
    c.K = mx + 1;
  }
  return t;
}

}  // namespace artifacts

// ---------------------------------------------------------------------------
// Shared inputs
// ---------------------------------------------------------------------------

inline StopLists load_stop_lists(const PipelineConfig& c) {
  const auto symbols = c.stop_symbols.empty() ? str::parse_list_lines(defaults::kStopSymbols)
                                              : str::parse_list_lines(str::read_file(c.stop_symbols));
  const auto definitions = c.stop_definitions.empty() ? str::parse_list_lines(defaults::kStopDefinitions)
                                                      : str::parse_list_lines(str::read_file(c.stop_definitions));
  return StopLists(symbols, definitions);
}

inline Lexicon load_lexicon(const PipelineConfig& c) {
  return Lexicon::from_tsv(c.lexicon.empty() ? std::string(defaults::kLexicon) : str::read_file(c.lexicon),
                           c.suffix_rules.empty() ? std::string(defaults::kSuffixRules) : str::read_file(c.suffix_rules));
}

inline Labels load_labels(const PipelineConfig& c, const Corpus& corpus) {
  if (!c.labels.empty()) return parse_labels(str::read_file(c.labels));
  Labels l;
  for (const auto& d : corpus) l[d.doc_id] = d.category;
  return l;
}

// ---------------------------------------------------------------------------
// Stage implementations
// ---------------------------------------------------------------------------

inline void stage_extract(const PipelineConfig& c, const fs::path& out) {
  const Corpus corpus = load_corpus_file(c.corpus);
  const StopLists stops = load_stop_lists(c);
  const Lexicon lexicon = load_lexicon(c);
  std::string relations, identifiers;
  for (const auto& doc : corpus) {
    const ProcessedDocument p = preprocess(doc, stops, lexicon);
    for (const auto& r : extract_relations(p, c.extraction, stops)) relations += to_json(r).dump() + "\n";
    IdentifierCounts counts = scan_document(doc, stops).summary();
    nlohmann::ordered_json j;
    j["doc_id"] = doc.doc_id;
    j["identifiers"] = counts.counts;
    j["skipped_fragments"] = counts.skipped;
    j["excluded_symbols"] = counts.excluded;
    identifiers += j.dump() + "\n";
  }
  artifacts::write_text(out / artifacts::kRelations, relations);
  artifacts::write_text(out / artifacts::kIdentifiers, identifiers);
}

inline void stage_stats(const PipelineConfig&, const fs::path& out) {
  const auto ids = artifacts::read_identifiers(out);
  std::map<std::string, std::size_t> defs;
  for (const auto& r : artifacts::read_relations(out)) ++defs[r.doc_id];
  artifacts::write_json(out / artifacts::kStats, to_json(corpus_stats(ids, defs)));
}

inline void stage_vectorize(const PipelineConfig& c, const fs::path& out) {
  const auto ids = artifacts::read_identifiers(out);
  std::map<std::string, std::vector<Relation>> by_doc;
  for (auto& r : artifacts::read_relations(out)) by_doc[r.doc_id].push_back(std::move(r));
  std::vector<DocumentEvidence> docs;
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto& d : ids) {
    if (d.total() < c.min_identifiers) {
      dropped.push_back({{"doc_id", d.doc_id}, {"reason", "too_few_identifiers"}});
      continue;
    }
    DocumentEvidence e;
    e.doc_id = d.doc_id;
    e.identifier_counts = d.counts;
    if (auto it = by_doc.find(d.doc_id); it != by_doc.end()) e.relations = it->second;
    docs.push_back(std::move(e));
  }
  const Vocabulary vocab = build_vocabulary(docs, c.mode, c.min_df, c.definition_keys);
  DocMatrix m = vectorize(docs, vocab, c.weighting, c.normalize, c.definition_keys);
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    if (m.empty_row[i]) dropped.push_back({{"doc_id", m.rows[i]}, {"reason", "empty_row"}});
  m = m.select_rows(m.nonempty_rows());
  std::ostringstream mtx;
  write_matrix_market(mtx, m);
  artifacts::write_text(out / artifacts::kMatrix, mtx.str());
  auto meta = matrix_meta(m, vocab, c.weighting);
  meta["dropped"] = dropped;
  artifacts::write_json(out / artifacts::kMatrixMeta, meta);
}

inline DocMatrix read_matrix(const fs::path& out) {
  const auto meta = artifacts::read_json(out / artifacts::kMatrixMeta);
  std::istringstream in(artifacts::read_text(out / artifacts::kMatrix));
  return read_matrix_market(in, meta);
}

namespace detail {

inline DocMatrix dense_to_docmatrix(const Eigen::MatrixXd& X, const std::vector<std::string>& rows) {
  DocMatrix m;
  for (Eigen::Index j = 0; j < X.cols(); ++j) m.cols.push_back({Dim::Identifier, "c" + std::to_string(j)});
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    std::vector<std::pair<std::size_t, double>> entries;
    for (Eigen::Index j = 0; j < X.cols(); ++j) entries.emplace_back(static_cast<std::size_t>(j), X(i, j));
    m.push_row(rows[static_cast<std::size_t>(i)], entries);
  }
  return m;
}

inline void normalize_rows(Eigen::MatrixXd& X) {
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double n = X.row(i).norm();
    if (n > 0) X.row(i) /= n;
  }
}

}  // namespace detail

inline void stage_cluster(const PipelineConfig& c, const fs::path& out) {
  const DocMatrix m = read_matrix(out);
  const auto& cl = c.clustering;
  artifacts::AssignmentTable table;
  table.doc_ids = m.rows;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::vector<int> ranks = c.reduction.method == "none" ? std::vector<int>{0} : c.reduction.ranks;
  const bool density = cl.algorithm == "snn_dbscan";
  const std::vector<int>& grid = density ? cl.eps : cl.k;
  std::uint64_t run_index = 0;
  for (int rank : ranks) {
    std::optional<Eigen::MatrixXd> embedding;
    if (c.reduction.method == "svd") {
      embedding = lsa_embed(m, rank, Rng::stream(c.seed, 1000 + static_cast<std::uint64_t>(rank)).next());
    } else if (c.reduction.method == "nmf") {
      embedding = nmf(m, rank, Rng::stream(c.seed, 1000 + static_cast<std::uint64_t>(rank)).next()).doc_factors;
    }
    if (embedding && c.reduction.normalize_embedding) detail::normalize_rows(*embedding);
    for (int g : grid) {
      const std::uint64_t run_seed = Rng::stream(c.seed, run_index++).next();
      std::string name = c.reduction.method == "none" ? std::string() : c.reduction.method + std::to_string(rank) + "_";
      name += density ? "eps" + std::to_string(g) : "k" + std::to_string(g);
      ClusterAssignment a;
      if (cl.algorithm == "kmeans" || cl.algorithm == "minibatch") {
        KMeansResult r;
        if (cl.algorithm == "kmeans") {
          const KMeansOptions opt{cl.max_iter, cl.restarts, cl.truncation};
          r = embedding ? kmeans(DenseRows{*embedding}, g, run_seed, opt) : kmeans(SparseRows(m), g, run_seed, opt);
        } else {
          const MiniBatchOptions opt{cl.batch_size, cl.iters, cl.truncation};
          r = embedding ? minibatch_kmeans(DenseRows{*embedding}, g, run_seed, opt)
                        : minibatch_kmeans(SparseRows(m), g, run_seed, opt);
        }
        a = std::move(r.assignment);
      } else if (cl.algorithm == "agglomerative") {
        a = agglomerative(embedding ? *embedding : m.dense(), cl.linkage, g, cl.max_points).assignment;
      } else if (cl.algorithm == "snn_dbscan") {
        const DocMatrix space = embedding ? detail::dense_to_docmatrix(*embedding, m.rows) : m;
        a = snn_dbscan(space, cl.snn_k, cl.measure, g, cl.minpts, cl.snn_union);
      } else {  // nmf
        a = nmf_assign(nmf(m, g, run_seed));
      }
      nlohmann::ordered_json run;
      run["run"] = name;
      run["algorithm"] = cl.algorithm;
      run["reduction"] = c.reduction.method;
      run["rank"] = rank;
      run[density ? "eps" : "k"] = g;
      run["clusters"] = a.K;
      run["noise"] = a.noise_count();
      run["inertia"] = a.inertia ? nlohmann::ordered_json(*a.inertia) : nlohmann::ordered_json();
      runs.push_back(run);
      table.runs.push_back(name);
      table.columns.push_back(std::move(a));
    }
  }
  artifacts::write_text(out / artifacts::kAssignments, artifacts::format_assignment_table(table));
  artifacts::write_json(out / artifacts::kClusterRuns, runs);
}

inline void stage_evaluate(const PipelineConfig& c, const fs::path& out) {
  const auto table = artifacts::parse_assignment_table(artifacts::read_text(out / artifacts::kAssignments));
  const auto runs_meta = artifacts::read_json(out / artifacts::kClusterRuns);
  const Corpus corpus = load_corpus_file(c.corpus);
  const Labels labels = load_labels(c, corpus);
  const auto& ev = c.evaluation;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::optional<std::size_t> selected;
  std::size_t best_pure = 0;
  double best_overall = -1;
  for (std::size_t r = 0; r < table.runs.size(); ++r) {
    const auto rep = purity_report(table.columns[r], table.doc_ids, labels, ev.purity_threshold, ev.min_size);
    nlohmann::ordered_json j;
    j["run"] = table.runs[r];
    if (r < runs_meta.size()) {
      for (const char* key : {"algorithm", "reduction", "rank", "k", "eps"})
        if (runs_meta[r].contains(key)) j[key] = runs_meta[r][key];
    }
    const auto report = to_json(rep);
    for (const auto& [key, value] : report.items()) j[key] = value;
    j["selected_clusters"] = namespace_defining(rep, ev.purity_threshold, ev.min_size);
    runs.push_back(j);
    if (!selected || rep.n_pure > best_pure || (rep.n_pure == best_pure && rep.overall > best_overall)) {
      selected = r;
      best_pure = rep.n_pure;
      best_overall = rep.overall;
    }
  }
  std::vector<std::string> categories;
  for (const auto& d : table.doc_ids) {
    const auto it = labels.find(d);
    categories.push_back(it == labels.end() ? std::string() : it->second);
  }
  const auto base = random_baseline(categories, ev.baseline_trials, c.seed, 3, ev.purity_threshold, ev.min_size);
  nlohmann::ordered_json j;
  j["runs"] = runs;
  j["selected"] = selected ? nlohmann::ordered_json(table.runs[*selected]) : nlohmann::ordered_json();
  j["baseline"] = {{"cluster_size", 3}, {"trials", base.trials}, {"min", base.min}, {"mean", base.mean}, {"max", base.max}};
  artifacts::write_json(out / artifacts::kPurity, j);

  std::ostringstream tsv;
  if (selected) {
    for (std::size_t i = 0; i < table.doc_ids.size(); ++i)
      tsv << table.doc_ids[i] << '\t' << table.columns[*selected].labels[i] << '\n';
  }
  artifacts::write_text(out / artifacts::kAssignment, tsv.str());
}

inline void stage_namespaces(const PipelineConfig& c, const fs::path& out) {
  const Corpus corpus = load_corpus_file(c.corpus);
  const Labels labels = load_labels(c, corpus);
  const auto relations = artifacts::read_relations(out);
  ClusterAssignment a;
  std::vector<std::string> doc_ids;
  for (const auto& line : str::split(artifacts::read_text(out / artifacts::kAssignment), '\n')) {
    if (str::trim(line).empty()) continue;
    const auto cells = str::split(line, '\t');
    if (cells.size() != 2) throw ParseError("assignment.tsv rows must be doc_id<TAB>label");
    doc_ids.push_back(cells[0]);
    a.labels.push_back(std::stoi(cells[1]));
    a.K = std::max(a.K, a.labels.back() + 1);
  }
  const auto& ev = c.evaluation;
  const auto selected = namespace_defining(a, doc_ids, labels, ev.purity_threshold, ev.min_size);
  const auto clusters = a.clusters();
  std::optional<HierarchyScheme> scheme;
  if (!c.hierarchy.path.empty()) scheme = parse_hierarchy(artifacts::read_json(c.hierarchy.path));
  std::map<std::string, std::string> titles;
  for (const auto& d : corpus) titles[d.doc_id] = d.title;

  nlohmann::ordered_json namespaces = nlohmann::ordered_json::array();
  nlohmann::ordered_json mapping = nlohmann::ordered_json::array();
  for (int cid : selected) {
    std::vector<std::string> members;
    for (std::size_t i : clusters[static_cast<std::size_t>(cid)]) members.push_back(doc_ids[i]);
    Namespace ns;
    try {
      ns = build_namespace(members, relations, labels, cid, c.namespaces);
    } catch (const NoRelationsInCluster&) {
      continue;  // a pure cluster without definitions yields no namespace
    }
    namespaces.push_back(to_json(ns));
    if (scheme) {
      const auto m = map_to_hierarchy(namespace_keywords(ns, labels, titles), *scheme, c.hierarchy.min_cos,
                                      c.hierarchy.min_matches);
      mapping.push_back({{"name", ns.name},
                         {"cluster_id", cid},
                         {"top", m.top},
                         {"second", m.second},
                         {"cosine", m.cosine},
                         {"matched_keywords", m.matched}});
    }
  }
  artifacts::write_json(out / artifacts::kNamespaces, namespaces);
  artifacts::write_json(out / artifacts::kHierarchyMap, mapping);
}

/// Runs stages `from`..`to` in order. Each stage reads only the artifacts
/// of earlier stages (plus the configured inputs), so a run can restart
/// from any stage. Failures are rethrown as StageError naming the stage.
inline void run_pipeline(const PipelineConfig& c, Stage from = Stage::Extract, Stage to = Stage::Namespaces) {
  const fs::path out(c.output_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw StageError("setup", "cannot create output directory " + out.string() + ": " + ec.message());
  for (Stage s : kAllStages) {
    if (s < from || s > to) continue;
    try {
      switch (s) {
        case Stage::Extract: stage_extract(c, out); break;
        case Stage::Stats: stage_stats(c, out); break;
        case Stage::Vectorize: stage_vectorize(c, out); break;
        case Stage::Cluster: stage_cluster(c, out); break;
        case Stage::Evaluate: stage_evaluate(c, out); break;
        case Stage::Namespaces: stage_namespaces(c, out); break;
      }
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(stage_name(s), e.what());
    }
  }
}

}  // namespace mathns
