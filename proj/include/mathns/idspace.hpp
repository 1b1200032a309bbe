#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mathns/error.hpp"
#include "mathns/extraction.hpp"
#include "mathns/stemmer.hpp"
#include "mathns/strings.hpp"

namespace mathns {

enum class Association { IdentifiersOnly, Weak, Strong };

/// How a definition becomes dimensions: one per stemmed content token, or
/// one per whole normalized phrase.
enum class DefinitionKeys { Tokens, Phrase };

enum class Weighting { Binary, Tf, SublinearTf, TfIdf };

inline std::string_view association_name(Association a) {
  switch (a) {
    case Association::IdentifiersOnly: return "none";
    case Association::Weak: return "weak";
    case Association::Strong: return "strong";
  }
  return "none";
}

inline Association parse_association(std::string_view s) {
  if (s == "none" || s == "identifiers") return Association::IdentifiersOnly;
  if (s == "weak") return Association::Weak;
  if (s == "strong") return Association::Strong;
  throw ConfigError("unknown association mode '" + std::string(s) + "'");
}

inline DefinitionKeys parse_definition_keys(std::string_view s) {
  if (s == "tokens") return DefinitionKeys::Tokens;
  if (s == "phrase") return DefinitionKeys::Phrase;
  throw ConfigError("unknown definition_keys '" + std::string(s) + "'");
}

inline std::string_view weighting_name(Weighting w) {
  switch (w) {
    case Weighting::Binary: return "binary";
    case Weighting::Tf: return "tf";
    case Weighting::SublinearTf: return "sublinear_tf";
    case Weighting::TfIdf: return "tfidf";
  }
  return "tfidf";
}

inline Weighting parse_weighting(std::string_view s) {
  if (s == "binary") return Weighting::Binary;
  if (s == "tf") return Weighting::Tf;
  if (s == "sublinear_tf") return Weighting::SublinearTf;
  if (s == "tfidf") return Weighting::TfIdf;
  throw ConfigError("unknown weighting '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Dimensions and per-document term counts
// ---------------------------------------------------------------------------

struct Dim {
  enum Kind { Identifier = 0, Definition = 1, Compound = 2 } kind = Identifier;
  std::string key;

  std::string label() const {
    switch (kind) {
      case Identifier: return key;
      case Definition: return "def:" + key;
      case Compound: return "pair:" + key;
    }
    return key;
  }

  friend bool operator<(const Dim& a, const Dim& b) { return std::tie(a.kind, a.key) < std::tie(b.kind, b.key); }
  friend bool operator==(const Dim& a, const Dim& b) { return a.kind == b.kind && a.key == b.key; }
};

inline Dim parse_dim_label(std::string_view label) {
  if (str::starts_with(label, "def:")) return {Dim::Definition, std::string(label.substr(4))};
  if (str::starts_with(label, "pair:")) return {Dim::Compound, std::string(label.substr(5))};
  return {Dim::Identifier, std::string(label)};
}

/// Raw evidence for one document: identifier occurrences and its relations.
struct DocumentEvidence {
  std::string doc_id;
  std::map<std::string, std::size_t> identifier_counts;  ///< key -> occurrences in formulas
  std::vector<Relation> relations;
};

/// Dimension keys a definition contributes: stemmed non-stopword tokens, or
/// the normalized phrase.
inline std::vector<std::string> definition_keys(std::string_view definition, DefinitionKeys mode,
                                                const Stemmer& stemmer) {
  if (mode == DefinitionKeys::Phrase) {
    std::string p = normalize_definition(definition);
    if (p.empty()) return {};
    return {std::move(p)};
  }
  std::vector<std::string> out;
  for (const auto& raw : str::split_ws(str::lower(definition))) {
    // strip punctuation glued to tokens, keep inner hyphens
    std::string tok;
    for (char c : raw)
      if (str::is_ascii_alnum(c) || c == '-' || (static_cast<unsigned char>(c) & 0x80)) tok += c;
    if (tok.empty() || english_stopwords().count(tok)) continue;
    std::string s = stemmer.stem(tok);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

/// Term counts of one document under an association mode.
inline std::map<Dim, double> document_terms(const DocumentEvidence& doc, Association mode, DefinitionKeys keys,
                                            const Stemmer& stemmer) {
  std::map<Dim, double> terms;
  if (mode != Association::Strong) {
    for (const auto& [key, n] : doc.identifier_counts)
      if (n > 0) terms[{Dim::Identifier, key}] += static_cast<double>(n);
  }
  if (mode == Association::IdentifiersOnly) return terms;
  for (const auto& r : doc.relations) {
    for (const auto& k : definition_keys(r.definition, keys, stemmer)) {
      if (mode == Association::Weak) {
        terms[{Dim::Definition, k}] += 1.0;
      } else {
        terms[{Dim::Compound, r.identifier.key() + "_" + k}] += 1.0;
      }
    }
  }
  return terms;
}

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

struct Vocabulary {
  std::vector<Dim> dims;  ///< sorted by (kind, key)
  std::vector<std::size_t> df;
  Association mode = Association::IdentifiersOnly;
  std::size_t n_docs = 0;

  std::size_t size() const { return dims.size(); }

  /// Index of `d`, or npos.
  std::size_t find(const Dim& d) const {
    const auto it = std::lower_bound(dims.begin(), dims.end(), d);
    return (it != dims.end() && *it == d) ? static_cast<std::size_t>(it - dims.begin()) : npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Dimensions present in at least `min_df` documents. Throws EmptyVocabulary
/// if none survive.
inline Vocabulary build_vocabulary(const std::vector<DocumentEvidence>& docs, Association mode, std::size_t min_df,
                                   DefinitionKeys keys = DefinitionKeys::Tokens,
                                   const Stemmer& stemmer = SuffixStemmer()) {
  std::map<Dim, std::size_t> df;
  for (const auto& doc : docs)
    for (const auto& [dim, _] : document_terms(doc, mode, keys, stemmer)) ++df[dim];
  Vocabulary v;
  v.mode = mode;
  v.n_docs = docs.size();
  for (const auto& [dim, count] : df) {
    if (count >= min_df) {
      v.dims.push_back(dim);
      v.df.push_back(count);
    }
  }
  if (v.dims.empty()) {
    throw EmptyVocabulary("no dimension occurs in at least " + std::to_string(min_df) + " of " +
                          std::to_string(docs.size()) + " documents");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Weighting
// ---------------------------------------------------------------------------

/// (1 + ln tf) * ln(n / df).
inline double tfidf_weight(double tf, double df, double n) {
  if (!(tf > 0)) throw DomainError("tf must be positive");
  if (!(df > 0) || df > n) throw DomainError("df must be in [1, n]");
  return (1.0 + std::log(tf)) * std::log(n / df);
}

inline double term_weight(Weighting w, double tf, double df, double n) {
  if (!(tf > 0)) throw DomainError("tf must be positive");
  switch (w) {
    case Weighting::Binary: return 1.0;
    case Weighting::Tf: return tf;
    case Weighting::SublinearTf: return 1.0 + std::log(tf);
    case Weighting::TfIdf: return tfidf_weight(tf, df, n);
  }
  return tf;
}

// ---------------------------------------------------------------------------
// Sparse document matrix
// ---------------------------------------------------------------------------

/// Row-compressed document-by-dimension matrix. Column indices within a row
/// are strictly increasing.
struct DocMatrix {
  std::vector<std::string> rows;
  std::vector<Dim> cols;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  bool row_norm = false;
  std::vector<bool> empty_row;  ///< rows with no nonzero entries

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return cols.size(); }
  std::size_t nnz() const { return values.size(); }

  std::span<const std::size_t> row_indices(std::size_t i) const {
    return {col_idx.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
  }

  void push_row(std::string id, const std::vector<std::pair<std::size_t, double>>& entries) {
    rows.push_back(std::move(id));
    for (const auto& [c, v] : entries) {
      if (v == 0.0) continue;
      col_idx.push_back(c);
      values.push_back(v);
    }
    row_ptr.push_back(values.size());
    empty_row.push_back(row_ptr.back() == row_ptr[row_ptr.size() - 2]);
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows()), static_cast<Eigen::Index>(n_cols()));
    for (std::size_t i = 0; i < n_rows(); ++i) {
      const auto idx = row_indices(i);
      const auto val = row_values(i);
      for (std::size_t k = 0; k < idx.size(); ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(idx[k])) = val[k];
    }
    return m;
  }

  /// Rows with the given indices, same columns.
  DocMatrix select_rows(const std::vector<std::size_t>& keep) const {
    DocMatrix out;
    out.cols = cols;
    out.row_norm = row_norm;
    for (std::size_t i : keep) {
      std::vector<std::pair<std::size_t, double>> entries;
      const auto idx = row_indices(i);
      const auto val = row_values(i);
      for (std::size_t k = 0; k < idx.size(); ++k) entries.emplace_back(idx[k], val[k]);
      out.push_row(rows[i], entries);
    }
    return out;
  }

  std::vector<std::size_t> nonempty_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_rows(); ++i)
      if (!empty_row[i]) out.push_back(i);
    return out;
  }
};

/// Weighted (and optionally L2-normalized) matrix over `vocab`. Terms
/// outside the vocabulary are ignored; rows left empty are flagged.
inline DocMatrix vectorize(const std::vector<DocumentEvidence>& docs, const Vocabulary& vocab, Weighting weighting,
                           bool normalize, DefinitionKeys keys = DefinitionKeys::Tokens,
                           const Stemmer& stemmer = SuffixStemmer()) {
  DocMatrix m;
  m.cols = vocab.dims;
  m.row_norm = normalize;
  const double n = static_cast<double>(vocab.n_docs);
  for (const auto& doc : docs) {
    std::vector<std::pair<std::size_t, double>> entries;
    for (const auto& [dim, tf] : document_terms(doc, vocab.mode, keys, stemmer)) {
      const std::size_t j = vocab.find(dim);
      if (j == Vocabulary::npos) continue;
      entries.emplace_back(j, term_weight(weighting, tf, static_cast<double>(vocab.df[j]), n));
    }
    std::sort(entries.begin(), entries.end());
    if (normalize) {
      double sq = 0;
      for (const auto& e : entries) sq += e.second * e.second;
      if (sq > 0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& e : entries) e.second *= inv;
      }
    }
    m.push_row(doc.doc_id, entries);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Matrix Market coordinate format, 1-based indices.
inline void write_matrix_market(std::ostream& out, const DocMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.n_rows() << ' ' << m.n_cols() << ' ' << m.nnz() << '\n';
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    const auto idx = m.row_indices(i);
    const auto val = m.row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k) out << i + 1 << ' ' << idx[k] + 1 << ' ' << format_double(val[k]) << '\n';
  }
}

inline nlohmann::ordered_json matrix_meta(const DocMatrix& m, const Vocabulary& v, Weighting w) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows;
  auto& dims = j["dims"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < m.n_cols(); ++c) dims.push_back({{"dim", m.cols[c].label()}, {"df", v.df[c]}});
  j["mode"] = association_name(v.mode);
  j["weighting"] = weighting_name(w);
  j["normalized"] = m.row_norm;
  j["n_docs"] = v.n_docs;
  j["nnz"] = m.nnz();
  return j;
}

/// Inverse of write_matrix_market + matrix_meta.
inline DocMatrix read_matrix_market(std::istream& in, const nlohmann::json& meta) {
  std::string line;
  if (!std::getline(in, line) || !str::starts_with(line, "%%MatrixMarket")) throw ParseError("not a Matrix Market file");
  while (std::getline(in, line) && str::starts_with(line, "%")) {
  }
  std::size_t r = 0, c = 0, nnz = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> r >> c >> nnz)) throw ParseError("bad Matrix Market size line");
  }
  DocMatrix m;
  for (const auto& d : meta.at("dims")) m.cols.push_back(parse_dim_label(d.at("dim").get<std::string>()));
  const auto row_ids = meta.at("rows").get<std::vector<std::string>>();
  if (row_ids.size() != r || m.cols.size() != c) throw ParseError("matrix meta does not match Matrix Market header");
  m.row_norm = meta.value("normalized", false);
  std::vector<std::vector<std::pair<std::size_t, double>>> entries(r);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 0;
    if (!(in >> i >> j >> v) || i < 1 || i > r || j < 1 || j > c) throw ParseError("bad Matrix Market entry");
    entries[i - 1].emplace_back(j - 1, v);
  }
  for (std::size_t i = 0; i < r; ++i) {
    std::sort(entries[i].begin(), entries[i].end());
    m.push_row(row_ids[i], entries[i]);
  }
  return m;
}

}  // namespace mathns
