#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mathns/defaults.hpp"
#include "mathns/error.hpp"
#include "mathns/strings.hpp"
#include "mathns/unicode.hpp"

namespace mathns {

// ---------------------------------------------------------------------------
// Identifiers and stop lists
// ---------------------------------------------------------------------------

/// A normalized mathematical identifier such as `x`, `sigma` or `beta_slope`.
struct Identifier {
  std::string base;                      ///< folded letter or Greek name
  std::optional<std::string> subscript;  ///< normalized subscript content
  std::string display;                   ///< source text as it appeared

  /// Canonical key: `base` or `base_subscript`.
  std::string key() const { return subscript ? base + "_" + *subscript : base; }

  friend bool operator==(const Identifier& a, const Identifier& b) {
    return a.base == b.base && a.subscript == b.subscript;
  }
};

/// Splits a canonical key back into base and subscript at the first `_`.
inline Identifier identifier_from_key(std::string_view key) {
  Identifier id;
  const auto us = key.find('_');
  if (us == std::string_view::npos || us == 0) {
    id.base = std::string(key);
  } else {
    id.base = std::string(key.substr(0, us));
    id.subscript = std::string(key.substr(us + 1));
  }
  id.display = std::string(key);
  return id;
}

/// Symbol and definition stop lists. Lookups are case-insensitive.
class StopLists {
 public:
  StopLists() = default;
  StopLists(const std::vector<std::string>& symbols, const std::vector<std::string>& definitions) {
    for (const auto& s : symbols) add_symbol(s);
    for (const auto& d : definitions) add_definition(d);
  }

  void add_symbol(std::string_view s) { symbol_stop_.insert(str::lower(str::trim(s))); }
  void add_definition(std::string_view d) { definition_stop_.insert(normalize_phrase(d)); }

  bool is_symbol_stopped(std::string_view s) const { return symbol_stop_.count(str::lower(s)) > 0; }
  bool is_definition_stopped(std::string_view d) const {
    return definition_stop_.count(normalize_phrase(d)) > 0;
  }

  const std::unordered_set<std::string>& symbol_stop() const { return symbol_stop_; }
  const std::unordered_set<std::string>& definition_stop() const { return definition_stop_; }

  static StopLists from_files(const std::string& symbols_path, const std::string& definitions_path) {
    return StopLists(str::parse_list_lines(str::read_file(symbols_path)),
                     str::parse_list_lines(str::read_file(definitions_path)));
  }

 private:
  static std::string normalize_phrase(std::string_view d) {
    return str::join(str::split_ws(str::lower(d)), " ");
  }

  std::unordered_set<std::string> symbol_stop_;
  std::unordered_set<std::string> definition_stop_;
};

/// Stop lists compiled from data/stop_symbols.txt and data/stop_definitions.txt.
inline const StopLists& default_stop_lists() {
  static const StopLists lists(str::parse_list_lines(defaults::kStopSymbols),
                               str::parse_list_lines(defaults::kStopDefinitions));
  return lists;
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

/// One corpus record. `body` is `text` with every `$...$` formula replaced
/// by a placeholder token `FORMULA_<index>`; `formulas[index]` keeps its TeX.
struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
  std::string category;
  std::string body;
  std::vector<std::string> formulas;
};

inline constexpr std::string_view kPlaceholderPrefix = "FORMULA_";

inline std::string placeholder(std::size_t formula_index) {
  return std::string(kPlaceholderPrefix) + std::to_string(formula_index);
}

/// Formula index carried by a placeholder token, if `token` is one.
inline std::optional<std::size_t> parse_placeholder(std::string_view token) {
  if (!str::starts_with(token, kPlaceholderPrefix) || token.size() == kPlaceholderPrefix.size())
    return std::nullopt;
  std::size_t value = 0;
  for (char c : token.substr(kPlaceholderPrefix.size())) {
    if (!str::is_ascii_digit(c)) return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

/// Splits `text` at unescaped `$` pairs. Throws UnbalancedFormulaDelimiter
/// on an odd number of delimiters.
inline void split_formulas(std::string_view text, std::string& body, std::vector<std::string>& formulas,
                           std::string_view doc_id = {}) {
  body.clear();
  formulas.clear();
  bool in_math = false;
  std::size_t start = 0;
  auto is_word_byte = [](char c) {
    return str::is_ascii_alnum(c) || c == '_' || (static_cast<unsigned char>(c) & 0x80);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\\' && i + 1 < text.size() && text[i + 1] == '$') {
      if (!in_math) body += '$';
      ++i;
      continue;
    }
    if (c != '$') {
      if (!in_math) body += c;
      continue;
    }
    if (!in_math) {
      in_math = true;
      start = i + 1;
      continue;
    }
    in_math = false;
    formulas.emplace_back(text.substr(start, i - start));
    if (!body.empty() && is_word_byte(body.back())) body += ' ';
    body += placeholder(formulas.size() - 1);
    if (i + 1 < text.size() && is_word_byte(text[i + 1])) body += ' ';
  }
  if (in_math) {
    throw UnbalancedFormulaDelimiter("document '" + std::string(doc_id) +
                                     "' has an unterminated $ at byte " + std::to_string(start - 1));
  }
}

/// Builds a Document from a JSON record with `doc_id` and `text` (required)
/// and optional `title` and `category`.
inline Document parse_document(const nlohmann::json& raw) {
  if (!raw.is_object()) throw ParseError("corpus record is not a JSON object");
  auto field = [&](const char* name, bool required) -> std::string {
    const auto it = raw.find(name);
    if (it == raw.end() || it->is_null()) {
      if (required) throw ParseError(std::string("corpus record is missing '") + name + "'");
      return {};
    }
    if (!it->is_string()) throw ParseError(std::string("field '") + name + "' must be a string");
    return it->get<std::string>();
  };
  Document doc;
  doc.doc_id = field("doc_id", true);
  doc.text = field("text", true);
  doc.title = field("title", false);
  doc.category = field("category", false);
  if (doc.doc_id.empty()) throw ParseError("empty doc_id");
  split_formulas(doc.text, doc.body, doc.formulas, doc.doc_id);
  return doc;
}

inline Document parse_document(std::string_view json_line) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(raw);
}

/// Immutable, id-indexed collection of documents.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      if (!index_.emplace(docs_[i].doc_id, i).second)
        throw DuplicateDocId("doc_id '" + docs_[i].doc_id + "' appears more than once");
    }
  }

  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document& operator[](std::size_t i) const { return docs_[i]; }
  const std::vector<Document>& documents() const { return docs_; }
  auto begin() const { return docs_.begin(); }
  auto end() const { return docs_.end(); }

  const Document* find(std::string_view doc_id) const {
    const auto it = index_.find(std::string(doc_id));
    return it == index_.end() ? nullptr : &docs_[it->second];
  }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Reads a JSONL corpus; blank lines are skipped. Errors name the line.
inline Corpus load_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (str::trim(line).empty()) continue;
    try {
      docs.push_back(parse_document(std::string_view(line)));
    } catch (const ParseError& e) {
      throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return Corpus(std::move(docs));
}

inline Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus: " + path);
  return load_corpus(in);
}

// ---------------------------------------------------------------------------
// Identifier normalization
// ---------------------------------------------------------------------------

/// Folds one symbol (a code point plus optional combining marks, or a Greek
/// name as produced by folding) to its root identifier. Styled letters from
/// Mathematical Alphanumeric Symbols and Letterlike Symbols become plain
/// letters, diacritics are dropped, and excluded-block or stop-listed symbols
/// raise ExcludedSymbol.
inline Identifier normalize_identifier(std::string_view symbol, const StopLists& stops = {}) {
  const std::string_view trimmed = str::trim(symbol);
  if (trimmed.empty()) throw ExcludedSymbol("empty symbol");
  if (stops.is_symbol_stopped(trimmed)) throw ExcludedSymbol("stop-listed symbol '" + std::string(trimmed) + "'");

  // Idempotence on already-normalized keys: Greek names and base_subscript.
  const auto us = trimmed.find('_');
  const std::string_view head = us == std::string_view::npos ? trimmed : trimmed.substr(0, us);
  if (unicode::is_greek_name(head) || (head.size() == 1 && str::is_ascii_alpha(head[0]))) {
    Identifier id;
    id.base = std::string(head);
    if (us != std::string_view::npos && us + 1 < trimmed.size()) id.subscript = std::string(trimmed.substr(us + 1));
    id.display = std::string(symbol);
    return id;
  }

  std::optional<std::string> base;
  for (const char32_t cp : unicode::decode(head)) {
    if (unicode::is_combining_mark(cp)) continue;
    if (unicode::is_excluded_block(cp)) {
      throw ExcludedSymbol("symbol '" + std::string(trimmed) + "' is in an excluded Unicode block");
    }
    if (base) throw ExcludedSymbol("'" + std::string(trimmed) + "' is not a single symbol");
    base = unicode::fold_letter(cp);
    if (!base) throw ExcludedSymbol("'" + std::string(trimmed) + "' is not a letter");
  }
  if (!base) throw ExcludedSymbol("symbol has no base letter");
  if (stops.is_symbol_stopped(*base)) throw ExcludedSymbol("stop-listed symbol '" + *base + "'");
  Identifier id;
  id.base = std::move(*base);
  if (us != std::string_view::npos && us + 1 < trimmed.size()) id.subscript = std::string(trimmed.substr(us + 1));
  id.display = std::string(symbol);
  return id;
}

// ---------------------------------------------------------------------------
// Formula scanning
// ---------------------------------------------------------------------------

struct FormulaScan {
  std::vector<Identifier> identifiers;
  std::size_t skipped = 0;   ///< unparseable fragments (unbalanced groups, dangling scripts)
  std::size_t excluded = 0;  ///< symbols rejected by normalization or stop lists
};

namespace detail {

inline std::optional<std::string> greek_command(std::string_view name) {
  static const std::unordered_map<std::string_view, std::string_view> table = {
      {"alpha", "alpha"},     {"beta", "beta"},       {"gamma", "gamma"},     {"delta", "delta"},
      {"epsilon", "epsilon"}, {"varepsilon", "epsilon"}, {"zeta", "zeta"},     {"eta", "eta"},
      {"theta", "theta"},     {"vartheta", "theta"},  {"iota", "iota"},       {"kappa", "kappa"},
      {"varkappa", "kappa"},  {"lambda", "lambda"},   {"mu", "mu"},           {"nu", "nu"},
      {"xi", "xi"},           {"omicron", "omicron"}, {"pi", "pi"},           {"varpi", "pi"},
      {"rho", "rho"},         {"varrho", "rho"},      {"sigma", "sigma"},     {"varsigma", "sigma"},
      {"tau", "tau"},         {"upsilon", "upsilon"}, {"phi", "phi"},         {"varphi", "phi"},
      {"chi", "chi"},         {"psi", "psi"},         {"omega", "omega"},     {"Gamma", "Gamma"},
      {"varGamma", "Gamma"},  {"Delta", "Delta"},     {"varDelta", "Delta"},  {"Theta", "Theta"},
      {"varTheta", "Theta"},  {"Lambda", "Lambda"},   {"varLambda", "Lambda"}, {"Xi", "Xi"},
      {"varXi", "Xi"},        {"Pi", "Pi"},           {"varPi", "Pi"},        {"Sigma", "Sigma"},
      {"varSigma", "Sigma"},  {"Upsilon", "Upsilon"}, {"varUpsilon", "Upsilon"}, {"Phi", "Phi"},
      {"varPhi", "Phi"},      {"Psi", "Psi"},         {"varPsi", "Psi"},      {"Omega", "Omega"},
      {"varOmega", "Omega"},  {"ell", "l"},           {"hbar", "h"},          {"imath", "i"},
      {"jmath", "j"},         {"nabla", "nabla"},     {"aleph", "aleph"},
  };
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return std::string(it->second);
}

// Commands whose argument is a styled or decorated identifier.
inline bool is_decoration_command(std::string_view name) {
  static const std::unordered_set<std::string_view> set = {
      "mathbf", "mathit", "mathrm", "mathsf", "mathtt", "mathcal", "mathbb", "mathfrak",
      "mathscr", "boldsymbol", "bm", "pmb", "bar", "hat", "widehat", "tilde", "widetilde",
      "vec", "dot", "ddot", "overline", "underline", "check", "breve", "acute", "grave",
      "mathring", "overrightarrow", "overleftarrow", "bold"};
  return set.count(name) > 0;
}

// Commands whose argument is prose or metadata and is skipped entirely.
inline bool is_text_command(std::string_view name) {
  static const std::unordered_set<std::string_view> set = {
      "text", "textrm", "textit", "textbf", "textsf", "texttt", "operatorname", "mbox",
      "label", "mathop", "begin", "end", "hbox", "tag"};
  return set.count(name) > 0;
}

class FormulaScanner {
 public:
  FormulaScanner(std::string_view src, const StopLists& stops) : src_(src), stops_(stops) {}

  FormulaScan run() {
    scan_until(src_.size());
    return std::move(out_);
  }

 private:
  bool at_end(std::size_t limit) const { return pos_ >= limit; }
  char peek() const { return src_[pos_]; }

  void skip_ws(std::size_t limit) {
    while (!at_end(limit) && str::is_space(peek())) ++pos_;
  }

  std::string_view read_command_name() {
    // assumes src_[pos_] == '\\'
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < src_.size() && str::is_ascii_alpha(src_[pos_])) ++pos_;
    if (pos_ == start && pos_ < src_.size()) ++pos_;  // control symbol such as \, or \{
    return src_.substr(start, pos_ - start);
  }

  /// Position just past the `}` matching the `{` at `open`, or npos.
  std::size_t match_brace(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < src_.size(); ++i) {
      if (src_[i] == '\\') {
        ++i;
        continue;
      }
      if (src_[i] == '{') ++depth;
      if (src_[i] == '}' && --depth == 0) return i + 1;
    }
    return std::string_view::npos;
  }

  /// Span of one argument (braced group or single token) starting at pos_.
  /// Returns inner [begin, end) and advances past it.
  std::pair<std::size_t, std::size_t> read_argument(std::size_t limit) {
    skip_ws(limit);
    if (at_end(limit)) return {pos_, pos_};
    if (peek() == '{') {
      const std::size_t close = match_brace(pos_);
      if (close == std::string_view::npos || close > limit) {
        ++out_.skipped;
        const std::size_t begin = pos_ + 1;
        pos_ = limit;
        return {begin, limit};
      }
      const std::size_t begin = pos_ + 1;
      pos_ = close;
      return {begin, close - 1};
    }
    const std::size_t begin = pos_;
    if (peek() == '\\') {
      read_command_name();
    } else {
      unicode::decode_one(src_, pos_);
      while (pos_ < limit) {
        std::size_t probe = pos_;
        if (!unicode::is_combining_mark(unicode::decode_one(src_, probe))) break;
        pos_ = probe;
      }
    }
    return {begin, pos_};
  }

  /// Normalized subscript text: letters, digits and Greek names, with
  /// text-style wrappers unwrapped and everything else dropped.
  std::string normalize_script(std::size_t begin, std::size_t end) const {
    std::string out;
    std::size_t i = begin;
    while (i < end) {
      const char c = src_[i];
      if (c == '\\') {
        std::size_t j = i + 1;
        while (j < end && str::is_ascii_alpha(src_[j])) ++j;
        const std::string_view name = src_.substr(i + 1, j - i - 1);
        if (auto g = greek_command(name)) out += *g;
        i = j == i + 1 ? j + 1 : j;
        continue;
      }
      if (str::is_ascii_alnum(c)) {
        out += c;
        ++i;
        continue;
      }
      if (static_cast<unsigned char>(c) & 0x80) {
        const char32_t cp = unicode::decode_one(src_, i);
        if (auto f = unicode::fold_letter(cp)) out += *f;
        continue;
      }
      ++i;
    }
    return out;
  }

  /// Consumes `_x`, `_{...}`, `^x`, `^{...}` and primes following an
  /// identifier; returns the subscript if any.
  std::optional<std::string> read_scripts(std::size_t limit, std::size_t& display_end) {
    std::optional<std::string> sub;
    for (;;) {
      std::size_t save = pos_;
      skip_ws(limit);
      if (at_end(limit)) {
        pos_ = save;
        break;
      }
      const char c = peek();
      if (c == '_' && !sub) {
        ++pos_;
        const auto [b, e] = read_argument(limit);
        std::string s = normalize_script(b, e);
        if (!s.empty()) sub = std::move(s);
        display_end = pos_;
      } else if (c == '^') {
        ++pos_;
        read_argument(limit);
      } else if (c == '\'') {
        ++pos_;
      } else {
        pos_ = save;
        break;
      }
    }
    return sub;
  }

  void emit(std::string base, std::size_t display_begin, std::size_t limit) {
    std::size_t display_end = pos_;
    auto sub = read_scripts(limit, display_end);
    if (stops_.is_symbol_stopped(base)) {
      ++out_.excluded;
      return;
    }
    Identifier id;
    id.base = std::move(base);
    id.subscript = std::move(sub);
    id.display = std::string(src_.substr(display_begin, display_end - display_begin));
    out_.identifiers.push_back(std::move(id));
  }

  void scan_until(std::size_t limit) {
    while (!at_end(limit)) {
      const char c = peek();
      if (str::is_space(c)) {
        ++pos_;
        continue;
      }
      if (c == '\\') {
        const std::size_t start = pos_;
        const std::string_view name = read_command_name();
        if (auto g = greek_command(name)) {
          emit(std::move(*g), start, limit);
        } else if (is_decoration_command(name)) {
          const auto [b, e] = read_argument(limit);
          const std::size_t after = pos_;
          const std::size_t before_count = out_.identifiers.size();
          FormulaScanner inner(src_.substr(0, e), stops_);
          inner.pos_ = b;
          auto scanned = inner.run();
          out_.skipped += scanned.skipped;
          out_.excluded += scanned.excluded;
          for (auto& id : scanned.identifiers) out_.identifiers.push_back(std::move(id));
          pos_ = after;
          // Scripts written after the decorated argument belong to its last identifier.
          if (out_.identifiers.size() == before_count + 1) {
            std::size_t display_end = pos_;
            auto sub = read_scripts(limit, display_end);
            auto& id = out_.identifiers.back();
            if (sub && !id.subscript) id.subscript = std::move(sub);
            id.display = std::string(src_.substr(start, display_end - start));
          }
        } else if (is_text_command(name)) {
          read_argument(limit);
        }
        // any other command is an operator or spacing and is dropped
        continue;
      }
      if (str::is_ascii_alpha(c)) {
        const std::size_t start = pos_;
        while (!at_end(limit) && str::is_ascii_alpha(peek())) ++pos_;
        const std::string_view run = src_.substr(start, pos_ - start);
        if (run.size() > 1 && stops_.is_symbol_stopped(run)) {
          ++out_.excluded;
          read_scripts(limit, pos_);
          continue;
        }
        // Juxtaposed letters are a product of single-letter identifiers.
        for (std::size_t k = 0; k + 1 < run.size(); ++k) {
          if (stops_.is_symbol_stopped(run.substr(k, 1))) {
            ++out_.excluded;
            continue;
          }
          Identifier id;
          id.base = std::string(run.substr(k, 1));
          id.display = id.base;
          out_.identifiers.push_back(std::move(id));
        }
        emit(std::string(run.substr(run.size() - 1)), pos_ - 1, limit);
        continue;
      }
      if (c == '_' || c == '^') {
        // script with no identifier in front of it, e.g. after a bracket
        ++pos_;
        read_argument(limit);
        continue;
      }
      if (c == '{') {
        if (match_brace(pos_) == std::string_view::npos) ++out_.skipped;
        ++pos_;
        continue;
      }
      if (c == '}') {
        ++pos_;
        continue;
      }
      if (static_cast<unsigned char>(c) & 0x80) {
        const std::size_t start = pos_;
        unicode::decode_one(src_, pos_);
        while (!at_end(limit)) {
          std::size_t probe = pos_;
          if (!unicode::is_combining_mark(unicode::decode_one(src_, probe))) break;
          pos_ = probe;
        }
        try {
          Identifier id = normalize_identifier(src_.substr(start, pos_ - start), stops_);
          emit(std::move(id.base), start, limit);
        } catch (const ExcludedSymbol&) {
          ++out_.excluded;
        }
        continue;
      }
      ++pos_;  // digits, operators, punctuation
    }
  }

  std::string_view src_;
  const StopLists& stops_;
  std::size_t pos_ = 0;
  FormulaScan out_;
};

}  // namespace detail

/// Scans a TeX-subset formula: single Latin letters and `\greek` commands are
/// identifiers, with optional `_x`/`_{...}` subscripts; superscripts are
/// consumed and dropped; stop-listed multi-letter runs (`sin`, `max`) are
/// skipped and other runs split into single letters.
inline FormulaScan scan_formula(std::string_view formula, const StopLists& stops) {
  return detail::FormulaScanner(formula, stops).run();
}

inline std::vector<Identifier> extract_identifiers(std::string_view formula, const StopLists& stops) {
  return scan_formula(formula, stops).identifiers;
}

inline std::vector<Identifier> extract_identifiers(std::string_view formula) {
  return extract_identifiers(formula, default_stop_lists());
}

// ---------------------------------------------------------------------------
// Dataset statistics
// ---------------------------------------------------------------------------

struct DocIdentifierStats {
  std::string doc_id;
  std::size_t total = 0;     ///< identifier occurrences
  std::size_t distinct = 0;  ///< distinct identifiers
  std::size_t definitions = 0;
};

struct StatsReport {
  std::vector<std::pair<std::string, std::size_t>> identifier_counts;  ///< sorted by count desc, key asc
  std::vector<DocIdentifierStats> documents;                           ///< sorted by total desc, id asc
  std::size_t total_occurrences = 0;
  std::size_t skipped_fragments = 0;
  std::size_t excluded_symbols = 0;
};

/// Identifier counts of one document plus scanner diagnostics.
struct IdentifierCounts {
  std::string doc_id;
  std::map<std::string, std::size_t> counts;  ///< identifier key -> occurrences
  std::size_t skipped = 0;
  std::size_t excluded = 0;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [_, n] : counts) t += n;
    return t;
  }
};

/// Identifier occurrences of one document, in formula order.
struct DocIdentifiers {
  std::string doc_id;
  std::vector<std::vector<Identifier>> per_formula;
  std::size_t skipped = 0;
  std::size_t excluded = 0;

  IdentifierCounts summary() const {
    IdentifierCounts c;
    c.doc_id = doc_id;
    c.skipped = skipped;
    c.excluded = excluded;
    for (const auto& f : per_formula)
      for (const auto& id : f) ++c.counts[id.key()];
    return c;
  }
};

inline DocIdentifiers scan_document(const Document& doc, const StopLists& stops) {
  DocIdentifiers out;
  out.doc_id = doc.doc_id;
  out.per_formula.reserve(doc.formulas.size());
  for (const auto& f : doc.formulas) {
    auto scan = scan_formula(f, stops);
    out.skipped += scan.skipped;
    out.excluded += scan.excluded;
    out.per_formula.push_back(std::move(scan.identifiers));
  }
  return out;
}

/// Global and per-document identifier counts. `definitions_per_doc` maps
/// doc_id to the number of extracted relations and may be empty.
inline StatsReport corpus_stats(const std::vector<IdentifierCounts>& docs,
                                const std::map<std::string, std::size_t>& definitions_per_doc = {}) {
  StatsReport report;
  std::map<std::string, std::size_t> global;
  for (const auto& d : docs) {
    DocIdentifierStats s;
    s.doc_id = d.doc_id;
    for (const auto& [key, n] : d.counts) {
      global[key] += n;
      s.total += n;
    }
    s.distinct = d.counts.size();
    if (const auto it = definitions_per_doc.find(d.doc_id); it != definitions_per_doc.end())
      s.definitions = it->second;
    report.total_occurrences += s.total;
    report.skipped_fragments += d.skipped;
    report.excluded_symbols += d.excluded;
    report.documents.push_back(std::move(s));
  }
  report.identifier_counts.assign(global.begin(), global.end());
  std::stable_sort(report.identifier_counts.begin(), report.identifier_counts.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::sort(report.documents.begin(), report.documents.end(), [](const auto& a, const auto& b) {
    return a.total != b.total ? a.total > b.total : a.doc_id < b.doc_id;
  });
  return report;
}

inline StatsReport corpus_stats(const Corpus& corpus, const StopLists& stops = default_stop_lists()) {
  std::vector<IdentifierCounts> docs;
  docs.reserve(corpus.size());
  for (const auto& d : corpus) docs.push_back(scan_document(d, stops).summary());
  return corpus_stats(docs);
}

inline nlohmann::ordered_json to_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["documents"] = r.documents.size();
  j["total_occurrences"] = r.total_occurrences;
  j["distinct_identifiers"] = r.identifier_counts.size();
  j["skipped_fragments"] = r.skipped_fragments;
  j["excluded_symbols"] = r.excluded_symbols;
  auto& ids = j["identifiers"] = nlohmann::ordered_json::array();
  for (const auto& [key, n] : r.identifier_counts) ids.push_back({{"identifier", key}, {"count", n}});
  auto& docs = j["per_document"] = nlohmann::ordered_json::array();
  for (const auto& d : r.documents) {
    docs.push_back({{"doc_id", d.doc_id},
                    {"identifiers", d.total},
                    {"distinct", d.distinct},
                    {"definitions", d.definitions}});
  }
  return j;
}

}  // namespace mathns
