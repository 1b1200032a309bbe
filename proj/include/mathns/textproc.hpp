#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mathns/corpus.hpp"
#include "mathns/defaults.hpp"
#include "mathns/error.hpp"
#include "mathns/strings.hpp"

namespace mathns {

enum class Tag { NN, NNS, JJ, DT, VB, IN, SYM, OTHER, MATH, ID, LINK, NOUN_PHRASE };

inline std::string_view tag_name(Tag t) {
  switch (t) {
    case Tag::NN: return "NN";
    case Tag::NNS: return "NNS";
    case Tag::JJ: return "JJ";
    case Tag::DT: return "DT";
    case Tag::VB: return "VB";
    case Tag::IN: return "IN";
    case Tag::SYM: return "SYM";
    case Tag::OTHER: return "OTHER";
    case Tag::MATH: return "MATH";
    case Tag::ID: return "ID";
    case Tag::LINK: return "LINK";
    case Tag::NOUN_PHRASE: return "NOUN_PHRASE";
  }
  return "OTHER";
}

inline Tag parse_tag(std::string_view name) {
  static const std::unordered_map<std::string_view, Tag> table = {
      {"NN", Tag::NN},     {"NNS", Tag::NNS},     {"JJ", Tag::JJ},     {"DT", Tag::DT},
      {"VB", Tag::VB},     {"IN", Tag::IN},       {"SYM", Tag::SYM},   {"OTHER", Tag::OTHER},
      {"MATH", Tag::MATH}, {"ID", Tag::ID},       {"LINK", Tag::LINK}, {"NOUN_PHRASE", Tag::NOUN_PHRASE}};
  const auto it = table.find(name);
  if (it == table.end()) throw ParseError("unknown tag '" + std::string(name) + "'");
  return it->second;
}

inline bool is_noun(Tag t) { return t == Tag::NN || t == Tag::NNS; }

/// Tags that can fill a definition slot.
inline bool is_definition_tag(Tag t) {
  return t == Tag::NN || t == Tag::NNS || t == Tag::LINK || t == Tag::NOUN_PHRASE;
}

struct TaggedToken {
  std::string text;
  Tag tag = Tag::OTHER;
  std::size_t sentence_idx = 0;
  std::size_t token_idx = 0;
  std::optional<std::size_t> formula;     ///< placeholder index for MATH tokens and formula-derived IDs
  std::optional<Identifier> identifier;  ///< set for ID tokens
};

using Sentence = std::vector<TaggedToken>;

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

/// Splits text into sentences of tokens. Words may contain inner `-`, `'`
/// and `_`; numbers may contain an inner decimal point; `[[` and `]]` are
/// single tokens; every other non-space character is its own token. A
/// sentence ends at `.`, `?` or `!` followed by whitespace or end of text.
inline std::vector<std::vector<std::string>> tokenize_sentences(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  auto word_byte = [](char c) {
    return str::is_ascii_alnum(c) || c == '_' || (static_cast<unsigned char>(c) & 0x80);
  };
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (str::is_space(c)) {
      ++i;
      continue;
    }
    if ((c == '[' || c == ']') && i + 1 < n && text[i + 1] == c) {
      current.emplace_back(text.substr(i, 2));
      i += 2;
      continue;
    }
    if (word_byte(c)) {
      const std::size_t start = i;
      while (i < n) {
        if (word_byte(text[i])) {
          ++i;
        } else if ((text[i] == '-' || text[i] == '\'') && i + 1 < n && word_byte(text[i + 1]) &&
                   i > start) {
          ++i;
        } else if (text[i] == '.' && i + 1 < n && str::is_ascii_digit(text[i + 1]) &&
                   str::is_ascii_digit(text[i - 1])) {
          ++i;
        } else {
          break;
        }
      }
      current.emplace_back(text.substr(start, i - start));
      continue;
    }
    current.emplace_back(1, c);
    ++i;
    if ((c == '.' || c == '?' || c == '!') && (i == n || str::is_space(text[i]))) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

// ---------------------------------------------------------------------------
// Lexicon and tagging
// ---------------------------------------------------------------------------

/// Word-to-tag map plus ordered suffix rules. Words are stored lowercase.
class Lexicon {
 public:
  Lexicon() = default;

  void add_word(std::string_view word, Tag tag) { words_[str::lower(word)] = tag; }

  /// Rules are tried longest suffix first; equal lengths keep insertion order.
  void add_suffix_rule(std::string_view suffix, Tag tag) {
    const std::string s = str::lower(suffix);
    auto pos = std::find_if(suffixes_.begin(), suffixes_.end(),
                            [&](const auto& r) { return r.first.size() < s.size(); });
    suffixes_.insert(pos, {s, tag});
  }

  std::optional<Tag> find_word(std::string_view word) const {
    const auto it = words_.find(str::lower(word));
    if (it == words_.end()) return std::nullopt;
    return it->second;
  }

  /// Lexicon entry, then plural of a lexicon noun, then suffix rules, then OTHER.
  Tag lookup(std::string_view word) const {
    const std::string w = str::lower(word);
    if (const auto it = words_.find(w); it != words_.end()) return it->second;
    if (auto plural = plural_of_known_noun(w)) return *plural;
    for (const auto& [suffix, tag] : suffixes_) {
      if (w.size() > suffix.size() && str::ends_with(w, suffix)) return tag;
    }
    return Tag::OTHER;
  }

  std::size_t size() const { return words_.size(); }
  const std::vector<std::pair<std::string, Tag>>& suffix_rules() const { return suffixes_; }

  /// Parses `word<TAB>tag` and `suffix<TAB>tag` files (see parse_list_lines).
  static Lexicon from_tsv(std::string_view lexicon_tsv, std::string_view suffix_tsv) {
    Lexicon lex;
    for (const auto& [key, tag] : parse_tsv(lexicon_tsv)) lex.add_word(key, tag);
    for (const auto& [key, tag] : parse_tsv(suffix_tsv)) lex.add_suffix_rule(key, tag);
    return lex;
  }

  static Lexicon from_files(const std::string& lexicon_path, const std::string& suffix_path) {
    return from_tsv(str::read_file(lexicon_path), str::read_file(suffix_path));
  }

 private:
  static std::vector<std::pair<std::string, Tag>> parse_tsv(std::string_view content) {
    std::vector<std::pair<std::string, Tag>> out;
    for (const auto& line : str::parse_list_lines(content)) {
      const auto parts = str::split(line, '\t');
      if (parts.size() != 2) throw ParseError("expected 'key<TAB>tag' in line '" + line + "'");
      out.emplace_back(std::string(str::trim(parts[0])), parse_tag(str::trim(parts[1])));
    }
    return out;
  }

  std::optional<Tag> plural_of_known_noun(const std::string& w) const {
    auto noun = [&](const std::string& s) {
      const auto it = words_.find(s);
      return it != words_.end() && it->second == Tag::NN;
    };
    if (w.size() > 3 && str::ends_with(w, "ies") && noun(w.substr(0, w.size() - 3) + "y")) return Tag::NNS;
    if (w.size() > 2 && str::ends_with(w, "es") && noun(w.substr(0, w.size() - 2))) return Tag::NNS;
    if (w.size() > 1 && str::ends_with(w, "s") && noun(w.substr(0, w.size() - 1))) return Tag::NNS;
    return std::nullopt;
  }

  std::unordered_map<std::string, Tag> words_;
  std::vector<std::pair<std::string, Tag>> suffixes_;
};

/// Lexicon compiled from data/lexicon.tsv and data/suffix_rules.tsv.
inline const Lexicon& default_lexicon() {
  static const Lexicon lex = Lexicon::from_tsv(defaults::kLexicon, defaults::kSuffixRules);
  return lex;
}

inline bool is_punctuation_token(std::string_view t) {
  return t.size() == 1 && !str::is_ascii_alnum(t[0]) && !(static_cast<unsigned char>(t[0]) & 0x80);
}

/// Tags one sentence. Punctuation is SYM, numbers OTHER, words via the lexicon.
inline Sentence pos_tag(const std::vector<std::string>& tokens, const Lexicon& lexicon,
                        std::size_t sentence_idx = 0) {
  Sentence out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    TaggedToken t;
    t.text = tokens[i];
    t.sentence_idx = sentence_idx;
    t.token_idx = i;
    if (t.text == "[[" || t.text == "]]" || is_punctuation_token(t.text)) {
      t.tag = Tag::SYM;
    } else if (str::is_ascii_digit(t.text[0])) {
      t.tag = Tag::OTHER;
    } else {
      t.tag = lexicon.lookup(t.text);
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<Sentence> pos_tag(const std::vector<std::vector<std::string>>& sentences,
                                     const Lexicon& lexicon) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) out.push_back(pos_tag(sentences[s], lexicon, s));
  return out;
}

// ---------------------------------------------------------------------------
// Math annotation and chunking
// ---------------------------------------------------------------------------

/// Resolves formula placeholders. A formula with exactly one distinct
/// identifier becomes that identifier tagged ID; any other formula is MATH.
/// Plain tokens equal to a key in `doc_identifiers` become ID unless the
/// lexicon tagged them as a function word (DT, IN, VB).
inline std::vector<Sentence> annotate_math(std::vector<Sentence> sentences,
                                           const std::vector<std::vector<Identifier>>& formulas,
                                           const std::set<std::string>& doc_identifiers) {
  for (auto& sentence : sentences) {
    for (auto& t : sentence) {
      if (const auto idx = parse_placeholder(t.text)) {
        if (*idx >= formulas.size()) {
          throw UnknownPlaceholder("placeholder '" + t.text + "' but document has " +
                                   std::to_string(formulas.size()) + " formulas");
        }
        t.formula = *idx;
        const auto& ids = formulas[*idx];
        const bool single = !ids.empty() && std::all_of(ids.begin(), ids.end(), [&](const Identifier& id) {
          return id == ids.front();
        });
        if (single) {
          t.tag = Tag::ID;
          t.identifier = ids.front();
          t.text = ids.front().key();
        } else {
          t.tag = Tag::MATH;
        }
        continue;
      }
      if (t.tag == Tag::DT || t.tag == Tag::IN || t.tag == Tag::VB || t.tag == Tag::SYM) continue;
      if (doc_identifiers.count(t.text)) {
        t.tag = Tag::ID;
        t.identifier = identifier_from_key(t.text);
      }
    }
  }
  return sentences;
}

/// Collapses `[[ ... ]]` into one LINK token (text = inner tokens joined by
/// spaces) and maximal (JJ)*(NN|NNS)+ runs into one NOUN_PHRASE token.
/// Throws UnterminatedLink if a sentence ends inside a link.
inline Sentence chunk_phrases(const Sentence& sentence) {
  Sentence out;
  out.reserve(sentence.size());
  const std::size_t n = sentence.size();
  auto push = [&](TaggedToken t) {
    t.token_idx = out.size();
    out.push_back(std::move(t));
  };
  std::size_t i = 0;
  while (i < n) {
    const TaggedToken& t = sentence[i];
    if (t.text == "[[" && t.tag == Tag::SYM) {
      std::size_t j = i + 1;
      while (j < n && sentence[j].text != "]]") ++j;
      if (j == n) {
        throw UnterminatedLink("sentence " + std::to_string(t.sentence_idx) + " opens '[[' without ']]'");
      }
      std::vector<std::string> words;
      for (std::size_t k = i + 1; k < j; ++k) words.push_back(sentence[k].text);
      TaggedToken link;
      link.text = str::join(words, " ");
      link.tag = Tag::LINK;
      link.sentence_idx = t.sentence_idx;
      push(std::move(link));
      i = j + 1;
      continue;
    }
    if (t.tag == Tag::JJ || is_noun(t.tag)) {
      std::size_t j = i;
      while (j < n && sentence[j].tag == Tag::JJ) ++j;
      std::size_t k = j;
      while (k < n && is_noun(sentence[k].tag)) ++k;
      if (k > j) {
        std::vector<std::string> words;
        for (std::size_t m = i; m < k; ++m) words.push_back(sentence[m].text);
        TaggedToken np;
        np.text = str::join(words, " ");
        np.tag = Tag::NOUN_PHRASE;
        np.sentence_idx = t.sentence_idx;
        push(std::move(np));
        i = k;
        continue;
      }
      // adjectives without a following noun stay as they are
      for (std::size_t m = i; m < j; ++m) push(sentence[m]);
      i = j;
      continue;
    }
    push(t);
    ++i;
  }
  return out;
}

inline std::vector<Sentence> chunk_phrases(const std::vector<Sentence>& sentences) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(chunk_phrases(s));
  return out;
}

// ---------------------------------------------------------------------------
// Whole-document preprocessing
// ---------------------------------------------------------------------------

/// A document after formula scanning, tagging, math annotation and chunking.
struct ProcessedDocument {
  std::string doc_id;
  std::vector<std::vector<Identifier>> formulas;  ///< identifiers per formula
  std::set<std::string> identifiers;              ///< distinct identifier keys
  std::vector<Sentence> tagged;                   ///< after annotate_math, before chunking
  std::vector<Sentence> sentences;                ///< chunked
  std::size_t identifier_occurrences = 0;
  std::size_t skipped_fragments = 0;
  std::size_t excluded_symbols = 0;
};

inline ProcessedDocument preprocess(const Document& doc, const StopLists& stops, const Lexicon& lexicon) {
  ProcessedDocument p;
  p.doc_id = doc.doc_id;
  const DocIdentifiers scanned = scan_document(doc, stops);
  p.formulas = scanned.per_formula;
  p.skipped_fragments = scanned.skipped;
  p.excluded_symbols = scanned.excluded;
  for (const auto& f : p.formulas) {
    p.identifier_occurrences += f.size();
    for (const auto& id : f) p.identifiers.insert(id.key());
  }
  p.tagged = annotate_math(pos_tag(tokenize_sentences(doc.body), lexicon), p.formulas, p.identifiers);
  p.sentences = chunk_phrases(p.tagged);
  return p;
}

}  // namespace mathns
