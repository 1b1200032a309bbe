#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mathns/corpus.hpp"
#include "mathns/error.hpp"
#include "mathns/textproc.hpp"

namespace mathns {

enum class ExtractionMethod { NearestNoun, Pattern, Ranker };

inline std::string_view method_name(ExtractionMethod m) {
  switch (m) {
    case ExtractionMethod::NearestNoun: return "nearest_noun";
    case ExtractionMethod::Pattern: return "pattern";
    case ExtractionMethod::Ranker: return "ranker";
  }
  return "ranker";
}

inline ExtractionMethod parse_method(std::string_view s) {
  if (s == "nearest_noun") return ExtractionMethod::NearestNoun;
  if (s == "pattern") return ExtractionMethod::Pattern;
  if (s == "ranker") return ExtractionMethod::Ranker;
  throw ConfigError("unknown extraction method '" + std::string(s) + "'");
}

/// An identifier-definition pair with a raw score > 0.
struct Relation {
  Identifier identifier;
  std::string definition;
  double score = 1.0;
  ExtractionMethod method = ExtractionMethod::Pattern;
  std::string doc_id;
};

struct RankerParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.1;
  double sigma_d = 5.0;  ///< tokens
  double sigma_s = 2.0;  ///< sentences
  double retain_threshold = 0.4;

  void validate() const {
    if (alpha < 0 || beta < 0 || gamma < 0 || alpha + beta + gamma <= 0)
      throw ConfigError("ranker weights must be nonnegative with a positive sum");
    if (!(sigma_d > 0) || !(sigma_s > 0)) throw ConfigError("ranker sigmas must be positive");
    if (retain_threshold < 0 || retain_threshold > 1) throw ConfigError("retain_threshold must be in [0,1]");
  }
};

inline double gaussian_decay(double x, double sigma) { return std::exp(-(x * x) / (2.0 * sigma * sigma)); }

/// R = (alpha*exp(-delta^2/2sd^2) + beta*exp(-n^2/2ss^2) + gamma*tf) / (alpha+beta+gamma).
inline double ranker_score(double delta, double n, double tf, const RankerParams& p) {
  return (p.alpha * gaussian_decay(delta, p.sigma_d) + p.beta * gaussian_decay(n, p.sigma_s) + p.gamma * tf) /
         (p.alpha + p.beta + p.gamma);
}

// ---------------------------------------------------------------------------
// Nearest noun
// ---------------------------------------------------------------------------

/// Definition text ending right before `id_idx`: a single NOUN_PHRASE/LINK
/// token, or the maximal (JJ)*(NN|NNS)+ run of raw tokens. Determiners are
/// never part of the definition.
inline std::optional<std::string> nearest_noun_text(const Sentence& sentence, std::size_t id_idx) {
  if (id_idx == 0 || id_idx > sentence.size()) return std::nullopt;
  const TaggedToken& prev = sentence[id_idx - 1];
  if (prev.tag == Tag::NOUN_PHRASE || prev.tag == Tag::LINK) return prev.text;
  if (!is_noun(prev.tag)) return std::nullopt;
  std::size_t begin = id_idx - 1;
  while (begin > 0 && is_noun(sentence[begin - 1].tag)) --begin;
  while (begin > 0 && sentence[begin - 1].tag == Tag::JJ) --begin;
  std::vector<std::string> words;
  for (std::size_t k = begin; k < id_idx; ++k) words.push_back(sentence[k].text);
  return str::join(words, " ");
}

inline std::optional<Relation> nearest_noun(const Sentence& sentence, std::size_t id_idx) {
  if (id_idx >= sentence.size() || sentence[id_idx].tag != Tag::ID) return std::nullopt;
  auto text = nearest_noun_text(sentence, id_idx);
  if (!text) return std::nullopt;
  Relation r;
  r.identifier = sentence[id_idx].identifier ? *sentence[id_idx].identifier : identifier_from_key(sentence[id_idx].text);
  r.definition = std::move(*text);
  r.score = 1.0;
  r.method = ExtractionMethod::NearestNoun;
  return r;
}

// ---------------------------------------------------------------------------
// Pattern matching
// ---------------------------------------------------------------------------

namespace detail {

struct PatternElement {
  enum Kind { Ide, Def, Words, OptWords } kind;
  std::vector<std::string_view> words;
};

inline const std::vector<std::vector<PatternElement>>& definition_patterns() {
  using E = PatternElement;
  static const std::vector<std::vector<PatternElement>> patterns = {
      {{E::Ide, {}}, {E::Def, {}}},
      {{E::Def, {}}, {E::Ide, {}}},
      {{E::Words, {"let", "set"}}, {E::Ide, {}}, {E::Words, {"denote", "denotes", "be"}}, {E::Def, {}}},
      {{E::Def, {}},
       {E::Words, {"is", "are"}},
       {E::Words, {"denoted", "defined", "given"}},
       {E::Words, {"as", "by"}},
       {E::Ide, {}}},
      {{E::Ide, {}}, {E::Words, {"denotes", "denote", "stand", "stands"}}, {E::OptWords, {"as", "by", "for"}}, {E::Def, {}}},
      {{E::Ide, {}}, {E::Words, {"is", "are"}}, {E::Def, {}}},
      {{E::Def, {}}, {E::Words, {"is", "are"}}, {E::Ide, {}}},
  };
  return patterns;
}

inline bool word_in(const std::string& text, const std::vector<std::string_view>& words) {
  const std::string w = str::lower(text);
  return std::find(words.begin(), words.end(), w) != words.end();
}

/// Matches `pattern` at `start`; on success returns (ide index, def index).
inline std::optional<std::pair<std::size_t, std::size_t>> match_at(const Sentence& s, std::size_t start,
                                                                    const std::vector<PatternElement>& pattern) {
  std::size_t i = start;
  std::optional<std::size_t> ide, def;
  for (std::size_t e = 0; e < pattern.size(); ++e) {
    const auto& el = pattern[e];
    if (el.kind == PatternElement::OptWords) {
      if (i < s.size() && word_in(s[i].text, el.words)) ++i;
      continue;
    }
    if (el.kind == PatternElement::Def && e > 0 && i < s.size() && s[i].tag == Tag::DT) ++i;
    if (i >= s.size()) return std::nullopt;
    switch (el.kind) {
      case PatternElement::Ide:
        if (s[i].tag != Tag::ID) return std::nullopt;
        ide = i;
        break;
      case PatternElement::Def:
        if (!is_definition_tag(s[i].tag)) return std::nullopt;
        def = i;
        break;
      case PatternElement::Words:
        if (!word_in(s[i].text, el.words)) return std::nullopt;
        break;
      case PatternElement::OptWords:
        break;
    }
    ++i;
  }
  return std::make_pair(*ide, *def);
}

}  // namespace detail

/// Applies the seven definition patterns at every position. IDE is an ID
/// token; DEF is a NOUN_PHRASE, LINK, NN or NNS token, optionally preceded
/// by a determiner when it is not the first element. Every match is
/// reported with score 1.
inline std::vector<Relation> match_patterns(const Sentence& sentence) {
  std::vector<Relation> out;
  const auto& patterns = detail::definition_patterns();
  for (std::size_t start = 0; start < sentence.size(); ++start) {
    for (const auto& pattern : patterns) {
      const auto m = detail::match_at(sentence, start, pattern);
      if (!m) continue;
      const TaggedToken& id = sentence[m->first];
      Relation r;
      r.identifier = id.identifier ? *id.identifier : identifier_from_key(id.text);
      r.definition = sentence[m->second].text;
      r.score = 1.0;
      r.method = ExtractionMethod::Pattern;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probabilistic ranker
// ---------------------------------------------------------------------------

struct RankedCandidate {
  std::string text;
  Tag tag = Tag::NN;
  std::size_t sentence_idx = 0;
  std::size_t position = 0;  ///< global token index in the chunked document
  double delta = 0;          ///< token distance to the nearest occurrence
  double n = 0;              ///< sentence distance to the first occurrence
  double tf = 0;             ///< occurrences in the sentence / sentence length
  double score = 0;
};

/// Scores every definition-tagged token of `doc` for `identifier_key`.
/// Occurrences are ID tokens with that key and MATH tokens whose formula
/// contains it. Sorted by score desc, then smaller delta, then position.
inline std::vector<RankedCandidate> rank_candidates(const ProcessedDocument& doc, std::string_view identifier_key,
                                                    const RankerParams& params) {
  params.validate();
  std::vector<std::size_t> occurrences;  // global positions
  std::optional<std::size_t> first_sentence;
  std::size_t pos = 0;
  for (const auto& sentence : doc.sentences) {
    for (const auto& t : sentence) {
      bool hit = false;
      if (t.tag == Tag::ID) {
        hit = t.text == identifier_key;
      } else if (t.tag == Tag::MATH && t.formula && *t.formula < doc.formulas.size()) {
        const auto& ids = doc.formulas[*t.formula];
        hit = std::any_of(ids.begin(), ids.end(), [&](const Identifier& id) { return id.key() == identifier_key; });
      }
      if (hit) {
        occurrences.push_back(pos);
        if (!first_sentence) first_sentence = t.sentence_idx;
      }
      ++pos;
    }
  }
  if (occurrences.empty()) {
    throw IdentifierNotInDocument("identifier '" + std::string(identifier_key) + "' does not occur in document '" +
                                  doc.doc_id + "'");
  }

  std::vector<RankedCandidate> out;
  pos = 0;
  for (const auto& sentence : doc.sentences) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : sentence)
      if (is_definition_tag(t.tag)) ++counts[str::lower(t.text)];
    for (const auto& t : sentence) {
      if (is_definition_tag(t.tag)) {
        RankedCandidate c;
        c.text = t.text;
        c.tag = t.tag;
        c.sentence_idx = t.sentence_idx;
        c.position = pos;
        auto nearest = std::lower_bound(occurrences.begin(), occurrences.end(), pos);
        std::size_t best = SIZE_MAX;
        if (nearest != occurrences.end()) best = *nearest - pos;
        if (nearest != occurrences.begin()) best = std::min(best, pos - *std::prev(nearest));
        c.delta = static_cast<double>(best);
        c.n = std::fabs(static_cast<double>(t.sentence_idx) - static_cast<double>(*first_sentence));
        c.tf = static_cast<double>(counts[str::lower(t.text)]) / static_cast<double>(sentence.size());
        c.score = ranker_score(c.delta, c.n, c.tf, params);
        out.push_back(std::move(c));
      }
      ++pos;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.position < b.position;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Document-level extraction
// ---------------------------------------------------------------------------

struct ExtractionConfig {
  ExtractionMethod method = ExtractionMethod::Ranker;
  RankerParams ranker;
};

/// Lowercased, whitespace-normalized definition text.
inline std::string normalize_definition(std::string_view text) { return str::join(str::split_ws(str::lower(text)), " "); }

/// Keeps the max score per (identifier, definition), drops empty and
/// stop-listed definitions, and orders by identifier key then definition.
inline std::vector<Relation> dedupe_relations(std::vector<Relation> relations, const StopLists& stops) {
  std::map<std::pair<std::string, std::string>, Relation> best;
  for (auto& r : relations) {
    r.definition = normalize_definition(r.definition);
    if (r.definition.empty() || stops.is_definition_stopped(r.definition) || !(r.score > 0)) continue;
    auto key = std::make_pair(r.identifier.key(), r.definition);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), std::move(r));
    } else if (r.score > it->second.score) {
      it->second = std::move(r);
    }
  }
  std::vector<Relation> out;
  out.reserve(best.size());
  for (auto& [_, r] : best) out.push_back(std::move(r));
  return out;
}

inline std::vector<Relation> extract_relations(const ProcessedDocument& doc, const ExtractionConfig& config,
                                               const StopLists& stops) {
  std::vector<Relation> raw;
  switch (config.method) {
    case ExtractionMethod::NearestNoun:
      for (const auto& sentence : doc.sentences) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
          if (auto r = nearest_noun(sentence, i)) raw.push_back(std::move(*r));
        }
      }
      break;
    case ExtractionMethod::Pattern:
      for (const auto& sentence : doc.sentences) {
        auto found = match_patterns(sentence);
        raw.insert(raw.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
      }
      break;
    case ExtractionMethod::Ranker:
      for (const auto& key : doc.identifiers) {
        const Identifier id = identifier_from_key(key);
        for (const auto& c : rank_candidates(doc, key, config.ranker)) {
          if (c.score < config.ranker.retain_threshold) break;  // sorted by score
          Relation r;
          r.identifier = id;
          r.definition = c.text;
          r.score = c.score;
          r.method = ExtractionMethod::Ranker;
          raw.push_back(std::move(r));
        }
      }
      break;
  }
  for (auto& r : raw) r.doc_id = doc.doc_id;
  return dedupe_relations(std::move(raw), stops);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const Relation& r) {
  nlohmann::ordered_json j;
  j["doc_id"] = r.doc_id;
  j["identifier"] = r.identifier.base;
  j["subscript"] = r.identifier.subscript ? nlohmann::ordered_json(*r.identifier.subscript) : nlohmann::ordered_json();
  j["definition"] = r.definition;
  j["score"] = r.score;
  j["method"] = method_name(r.method);
  return j;
}

inline Relation relation_from_json(const nlohmann::json& j) {
  try {
    Relation r;
    r.doc_id = j.at("doc_id").get<std::string>();
    r.identifier.base = j.at("identifier").get<std::string>();
    if (j.contains("subscript") && !j["subscript"].is_null()) r.identifier.subscript = j["subscript"].get<std::string>();
    r.identifier.display = r.identifier.key();
    r.definition = j.at("definition").get<std::string>();
    r.score = j.at("score").get<double>();
    r.method = parse_method(j.at("method").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad relation record: ") + e.what());
  }
}

}  // namespace mathns
