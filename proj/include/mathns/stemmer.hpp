#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>

#include "mathns/strings.hpp"

namespace mathns {

/// Reduces a lowercase word to a stem. Implementations must be pure.
class Stemmer {
 public:
  virtual ~Stemmer() = default;
  virtual std::string stem(std::string_view word) const = 0;
};

/// Lightweight English suffix stripper: plural and verb inflections, then
/// one pass of common derivational suffixes. It is deliberately less
/// aggressive than Porter so that e.g. "statistic" and "statistical" stay
/// apart.
class SuffixStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override {
    std::string w = str::lower(word);
    if (w.size() <= 3) return w;
    strip_inflection(w);
    strip_derivation(w);
    return w;
  }

 private:
  static bool has_vowel(std::string_view s) {
    return s.find_first_of("aeiouy") != std::string_view::npos;
  }

  static bool replace_suffix(std::string& w, std::string_view suffix, std::string_view with,
                             std::size_t min_stem) {
    if (!str::ends_with(w, suffix)) return false;
    const std::size_t stem_len = w.size() - suffix.size();
    if (stem_len < min_stem || !has_vowel(std::string_view(w).substr(0, stem_len))) return false;
    w.replace(stem_len, suffix.size(), with);
    return true;
  }

  static void strip_inflection(std::string& w) {
    if (replace_suffix(w, "sses", "ss", 2)) return;
    if (replace_suffix(w, "ies", "y", 2)) return;
    if (str::ends_with(w, "ss") || str::ends_with(w, "us") || str::ends_with(w, "is")) return;
    if (replace_suffix(w, "s", "", 3)) return;
    if (replace_suffix(w, "ied", "y", 2)) return;
    if (replace_suffix(w, "eed", "ee", 2)) return;
    if (replace_suffix(w, "ed", "", 3) || replace_suffix(w, "ing", "", 3)) {
      // undouble: "stopp" -> "stop"
      const std::size_t n = w.size();
      if (n >= 2 && w[n - 1] == w[n - 2] && std::string_view("bdfgmnprt").find(w[n - 1]) != std::string_view::npos)
        w.pop_back();
    }
  }

  static void strip_derivation(std::string& w) {
    struct Rule {
      std::string_view suffix;
      std::string_view with;
    };
    static constexpr std::array<Rule, 14> kRules = {{
        {"ational", "ate"},
        {"ization", "ize"},
        {"fulness", "ful"},
        {"ousness", "ous"},
        {"iveness", "ive"},
        {"ations", "ate"},
        {"ation", "ate"},
        {"alism", "al"},
        {"ality", "al"},
        {"iviti", "ive"},
        {"ness", ""},
        {"ment", ""},
        {"ly", ""},
        {"e", ""},
    }};
    for (const auto& r : kRules) {
      if (replace_suffix(w, r.suffix, r.with, 3)) return;
    }
  }
};

/// English function words dropped from definition and keyword token lists.
inline const std::unordered_set<std::string>& english_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",     "an",    "the",   "of",    "and",   "or",    "in",    "on",    "at",   "to",
      "for",   "by",    "with",  "from",  "as",    "is",    "are",   "be",    "its",  "it",
      "this",  "that",  "these", "those", "into",  "over",  "under", "than",  "then", "but",
      "not",   "no",    "all",   "any",   "some",  "each",  "other", "such",  "their", "his",
      "her",   "which", "who",   "whose", "where", "when",  "what",  "how",   "also",
  };
  return words;
}

}  // namespace mathns
