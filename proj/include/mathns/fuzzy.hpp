#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mathns/stemmer.hpp"
#include "mathns/strings.hpp"

namespace mathns::fuzzy {

/// Length of the longest common subsequence.
inline std::size_t lcs_length(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// Normalized indel similarity 1 - indel(a,b)/(|a|+|b|) = 2·LCS/(|a|+|b|).
/// Two empty strings are identical; one empty string scores 0.
inline double ratio(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  return 2.0 * static_cast<double>(lcs_length(a, b)) / static_cast<double>(a.size() + b.size());
}

/// Lowercased, stemmed tokens with English stopwords removed.
inline std::vector<std::string> stemmed_tokens(std::string_view s, const Stemmer& stemmer) {
  std::vector<std::string> out;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty() && !english_stopwords().count(tok)) out.push_back(stemmer.stem(tok));
    tok.clear();
  };
  for (char c : str::lower(s)) {
    if (str::is_ascii_alnum(c) || (static_cast<unsigned char>(c) & 0x80)) {
      tok += c;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

/// Token-set ratio: with I the sorted intersection and Da, Db the sorted
/// differences of the two token sets, the best ratio among (I, I+Da),
/// (I, I+Db) and (I+Da, I+Db). A phrase whose tokens are a subset of the
/// other's scores 1.
inline double token_set_ratio(std::string_view a, std::string_view b, const Stemmer& stemmer) {
  const auto ta = stemmed_tokens(a, stemmer), tb = stemmed_tokens(b, stemmer);
  const std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  std::vector<std::string> inter, da, db;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(da));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(db));
  const std::string t0 = str::join(inter, " ");
  auto combine = [&](const std::vector<std::string>& diff) {
    const std::string d = str::join(diff, " ");
    if (t0.empty()) return d;
    return d.empty() ? t0 : t0 + " " + d;
  };
  const std::string t1 = combine(da), t2 = combine(db);
  if (t0.empty()) return ratio(t1, t2);
  return std::max({ratio(t0, t1), ratio(t0, t2), ratio(t1, t2)});
}

}  // namespace mathns::fuzzy
