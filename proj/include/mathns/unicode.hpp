#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mathns::unicode {

/// Decodes one code point starting at `pos`, advancing it. Malformed bytes
/// decode to U+FFFD and advance by one.
inline char32_t decode_one(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    const int c = cont(static_cast<std::size_t>(i));
    if (c < 0) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  pos += static_cast<std::size_t>(len);
  return cp;
}

inline std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(decode_one(s, pos));
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

/// Combining marks (accents, bars, hats, vector arrows) that decorate a base letter.
inline bool is_combining_mark(char32_t cp) {
  return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
         (cp >= 0x1DC0 && cp <= 0x1DFF) || (cp >= 0x20D0 && cp <= 0x20FF) ||
         (cp >= 0xFE20 && cp <= 0xFE2F);
}

/// Code points from blocks whose members are never identifiers: Spacing
/// Modifier Letters, Arrows, Mathematical Operators (except nabla),
/// Miscellaneous Technical, Box Drawing, Geometric Shapes, Miscellaneous
/// Symbols, Supplemental Mathematical Operators.
inline bool is_excluded_block(char32_t cp) {
  if (cp >= 0x02B0 && cp <= 0x02FF) return true;
  if (cp >= 0x2190 && cp <= 0x21FF) return true;
  if (cp >= 0x2200 && cp <= 0x22FF) return cp != 0x2207;
  if (cp >= 0x2300 && cp <= 0x23FF) return true;
  if (cp >= 0x2500 && cp <= 0x257F) return true;
  if (cp >= 0x25A0 && cp <= 0x25FF) return true;
  if (cp >= 0x2600 && cp <= 0x26FF) return true;
  if (cp >= 0x2A00 && cp <= 0x2AFF) return true;
  return false;
}

namespace detail {

// Greek capitals U+0391..U+03A9; U+03A2 is unassigned in the base block but
// holds capital theta symbol in the math alphanumeric Greek alphabets.
inline constexpr std::array<std::string_view, 25> kGreekUpper = {
    "Alpha", "Beta", "Gamma",   "Delta", "Epsilon", "Zeta", "Eta", "Theta", "Iota",
    "Kappa", "Lambda", "Mu",    "Nu",    "Xi",      "Omicron", "Pi", "Rho", "Theta",
    "Sigma", "Tau",  "Upsilon", "Phi",   "Chi",     "Psi",  "Omega"};

// Greek lowercase U+03B1..U+03C9; U+03C2 is final sigma.
inline constexpr std::array<std::string_view, 25> kGreekLower = {
    "alpha", "beta", "gamma",   "delta", "epsilon", "zeta",    "eta", "theta", "iota",
    "kappa", "lambda", "mu",    "nu",    "xi",      "omicron", "pi",  "rho",   "sigma",
    "sigma", "tau",  "upsilon", "phi",   "chi",     "psi",     "omega"};

// Trailing symbols of each 58-entry math Greek alphabet after the lowercase run:
// partial, epsilon symbol, theta symbol, kappa symbol, phi symbol, rho symbol, pi symbol.
inline constexpr std::array<std::string_view, 7> kGreekTail = {
    "", "epsilon", "theta", "kappa", "phi", "rho", "pi"};

inline std::string letter(char32_t c) { return std::string(1, static_cast<char>(c)); }

inline std::optional<std::string> fold_latin1(char32_t cp) {
  // Latin-1 Supplement and Latin Extended-A letters with diacritics.
  static constexpr std::string_view kLatin1 =
      "AAAAAAACEEEEIIII"   // C0-CF (C6 AE -> A)
      "DNOOOOO*OUUUUYTs"   // D0-DF
      "aaaaaaaceeeeiiii"   // E0-EF
      "dnooooo/ouuuuyty";  // F0-FF
  if (cp >= 0xC0 && cp <= 0xFF) {
    const char c = kLatin1[cp - 0xC0];
    if (c == '*' || c == '/') return std::nullopt;
    return letter(static_cast<char32_t>(c));
  }
  static constexpr std::string_view kExtA =
      "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIiIiJjKkkLlLlLlLlLlNnNnNnnNnOoOoOoOoRrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyYZzZzZzs";
  if (cp >= 0x100 && cp <= 0x17F) return letter(static_cast<char32_t>(kExtA[cp - 0x100]));
  return std::nullopt;
}

inline std::optional<std::string> fold_greek(char32_t cp) {
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return std::string(kGreekUpper[cp - 0x0391]);
  if (cp >= 0x03B1 && cp <= 0x03C9) return std::string(kGreekLower[cp - 0x03B1]);
  switch (cp) {
    case 0x03D1: return "theta";    // theta symbol
    case 0x03D5: return "phi";      // phi symbol
    case 0x03D6: return "pi";       // pi symbol
    case 0x03F0: return "kappa";    // kappa symbol
    case 0x03F1: return "rho";      // rho symbol
    case 0x03F4: return "Theta";    // capital theta symbol
    case 0x03F5: return "epsilon";  // lunate epsilon
    case 0x03DC: return "Digamma";
    case 0x03DD: return "digamma";
    case 0x00B5: return "mu";  // micro sign
    default: return std::nullopt;
  }
}

inline std::optional<std::string> fold_letterlike(char32_t cp) {
  switch (cp) {
    case 0x2102: return "C";
    case 0x2107: return "E";
    case 0x210A: return "g";
    case 0x210B: case 0x210C: case 0x210D: return "H";
    case 0x210E: case 0x210F: return "h";  // Planck constant, h-bar
    case 0x2110: case 0x2111: return "I";
    case 0x2112: return "L";
    case 0x2113: return "l";  // script small l
    case 0x2115: return "N";
    case 0x2118: return "p";  // Weierstrass p
    case 0x2119: return "P";
    case 0x211A: return "Q";
    case 0x211B: case 0x211C: case 0x211D: return "R";
    case 0x2124: case 0x2128: return "Z";
    case 0x2126: return "Omega";
    case 0x212A: return "K";
    case 0x212B: return "A";
    case 0x212C: return "B";
    case 0x212D: return "C";
    case 0x212F: return "e";
    case 0x2130: return "E";
    case 0x2131: case 0x2132: return "F";
    case 0x2133: return "M";
    case 0x2134: return "o";
    case 0x2135: return "aleph";
    case 0x2136: return "beth";
    case 0x2137: return "gimel";
    case 0x2138: return "daleth";
    case 0x2139: return "i";
    case 0x213C: return "pi";
    case 0x213D: return "gamma";
    case 0x213E: return "Gamma";
    case 0x213F: return "Pi";
    case 0x2145: return "D";
    case 0x2146: return "d";
    case 0x2147: return "e";
    case 0x2148: return "i";
    case 0x2149: return "j";
    default: return std::nullopt;
  }
}

inline std::optional<std::string> fold_math_alnum(char32_t cp) {
  if (cp >= 0x1D400 && cp <= 0x1D6A3) {
    const char32_t k = (cp - 0x1D400) % 52;
    return letter(k < 26 ? U'A' + k : U'a' + (k - 26));
  }
  if (cp == 0x1D6A4) return "i";
  if (cp == 0x1D6A5) return "j";
  if (cp >= 0x1D6A8 && cp <= 0x1D7C9) {
    const char32_t k = (cp - 0x1D6A8) % 58;
    if (k < 25) return std::string(kGreekUpper[k]);
    if (k == 25) return "nabla";
    if (k < 51) return std::string(kGreekLower[k - 26]);
    const auto tail = kGreekTail[k - 51];
    if (tail.empty()) return std::nullopt;  // partial differential
    return std::string(tail);
  }
  if (cp == 0x1D7CA) return "Digamma";
  if (cp == 0x1D7CB) return "digamma";
  return std::nullopt;
}

}  // namespace detail

/// Name of the base letter a code point denotes: ASCII letters map to
/// themselves, Greek letters (plain or from Mathematical Alphanumeric
/// Symbols) to their TeX names, Letterlike Symbols and styled Latin letters
/// to the plain Latin letter. Returns nullopt for anything else.
inline std::optional<std::string> fold_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return detail::letter(cp);
  if (cp == 0x2207) return "nabla";
  if (auto g = detail::fold_greek(cp)) return g;
  if (auto l = detail::fold_latin1(cp)) return l;
  if (auto l = detail::fold_letterlike(cp)) return l;
  if (auto m = detail::fold_math_alnum(cp)) return m;
  return std::nullopt;
}

/// True for names produced by fold_letter for Greek letters (and the few
/// named symbols), so that folding is idempotent on its own output.
inline bool is_greek_name(std::string_view name) {
  for (auto g : detail::kGreekUpper)
    if (g == name) return true;
  for (auto g : detail::kGreekLower)
    if (g == name) return true;
  static constexpr std::array<std::string_view, 7> kExtra = {
      "nabla", "Digamma", "digamma", "aleph", "beth", "gimel", "daleth"};
  for (auto g : kExtra)
    if (g == name) return true;
  return false;
}

}  // namespace mathns::unicode
