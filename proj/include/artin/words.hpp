#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

/// A group word over named generators, stored as syllables g^e with e != 0.
/// Text syntax: whitespace-separated letters with optional integer exponent,
/// e.g. "s t s^-1" or "a^3 b^-2". The empty string is the identity.
struct WordSyllable {
  std::string gen;
  long long exp = 1;

  friend bool operator==(const WordSyllable&, const WordSyllable&) = default;
};

struct Word {
  std::vector<WordSyllable> syllables;

  bool empty() const { return syllables.empty(); }

  Word& append(const std::string& gen, long long exp) {
    if (exp == 0) return *this;
    if (!syllables.empty() && syllables.back().gen == gen) {
      syllables.back().exp += exp;
      if (syllables.back().exp == 0) syllables.pop_back();
      return *this;
    }
    syllables.push_back({gen, exp});
    return *this;
  }

  Word& append(const Word& w) {
    for (const auto& s : w.syllables) append(s.gen, s.exp);
    return *this;
  }

  Word inverse() const {
    Word r;
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
      r.append(it->gen, -it->exp);
    return r;
  }

  Word power(long long k) const {
    Word r;
    const Word base = k >= 0 ? *this : inverse();
    for (long long i = 0; i < (k >= 0 ? k : -k); ++i) r.append(base);
    return r;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

inline Word make_word(const std::string& gen, long long exp = 1) {
  Word w;
  w.append(gen, exp);
  return w;
}

inline Word conjugate(const Word& c, const Word& w) {
  Word r = c;
  r.append(w);
  r.append(c.inverse());
  return r;
}

/// Sum of letter exponents; a homomorphism onto the integers.
inline long long abelianization(const Word& w) {
  long long total = 0;
  for (const auto& s : w.syllables) total += s.exp;
  return total;
}

inline bool is_identifier(const std::string& tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(tok[0]));
}

inline Word parse_word(const std::string& text) {
  Word w;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string tok = text.substr(i, j - i);
    i = j;

    std::string gen = tok;
    long long exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      gen = tok.substr(0, caret);
      std::string etext = tok.substr(caret + 1);
      try {
        size_t used = 0;
        exp = std::stoll(etext, &used);
        if (used != etext.size()) fail(ErrorKind::Syntax, "bad exponent in '" + tok + "'");
      } catch (const Error&) {
        throw;
      } catch (...) {
        fail(ErrorKind::Syntax, "bad exponent in '" + tok + "'");
      }
    }
    if (!is_identifier(gen))
      fail(ErrorKind::Syntax, "bad generator name '" + gen + "'");
    w.append(gen, exp);
  }
  return w;
}

inline std::string to_string(const Word& w) {
  std::string out;
  for (const auto& s : w.syllables) {
    if (!out.empty()) out += ' ';
    out += s.gen;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

/// Flattened view: one entry per letter with exponent +1 or -1.
struct Letter {
  std::string gen;
  int sign = 1;
};

inline std::vector<Letter> flatten(const Word& w) {
  std::vector<Letter> out;
  for (const auto& s : w.syllables) {
    const int sign = s.exp > 0 ? 1 : -1;
    for (long long i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i)
      out.push_back({s.gen, sign});
  }
  return out;
}

}  // namespace artin
