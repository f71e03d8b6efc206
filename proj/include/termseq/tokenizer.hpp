#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "termseq/ingest.hpp"
#include "termseq/utf8.hpp"

namespace termseq {

struct Token {
  std::string surface;  // as written, possessive included
  std::string norm;     // lowercase letters only
  std::string doc_id;
  std::size_t ordinal = 0;
  std::size_t sentence_index = 0;
  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::vector<Token> tokens;
  // Candidates holding digits (`4x`, `2002`). They consume an ordinal so
  // that a gap marks where they were.
  std::size_t dropped = 0;
};

namespace detail {

constexpr bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }
constexpr bool is_word_char(char32_t cp) { return utf8::is_letter(cp) || is_ascii_digit(cp); }
constexpr bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }
constexpr bool is_sentence_end(char32_t cp) { return cp == '.' || cp == '!' || cp == '?' || cp == ';'; }

}  // namespace detail

/// Splits on whitespace, punctuation and hyphens. A trailing `'s` is kept in
/// the surface and removed from the norm; any other apostrophe separates.
/// `.`, `!`, `?` and `;` close a sentence.
inline TokenStream tokenize(std::string_view text, std::string_view doc_id) {
  TokenStream out;
  std::size_t ordinal = 0;
  std::size_t sentence = 0;
  bool sentence_open = false;

  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t next = i;
    const char32_t cp = utf8::decode(text, next);
    if (detail::is_sentence_end(cp)) {
      if (sentence_open) {
        ++sentence;
        sentence_open = false;
      }
      i = next;
      continue;
    }
    if (!detail::is_word_char(cp)) {
      i = next;
      continue;
    }

    const std::size_t start = i;
    bool has_digit = false;
    std::size_t end = i;
    while (end < text.size()) {
      std::size_t after = end;
      const char32_t c = utf8::decode(text, after);
      if (!detail::is_word_char(c)) break;
      has_digit |= detail::is_ascii_digit(c);
      end = after;
    }
    const std::size_t word_end = end;

    // possessive: apostrophe, s, then a non-word character or the end
    if (end < text.size()) {
      std::size_t p = end;
      if (detail::is_apostrophe(utf8::decode(text, p)) && p < text.size() &&
          (text[p] == 's' || text[p] == 'S')) {
        std::size_t q = p + 1;
        bool closes = q >= text.size();
        if (!closes) {
          std::size_t r = q;
          closes = !detail::is_word_char(utf8::decode(text, r));
        }
        if (closes) end = q;
      }
    }

    sentence_open = true;
    if (has_digit) {
      ++out.dropped;
    } else {
      Token tok;
      tok.surface.assign(text.substr(start, end - start));
      tok.norm = utf8::lowercase(text.substr(start, word_end - start));
      tok.doc_id.assign(doc_id);
      tok.ordinal = ordinal;
      tok.sentence_index = sentence;
      out.tokens.push_back(std::move(tok));
    }
    ++ordinal;
    i = end;
  }
  return out;
}

inline TokenStream tokenize(const CleanText& text, std::string_view doc_id) {
  return tokenize(std::string_view(text.text), doc_id);
}

}  // namespace termseq
