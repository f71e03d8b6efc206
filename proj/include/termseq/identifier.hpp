#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "termseq/lexicon.hpp"
#include "termseq/tokenizer.hpp"

namespace termseq {

struct IdentifiedWord {
  Token token;
  std::string base;  // canonical, after synonym resolution
  WordClass word_class;
  std::string source_dictionary;
  friend bool operator==(const IdentifiedWord&, const IdentifiedWord&) = default;
};

struct UnknownToken {
  Token token;
  friend bool operator==(const UnknownToken&, const UnknownToken&) = default;
};

using Identification = std::variant<IdentifiedWord, UnknownToken>;

inline const Token& token_of(const Identification& id) {
  return std::visit([](const auto& w) -> const Token& { return w.token; }, id);
}

/// Candidate bases for `norm` under the rules of one class: the surface
/// itself, then one candidate per matching rule, longest suffix first.
inline std::vector<std::string> candidates(std::string_view norm, WordClass cls,
                                           const SuffixTable& suffixes) {
  std::vector<std::string> out;
  out.emplace_back(norm);
  for (const auto& rule : suffixes.rules(cls))
    if (auto cand = rule.apply(norm)) out.push_back(std::move(*cand));
  return out;
}

/// Result of the dictionary cascade for one normalized form.
struct Resolution {
  std::string base;
  WordClass word_class;
  std::size_t dictionary;  // index into the priority-ordered list
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// Walks the dictionaries in priority order; the first dictionary holding any
/// candidate wins, and within it the earliest candidate. Lower-priority
/// dictionaries are never consulted after a hit.
inline std::optional<Resolution> resolve(std::string_view norm, const std::vector<Dictionary>& dictionaries,
                                         const SuffixTable& suffixes, const SynonymMap& synonyms) {
  if (norm.empty()) return std::nullopt;
  std::optional<std::vector<std::string>> per_class[4];
  for (std::size_t d = 0; d < dictionaries.size(); ++d) {
    const Dictionary& dict = dictionaries[d];
    auto& cands = per_class[index_of(dict.word_class())];
    if (!cands) cands = candidates(norm, dict.word_class(), suffixes);
    for (const auto& cand : *cands)
      if (dict.contains(cand)) return Resolution{synonyms.canonical(cand), dict.word_class(), d};
  }
  return std::nullopt;
}

inline Identification identify(const Token& token, const std::vector<Dictionary>& dictionaries,
                               const SuffixTable& suffixes, const SynonymMap& synonyms) {
  auto res = resolve(token.norm, dictionaries, suffixes, synonyms);
  if (!res) return UnknownToken{token};
  return IdentifiedWord{token, std::move(res->base), res->word_class, dictionaries[res->dictionary].name()};
}

/// `lex:) <Finsler = [(finsler/n)]>` or `lex:) <qwzx = [?]>`.
inline std::string render_protocol(const Identification& id) {
  std::string line = "lex:) <";
  line += token_of(id).surface;
  line += " = [";
  if (const auto* word = std::get_if<IdentifiedWord>(&id)) {
    line += '(';
    line += word->base;
    line += '/';
    line += tag_of(word->word_class);
    line += ')';
  } else {
    line += '?';
  }
  line += "]>";
  return line;
}

}  // namespace termseq
