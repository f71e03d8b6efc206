#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "termseq/identifier.hpp"
#include "termseq/lexicon.hpp"

namespace termseq {

/// Contiguous identified words of one sentence with no unknown or dropped
/// token in between.
struct ClassRun {
  std::vector<IdentifiedWord> words;
  std::string class_string;

  std::size_t size() const noexcept { return words.size(); }
  bool empty() const noexcept { return words.empty(); }

  void push_back(IdentifiedWord w) {
    class_string.push_back(code_of(w.word_class));
    words.push_back(std::move(w));
  }
};

enum class SequenceKind : char { algorithmic = 'q', dictionary = 'm' };

struct SequenceMatch {
  std::string doc_id;
  std::vector<std::string> bases;
  std::string pattern;  // class string of the window
  SequenceKind kind = SequenceKind::algorithmic;
  std::size_t start = 0;  // ordinal of the first word

  std::string key() const { return join_words(bases); }
  std::size_t parts() const noexcept { return bases.size(); }
  bool contains_name() const { return pattern.find('N') != std::string::npos; }

  friend bool operator==(const SequenceMatch&, const SequenceMatch&) = default;
};

/// Groups identifications into runs. A run ends at an unknown token, a
/// sentence change, or an ordinal gap left by a dropped token.
inline std::vector<ClassRun> split_runs(const std::vector<Identification>& ids) {
  std::vector<ClassRun> runs;
  ClassRun current;
  auto flush = [&] {
    if (!current.empty()) runs.push_back(std::move(current));
    current = ClassRun{};
  };
  for (const auto& id : ids) {
    const auto* word = std::get_if<IdentifiedWord>(&id);
    if (!word) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const Token& prev = current.words.back().token;
      if (prev.doc_id != word->token.doc_id || prev.sentence_index != word->token.sentence_index ||
          prev.ordinal + 1 != word->token.ordinal)
        flush();
    }
    current.push_back(*word);
  }
  flush();
  return runs;
}

namespace detail {

inline SequenceMatch make_match(const ClassRun& run, std::size_t first, std::size_t len, SequenceKind kind) {
  SequenceMatch m;
  m.doc_id = run.words[first].token.doc_id;
  m.bases.reserve(len);
  for (std::size_t k = first; k < first + len; ++k) m.bases.push_back(run.words[k].base);
  m.pattern = run.class_string.substr(first, len);
  m.kind = kind;
  m.start = run.words[first].token.ordinal;
  return m;
}

}  // namespace detail

/// Every window of 2..max_len words whose class string is a pattern,
/// ordered by window end, then by length.
inline std::vector<SequenceMatch> find_sequences(const ClassRun& run, const PatternSet& patterns,
                                                 std::size_t max_len = max_phrase_length) {
  std::vector<SequenceMatch> out;
  max_len = std::min({max_len, patterns.max_length(), max_phrase_length});
  const std::size_t n = run.size();
  for (std::size_t end = 1; end < n; ++end) {
    std::size_t code = index_of(run.words[end].word_class);
    std::size_t scale = 4;
    for (std::size_t len = 2; len <= max_len && len <= end + 1; ++len) {
      const std::size_t first = end + 1 - len;
      code += index_of(run.words[first].word_class) * scale;
      scale *= 4;
      if (patterns.contains_code(len, code))
        out.push_back(detail::make_match(run, first, len, SequenceKind::algorithmic));
    }
  }
  return out;
}

/// Every window whose canonical bases form a dictionary phrase, in the same
/// order as find_sequences.
inline std::vector<SequenceMatch> match_multiwords(const ClassRun& run, const MultiwordDictionary& mwd) {
  std::vector<SequenceMatch> out;
  if (mwd.empty()) return out;
  const std::size_t n = run.size();
  for (std::size_t end = 1; end < n; ++end) {
    std::string key = run.words[end].base;
    for (std::size_t len = 2; len <= max_phrase_length && len <= end + 1; ++len) {
      const std::size_t first = end + 1 - len;
      key.insert(0, run.words[first].base + ' ');
      if (mwd.has_length(len) && mwd.contains_key(key))
        out.push_back(detail::make_match(run, first, len, SequenceKind::dictionary));
    }
  }
  return out;
}

/// `lex:) <finsler manifold|SEQ = [(finsler manifold/q)]>`
inline std::string render_sequence_protocol(const SequenceMatch& m) {
  const std::string key = m.key();
  std::string line = "lex:) <";
  line += key;
  line += "|SEQ = [(";
  line += key;
  line += '/';
  line += static_cast<char>(m.kind);
  line += ")]>";
  return line;
}

}  // namespace termseq
