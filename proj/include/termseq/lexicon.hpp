#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termseq/error.hpp"
#include "termseq/text_file.hpp"
#include "termseq/utf8.hpp"

namespace termseq {

/// Word class assigned by the dictionary that identified a word. Patterns are
/// strings over the four codes.
enum class WordClass : std::uint8_t { A = 0, E = 1, N = 2, S = 3 };

inline constexpr std::array<WordClass, 4> all_word_classes{WordClass::A, WordClass::E,
                                                           WordClass::N, WordClass::S};

constexpr char code_of(WordClass c) { return "AENS"[static_cast<int>(c)]; }
constexpr char tag_of(WordClass c) { return "aens"[static_cast<int>(c)]; }
constexpr std::size_t index_of(WordClass c) { return static_cast<std::size_t>(c); }

/// Accepts either the upper-case code or the lower-case protocol tag.
constexpr std::optional<WordClass> parse_word_class(char c) {
  switch (c) {
    case 'A': case 'a': return WordClass::A;
    case 'E': case 'e': return WordClass::E;
    case 'N': case 'n': return WordClass::N;
    case 'S': case 's': return WordClass::S;
    default: return std::nullopt;
  }
}

/// Non-fatal findings collected while loading.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

struct LexiconEntry {
  std::string base;
  WordClass word_class;
  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

class Dictionary {
 public:
  Dictionary() = default;
  Dictionary(std::string name, WordClass cls) : name_(std::move(name)), class_(cls) {}

  const std::string& name() const noexcept { return name_; }
  WordClass word_class() const noexcept { return class_; }
  std::size_t size() const noexcept { return bases_.size(); }
  bool empty() const noexcept { return bases_.empty(); }

  bool contains(const std::string& base) const { return bases_.count(base) != 0; }

  /// Returns false when the base was already present.
  bool insert(std::string_view base) { return bases_.insert(utf8::lowercase(base)).second; }
  bool erase(std::string_view base) { return bases_.erase(utf8::lowercase(base)) != 0; }

  const std::unordered_set<std::string>& bases() const noexcept { return bases_; }

  friend bool operator==(const Dictionary&, const Dictionary&) = default;

 private:
  std::string name_;
  WordClass class_ = WordClass::S;
  std::unordered_set<std::string> bases_;
};

/// One base form per line, `#` starts a comment.
inline Dictionary parse_dictionary(std::string_view text, WordClass cls, std::string name,
                                   const std::filesystem::path& source = "<memory>",
                                   Diagnostics* diag = nullptr) {
  Dictionary dict(std::move(name), cls);
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view entry = content_of(lines[i]);
    if (entry.empty()) continue;
    if (!utf8::all_letters(entry))
      throw load_error(source, i + 1, "dictionary entry must consist of letters only: '" +
                                          std::string(entry) + "'");
    if (!dict.insert(entry) && diag)
      diag->warn(source.string() + ":" + std::to_string(i + 1) + ": duplicate entry '" +
                 std::string(entry) + "'");
  }
  return dict;
}

inline Dictionary load_dictionary(const std::filesystem::path& path, WordClass cls,
                                  std::string name = {}, Diagnostics* diag = nullptr) {
  if (name.empty()) name = path.stem().string();
  return parse_dictionary(read_file(path), cls, std::move(name), path, diag);
}

/// `suffix` stripped from a surface form and replaced by `replacement`
/// yields a candidate base: ies/y turns "families" into "family".
struct SuffixRule {
  std::string suffix;
  std::string replacement;

  std::optional<std::string> apply(std::string_view norm) const {
    if (norm.size() <= suffix.size()) return std::nullopt;
    if (norm.substr(norm.size() - suffix.size()) != suffix) return std::nullopt;
    std::string out(norm.substr(0, norm.size() - suffix.size()));
    out += replacement;
    return out;
  }

  friend bool operator==(const SuffixRule&, const SuffixRule&) = default;
};

inline SuffixRule parse_suffix_rule(std::string_view token) {
  SuffixRule rule;
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    rule.suffix = utf8::lowercase(token.substr(0, slash));
    rule.replacement = utf8::lowercase(token.substr(slash + 1));
  } else {
    rule.suffix = utf8::lowercase(token);
  }
  return rule;
}

class SuffixTable {
 public:
  /// Appends and keeps the class list ordered longest suffix first; equal
  /// lengths keep insertion order.
  void add(WordClass cls, SuffixRule rule) {
    auto& list = rules_[index_of(cls)];
    list.push_back(std::move(rule));
    std::stable_sort(list.begin(), list.end(), [](const SuffixRule& a, const SuffixRule& b) {
      return a.suffix.size() > b.suffix.size();
    });
  }

  const std::vector<SuffixRule>& rules(WordClass cls) const { return rules_[index_of(cls)]; }

  friend bool operator==(const SuffixTable&, const SuffixTable&) = default;

 private:
  std::array<std::vector<SuffixRule>, 4> rules_;
};

/// Lines of the form `e: es s ves/f ves/fe ies/y`.
inline SuffixTable parse_suffix_table(std::string_view text,
                                      const std::filesystem::path& source = "<memory>") {
  SuffixTable table;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = content_of(lines[i]);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw load_error(source, i + 1, "expected '<class>: <rules>'");
    const std::string_view code = trim(line.substr(0, colon));
    const auto cls = code.size() == 1 ? parse_word_class(code[0]) : std::nullopt;
    if (!cls) throw load_error(source, i + 1, "unknown word class '" + std::string(code) + "'");
    for (const auto token : split_ws(line.substr(colon + 1))) {
      SuffixRule rule = parse_suffix_rule(token);
      if (rule.suffix.empty())
        throw load_error(source, i + 1, "empty suffix in rule '" + std::string(token) + "'");
      if (!utf8::all_letters(rule.suffix) ||
          (!rule.replacement.empty() && !utf8::all_letters(rule.replacement)))
        throw load_error(source, i + 1, "suffix rule must be letters: '" + std::string(token) + "'");
      table.add(*cls, std::move(rule));
    }
  }
  return table;
}

inline SuffixTable load_suffix_table(const std::filesystem::path& path) {
  return parse_suffix_table(read_file(path), path);
}

/// Variant base -> canonical base, flattened so that a lookup is one hop.
class SynonymMap {
 public:
  const std::string& canonical(const std::string& base) const {
    const auto it = map_.find(base);
    return it == map_.end() ? base : it->second;
  }
  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }
  const std::unordered_map<std::string, std::string>& entries() const noexcept { return map_; }

  /// Builds the flattened map; throws on a cycle, naming its members.
  static SynonymMap flatten(const std::map<std::string, std::string>& raw,
                            const std::filesystem::path& source = "<memory>") {
    SynonymMap out;
    for (const auto& [variant, first] : raw) {
      std::vector<std::string> chain{variant};
      std::string current = first;
      for (;;) {
        if (std::find(chain.begin(), chain.end(), current) != chain.end()) {
          std::string msg = "synonym cycle: ";
          auto start = std::find(chain.begin(), chain.end(), current);
          for (auto it = start; it != chain.end(); ++it) msg += *it + " -> ";
          throw load_error(source, 0, msg + current);
        }
        const auto next = raw.find(current);
        if (next == raw.end()) break;
        chain.push_back(current);
        current = next->second;
      }
      out.map_.emplace(variant, current);
    }
    return out;
  }

  friend bool operator==(const SynonymMap&, const SynonymMap&) = default;

 private:
  std::unordered_map<std::string, std::string> map_;
};

/// Lines `variant<TAB>canonical`.
inline SynonymMap parse_synonyms(std::string_view text,
                                 const std::filesystem::path& source = "<memory>",
                                 Diagnostics* diag = nullptr) {
  std::map<std::string, std::string> raw;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = content_of(lines[i]);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw load_error(source, i + 1, "expected variant<TAB>canonical");
    const std::string_view variant = trim(line.substr(0, tab));
    const std::string_view canonical = trim(line.substr(tab + 1));
    if (!utf8::all_letters(variant) || !utf8::all_letters(canonical))
      throw load_error(source, i + 1, "synonym entries must consist of letters only");
    std::string v = utf8::lowercase(variant);
    std::string c = utf8::lowercase(canonical);
    if (v == c) continue;
    if (auto [it, inserted] = raw.emplace(v, c); !inserted && it->second != c) {
      if (diag)
        diag->warn(source.string() + ":" + std::to_string(i + 1) + ": '" + v +
                   "' remapped from '" + it->second + "' to '" + c + "'");
      it->second = c;
    }
  }
  return SynonymMap::flatten(raw, source);
}

inline SynonymMap load_synonyms(const std::filesystem::path& path, Diagnostics* diag = nullptr) {
  return parse_synonyms(read_file(path), path, diag);
}

inline constexpr std::size_t min_phrase_length = 2;
inline constexpr std::size_t max_phrase_length = 8;

inline std::string join_words(const std::vector<std::string>& words) {
  std::string key;
  for (const auto& w : words) {
    if (!key.empty()) key.push_back(' ');
    key += w;
  }
  return key;
}

/// Phrases of 2-8 base forms, matched on canonical bases.
class MultiwordDictionary {
 public:
  bool add(std::vector<std::string> phrase) {
    const std::string key = join_words(phrase);
    if (!keys_.insert(key).second) return false;
    length_mask_ |= 1u << phrase.size();
    phrases_.insert(std::move(phrase));
    return true;
  }

  bool contains_key(const std::string& key) const { return keys_.count(key) != 0; }
  bool has_length(std::size_t n) const noexcept { return n < 32 && (length_mask_ >> n) & 1u; }
  std::size_t size() const noexcept { return phrases_.size(); }
  bool empty() const noexcept { return phrases_.empty(); }
  const std::set<std::vector<std::string>>& phrases() const noexcept { return phrases_; }

  friend bool operator==(const MultiwordDictionary& a, const MultiwordDictionary& b) {
    return a.phrases_ == b.phrases_;
  }

 private:
  std::set<std::vector<std::string>> phrases_;
  std::unordered_set<std::string> keys_;
  std::uint32_t length_mask_ = 0;
};

inline MultiwordDictionary parse_multiwords(std::string_view text,
                                            const std::filesystem::path& source = "<memory>") {
  MultiwordDictionary mwd;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = content_of(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string> phrase;
    for (const auto w : split_ws(line)) {
      if (!utf8::all_letters(w))
        throw load_error(source, i + 1, "phrase word must consist of letters only: '" + std::string(w) + "'");
      phrase.push_back(utf8::lowercase(w));
    }
    if (phrase.size() < min_phrase_length || phrase.size() > max_phrase_length)
      throw load_error(source, i + 1, "phrase must have 2 to 8 words");
    mwd.add(std::move(phrase));
  }
  return mwd;
}

inline MultiwordDictionary load_multiwords(const std::filesystem::path& path) {
  return parse_multiwords(read_file(path), path);
}

/// Warns about phrase constituents no loaded dictionary knows.
inline void check_orphans(const MultiwordDictionary& mwd, const std::vector<Dictionary>& dicts,
                          Diagnostics& diag) {
  std::set<std::string> orphans;
  for (const auto& phrase : mwd.phrases())
    for (const auto& w : phrase)
      if (std::none_of(dicts.begin(), dicts.end(), [&](const Dictionary& d) { return d.contains(w); }))
        orphans.insert(w);
  if (orphans.empty()) return;
  std::string msg = "multiword phrases reference unknown bases:";
  for (const auto& w : orphans) msg += " " + w;
  diag.warn(std::move(msg));
}

/// Class-string patterns of length 2-8. Membership is exact string equality;
/// lookups go through a dense per-length bitmap indexed by the base-4 code.
class PatternSet {
 public:
  /// Returns false for a duplicate. Throws std::invalid_argument on a
  /// malformed pattern.
  bool add(std::string_view pattern) {
    if (pattern.size() < min_phrase_length || pattern.size() > max_phrase_length)
      throw std::invalid_argument("pattern length must be in [2, 8]: '" + std::string(pattern) + "'");
    std::size_t code = 0;
    for (const char c : pattern) {
      if (c != 'A' && c != 'E' && c != 'N' && c != 'S')
        throw std::invalid_argument("pattern character outside {A,E,N,S}: '" + std::string(pattern) + "'");
      code = code * 4 + index_of(*parse_word_class(c));
    }
    auto& bits = table_[pattern.size()];
    if (bits.empty()) bits.assign(std::size_t{1} << (2 * pattern.size()), false);
    if (bits[code]) return false;
    bits[code] = true;
    patterns_.emplace(pattern);
    max_length_ = std::max(max_length_, pattern.size());
    return true;
  }

  bool contains(std::string_view classes) const {
    if (classes.size() < min_phrase_length || classes.size() > max_phrase_length) return false;
    std::size_t code = 0;
    for (const char c : classes) {
      const auto cls = parse_word_class(c);
      if (!cls || c != code_of(*cls)) return false;
      code = code * 4 + index_of(*cls);
    }
    return contains_code(classes.size(), code);
  }

  /// `code` is the base-4 encoding of a class string of `length`
  /// (A=0, E=1, N=2, S=3, most significant first).
  bool contains_code(std::size_t length, std::size_t code) const {
    if (length > max_phrase_length) return false;
    const auto& bits = table_[length];
    return !bits.empty() && bits[code];
  }

  std::size_t size() const noexcept { return patterns_.size(); }
  bool empty() const noexcept { return patterns_.empty(); }
  std::size_t max_length() const noexcept { return max_length_; }
  const std::set<std::string>& patterns() const noexcept { return patterns_; }

  /// Copy keeping only patterns of at most `n` classes.
  PatternSet truncated(std::size_t n) const {
    PatternSet out;
    for (const auto& p : patterns_)
      if (p.size() <= n) out.add(p);
    return out;
  }

  friend bool operator==(const PatternSet& a, const PatternSet& b) { return a.patterns_ == b.patterns_; }

 private:
  std::set<std::string> patterns_;
  std::array<std::vector<bool>, max_phrase_length + 1> table_;
  std::size_t max_length_ = 0;
};

/// Comma- or whitespace-separated class strings.
inline PatternSet parse_patterns(std::string_view text,
                                 const std::filesystem::path& source = "<memory>") {
  PatternSet set;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line(content_of(lines[i]));
    std::replace(line.begin(), line.end(), ',', ' ');
    for (const auto token : split_ws(line)) {
      try {
        set.add(token);
      } catch (const std::invalid_argument& e) {
        throw load_error(source, i + 1, e.what());
      }
    }
  }
  return set;
}

inline PatternSet load_patterns(const std::filesystem::path& path) {
  return parse_patterns(read_file(path), path);
}

}  // namespace termseq
