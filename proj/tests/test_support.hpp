#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "termseq/lexicon.hpp"
#include "termseq/pipeline.hpp"

namespace termseq::testing {

inline std::filesystem::path config_dir() { return TERMSEQ_CONFIG_DIR; }

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("termseq_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline SuffixTable shipped_suffixes() { return load_suffix_table(config_dir() / "suffixes.txt"); }
inline PatternSet shipped_patterns() { return load_patterns(config_dir() / "patterns.txt"); }

inline Dictionary make_dictionary(std::string name, WordClass cls, std::initializer_list<const char*> bases) {
  Dictionary d(std::move(name), cls);
  for (const char* b : bases) d.insert(b);
  return d;
}

// Adjectives, proper names, personal names, system: the documented priority
// order.
inline std::vector<Dictionary> finsler_dictionaries() {
  return {make_dictionary("adjectives", WordClass::A, {"local", "symmetric"}),
          make_dictionary("proper_names", WordClass::E, {"manifold"}),
          make_dictionary("personal_names", WordClass::N, {"finsler"}),
          make_dictionary("system", WordClass::S, {})};
}

inline Lexicon finsler_lexicon() {
  Lexicon lex;
  lex.dictionaries = finsler_dictionaries();
  lex.suffixes = shipped_suffixes();
  lex.patterns = shipped_patterns();
  return lex;
}

inline Token make_token(std::string surface, std::size_t ordinal = 0, std::size_t sentence = 0,
                        std::string doc = "d") {
  Token t;
  t.norm = utf8::lowercase(surface);
  t.surface = std::move(surface);
  t.doc_id = std::move(doc);
  t.ordinal = ordinal;
  t.sentence_index = sentence;
  return t;
}

inline IdentifiedWord make_word(std::string base, WordClass cls, std::size_t ordinal, std::string doc = "d") {
  IdentifiedWord w{make_token(base, ordinal, 0, std::move(doc)), std::move(base), cls, "test"};
  return w;
}

inline ClassRun make_run(const std::vector<std::pair<std::string, WordClass>>& words) {
  ClassRun run;
  for (std::size_t i = 0; i < words.size(); ++i) run.push_back(make_word(words[i].first, words[i].second, i));
  return run;
}

inline std::string read_text(const std::filesystem::path& p) { return read_file(p); }

}  // namespace termseq::testing
