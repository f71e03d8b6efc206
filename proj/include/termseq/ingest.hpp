#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "termseq/error.hpp"
#include "termseq/text_file.hpp"

namespace termseq {

/// Plain word text left after LaTeX removal: no `$`, backslash or braces.
struct CleanText {
  std::string text;

  std::vector<std::string_view> lines() const { return split_lines(text); }
  friend bool operator==(const CleanText&, const CleanText&) = default;
};

struct DocumentRecord {
  std::string id;
  std::string text;
  friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

namespace detail {

constexpr bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
constexpr bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
// Accent commands sit inside a word (Schr\"odinger); every other control
// symbol acts as a separator.
constexpr bool is_accent_command(char c) {
  return c == '"' || c == '\'' || c == '`' || c == '^' || c == '~' || c == '=' || c == '.';
}

}  // namespace detail

/// Removes inline and display math, control words/symbols and braces.
/// A removed math span or separating command leaves one space unless the
/// output is empty or already ends in whitespace. A `$` or `$$` without its
/// closing delimiter deletes to the end of the line.
inline CleanText strip_latex(std::string_view raw) {
  CleanText clean;
  std::string& out = clean.text;
  out.reserve(raw.size());
  const std::size_t n = raw.size();
  auto gap = [&out] {
    if (!out.empty() && !detail::is_space(out.back())) out.push_back(' ');
  };
  auto end_of_line = [&](std::size_t from) {
    const auto nl = raw.find('\n', from);
    return nl == std::string_view::npos ? n : nl;
  };

  std::size_t i = 0;
  while (i < n) {
    const char c = raw[i];
    if (c == '$') {
      if (i + 1 < n && raw[i + 1] == '$') {
        const auto close = raw.find("$$", i + 2);
        i = close == std::string_view::npos ? end_of_line(i) : close + 2;
      } else {
        const auto eol = end_of_line(i);
        const auto close = raw.find('$', i + 1);
        i = (close == std::string_view::npos || close > eol) ? eol : close + 1;
      }
      gap();
    } else if (c == '\\') {
      if (i + 1 < n && detail::is_ascii_letter(raw[i + 1])) {
        std::size_t j = i + 1;
        while (j < n && detail::is_ascii_letter(raw[j])) ++j;
        if (j < n && raw[j] == '*') ++j;
        i = j;
        gap();
      } else if (i + 1 < n && raw[i + 1] != '\n') {
        const bool accent = detail::is_accent_command(raw[i + 1]);
        i += 2;
        if (!accent) gap();
      } else {
        ++i;
      }
    } else if (c == '{' || c == '}') {
      ++i;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return clean;
}

/// `id<TAB>text`, one record per line. Blank lines are skipped.
inline std::vector<DocumentRecord> parse_records_text(std::string_view data,
                                                      const std::filesystem::path& source = "<memory>") {
  std::vector<DocumentRecord> records;
  std::unordered_set<std::string> seen;
  const auto lines = split_lines(data);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw load_error(source, i + 1, "record line without TAB");
    DocumentRecord rec{std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))};
    if (!seen.insert(rec.id).second) throw load_error(source, i + 1, "duplicate record id '" + rec.id + "'");
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::vector<DocumentRecord> parse_records(const std::filesystem::path& path) {
  return parse_records_text(read_file(path), path);
}

/// Whole file as one text.
inline CleanText read_corpus(const std::filesystem::path& path) { return strip_latex(read_file(path)); }

/// Splits a whole-file text at blank lines. Each paragraph becomes a
/// document `<prefix><n>` so that the corpus can be processed in parallel.
inline std::vector<DocumentRecord> split_paragraphs(std::string_view text, std::string_view prefix = "p") {
  std::vector<DocumentRecord> docs;
  std::string current;
  auto flush = [&] {
    if (trim(current).empty()) {
      current.clear();
      return;
    }
    docs.push_back({std::string(prefix) + std::to_string(docs.size() + 1), std::move(current)});
    current.clear();
  };
  for (const auto line : split_lines(text)) {
    if (trim(line).empty()) {
      flush();
      continue;
    }
    current += line;
    current.push_back('\n');
  }
  flush();
  return docs;
}

}  // namespace termseq
