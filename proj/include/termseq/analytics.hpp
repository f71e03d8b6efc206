#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "termseq/lexicon.hpp"
#include "termseq/sequencer.hpp"

namespace termseq {

struct FrequencyEntry {
  std::uint64_t count = 0;
  std::uint32_t parts = 0;
  bool contains_name = false;
  friend bool operator==(const FrequencyEntry&, const FrequencyEntry&) = default;
};

/// Occurrence counts per sequence key. Tables built over disjoint shards of
/// a match stream merge to the single-pass table.
class FrequencyTable {
 public:
  void add(const std::string& key, std::uint32_t parts, bool contains_name, std::uint64_t n = 1) {
    auto& e = entries_[key];
    e.count += n;
    e.parts = parts;
    e.contains_name = e.contains_name || contains_name;
    occurrences_ += n;
  }

  void add(const SequenceMatch& m) {
    add(m.key(), static_cast<std::uint32_t>(m.parts()), m.contains_name());
  }

  void merge(const FrequencyTable& other) {
    for (const auto& [key, e] : other.entries_) add(key, e.parts, e.contains_name, e.count);
  }

  /// Copy without the listed keys.
  FrequencyTable without(const std::unordered_set<std::string>& excluded) const {
    if (excluded.empty()) return *this;
    FrequencyTable out;
    for (const auto& [key, e] : entries_)
      if (!excluded.count(key)) out.add(key, e.parts, e.contains_name, e.count);
    return out;
  }

  const FrequencyEntry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t distinct() const noexcept { return entries_.size(); }
  std::uint64_t occurrences() const noexcept { return occurrences_; }
  bool empty() const noexcept { return entries_.empty(); }
  const std::unordered_map<std::string, FrequencyEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) { return a.entries_ == b.entries_; }

 private:
  std::unordered_map<std::string, FrequencyEntry> entries_;
  std::uint64_t occurrences_ = 0;
};

/// Pattern matches and dictionary matches are tabulated apart.
struct SequenceTables {
  FrequencyTable algorithmic;
  FrequencyTable dictionary;

  void add(const SequenceMatch& m) {
    (m.kind == SequenceKind::algorithmic ? algorithmic : dictionary).add(m);
  }
  void merge(const SequenceTables& other) {
    algorithmic.merge(other.algorithmic);
    dictionary.merge(other.dictionary);
  }
  /// Both kinds together, a span matched by both counting once per kind.
  FrequencyTable combined() const {
    FrequencyTable out = algorithmic;
    out.merge(dictionary);
    return out;
  }
};

inline SequenceTables accumulate(std::span<const SequenceMatch> matches) {
  SequenceTables tables;
  for (const auto& m : matches) tables.add(m);
  return tables;
}

struct RankedSequence {
  std::string key;
  std::uint64_t count = 0;
  std::uint32_t parts = 0;
  bool contains_name = false;
  friend bool operator==(const RankedSequence&, const RankedSequence&) = default;
};

namespace detail {

inline bool ranks_before(const RankedSequence& a, const RankedSequence& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.key < b.key;
}

}  // namespace detail

/// Descending by count, ties in byte order of the key.
inline std::vector<RankedSequence> top_n(const FrequencyTable& table, std::size_t n) {
  std::vector<RankedSequence> all;
  all.reserve(table.distinct());
  for (const auto& [key, e] : table.entries()) all.push_back({key, e.count, e.parts, e.contains_name});
  n = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), detail::ranks_before);
  all.resize(n);
  return all;
}

inline std::vector<RankedSequence> ranked(const FrequencyTable& table) { return top_n(table, table.distinct()); }

/// Occurrences per part count, every count 2..8 present.
inline std::map<std::size_t, std::uint64_t> distribution_by_parts(const FrequencyTable& table) {
  std::map<std::size_t, std::uint64_t> out;
  for (std::size_t p = min_phrase_length; p <= max_phrase_length; ++p) out[p] = 0;
  for (const auto& [key, e] : table.entries()) out[e.parts] += e.count;
  return out;
}

/// Distinct sequences per part count, every count 2..8 present.
inline std::map<std::size_t, std::uint64_t> distinct_by_parts(const FrequencyTable& table) {
  std::map<std::size_t, std::uint64_t> out;
  for (std::size_t p = min_phrase_length; p <= max_phrase_length; ++p) out[p] = 0;
  for (const auto& [key, e] : table.entries()) ++out[e.parts];
  return out;
}

/// n -> number of keys occurring exactly n times, for n <= max_n; only
/// non-zero bins.
inline std::map<std::uint64_t, std::uint64_t> occurrence_histogram(const FrequencyTable& table,
                                                                   std::uint64_t max_n) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& [key, e] : table.entries())
    if (e.count <= max_n) ++out[e.count];
  return out;
}

/// Distinct sequences occurring more than `threshold` times. Part counts at
/// or above `collapse_from` share the bucket keyed `collapse_from`.
struct CrosstabRow {
  std::uint64_t threshold = 0;
  std::uint64_t total = 0;
  std::size_t collapse_from = max_phrase_length + 1;
  std::map<std::size_t, std::uint64_t> by_parts;
  friend bool operator==(const CrosstabRow&, const CrosstabRow&) = default;
};

inline std::size_t bucket_of(std::size_t parts, std::size_t collapse_from) {
  return std::min(parts, collapse_from);
}

inline std::vector<CrosstabRow> threshold_crosstab(const FrequencyTable& table,
                                                   const std::vector<std::uint64_t>& thresholds,
                                                   std::size_t collapse_from = max_phrase_length + 1,
                                                   bool names_only = false) {
  collapse_from = std::clamp(collapse_from, min_phrase_length + 1, max_phrase_length + 1);
  std::vector<CrosstabRow> rows;
  for (const auto t : thresholds) {
    CrosstabRow row;
    row.threshold = t;
    row.collapse_from = collapse_from;
    for (std::size_t p = min_phrase_length; p <= std::min(collapse_from, max_phrase_length); ++p)
      row.by_parts[p] = 0;
    rows.push_back(std::move(row));
  }
  for (const auto& [key, e] : table.entries()) {
    if (names_only && !e.contains_name) continue;
    for (auto& row : rows) {
      if (e.count <= row.threshold) continue;
      ++row.total;
      ++row.by_parts[bucket_of(e.parts, collapse_from)];
    }
  }
  return rows;
}

struct NameStats {
  std::uint64_t count = 0;   // distinct sequences whose pattern holds N
  std::uint64_t total = 0;   // all distinct sequences
  double share = 0.0;
  std::map<std::size_t, std::uint64_t> by_parts;  // distinct name sequences, 2..8
  friend bool operator==(const NameStats&, const NameStats&) = default;
};

inline NameStats name_containing_stats(const FrequencyTable& table) {
  NameStats s;
  for (std::size_t p = min_phrase_length; p <= max_phrase_length; ++p) s.by_parts[p] = 0;
  s.total = table.distinct();
  for (const auto& [key, e] : table.entries()) {
    if (!e.contains_name) continue;
    ++s.count;
    ++s.by_parts[e.parts];
  }
  s.share = s.total == 0 ? 0.0 : static_cast<double>(s.count) / static_cast<double>(s.total);
  return s;
}

/// Keeps only name-containing sequences.
inline FrequencyTable names_only(const FrequencyTable& table) {
  FrequencyTable out;
  for (const auto& [key, e] : table.entries())
    if (e.contains_name) out.add(key, e.parts, true, e.count);
  return out;
}

}  // namespace termseq
