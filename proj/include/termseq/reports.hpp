#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "termseq/analytics.hpp"

namespace termseq {

struct ReportOptions {
  std::size_t top_n = 50;
  std::uint64_t histogram_max = 500;
  std::vector<std::uint64_t> thresholds{500, 200, 100, 50, 20};
  std::size_t collapse_from = 5;
};

namespace detail {

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// `key  count  parts  contains_name`, ranked.
inline std::string format_frequency_table(const FrequencyTable& table) {
  std::string out = "key\tcount\tparts\tcontains_name\n";
  for (const auto& r : ranked(table))
    out += r.key + '\t' + std::to_string(r.count) + '\t' + std::to_string(r.parts) + '\t' +
           (r.contains_name ? "1" : "0") + '\n';
  return out;
}

inline std::string format_top_n(const std::vector<RankedSequence>& top) {
  std::string out = "rank\tcount\tparts\tkey\n";
  std::size_t rank = 0;
  for (const auto& r : top)
    out += std::to_string(++rank) + '\t' + std::to_string(r.count) + '\t' + std::to_string(r.parts) + '\t' +
           r.key + '\n';
  return out;
}

inline std::string format_by_parts(const FrequencyTable& table) {
  const auto occ = distribution_by_parts(table);
  const auto dist = distinct_by_parts(table);
  std::string out = "parts\toccurrences\tdistinct\n";
  for (auto it = occ.rbegin(); it != occ.rend(); ++it)
    out += std::to_string(it->first) + '\t' + std::to_string(it->second) + '\t' +
           std::to_string(dist.at(it->first)) + '\n';
  return out;
}

inline std::string format_histogram(const std::map<std::uint64_t, std::uint64_t>& hist) {
  std::string out = "n\tdistinct_count\n";
  for (const auto& [n, c] : hist) out += std::to_string(n) + '\t' + std::to_string(c) + '\n';
  return out;
}

/// Columns run from the collapsed bucket down to 2 parts.
inline std::string format_crosstab(const std::vector<CrosstabRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    if (out.empty()) {
      out = "threshold\ttotal";
      for (auto it = row.by_parts.rbegin(); it != row.by_parts.rend(); ++it) {
        if (it->first == row.collapse_from && row.collapse_from <= max_phrase_length)
          out += '\t' + std::to_string(it->first) + " or more parts";
        else
          out += '\t' + std::to_string(it->first) + " parts";
      }
      out += '\n';
    }
    out += std::to_string(row.threshold) + '\t' + std::to_string(row.total);
    for (auto it = row.by_parts.rbegin(); it != row.by_parts.rend(); ++it) out += '\t' + std::to_string(it->second);
    out += '\n';
  }
  return out;
}

inline std::string format_name_stats(const NameStats& s) {
  std::string out = "total";
  for (auto it = s.by_parts.rbegin(); it != s.by_parts.rend(); ++it) out += '\t' + std::to_string(it->first) + " parts";
  out += "\tshare\n" + std::to_string(s.count);
  for (auto it = s.by_parts.rbegin(); it != s.by_parts.rend(); ++it) out += '\t' + std::to_string(it->second);
  out += '\t' + detail::fixed(s.share) + '\n';
  return out;
}

/// File name (relative to reports/) -> content.
inline std::map<std::string, std::string> build_reports(const SequenceTables& raw,
                                                        const ReportOptions& opt,
                                                        const std::unordered_set<std::string>& excluded = {}) {
  const FrequencyTable table = raw.algorithmic.without(excluded);
  const FrequencyTable multi = raw.dictionary.without(excluded);
  const FrequencyTable both = raw.combined().without(excluded);
  const FrequencyTable names = names_only(table);

  std::map<std::string, std::string> files;
  files["top_n.tsv"] = format_top_n(top_n(table, opt.top_n));
  files["by_parts.tsv"] = format_by_parts(table);
  files["histogram.tsv"] = format_histogram(occurrence_histogram(table, opt.histogram_max));
  files["crosstab.tsv"] = format_crosstab(threshold_crosstab(table, opt.thresholds, opt.collapse_from));
  files["names.tsv"] = format_name_stats(name_containing_stats(table));
  files["names_top_n.tsv"] = format_top_n(top_n(names, opt.top_n));
  files["names_crosstab.tsv"] =
      format_crosstab(threshold_crosstab(table, opt.thresholds, opt.collapse_from, /*names_only=*/true));
  files["multiword_sequences.tsv"] = format_frequency_table(multi);
  files["combined_top_n.tsv"] = format_top_n(top_n(both, opt.top_n));
  files["combined_histogram.tsv"] = format_histogram(occurrence_histogram(both, opt.histogram_max));
  return files;
}

}  // namespace termseq
