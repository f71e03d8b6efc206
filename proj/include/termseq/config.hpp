#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "termseq/error.hpp"
#include "termseq/lexicon.hpp"
#include "termseq/reports.hpp"
#include "termseq/text_file.hpp"

namespace termseq {

enum class Mode { index, analyze };
enum class InputFormat { records, text };

struct DictionarySpec {
  std::string name;
  std::filesystem::path path;
  WordClass word_class = WordClass::S;
  int priority = 0;
};

/// Everything a run needs. Paths are absolute or relative to the working
/// directory once loaded; optional paths are empty when unset.
struct PipelineConfig {
  std::vector<DictionarySpec> dictionaries;  // sorted by priority after load
  std::filesystem::path suffixes;
  std::filesystem::path patterns;
  std::filesystem::path synonyms;
  std::filesystem::path multiwords;
  std::filesystem::path input;
  InputFormat input_format = InputFormat::records;
  std::filesystem::path output_dir;
  std::filesystem::path exclude;
  std::size_t workers = 0;  // 0: available parallelism
  std::size_t max_pattern_len = max_phrase_length;
  ReportOptions reports;
};

namespace detail {

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  const std::string_view v = trim(s);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw config_error(what + ": expected a non-negative integer, got '" + s + "'");
  return out;
}

inline std::filesystem::path resolve_path(const std::string& value, const std::filesystem::path& base) {
  std::filesystem::path p(std::string(trim(value)));
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace detail

/// INI text with `[section]` headers and `key = value` lines. Dictionary
/// sections are named `[dictionary <name>]`. `#` and `;` start comments.
inline PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::string cleaned;
  for (const auto line : split_lines(text)) {
    const auto t = trim(line);
    if (!t.empty() && t.front() == '#') continue;
    cleaned.append(line);
    cleaned.push_back('\n');
  }

  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(cleaned);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw config_error("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  PipelineConfig cfg;
  auto only_keys = [](const std::string& section, const pt::ptree& node, std::set<std::string> allowed) {
    for (const auto& [key, _] : node)
      if (!allowed.count(key)) throw config_error("unknown key '" + key + "' in [" + section + "]");
  };
  auto path_of = [&](const std::string& section, const pt::ptree& node, const char* key) {
    const auto v = node.get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v || trim(*v).empty()) throw config_error("[" + section + "] requires '" + key + "'");
    return detail::resolve_path(*v, base_dir);
  };

  for (const auto& [section, node] : tree) {
    if (node.empty() && !node.data().empty())
      throw config_error("key '" + section + "' outside of a section");
    if (section.rfind("dictionary", 0) == 0) {
      DictionarySpec spec;
      spec.name = std::string(trim(std::string_view(section).substr(10)));
      if (spec.name.empty()) throw config_error("dictionary section needs a name: [dictionary <name>]");
      only_keys(section, node, {"path", "class", "priority"});
      spec.path = path_of(section, node, "path");
      const std::string cls(trim(node.get<std::string>("class", "")));
      const auto wc = cls.size() == 1 ? parse_word_class(cls[0]) : std::nullopt;
      if (!wc) throw config_error("[" + section + "] class must be one of A, E, N, S");
      spec.word_class = *wc;
      const auto prio = node.get_optional<std::string>("priority");
      if (!prio) throw config_error("[" + section + "] requires 'priority'");
      spec.priority = static_cast<int>(detail::parse_uint(*prio, section + ".priority"));
      cfg.dictionaries.push_back(std::move(spec));
    } else if (section == "suffixes") {
      only_keys(section, node, {"path"});
      cfg.suffixes = path_of(section, node, "path");
    } else if (section == "patterns") {
      only_keys(section, node, {"path"});
      cfg.patterns = path_of(section, node, "path");
    } else if (section == "synonyms") {
      only_keys(section, node, {"path"});
      cfg.synonyms = path_of(section, node, "path");
    } else if (section == "multiwords") {
      only_keys(section, node, {"path"});
      cfg.multiwords = path_of(section, node, "path");
    } else if (section == "input") {
      only_keys(section, node, {"path", "format"});
      cfg.input = path_of(section, node, "path");
      const std::string fmt(trim(node.get<std::string>("format", "records")));
      if (fmt == "records") cfg.input_format = InputFormat::records;
      else if (fmt == "text") cfg.input_format = InputFormat::text;
      else throw config_error("[input] format must be 'records' or 'text'");
    } else if (section == "output") {
      only_keys(section, node, {"dir"});
      cfg.output_dir = path_of(section, node, "dir");
    } else if (section == "pipeline") {
      only_keys(section, node, {"workers", "max_pattern_len"});
      if (auto v = node.get_optional<std::string>("workers")) cfg.workers = detail::parse_uint(*v, "workers");
      if (auto v = node.get_optional<std::string>("max_pattern_len"))
        cfg.max_pattern_len = detail::parse_uint(*v, "max_pattern_len");
    } else if (section == "reports") {
      only_keys(section, node, {"top_n", "histogram_max", "thresholds", "collapse_from", "exclude"});
      if (auto v = node.get_optional<std::string>("top_n")) cfg.reports.top_n = detail::parse_uint(*v, "top_n");
      if (auto v = node.get_optional<std::string>("histogram_max"))
        cfg.reports.histogram_max = detail::parse_uint(*v, "histogram_max");
      if (auto v = node.get_optional<std::string>("collapse_from"))
        cfg.reports.collapse_from = detail::parse_uint(*v, "collapse_from");
      if (auto v = node.get_optional<std::string>("thresholds")) {
        cfg.reports.thresholds.clear();
        std::string list = *v;
        std::replace(list.begin(), list.end(), ',', ' ');
        for (const auto tok : split_ws(list))
          cfg.reports.thresholds.push_back(detail::parse_uint(std::string(tok), "thresholds"));
      }
      if (auto v = node.get_optional<std::string>("exclude")) cfg.exclude = detail::resolve_path(*v, base_dir);
    } else {
      throw config_error("unknown section [" + section + "]");
    }
  }
  std::stable_sort(cfg.dictionaries.begin(), cfg.dictionaries.end(),
                   [](const DictionarySpec& a, const DictionarySpec& b) { return a.priority < b.priority; });
  return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const io_error& e) {
    throw config_error(e.what());
  }
  return parse_config(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

/// Checks the configuration before any input is touched.
inline void validate(const PipelineConfig& cfg, Mode mode) {
  namespace fs = std::filesystem;
  if (cfg.dictionaries.empty()) throw config_error("at least one [dictionary <name>] section is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < cfg.dictionaries.size(); ++i) {
    const auto& d = cfg.dictionaries[i];
    if (d.priority != static_cast<int>(i + 1))
      throw config_error("dictionary priorities must be unique and contiguous from 1");
    if (!names.insert(d.name).second) throw config_error("duplicate dictionary name '" + d.name + "'");
  }
  auto require_file = [](const fs::path& p, const std::string& what) {
    if (p.empty()) throw config_error(what + " path is not configured");
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw config_error(what + " not found: " + p.string());
  };
  for (const auto& d : cfg.dictionaries) require_file(d.path, "dictionary '" + d.name + "'");
  require_file(cfg.suffixes, "suffix table");
  require_file(cfg.patterns, "pattern list");
  if (!cfg.synonyms.empty()) require_file(cfg.synonyms, "synonym file");
  if (!cfg.multiwords.empty()) require_file(cfg.multiwords, "multiword dictionary");
  if (!cfg.exclude.empty()) require_file(cfg.exclude, "exclusion list");
  require_file(cfg.input, "input");
  if (cfg.output_dir.empty()) throw config_error("[output] dir is not configured");
  if (mode == Mode::index && cfg.input_format != InputFormat::records)
    throw config_error("index mode needs record input (format = records)");
  if (cfg.max_pattern_len < min_phrase_length || cfg.max_pattern_len > max_phrase_length)
    throw config_error("max_pattern_len must be in [2, 8]");
  if (cfg.reports.top_n == 0) throw config_error("top_n must be at least 1");
  if (cfg.reports.histogram_max == 0) throw config_error("histogram_max must be at least 1");
  for (const auto t : cfg.reports.thresholds)
    if (t == 0) throw config_error("thresholds must be positive");
}

}  // namespace termseq
