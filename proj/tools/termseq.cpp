#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "termseq/config.hpp"
#include "termseq/pipeline.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string input;
  std::string output;
  std::string exclude;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> max_pattern_len;
};

void add_common(CLI::App& cmd, Overrides& o) {
  cmd.add_option("config", o.config, "pipeline configuration file")->required();
  cmd.add_option("--input", o.input, "input file (overrides [input] path)");
  cmd.add_option("--output", o.output, "output directory (overrides [output] dir)");
  cmd.add_option("--workers", o.workers, "worker threads (default: available parallelism)");
  cmd.add_option("--exclude", o.exclude, "sequence keys to leave out of the reports");
  cmd.add_option("--max-pattern-len", o.max_pattern_len, "longest window considered (2-8, default 8)");
}

termseq::PipelineConfig resolve(const Overrides& o) {
  auto cfg = termseq::load_config(o.config);
  if (!o.input.empty()) cfg.input = o.input;
  if (!o.output.empty()) cfg.output_dir = o.output;
  if (!o.exclude.empty()) cfg.exclude = o.exclude;
  if (o.workers) cfg.workers = *o.workers;
  if (o.max_pattern_len) cfg.max_pattern_len = *o.max_pattern_len;
  return cfg;
}

void report(const termseq::RunSummary& s, double seconds) {
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
  std::fprintf(stderr,
               "%zu documents, %zu word tokens (%zu identified, %zu unknown, %zu dropped), "
               "%zu sequence and %zu multiword occurrences in %.2f s\n",
               s.documents, s.tokens, s.identified, s.unknown, s.dropped, s.sequence_occurrences,
               s.multiword_occurrences, seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dictionary-based multiword sequence indexing"};
  app.require_subcommand(1);

  Overrides index_opts;
  auto* index = app.add_subcommand("index", "write protocol and per-record index terms");
  add_common(*index, index_opts);

  Overrides analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "count sequences and write frequency reports");
  add_common(*analyze, analyze_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto start = std::chrono::steady_clock::now();
    termseq::RunSummary summary;
    if (index->parsed()) {
      summary = termseq::run_index_mode(resolve(index_opts));
    } else {
      summary = termseq::run_analyze_mode(resolve(analyze_opts));
    }
    report(summary, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  } catch (const termseq::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const termseq::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
