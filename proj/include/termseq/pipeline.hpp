#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "termseq/analytics.hpp"
#include "termseq/config.hpp"
#include "termseq/identifier.hpp"
#include "termseq/ingest.hpp"
#include "termseq/lexicon.hpp"
#include "termseq/reports.hpp"
#include "termseq/sequencer.hpp"
#include "termseq/tokenizer.hpp"

namespace termseq {

/// Immutable after load; shared by all workers.
struct Lexicon {
  std::vector<Dictionary> dictionaries;  // priority order
  SuffixTable suffixes;
  SynonymMap synonyms;
  PatternSet patterns;
  MultiwordDictionary multiwords;
  std::size_t max_pattern_len = max_phrase_length;
};

inline Lexicon load_lexicon(const PipelineConfig& cfg, Diagnostics& diag) {
  Lexicon lex;
  for (const auto& spec : cfg.dictionaries)
    lex.dictionaries.push_back(load_dictionary(spec.path, spec.word_class, spec.name, &diag));
  lex.suffixes = load_suffix_table(cfg.suffixes);
  if (!cfg.synonyms.empty()) lex.synonyms = load_synonyms(cfg.synonyms, &diag);
  lex.patterns = load_patterns(cfg.patterns);
  if (!cfg.multiwords.empty()) {
    lex.multiwords = load_multiwords(cfg.multiwords);
    check_orphans(lex.multiwords, lex.dictionaries, diag);
  }
  lex.max_pattern_len = cfg.max_pattern_len;
  return lex;
}

struct SentenceAnalysis {
  std::vector<Identification> words;
  std::vector<SequenceMatch> sequences;   // kind q
  std::vector<SequenceMatch> multiwords;  // kind m
};

struct DocumentAnalysis {
  std::string doc_id;
  std::vector<SentenceAnalysis> sentences;
  std::size_t dropped = 0;
};

/// Per-worker document pipeline: strip, tokenize, identify, sequence.
/// Keeps a private memo of dictionary resolutions, so one instance must not
/// be shared between threads.
class DocumentProcessor {
 public:
  explicit DocumentProcessor(const Lexicon& lexicon) : lex_(&lexicon) {}

  DocumentAnalysis process(const DocumentRecord& record) {
    return process_clean(strip_latex(record.text), record.id);
  }

  DocumentAnalysis process_clean(const CleanText& clean, const std::string& doc_id) {
    DocumentAnalysis doc;
    doc.doc_id = doc_id;
    TokenStream stream = tokenize(clean, doc_id);
    doc.dropped = stream.dropped;

    std::size_t i = 0;
    while (i < stream.tokens.size()) {
      SentenceAnalysis sentence;
      const std::size_t index = stream.tokens[i].sentence_index;
      for (; i < stream.tokens.size() && stream.tokens[i].sentence_index == index; ++i)
        sentence.words.push_back(identify(std::move(stream.tokens[i])));
      for (const auto& run : split_runs(sentence.words)) {
        auto q = find_sequences(run, lex_->patterns, lex_->max_pattern_len);
        sentence.sequences.insert(sentence.sequences.end(), std::make_move_iterator(q.begin()),
                                  std::make_move_iterator(q.end()));
        auto m = match_multiwords(run, lex_->multiwords);
        sentence.multiwords.insert(sentence.multiwords.end(), std::make_move_iterator(m.begin()),
                                   std::make_move_iterator(m.end()));
      }
      doc.sentences.push_back(std::move(sentence));
    }
    return doc;
  }

  Identification identify(Token token) {
    if (memo_.size() > memo_limit) memo_.clear();
    auto it = memo_.find(token.norm);
    if (it == memo_.end())
      it = memo_.emplace(token.norm, resolve(token.norm, lex_->dictionaries, lex_->suffixes, lex_->synonyms)).first;
    if (!it->second) return UnknownToken{std::move(token)};
    const Resolution& r = *it->second;
    return IdentifiedWord{std::move(token), r.base, r.word_class, lex_->dictionaries[r.dictionary].name()};
  }

 private:
  static constexpr std::size_t memo_limit = 1 << 20;
  const Lexicon* lex_;
  std::unordered_map<std::string, std::optional<Resolution>> memo_;
};

/// Word lines of a sentence followed by its sequence lines, q before m.
inline std::string render_document_protocol(const DocumentAnalysis& doc) {
  std::string out;
  for (const auto& s : doc.sentences) {
    for (const auto& w : s.words) out += render_protocol(w) + '\n';
    for (const auto& m : s.sequences) out += render_sequence_protocol(m) + '\n';
    for (const auto& m : s.multiwords) out += render_sequence_protocol(m) + '\n';
  }
  return out;
}

/// Distinct index terms in first-occurrence order: word bases, then
/// sequence keys, sentence by sentence.
inline std::vector<std::string> index_terms(const DocumentAnalysis& doc) {
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  auto take = [&](std::string t) {
    if (seen.insert(t).second) terms.push_back(std::move(t));
  };
  for (const auto& s : doc.sentences) {
    for (const auto& w : s.words)
      if (const auto* word = std::get_if<IdentifiedWord>(&w)) take(word->base);
    for (const auto& m : s.sequences) take(m.key());
    for (const auto& m : s.multiwords) take(m.key());
  }
  return terms;
}

inline std::size_t default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

/// Runs `work(worker, index)` for every index in [0, count) on `workers`
/// threads. Each worker claims indices from a shared counter.
inline void parallel_for(std::size_t count, std::size_t workers,
                         const std::function<void(std::size_t, std::size_t)>& work) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) work(0, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(w, i);
    });
}

struct RunSummary {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t identified = 0;
  std::size_t unknown = 0;
  std::size_t dropped = 0;
  std::size_t sequence_occurrences = 0;
  std::size_t multiword_occurrences = 0;
  std::vector<std::string> warnings;
};

struct RunOptions {
  std::size_t batch_size = 4096;
};

namespace detail {

class OutputFile {
 public:
  explicit OutputFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw io_error("cannot write " + path.string());
  }
  void write(const std::string& s) {
    out_ << s;
    if (!out_) throw io_error("write failed: " + path_.string());
  }
  void close() {
    out_.close();
    if (!out_) throw io_error("write failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  OutputFile f(path);
  f.write(content);
  f.close();
}

inline std::vector<DocumentRecord> load_documents(const PipelineConfig& cfg) {
  if (cfg.input_format == InputFormat::records) return parse_records(cfg.input);
  return split_paragraphs(read_corpus(cfg.input).text, "p");
}

struct UnknownCounts {
  std::unordered_map<std::string, std::uint64_t> counts;
  void merge(const UnknownCounts& o) {
    for (const auto& [k, v] : o.counts) counts[k] += v;
  }
};

inline std::string format_unknown_summary(const UnknownCounts& u) {
  std::vector<std::pair<std::string, std::uint64_t>> rows(u.counts.begin(), u.counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::string out = "token\tcount\n";
  for (const auto& [k, v] : rows) out += k + '\t' + std::to_string(v) + '\n';
  return out;
}

// Per-worker accumulators.
struct Shard {
  SequenceTables tables;
  UnknownCounts unknown;
  RunSummary summary;
};

struct DocumentOutput {
  std::string protocol;
  std::string unknown_lines;
  std::string index_lines;
};

/// Shared driver of both modes. Documents are processed in batches; each
/// batch's per-document text is written in input order.
inline std::vector<Shard> drive(const std::vector<DocumentRecord>& docs, const Lexicon& lex,
                                std::size_t workers, const RunOptions& opt, bool index_mode,
                                const std::function<void(const DocumentOutput&)>& sink) {
  if (workers == 0) workers = default_workers();
  std::vector<Shard> shards(workers);
  std::vector<DocumentProcessor> processors;
  processors.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) processors.emplace_back(lex);

  const std::size_t batch = std::max<std::size_t>(1, opt.batch_size);
  std::vector<DocumentOutput> outputs;
  for (std::size_t begin = 0; begin < docs.size(); begin += batch) {
    const std::size_t end = std::min(docs.size(), begin + batch);
    outputs.assign(end - begin, {});
    parallel_for(end - begin, workers, [&](std::size_t w, std::size_t k) {
      const DocumentAnalysis doc = processors[w].process(docs[begin + k]);
      Shard& shard = shards[w];
      DocumentOutput& out = outputs[k];
      ++shard.summary.documents;
      shard.summary.dropped += doc.dropped;
      for (const auto& s : doc.sentences) {
        for (const auto& id : s.words) {
          ++shard.summary.tokens;
          if (const auto* u = std::get_if<UnknownToken>(&id)) {
            ++shard.summary.unknown;
            ++shard.unknown.counts[u->token.norm];
            out.unknown_lines += render_protocol(id) + '\n';
          } else {
            ++shard.summary.identified;
          }
        }
        for (const auto& m : s.sequences) shard.tables.add(m);
        for (const auto& m : s.multiwords) shard.tables.add(m);
        shard.summary.sequence_occurrences += s.sequences.size();
        shard.summary.multiword_occurrences += s.multiwords.size();
      }
      if (index_mode) {
        out.protocol = render_document_protocol(doc);
        for (const auto& t : index_terms(doc)) out.index_lines += doc.doc_id + '\t' + t + '\n';
      }
    });
    for (const auto& out : outputs) sink(out);
  }
  return shards;
}

inline RunSummary merge_shards(const std::vector<Shard>& shards, SequenceTables& tables, UnknownCounts& unknown) {
  RunSummary total;
  for (const auto& s : shards) {
    tables.merge(s.tables);
    unknown.merge(s.unknown);
    total.documents += s.summary.documents;
    total.tokens += s.summary.tokens;
    total.identified += s.summary.identified;
    total.unknown += s.summary.unknown;
    total.dropped += s.summary.dropped;
    total.sequence_occurrences += s.summary.sequence_occurrences;
    total.multiword_occurrences += s.summary.multiword_occurrences;
  }
  return total;
}

inline std::unordered_set<std::string> load_exclusions(const std::filesystem::path& path) {
  std::unordered_set<std::string> out;
  if (path.empty()) return out;
  const std::string text = read_file(path);
  for (const auto line : split_lines(text)) {
    const auto key = content_of(line);
    if (key.empty()) continue;
    std::string norm;
    for (const auto w : split_ws(key)) {
      if (!norm.empty()) norm.push_back(' ');
      norm += utf8::lowercase(w);
    }
    out.insert(std::move(norm));
  }
  return out;
}

}  // namespace detail

/// Index mode: protocol.txt, index.tsv, unknown.txt, unknown_summary.tsv.
inline RunSummary run_index_mode(const PipelineConfig& cfg, const RunOptions& opt = {}) {
  validate(cfg, Mode::index);
  Diagnostics diag;
  const Lexicon lex = load_lexicon(cfg, diag);
  const auto docs = detail::load_documents(cfg);

  std::filesystem::create_directories(cfg.output_dir);
  detail::OutputFile protocol(cfg.output_dir / "protocol.txt");
  detail::OutputFile unknown(cfg.output_dir / "unknown.txt");
  detail::OutputFile index(cfg.output_dir / "index.tsv");
  const auto shards = detail::drive(docs, lex, cfg.workers, opt, true, [&](const detail::DocumentOutput& out) {
    protocol.write(out.protocol);
    unknown.write(out.unknown_lines);
    index.write(out.index_lines);
  });
  protocol.close();
  unknown.close();
  index.close();

  SequenceTables tables;
  detail::UnknownCounts unknown_counts;
  RunSummary summary = detail::merge_shards(shards, tables, unknown_counts);
  detail::write_text(cfg.output_dir / "unknown_summary.tsv", detail::format_unknown_summary(unknown_counts));
  summary.warnings = std::move(diag.warnings);
  return summary;
}

inline std::string format_summary(const RunSummary& s, const SequenceTables& tables) {
  const NameStats names = name_containing_stats(tables.algorithmic);
  std::string out;
  out += "documents\t" + std::to_string(s.documents) + '\n';
  out += "word_tokens\t" + std::to_string(s.tokens) + '\n';
  out += "identified\t" + std::to_string(s.identified) + '\n';
  out += "unknown\t" + std::to_string(s.unknown) + '\n';
  out += "dropped_non_word\t" + std::to_string(s.dropped) + '\n';
  out += "sequence_occurrences\t" + std::to_string(tables.algorithmic.occurrences()) + '\n';
  out += "distinct_sequences\t" + std::to_string(tables.algorithmic.distinct()) + '\n';
  out += "multiword_occurrences\t" + std::to_string(tables.dictionary.occurrences()) + '\n';
  out += "distinct_multiwords\t" + std::to_string(tables.dictionary.distinct()) + '\n';
  out += "name_sequences\t" + std::to_string(names.count) + '\n';
  out += "name_share\t" + detail::fixed(names.share) + '\n';
  return out;
}

/// Analyze mode: sequences.tsv, reports/, unknown.txt, unknown_summary.tsv.
inline RunSummary run_analyze_mode(const PipelineConfig& cfg, const RunOptions& opt = {}) {
  validate(cfg, Mode::analyze);
  Diagnostics diag;
  const Lexicon lex = load_lexicon(cfg, diag);
  const auto excluded = detail::load_exclusions(cfg.exclude);
  const auto docs = detail::load_documents(cfg);

  std::filesystem::create_directories(cfg.output_dir / "reports");
  detail::OutputFile unknown(cfg.output_dir / "unknown.txt");
  const auto shards = detail::drive(docs, lex, cfg.workers, opt, false,
                                    [&](const detail::DocumentOutput& out) { unknown.write(out.unknown_lines); });
  unknown.close();

  SequenceTables tables;
  detail::UnknownCounts unknown_counts;
  RunSummary summary = detail::merge_shards(shards, tables, unknown_counts);

  detail::write_text(cfg.output_dir / "unknown_summary.tsv", detail::format_unknown_summary(unknown_counts));
  detail::write_text(cfg.output_dir / "sequences.tsv", format_frequency_table(tables.algorithmic));
  for (const auto& [name, content] : build_reports(tables, cfg.reports, excluded))
    detail::write_text(cfg.output_dir / "reports" / name, content);
  detail::write_text(cfg.output_dir / "reports" / "summary.txt", format_summary(summary, tables));
  summary.warnings = std::move(diag.warnings);
  return summary;
}

}  // namespace termseq
