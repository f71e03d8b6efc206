#include <gtest/gtest.h>

#include <cstdlib>

#include "termseq/config.hpp"
#include "termseq/pipeline.hpp"
#include "test_support.hpp"

using namespace termseq;
using termseq::testing::TempDir;
using termseq::testing::read_text;

namespace {

const std::string finsler_protocol =
    "lex:) <locally = [(local/a)]>\n"
    "lex:) <symmetrical = [(symmetric/a)]>\n"
    "lex:) <Finsler = [(finsler/n)]>\n"
    "lex:) <manifolds = [(manifold/e)]>\n"
    "lex:) <finsler manifold|SEQ = [(finsler manifold/q)]>\n"
    "lex:) <symmetric finsler manifold|SEQ = [(symmetric finsler manifold/q)]>\n"
    "lex:) <local symmetric finsler manifold|SEQ = [(local symmetric finsler manifold/q)]>\n";

// Writes the four Finsler dictionaries and a config pointing at `input`.
std::filesystem::path write_setup(const TempDir& dir, const std::string& input_name, const std::string& input,
                                  const std::string& extra = "") {
  dir.write("adj.txt", "local\nsymmetric\n");
  dir.write("prop.txt", "manifold\n");
  dir.write("pers.txt", "finsler\n");
  dir.write("sys.txt", "");
  dir.write(input_name, input);
  const auto cfg = termseq::testing::config_dir();
  return dir.write("run.ini",
                   "[dictionary adjectives]\npath = adj.txt\nclass = A\npriority = 1\n"
                   "[dictionary proper]\npath = prop.txt\nclass = E\npriority = 2\n"
                   "[dictionary personal]\npath = pers.txt\nclass = N\npriority = 3\n"
                   "[dictionary system]\npath = sys.txt\nclass = S\npriority = 4\n"
                   "[suffixes]\npath = " + (cfg / "suffixes.txt").string() + "\n"
                   "[patterns]\npath = " + (cfg / "patterns.txt").string() + "\n"
                   "[input]\npath = " + input_name + "\n" + extra +
                   "[output]\ndir = out\n");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TERMSEQ_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, SampleConfigLoads) {
  const auto cfg = load_config(termseq::testing::config_dir() / "sample" / "sample.ini");
  ASSERT_EQ(cfg.dictionaries.size(), 4u);
  EXPECT_EQ(cfg.dictionaries[0].name, "adjectives");
  EXPECT_EQ(cfg.dictionaries[0].word_class, WordClass::A);
  EXPECT_EQ(cfg.dictionaries[3].word_class, WordClass::S);
  EXPECT_EQ(cfg.reports.thresholds, (std::vector<std::uint64_t>{500, 200, 100, 50, 20}));
  EXPECT_EQ(cfg.reports.collapse_from, 5u);
  EXPECT_NO_THROW(validate(cfg, Mode::index));
  EXPECT_NO_THROW(validate(cfg, Mode::analyze));
}

TEST(Config, PrioritiesOrderDictionaries) {
  const auto cfg = parse_config(
      "[dictionary b]\npath = b.txt\nclass = S\npriority = 2\n[dictionary a]\npath = a.txt\nclass = N\npriority = 1\n",
      "/tmp");
  ASSERT_EQ(cfg.dictionaries.size(), 2u);
  EXPECT_EQ(cfg.dictionaries[0].name, "a");
  EXPECT_EQ(cfg.dictionaries[0].path, std::filesystem::path("/tmp/a.txt"));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("[bogus]\nx = 1\n", "."), config_error);
  EXPECT_THROW(parse_config("[dictionary a]\npath = a.txt\nclass = Q\npriority = 1\n", "."), config_error);
  EXPECT_THROW(parse_config("[dictionary a]\npath = a.txt\nclass = A\n", "."), config_error);
  EXPECT_THROW(parse_config("[pipeline]\nworkers = many\n", "."), config_error);
  EXPECT_THROW(parse_config("[input]\npath = x\nformat = xml\n", "."), config_error);

  TempDir dir;
  const auto ini = write_setup(dir, "in.tsv", "");
  auto cfg = load_config(ini);
  cfg.dictionaries[1].priority = 3;
  cfg.dictionaries[2].priority = 4;
  cfg.dictionaries[3].priority = 5;
  EXPECT_THROW(validate(cfg, Mode::index), config_error);
  cfg = load_config(ini);
  cfg.dictionaries[0].path = dir / "missing.txt";
  EXPECT_THROW(validate(cfg, Mode::index), config_error);
  cfg = load_config(ini);
  cfg.input_format = InputFormat::text;
  EXPECT_THROW(validate(cfg, Mode::index), config_error);
  EXPECT_NO_THROW(validate(cfg, Mode::analyze));
  cfg.max_pattern_len = 9;
  EXPECT_THROW(validate(cfg, Mode::analyze), config_error);
}

TEST(IndexMode, FinslerProtocol) {
  TempDir dir;
  const auto cfg = load_config(write_setup(dir, "in.tsv", "d1\tlocally symmetrical Finsler manifolds.\n"));
  const auto summary = run_index_mode(cfg);
  EXPECT_EQ(summary.documents, 1u);
  EXPECT_EQ(read_text(dir / "out/protocol.txt"), finsler_protocol);
  EXPECT_EQ(read_text(dir / "out/index.tsv"),
            "d1\tlocal\nd1\tsymmetric\nd1\tfinsler\nd1\tmanifold\nd1\tfinsler manifold\n"
            "d1\tsymmetric finsler manifold\nd1\tlocal symmetric finsler manifold\n");
  EXPECT_EQ(read_text(dir / "out/unknown.txt"), "");
  EXPECT_EQ(read_text(dir / "out/unknown_summary.tsv"), "token\tcount\n");
}

TEST(IndexMode, UnknownTokensAndMultiwords) {
  TempDir dir;
  dir.write("mw.txt", "finsler manifold\n");
  const auto cfg = load_config(write_setup(dir, "in.tsv", "d1\tWe study Finsler manifolds. We qwzx.\n",
                                           "[multiwords]\npath = mw.txt\n"));
  run_index_mode(cfg);
  EXPECT_EQ(read_text(dir / "out/protocol.txt"),
            "lex:) <We = [?]>\n"
            "lex:) <study = [?]>\n"
            "lex:) <Finsler = [(finsler/n)]>\n"
            "lex:) <manifolds = [(manifold/e)]>\n"
            "lex:) <finsler manifold|SEQ = [(finsler manifold/q)]>\n"
            "lex:) <finsler manifold|SEQ = [(finsler manifold/m)]>\n"
            "lex:) <We = [?]>\n"
            "lex:) <qwzx = [?]>\n");
  EXPECT_EQ(read_text(dir / "out/unknown.txt"),
            "lex:) <We = [?]>\nlex:) <study = [?]>\nlex:) <We = [?]>\nlex:) <qwzx = [?]>\n");
  EXPECT_EQ(read_text(dir / "out/unknown_summary.tsv"), "token\tcount\nwe\t2\nqwzx\t1\nstudy\t1\n");
}

TEST(IndexMode, EmptyInput) {
  TempDir dir;
  const auto cfg = load_config(write_setup(dir, "in.tsv", ""));
  const auto s = run_index_mode(cfg);
  EXPECT_EQ(s.documents, 0u);
  EXPECT_EQ(read_text(dir / "out/protocol.txt"), "");
  EXPECT_EQ(read_text(dir / "out/index.tsv"), "");
}

TEST(AnalyzeMode, FinslerCorpus) {
  TempDir dir;
  const auto cfg = load_config(write_setup(dir, "in.tsv", "d1\tlocally symmetrical Finsler manifolds.\n"));
  run_analyze_mode(cfg);
  EXPECT_EQ(read_text(dir / "out/sequences.tsv"),
            "key\tcount\tparts\tcontains_name\n"
            "finsler manifold\t1\t2\t1\n"
            "local symmetric finsler manifold\t1\t4\t1\n"
            "symmetric finsler manifold\t1\t3\t1\n");
  EXPECT_EQ(read_text(dir / "out/reports/by_parts.tsv"),
            "parts\toccurrences\tdistinct\n8\t0\t0\n7\t0\t0\n6\t0\t0\n5\t0\t0\n4\t1\t1\n3\t1\t1\n2\t1\t1\n");
  EXPECT_EQ(read_text(dir / "out/reports/histogram.tsv"), "n\tdistinct_count\n1\t3\n");
  EXPECT_NE(read_text(dir / "out/reports/summary.txt").find("distinct_sequences\t3\n"), std::string::npos);
}

TEST(AnalyzeMode, WholeTextInput) {
  TempDir dir;
  const auto cfg = load_config(write_setup(dir, "in.txt",
                                           "We consider locally symmetrical\nFinsler manifolds $M^n$.\n\n"
                                           "Finsler manifolds again.\n",
                                           "format = text\n"));
  run_analyze_mode(cfg);
  EXPECT_EQ(read_text(dir / "out/sequences.tsv"),
            "key\tcount\tparts\tcontains_name\n"
            "finsler manifold\t2\t2\t1\n"
            "local symmetric finsler manifold\t1\t4\t1\n"
            "symmetric finsler manifold\t1\t3\t1\n");
}

TEST(AnalyzeMode, EmptyCorpus) {
  TempDir dir;
  const auto cfg = load_config(write_setup(dir, "in.tsv", ""));
  run_analyze_mode(cfg);
  EXPECT_EQ(read_text(dir / "out/sequences.tsv"), "key\tcount\tparts\tcontains_name\n");
  EXPECT_EQ(read_text(dir / "out/reports/top_n.tsv"), "rank\tcount\tparts\tkey\n");
  EXPECT_EQ(read_text(dir / "out/reports/histogram.tsv"), "n\tdistinct_count\n");
}

TEST(AnalyzeMode, ExclusionsOnlyAffectReports) {
  TempDir dir;
  dir.write("exclude.txt", "# false names\nFinsler Manifold\n");
  auto cfg = load_config(write_setup(dir, "in.tsv", "d1\tlocally symmetrical Finsler manifolds.\n"));
  cfg.exclude = dir / "exclude.txt";
  run_analyze_mode(cfg);
  EXPECT_NE(read_text(dir / "out/sequences.tsv").find("finsler manifold\t1"), std::string::npos);
  EXPECT_EQ(read_text(dir / "out/reports/top_n.tsv").find("\tfinsler manifold\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  const auto ini = write_setup(dir, "in.tsv", "d1\tlocally symmetrical Finsler manifolds.\n");
  EXPECT_EQ(run_cli("index " + ini.string()), 0);
  EXPECT_EQ(read_text(dir / "out/protocol.txt"), finsler_protocol);
  EXPECT_EQ(run_cli("analyze " + ini.string() + " --workers 2 --output " + (dir / "out2").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "out2/reports/crosstab.tsv"));

  std::filesystem::remove(dir / "adj.txt");
  EXPECT_NE(run_cli("index " + ini.string()), 0);
  EXPECT_NE(run_cli("index " + (dir / "nope.ini").string()), 0);
  EXPECT_NE(run_cli("frobnicate"), 0);
}

TEST(Cli, MalformedInputIsNonZero) {
  TempDir dir;
  const auto ini = write_setup(dir, "in.tsv", "no tab here\n");
  EXPECT_EQ(run_cli("index " + ini.string()), 2);
}

TEST(Cli, RepeatedRunsAreBitIdentical) {
  TempDir dir;
  const auto ini = write_setup(dir, "in.tsv",
                               "a\tlocally symmetrical Finsler manifolds.\nb\tFinsler manifolds and qwzx.\n");
  ASSERT_EQ(run_cli("analyze " + ini.string() + " --output " + (dir / "r1").string()), 0);
  ASSERT_EQ(run_cli("analyze " + ini.string() + " --output " + (dir / "r2").string()), 0);
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir / "r1")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), dir / "r1");
    EXPECT_EQ(read_text(entry.path()), read_text(dir / "r2" / rel)) << rel;
  }
}
