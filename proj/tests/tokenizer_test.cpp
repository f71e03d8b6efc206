#include <gtest/gtest.h>

#include <random>

#include "termseq/tokenizer.hpp"

using namespace termseq;

namespace {

std::vector<std::string> norms(const TokenStream& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.norm);
  return out;
}

}  // namespace

TEST(Tokenizer, FinslerPhrase) {
  const auto s = tokenize("locally symmetrical Finsler manifolds.", "d1");
  ASSERT_EQ(s.tokens.size(), 4u);
  EXPECT_EQ(norms(s), (std::vector<std::string>{"locally", "symmetrical", "finsler", "manifolds"}));
  EXPECT_EQ(s.tokens[2].surface, "Finsler");
  for (const auto& t : s.tokens) {
    EXPECT_EQ(t.sentence_index, 0u);
    EXPECT_EQ(t.doc_id, "d1");
  }
}

TEST(Tokenizer, HyphensSplit) {
  const auto s = tokenize("einstein-yang-mills-higgs equations", "d");
  EXPECT_EQ(norms(s), (std::vector<std::string>{"einstein", "yang", "mills", "higgs", "equations"}));
}

TEST(Tokenizer, PossessiveStripped) {
  const auto s = tokenize("mizoguchi-takahashi's fixed point theorem", "d");
  EXPECT_EQ(norms(s), (std::vector<std::string>{"mizoguchi", "takahashi", "fixed", "point", "theorem"}));
  EXPECT_EQ(s.tokens[1].surface, "takahashi's");
  EXPECT_EQ(norms(tokenize("Hilbert’s space", "d")), (std::vector<std::string>{"hilbert", "space"}));
}

TEST(Tokenizer, OtherApostrophesSeparate) {
  EXPECT_EQ(norms(tokenize("d'alembert operator", "d")), (std::vector<std::string>{"d", "alembert", "operator"}));
  EXPECT_EQ(norms(tokenize("it's", "d")), (std::vector<std::string>{"it"}));
  EXPECT_EQ(norms(tokenize("x'sy", "d")), (std::vector<std::string>{"x", "sy"}));
}

TEST(Tokenizer, SentenceBoundaries) {
  const auto s = tokenize("Lie group. Banach space; Hilbert space? yes! no", "d");
  std::vector<std::size_t> idx;
  for (const auto& t : s.tokens) idx.push_back(t.sentence_index);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 0, 1, 1, 2, 2, 3, 4}));
}

TEST(Tokenizer, DigitsDroppedButCounted) {
  const auto s = tokenize("for 4x and 2002 values", "d");
  EXPECT_EQ(norms(s), (std::vector<std::string>{"for", "and", "values"}));
  EXPECT_EQ(s.dropped, 2u);
  // dropped tokens leave ordinal gaps
  EXPECT_EQ(s.tokens[0].ordinal, 0u);
  EXPECT_EQ(s.tokens[1].ordinal, 2u);
  EXPECT_EQ(s.tokens[2].ordinal, 4u);
}

TEST(Tokenizer, UnicodeLetters) {
  const auto s = tokenize("Schrödinger equation on Kähler manifolds", "d");
  EXPECT_EQ(norms(s), (std::vector<std::string>{"schrödinger", "equation", "on", "kähler", "manifolds"}));
}

TEST(Tokenizer, EmptyInput) { EXPECT_TRUE(tokenize("", "d").tokens.empty()); }

TEST(Tokenizer, Properties) {
  std::mt19937 rng(3);
  const std::vector<std::string> pieces{"ab", "Cd", "ö", "É", " ", "-", "'s", "'", ".", ";", "1", ",", "\n", "x"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int iter = 0; iter < 3000; ++iter) {
    std::string text;
    for (int k = 0; k < 25; ++k) text += pieces[pick(rng)];
    const auto a = tokenize(text, "d");
    const auto b = tokenize(text, "d");
    ASSERT_EQ(a.tokens, b.tokens);
    std::size_t prev_ord = 0, prev_sent = 0;
    bool first = true;
    for (const auto& t : a.tokens) {
      EXPECT_TRUE(utf8::all_letters(t.norm)) << t.norm;
      EXPECT_EQ(t.norm, utf8::lowercase(t.surface.size() >= 2 && t.surface.ends_with("'s")
                                            ? t.surface.substr(0, t.surface.size() - 2)
                                            : t.surface));
      EXPECT_NE(text.find(t.surface), std::string::npos);
      if (!first) {
        EXPECT_GT(t.ordinal, prev_ord);
        EXPECT_GE(t.sentence_index, prev_sent);
      }
      first = false;
      prev_ord = t.ordinal;
      prev_sent = t.sentence_index;
    }
  }
}
