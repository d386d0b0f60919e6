#include <gtest/gtest.h>

#include <random>

#include "tgk/words.hpp"

using namespace tgk;

namespace {

Letters L(std::initializer_list<std::pair<const char*, int>> xs) {
  Letters out;
  for (const auto& [g, s] : xs) out.push_back({g, s});
  return out;
}

// Cancels one random adjacent inverse pair at a time until none is left.
Letters reduce_randomly(Letters w, std::mt19937& rng) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) spots.push_back(i);
    }
    if (spots.empty()) return w;
    const std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

std::string random_word_text(std::mt19937& rng, int depth) {
  static const char* gens[] = {"a", "b", "c"};
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
  std::uniform_int_distribution<int> g(0, 2), e(-3, 3);
  switch (pick(rng)) {
    case 0:
      return gens[g(rng)];
    case 1:
      return std::string(gens[g(rng)]) + "^" + std::to_string(e(rng));
    case 2:
      return "[" + random_word_text(rng, depth - 1) + "," + random_word_text(rng, depth - 1) + "]";
    case 3:
      return "(" + random_word_text(rng, depth - 1) + " " + random_word_text(rng, depth - 1) + ")^" +
             std::to_string(e(rng));
    default:
      return "^2[" + random_word_text(rng, depth - 1) + "," + random_word_text(rng, depth - 1) + "]";
  }
}

}  // namespace

TEST(ParseWord, PowerTimesIteratedCommutator) {
  const Word w = parse_word("s1^25 * ^3[s1,s2]");
  ASSERT_EQ(w.kind, Word::Kind::Product);
  ASSERT_EQ(w.children.size(), 2u);
  EXPECT_EQ(w.children[0], Word::power(Word::generator("s1"), 25));
  EXPECT_EQ(w.children[1], Word::commutator(Word::generator("s1"), Word::generator("s2"), 3));
}

TEST(ParseWord, CommutatorFlattensLeftBracketed) {
  const Word w = parse_word("[a,b]");
  EXPECT_EQ(w, Word::commutator(Word::generator("a"), Word::generator("b"), 1));
  EXPECT_EQ(flatten(w), L({{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}));
}

TEST(ParseWord, DepthZeroIsSecondArgument) {
  EXPECT_EQ(reduce(parse_word("^0[a,b]")), L({{"b", 1}}));
}

TEST(ParseWord, InverseCancels) {
  EXPECT_TRUE(reduce(parse_word("a a^-1")).empty());
  EXPECT_TRUE(reduce(parse_word("1")).empty());
}

TEST(ParseWord, ErrorsReportOffsets) {
  try {
    parse_word("a * * b");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  const std::vector<std::string> gens{"a", "b"};
  try {
    parse_word("a [a,zz]", &gens);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse_word("a^"), ParseError);
  EXPECT_THROW(parse_word("[a,b"), ParseError);
  EXPECT_THROW(parse_word("a^99999999999999999999"), ParseError);
}

TEST(PrintWord, RoundTrip) {
  for (const char* text : {"s1^25 * ^3[s1,s2]", "[a,b]", "(a * b)^-2", "^2[[a,b],c^3] * a", "1"}) {
    const Word w = parse_word(text);
    EXPECT_EQ(parse_word(print_word(w)), w) << text;
  }
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const Word w = parse_word(random_word_text(rng, 3));
    EXPECT_EQ(parse_word(print_word(w)), w);
  }
}

TEST(Reduce, DoubleCommutatorUnfolds) {
  // ^2[a,b] = a [a,b] a^-1 [a,b]^-1 = a a b a^-1 b^-1 a^-1 b a b^-1 a^-1
  EXPECT_EQ(reduce(parse_word("^2[a,b]")),
            L({{"a", 1}, {"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}, {"a", -1}, {"b", 1}, {"a", 1}, {"b", -1}, {"a", -1}}));
}

TEST(Reduce, EmptyConjugate) {
  EXPECT_TRUE(reduce(parse_word("(a b) (a b)^-1")).empty());
}

TEST(Reduce, DistinctNormalForms) {
  std::mt19937 rng(1);
  const Letters x = reduce(parse_word("b a [a,b]"));
  const Letters y = reduce(parse_word("a b"));
  EXPECT_NE(x, y);
  EXPECT_EQ(reduce_randomly(flatten(parse_word("b a [a,b]")), rng), x);
}

TEST(Reduce, ConfluentAndIdempotent) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Word w = parse_word(random_word_text(rng, 3));
    const Letters r = reduce(w);
    EXPECT_EQ(free_reduce(r), r);
    EXPECT_EQ(reduce_randomly(flatten(w), rng), r);
    EXPECT_TRUE(free_reduce([&] {
                  Letters both = flatten(w);
                  const Letters inv = inverse(flatten(w));
                  both.insert(both.end(), inv.begin(), inv.end());
                  return both;
                }())
                    .empty());
  }
}

TEST(ExponentSums, MatchLetterCounts) {
  std::mt19937 rng(3);
  const std::vector<std::string> gens{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    const Word w = parse_word(random_word_text(rng, 3));
    std::vector<std::int64_t> count(3, 0);
    for (const auto& l : flatten(w)) count[static_cast<std::size_t>(l.gen[0] - 'a')] += l.sign;
    EXPECT_EQ(exponent_sums(w, gens), count);
  }
}

TEST(RelatorMatcher, Examples) {
  const auto m = match_corollary_relator(parse_word("s1^25 * ^3[s1,s2]"), 5);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->s1, "s1");
  EXPECT_EQ(m->s2, "s2");
  EXPECT_EQ(m->q, 25);
  EXPECT_EQ(m->f, 3u);
  EXPECT_TRUE(m->j_pairs.empty());
  EXPECT_TRUE(m->k_indices.empty());

  const auto f1 = match_corollary_relator(parse_word("s1^25 * ^1[s1,s2]"), 5);
  ASSERT_TRUE(f1);
  EXPECT_EQ(f1->f, 1u);
  EXPECT_EQ(f1->q, 25);

  EXPECT_FALSE(match_corollary_relator(parse_word("[s1,s2] * [s3,s4]"), 5));
}

TEST(RelatorMatcher, JAndKTerms) {
  const auto m = match_corollary_relator(parse_word("a^50 ^2[a,b] [c,d] [b,c] [a^5,c] [a^5,d]"), 5);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->f, 2u);
  EXPECT_EQ(m->j_pairs, (std::vector<std::pair<std::string, std::string>>{{"c", "d"}, {"b", "c"}}));
  EXPECT_EQ(m->k_indices, (std::vector<std::string>{"c", "d"}));
  // A K term must use exactly s1^p.
  EXPECT_FALSE(match_corollary_relator(parse_word("a^25 ^2[a,b] [a^3,c]"), 5));
  // No shuffling: J terms may not precede the f term.
  EXPECT_FALSE(match_corollary_relator(parse_word("a^25 [c,d] ^2[a,b]"), 5));
}
