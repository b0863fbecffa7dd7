#include <gtest/gtest.h>

#include "hnnkit/parse.hpp"
#include "hnnkit/words.hpp"
#include "support.hpp"

namespace hnnkit {
namespace {

using testing::ab;

FreeWord W(const std::string& s) { return parse_word(s, ab()); }

TEST(Reduce, CancelsAdjacentInverses) {
  EXPECT_TRUE(FreeWord(ab(), {{0, 1}, {0, -1}}).is_identity());
  EXPECT_EQ(FreeWord(ab(), {{0, 1}, {1, 1}, {1, -1}, {0, 1}}), W("a^2"));
  EXPECT_EQ(FreeWord(ab(), {{1, 1}, {0, -1}, {0, 1}, {1, -1}, {0, 1}}), W("a"));
}

TEST(Reduce, DropsZeroExponentsAndMerges) {
  const auto s = reduce_syllables(std::vector<Syllable>{{0, 2}, {1, 0}, {0, 3}, {1, -1}});
  EXPECT_EQ(s, (std::vector<Syllable>{{0, 5}, {1, -1}}));
}

TEST(Reduce, RejectsOutOfRangeGenerator) {
  EXPECT_THROW(FreeWord(ab(), {{2, 1}}), AlphabetMismatch);
}

TEST(Multiply, Basics) {
  EXPECT_TRUE((W("a") * W("a^-1")).is_identity());
  EXPECT_EQ(invert(W("a b^-1")), W("b a^-1"));
  EXPECT_EQ(commutator(W("a"), W("b")), W("a b a^-1 b^-1"));
}

TEST(Multiply, AlphabetMismatchThrows) {
  const auto other = Alphabet::make({"a", "c"});
  EXPECT_THROW(W("a") * parse_word("c", other), AlphabetMismatch);
}

TEST(Power, MatchesRepeatedMultiplication) {
  auto rng = testing::make_rng(1);
  for (int i = 0; i < 100; ++i) {
    const FreeWord u = testing::random_word(rng, ab(), 8);
    FreeWord acc(ab());
    for (int n = 0; n <= 6; ++n) {
      EXPECT_EQ(power(u, n), acc) << u.to_string() << "^" << n;
      EXPECT_EQ(power(u, -n), invert(acc));
      acc = acc * u;
    }
  }
}

TEST(Power, HugeExponentStaysCompact) {
  const FreeWord u = W("b a^3 b^-1");
  const FreeWord p = power(u, 1'000'000'000'000LL);
  EXPECT_EQ(p.to_string(), "b a^3000000000000 b^-1");
}

TEST(CyclicDecomposition, ConjugatorTimesCore) {
  auto rng = testing::make_rng(2);
  for (int i = 0; i < 200; ++i) {
    const FreeWord u = testing::random_word(rng, ab(), 10);
    const auto d = cyclic_decomposition(u);
    EXPECT_EQ(d.conjugator * d.core * invert(d.conjugator), u);
    const auto& s = d.core.syllables();
    if (s.size() >= 2) {
      EXPECT_NE(s.front().gen, s.back().gen) << "core not cyclically reduced: " << d.core.to_string();
    }
  }
}

TEST(Endomorphism, Examples) {
  const Endomorphism phi = parse_endomorphism("a -> a b ; b -> b a", ab());
  EXPECT_EQ(apply_endo(phi, W("a")), W("a b"));
  EXPECT_TRUE(apply_endo(phi, W("1")).is_identity());
  const Endomorphism psi = parse_endomorphism("a -> b ; b -> a^2", ab());
  EXPECT_EQ(apply_endo(psi, W("a b")), W("b a^2"));
}

TEST(Endomorphism, PowerAndCompose) {
  const Endomorphism psi = parse_endomorphism("a -> b ; b -> a^2", ab());
  EXPECT_EQ(apply_endo_power(psi, W("a"), 2), W("a^2"));
  EXPECT_EQ(apply_endo_power(psi, W("a"), 4), W("a^4"));
  const Endomorphism sq = compose(psi, psi);
  EXPECT_EQ(apply_endo(sq, W("b")), W("b^2"));
}

TEST(Endomorphism, ToStringRoundTrips) {
  const Endomorphism phi = parse_endomorphism("a -> a ; b -> [a,b]", ab());
  EXPECT_EQ(phi.to_string(), "a -> a ; b -> a b a^-1 b^-1");
  EXPECT_EQ(parse_endomorphism(phi.to_string(), ab()).images(), phi.images());
}

TEST(Parse, Examples) {
  EXPECT_EQ(W("a b^-1 a^-1 b a^-1 b^-1 a").length(), 7);
  EXPECT_TRUE(W("1").is_identity());
  EXPECT_TRUE(W("a^2 a^-2").is_identity());
  EXPECT_EQ(W("(b a) b (b a)^-1"), W("b a b a^-1 b^-1"));
  EXPECT_EQ(W("[a, b^2]"), W("a b^2 a^-1 b^-2"));
}

TEST(Parse, Errors) {
  EXPECT_THROW(W("a c"), ParseError);
  EXPECT_THROW(W("a^"), ParseError);
  EXPECT_THROW(W("(a b"), ParseError);
  EXPECT_THROW(W(""), ParseError);
  EXPECT_THROW(parse_endomorphism("a -> a", ab()), ParseError);
  EXPECT_THROW(parse_endomorphism("a -> a ; a -> b ; b -> b", ab()), ParseError);
}

TEST(Parse, ErrorCarriesPosition) {
  try {
    W("a b q");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

// Property suite: free reduction and group axioms against the letter-stack oracle.

TEST(WordProperties, ReductionAgreesWithStackOracle) {
  auto rng = testing::make_rng(10);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const testing::Letters raw = testing::random_letters(rng, 3, 20);
    const auto abc = Alphabet::make({"a", "b", "c"});
    const FreeWord w = testing::from_letters(abc, raw);
    EXPECT_EQ(testing::to_letters(w), testing::reduce_letters(raw));
    // Idempotence.
    EXPECT_EQ(FreeWord(abc, w.syllables()), w);
  }
}

TEST(WordProperties, GroupAxioms) {
  auto rng = testing::make_rng(11);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const FreeWord u = testing::random_word(rng, ab(), 10);
    const FreeWord v = testing::random_word(rng, ab(), 10);
    const FreeWord w = testing::random_word(rng, ab(), 10);
    EXPECT_EQ((u * v) * w, u * (v * w));
    EXPECT_TRUE((u * invert(u)).is_identity());
    EXPECT_TRUE((invert(u) * u).is_identity());
    EXPECT_EQ(invert(u * v), invert(v) * invert(u));
    EXPECT_EQ(u * FreeWord(ab()), u);
    EXPECT_EQ(testing::to_letters(u * v),
              testing::reduce_letters(testing::concat(testing::to_letters(u), testing::to_letters(v))));
  }
}

TEST(WordProperties, EndomorphismDistributes) {
  auto rng = testing::make_rng(12);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const Endomorphism phi(ab(), {testing::random_word(rng, ab(), 4), testing::random_word(rng, ab(), 4)});
    const FreeWord u = testing::random_word(rng, ab(), 8);
    const FreeWord v = testing::random_word(rng, ab(), 8);
    EXPECT_EQ(apply_endo(phi, u * v), apply_endo(phi, u) * apply_endo(phi, v));
    EXPECT_EQ(apply_endo_power(phi, u, 2), apply_endo(phi, apply_endo(phi, u)));
  }
}

TEST(WordProperties, PrintParseRoundTrip) {
  auto rng = testing::make_rng(13);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const FreeWord w = testing::random_word(rng, ab(), 15);
    EXPECT_EQ(W(w.to_string()), w) << w.to_string();
  }
}

}  // namespace
}  // namespace hnnkit
