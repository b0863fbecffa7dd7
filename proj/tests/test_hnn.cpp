#include <gtest/gtest.h>

#include "hnnkit/hnn.hpp"
#include "hnnkit/parse.hpp"
#include "support.hpp"

namespace hnnkit {
namespace {

using testing::ab;

HnnPresentation pres_of(const std::string& phi, std::vector<std::string> gens = {"a", "b"}) {
  return HnnPresentation(parse_endomorphism(phi, Alphabet::make(std::move(gens))));
}

HnnPresentation baumslag_solitar() { return pres_of("a -> a^2", {"a"}); }

// <a, b, t | t a t^-1 = b, t b t^-1 = a^2>
HnnPresentation theorem_group() { return pres_of("a -> b ; b -> a^2"); }

TEST(NormalForm, Examples) {
  const auto p = theorem_group();
  EXPECT_EQ(p.format(normal_form(p, p.parse("t a t^-1"))), "b");
  EXPECT_EQ(p.format(normal_form(p, p.parse("t^-1 b t"))), "a");
  const HnnNormalForm nf = normal_form(p, p.parse("t^-1 a t"));
  EXPECT_EQ(nf.p, 1);
  EXPECT_EQ(nf.q, 1);
  EXPECT_EQ(nf.w.to_string(), "a");
  EXPECT_EQ(p.format(nf), "t^-1 a t");
  EXPECT_EQ(p.format(normal_form(p, p.parse("1"))), "1");
}

TEST(NormalForm, UnknownLetterIsAnError) {
  const auto p = theorem_group();
  EXPECT_THROW(p.parse("c"), ParseError);
}

TEST(Equal, Examples) {
  const auto bs = baumslag_solitar();
  EXPECT_TRUE(equal(bs, bs.parse("t a t^-1"), bs.parse("a^2")));
  EXPECT_TRUE(equal(bs, bs.parse("t^2 a t^-2"), bs.parse("a^4")));
  EXPECT_FALSE(equal(bs, bs.parse("a t"), bs.parse("t a")));
  EXPECT_EQ(bs.format(normal_form(bs, bs.parse("a t"))), "a t");
  EXPECT_EQ(bs.format(normal_form(bs, bs.parse("t a"))), "a^2 t");
}

TEST(Presentation, RejectsNonInjective) {
  EXPECT_THROW(pres_of("a -> a ; b -> a"), std::invalid_argument);
  EXPECT_THROW(HnnPresentation(parse_endomorphism("t -> t^2", Alphabet::make({"t"}))), std::invalid_argument);
}

TEST(Magnus, Examples) {
  const auto single = Alphabet::make({"a"});
  const auto p2 = magnus_rewrite(2, parse_word("a^2", single));
  EXPECT_EQ(p2.to_string(), "gens: b0 b1; phi: b0 -> b1 ; b1 -> b0^2");
  EXPECT_EQ(p2.format(normal_form(p2, p2.parse("t a t^-1"))), "b1");

  const auto p1 = magnus_rewrite(1, parse_word("a^2", single));
  EXPECT_EQ(p1.to_string(), "gens: a; phi: a -> a^2");

  const auto auto2 = magnus_rewrite(2, parse_word("a", single));
  EXPECT_EQ(auto2.phi().to_string(), "b0 -> b1 ; b1 -> b0");

  EXPECT_THROW(magnus_rewrite(1, parse_word("1", single)), std::invalid_argument);
  EXPECT_THROW(magnus_rewrite(0, parse_word("a", single)), std::invalid_argument);
}

TEST(Magnus, RelationHoldsInOutput) {
  const auto single = Alphabet::make({"a"});
  for (int n = 1; n <= 4; ++n) {
    for (const char* w : {"a^2", "a^3", "a^-2"}) {
      const auto p = magnus_rewrite(n, parse_word(w, single));
      const std::string b0 = n == 1 ? "a" : "b0";
      std::string lhs = "t^" + std::to_string(n) + " " + b0 + " t^-" + std::to_string(n);
      std::string rhs = std::string(w).replace(0, 1, b0);
      EXPECT_TRUE(equal(p, p.parse(lhs), p.parse(rhs))) << n << " " << w;
    }
  }
}

TEST(Spec, RelatorFormTriggersRewrite) {
  const auto spec = parse_presentation_spec("gens: a t\nrel: t^2 a t^-2 = a^2\n");
  const auto p = hnn_from_spec(spec);
  EXPECT_EQ(p.to_string(), "gens: b0 b1; phi: b0 -> b1 ; b1 -> b0^2");
  const auto flipped = hnn_from_spec(parse_presentation_spec("gens: t a; rel: a^2 = t^2 a t^-2"));
  EXPECT_EQ(flipped.to_string(), p.to_string());
  EXPECT_THROW(hnn_from_spec(parse_presentation_spec("gens: a t\nrel: t a^2 t^-1 = a^3\n")), std::invalid_argument);
}

TEST(Spec, PhiFormAndStableLetter) {
  const auto p = hnn_from_spec(parse_presentation_spec("gens: x y\nstable: s\nphi: x -> y ; y -> x^2\n# comment\n"));
  EXPECT_EQ(p.stable(), "s");
  EXPECT_EQ(p.format(normal_form(p, p.parse("s x s^-1"))), "y");
  EXPECT_EQ(p.to_string(), "gens: x y; stable: s; phi: x -> y ; y -> x^2");
}

TEST(CheckHomomorphism, Examples) {
  const auto single = Alphabet::make({"a"});
  const auto target = magnus_rewrite(2, parse_word("a^2", single));
  const auto abt = Alphabet::make({"a", "b", "t"});
  const FinitePresentation source{abt, {parse_word("t a t^-1 a^-2", abt), parse_word("t b t^-1 b^-2", abt)}};
  EXPECT_TRUE(check_homomorphism(source, target, {target.parse("b0"), target.parse("b1"), target.parse("t^2")}));
  EXPECT_FALSE(check_homomorphism(source, target, {target.parse("b0"), target.parse("b1"), target.parse("t")}));

  const auto bs = baumslag_solitar();
  const FinitePresentation bs_rel = bs.relators();
  EXPECT_TRUE(check_homomorphism(bs_rel, bs, {bs.parse("a"), bs.parse("t")}));
  EXPECT_FALSE(check_homomorphism(bs_rel, bs, {bs.parse("a"), bs.parse("a")}));
  EXPECT_EQ(bs.format(normal_form(bs, bs.parse("a a a^-1 a^-2"))), "a^-1");
  EXPECT_THROW(check_homomorphism(bs_rel, bs, {bs.parse("a")}), std::invalid_argument);
}

TEST(InnerPower, Examples) {
  const auto theorem = parse_endomorphism("a -> b ; b -> a^2", ab());
  EXPECT_EQ(integer_determinant(abelianization_matrix(theorem)), -2);
  EXPECT_EQ(no_power_inner_sufficient(theorem), InnerPowerVerdict::NoPowerInner);
  const auto example = parse_endomorphism("a -> a ; b -> [a,b]", ab());
  EXPECT_EQ(integer_determinant(abelianization_matrix(example)), 0);
  EXPECT_EQ(no_power_inner_sufficient(example), InnerPowerVerdict::NoPowerInner);
  EXPECT_EQ(no_power_inner_sufficient(Endomorphism::identity(ab())), InnerPowerVerdict::Inconclusive);
}

TEST(InnerPower, DeterminantMatchesCofactorExpansion) {
  auto rng = testing::make_rng(60);
  std::uniform_int_distribution<std::int64_t> entry(-9, 9);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::vector<std::int64_t>> m(3, std::vector<std::int64_t>(3));
    for (auto& row : m) {
      for (auto& e : row) e = entry(rng);
    }
    if (i % 5 == 0) m[0][0] = 0;
    const std::int64_t expected = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_EQ(integer_determinant(m), expected);
  }
}

TEST(SquaredConjugation, RelationsInBothSignGroups) {
  for (const char* b_image : {"b^-1", "b"}) {
    const auto p = pres_of(std::string("a -> a^2 ; b -> ") + b_image);
    EXPECT_TRUE(equal(p, p.parse("t^2 a t^-2"), p.parse("a^4")));
    EXPECT_TRUE(equal(p, p.parse("t^2 (b a b^-1) t^-2"), p.parse("(b a b^-1)^4")));
  }
}

// Property suites.

struct RandomHnn {
  HnnPresentation pres;
  std::vector<HnnWord> samples;
};

HnnWord random_hnn_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> e(-2, 2);
  HnnWord w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    std::int64_t x = e(rng);
    if (x == 0) x = 1;
    w.push_back(k == 2 ? HnnLetter{true, 0, x} : HnnLetter{false, k, x});
  }
  return w;
}

HnnPresentation random_presentation(std::mt19937_64& rng) {
  while (true) {
    const Endomorphism phi(ab(), {testing::random_word(rng, ab(), 3), testing::random_word(rng, ab(), 3)});
    if (is_injective(phi)) return HnnPresentation(phi);
  }
}

TEST(HnnProperties, NormalFormInvariant) {
  auto rng = testing::make_rng(61);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto p = random_presentation(rng);
    const auto nf = normal_form(p, random_hnn_word(rng, 10));
    EXPECT_GE(nf.p, 0);
    EXPECT_GE(nf.q, 0);
    if (nf.p > 0 && nf.q > 0) EXPECT_FALSE(p.image_graph().contains(nf.w));
  }
}

TEST(HnnProperties, InsertingCancellingPairsKeepsNormalForm) {
  auto rng = testing::make_rng(62);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto p = random_presentation(rng);
    const HnnWord u = random_hnn_word(rng, 10);
    std::uniform_int_distribution<std::size_t> at(0, u.size());
    const std::size_t k = at(rng);
    const HnnLetter pairs[][2] = {{{true, 0, 1}, {true, 0, -1}},
                                  {{true, 0, -1}, {true, 0, 1}},
                                  {{false, 0, 1}, {false, 0, -1}},
                                  {{false, 1, -1}, {false, 1, 1}}};
    const auto& pair = pairs[i % 4];
    HnnWord v = u;
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(k), {pair[0], pair[1]});
    EXPECT_EQ(normal_form(p, v), normal_form(p, u));
  }
}

TEST(HnnProperties, DefiningRelationsHold) {
  auto rng = testing::make_rng(63);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto p = random_presentation(rng);
    for (int g = 0; g < 2; ++g) {
      const HnnWord lhs = concat(concat(stable_power(1), {HnnLetter{false, g, 1}}), stable_power(-1));
      EXPECT_TRUE(equal(p, lhs, hnn_word(p.phi().image(g))));
    }
    EXPECT_TRUE(check_homomorphism(p.relators(), p,
                                   {hnn_word(FreeWord::generator(ab(), 0)), hnn_word(FreeWord::generator(ab(), 1)),
                                    stable_power(1)}));
  }
}

TEST(HnnProperties, EqualIsACongruence) {
  auto rng = testing::make_rng(64);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const auto p = random_presentation(rng);
    const HnnWord u = random_hnn_word(rng, 8);
    const HnnWord v = random_hnn_word(rng, 8);
    // u' is u with a defining relation spliced in, so equal(u, u').
    const int g = i % 2;
    HnnWord rel = concat(concat(stable_power(1), {HnnLetter{false, g, 1}}), stable_power(-1));
    rel = concat(rel, inverse(hnn_word(p.phi().image(g))));
    const HnnWord u2 = concat(rel, u);
    ASSERT_TRUE(equal(p, u, u2));
    EXPECT_TRUE(equal(p, concat(u, v), concat(u2, v)));
    EXPECT_TRUE(equal(p, u, u));
    EXPECT_EQ(equal(p, u, v), equal(p, v, u));
    EXPECT_TRUE(normal_form(p, concat(u, inverse(u))).is_identity());
  }
}

}  // namespace
}  // namespace hnnkit
