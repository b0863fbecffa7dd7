#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hnnkit/parse.hpp"
#include "hnnkit/quotients.hpp"
#include "support.hpp"

namespace hnnkit {
namespace {

FinitePresentation pres_from(const std::string& text) { return to_finite_presentation(parse_presentation_spec(text)); }

const char* kSquareConj = "gens: a t\nrel: t^2 a t^-2 = a^2\n";

FiniteAssignment assignment(const FinitePresentation& p, TargetGroup target, std::vector<GroupElement> images) {
  FiniteAssignment a;
  a.target = target;
  a.alphabet = p.alphabet;
  for (auto& g : images) a.images.emplace_back(std::move(g));
  return a;
}

TEST(EvaluateRelator, Examples) {
  const auto p = pres_from(kSquareConj);
  const auto a = assignment(p, {TargetFamily::Affine, 7}, {AffineMap{1, 1}, AffineMap{3, 0}});
  EXPECT_TRUE(is_identity(evaluate_relator(a, FreeWord(p.alphabet))));
  EXPECT_TRUE(is_identity(evaluate_relator(a, p.relators.at(0))));
  EXPECT_FALSE(is_identity(evaluate_relator(a, parse_word("a", p.alphabet))));
  // t^2 acts as multiplication by 2.
  EXPECT_EQ(element_to_string(evaluate_relator(a, parse_word("t^2", p.alphabet))), "(2,0)");

  const auto c = pres_from("gens: a\nrel: a^2 = 1\n");
  const auto s = assignment(c, {TargetFamily::Symmetric, 3}, {Permutation{{1, 0, 2}}});
  EXPECT_TRUE(is_identity(evaluate_relator(s, c.relators.at(0))));
  EXPECT_EQ(element_to_string(s.images[0].value()), "(1 2)");
}

TEST(EvaluateRelator, UnassignedGeneratorThrows) {
  const auto p = pres_from(kSquareConj);
  FiniteAssignment a = assignment(p, {TargetFamily::Affine, 7}, {AffineMap{1, 1}});
  a.images.resize(2);
  EXPECT_THROW(evaluate_relator(a, p.relators.at(0)), UnassignedGenerator);
}

TEST(EvaluateRelator, CompositionOrder) {
  // (f g)(x) = f(g(x)).
  const auto p = pres_from("gens: f g\nrel: f = f\n");
  const auto a = assignment(p, {TargetFamily::Affine, 5}, {AffineMap{2, 1}, AffineMap{1, 3}});
  EXPECT_EQ(element_to_string(evaluate_relator(a, parse_word("f g", p.alphabet))), "(2,2)");
  const auto s = assignment(p, {TargetFamily::Symmetric, 3}, {Permutation{{1, 2, 0}}, Permutation{{1, 0, 2}}});
  // g swaps 1,2; f is the 3-cycle 1->2->3->1: f(g(1)) = f(2) = 3.
  EXPECT_EQ(element_to_string(evaluate_relator(s, parse_word("f g", p.alphabet))), "(1 3)");
}

TEST(AffineWitness, Examples) {
  const auto p = pres_from(kSquareConj);
  const FreeWord a = parse_word("a", p.alphabet);
  for (Execution exec : {Execution::Serial, Execution::Parallel}) {
    const auto w = affine_witness(p, a, 7, exec);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->to_string(), "Affine(7): a=(1,1), t=(3,0)");
    EXPECT_EQ(w->quotient_order(), 42u);
    EXPECT_TRUE(verify_witness(p, *w, a));
    EXPECT_FALSE(affine_witness(p, a, 2, exec).has_value());
    EXPECT_FALSE(affine_witness(p, a, 6, exec).has_value());
  }
  EXPECT_THROW(affine_witness(p, parse_word("1", p.alphabet), 7), std::invalid_argument);
  EXPECT_THROW(affine_witness(p, parse_word("a a^-1", p.alphabet), 7), std::invalid_argument);
}

TEST(PermWitness, Examples) {
  const auto p = pres_from(kSquareConj);
  const FreeWord a = parse_word("a", p.alphabet);
  const auto w = perm_witness(p, a, 7);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verify_witness(p, *w, a));
  EXPECT_EQ(w, perm_witness(p, a, 7, Execution::Serial));

  const auto cyclic = pres_from("gens: a\nrel: a^2 = 1\n");
  const auto c = perm_witness(cyclic, parse_word("a", cyclic.alphabet), 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->to_string(), "Sym(2): a=(1 2)");

  const auto abelian = pres_from("gens: a t\nrel: t a t^-1 = a\n");
  const auto z = perm_witness(abelian, parse_word("a", abelian.alphabet), 2);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(z->to_string(), "Sym(2): a=(1 2), t=()");

  EXPECT_THROW(perm_witness(p, parse_word("1", p.alphabet), 3), std::invalid_argument);
  EXPECT_THROW(perm_witness(p, a, kMaxPermDegree + 1), std::invalid_argument);
}

TEST(ConjugacyClasses, OnePerCycleType) {
  const std::size_t partition_counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 1; n <= kMaxPermDegree; ++n) {
    const auto reps = conjugacy_class_representatives(n);
    EXPECT_EQ(reps.size(), partition_counts[n]);
    EXPECT_TRUE(std::is_sorted(reps.begin(), reps.end(),
                               [](const Permutation& x, const Permutation& y) { return x.images < y.images; }));
  }
  EXPECT_EQ(conjugacy_class_representatives(3).front().to_string(), "()");
}

TEST(Permutation, Printing) {
  EXPECT_EQ(Permutation({{0, 1, 2}}).to_string(), "()");
  EXPECT_EQ(Permutation({{1, 2, 0, 4, 3}}).to_string(), "(1 2 3)(4 5)");
  EXPECT_EQ((TargetGroup{TargetFamily::Symmetric, 4}.to_string()), "Sym(4)");
  EXPECT_EQ((TargetGroup{TargetFamily::Affine, 9}.to_string()), "Affine(9)");
}

// Independent oracles: plain nested enumeration in the documented order.

struct Aff {
  long alpha, beta;
};

std::vector<Aff> affine_elements(long m) {
  std::vector<Aff> out;
  for (long a = 1; a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    for (long b = 0; b < m; ++b) out.push_back({a, b});
  }
  return out;
}

Aff aff_mul(Aff f, Aff g, long m) { return {(f.alpha * g.alpha) % m, (f.alpha * g.beta + f.beta) % m}; }

Aff aff_eval(const FreeWord& w, const std::vector<Aff>& images, long m) {
  Aff acc{1, 0};
  for (const auto& s : w.syllables()) {
    // Inverse by brute force: the unique h with g h = 1.
    Aff g = images[static_cast<std::size_t>(s.gen)];
    if (s.exp < 0) {
      for (const Aff& h : affine_elements(m)) {
        const Aff p = aff_mul(g, h, m);
        if (p.alpha == 1 && p.beta == 0) {
          g = h;
          break;
        }
      }
    }
    for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) acc = aff_mul(acc, g, m);
  }
  return acc;
}

std::optional<std::string> oracle_affine(const FinitePresentation& p, const FreeWord& target, long m_max) {
  for (long m = 2; m <= m_max; ++m) {
    const auto elems = affine_elements(m);
    const std::size_t k = p.alphabet->size();
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::vector<Aff> images;
      for (std::size_t i = 0; i < k; ++i) images.push_back(elems[idx[i]]);
      bool ok = true;
      for (const auto& r : p.relators) {
        const Aff v = aff_eval(r, images, m);
        ok = ok && v.alpha == 1 && v.beta == 0;
      }
      const Aff tv = aff_eval(target, images, m);
      if (ok && !(tv.alpha == 1 && tv.beta == 0)) {
        std::string s = "Affine(" + std::to_string(m) + "):";
        for (std::size_t i = 0; i < k; ++i) {
          s += (i ? ", " : " ") + p.alphabet->name(i) + "=(" + std::to_string(images[i].alpha) + "," +
               std::to_string(images[i].beta) + ")";
        }
        return s;
      }
      // Odometer, last generator fastest.
      std::size_t pos = k;
      while (pos > 0 && ++idx[pos - 1] == elems.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return std::nullopt;
}

FinitePresentation random_presentation(std::mt19937_64& rng, int relators) {
  const auto at = Alphabet::make({"a", "t"});
  FinitePresentation p{at, {}};
  for (int i = 0; i < relators; ++i) p.relators.push_back(testing::random_reduced(rng, at, 2 + i * 2 + (i % 2)));
  return p;
}

TEST(QuotientProperties, AffineMatchesNestedEnumerationOracle) {
  auto rng = testing::make_rng(70);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const FinitePresentation p = random_presentation(rng, 1 + i % 2);
    FreeWord target = testing::random_reduced(rng, p.alphabet, 1 + i % 3);
    const auto w = affine_witness(p, target, 6, Execution::Serial);
    const auto expected = oracle_affine(p, target, 6);
    ASSERT_EQ(w.has_value(), expected.has_value()) << p.to_string();
    if (w) EXPECT_EQ(w->to_string(), *expected) << p.to_string();
  }
}

TEST(QuotientProperties, PartitionedSearchIsDeterministic) {
  auto rng = testing::make_rng(71);
  int cases = 0;
  for (int i = 0; cases < testing::kPropertyCases; ++i) {
    const FinitePresentation p = random_presentation(rng, 1 + i % 2);
    const FreeWord target = testing::random_reduced(rng, p.alphabet, 1 + i % 3);
    const TargetGroup group = i % 2 ? TargetGroup{TargetFamily::Affine, 3 + i % 5}
                                    : TargetGroup{TargetFamily::Symmetric, 3 + i % 2};
    const WitnessSearch search(p, target, group, group.family == TargetFamily::Symmetric);
    const auto full = search.search_range(0, search.branch_count());
    // Random partition of the branch range, scanned in shuffled order; the
    // merge keeps the witness of the lowest chunk.
    std::vector<std::uint64_t> cuts{0, search.branch_count()};
    std::uniform_int_distribution<std::uint64_t> cut(0, search.branch_count());
    for (int c = 0; c < 4; ++c) cuts.push_back(cut(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::size_t> order(cuts.size() - 1);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::optional<std::pair<std::size_t, FiniteAssignment>> best;
    for (std::size_t chunk : order) {
      auto r = search.search_range(cuts[chunk], cuts[chunk + 1]);
      if (r && (!best || chunk < best->first)) best = {{chunk, *r}};
    }
    ASSERT_EQ(best.has_value(), full.has_value());
    if (full) EXPECT_EQ(best->second, *full);
    EXPECT_EQ(search.search_parallel(), full);
    ++cases;
  }
}

TEST(QuotientProperties, ConjugacyRestrictionIsSound) {
  auto rng = testing::make_rng(72);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const FinitePresentation p = random_presentation(rng, 1 + i % 2);
    const FreeWord target = testing::random_reduced(rng, p.alphabet, 1 + i % 3);
    const TargetGroup group{TargetFamily::Symmetric, 2 + i % 3};
    const auto restricted = WitnessSearch(p, target, group, true).search(Execution::Serial);
    const auto full = WitnessSearch(p, target, group, false).search(Execution::Serial);
    ASSERT_EQ(restricted.has_value(), full.has_value()) << p.to_string() << " in " << group.to_string();
    if (restricted) EXPECT_TRUE(verify_witness(p, *restricted, target));
    if (full) EXPECT_TRUE(verify_witness(p, *full, target));
  }
}

TEST(QuotientProperties, WitnessesVerifyIndependently) {
  auto rng = testing::make_rng(73);
  for (int i = 0; i < testing::kPropertyCases; ++i) {
    const FinitePresentation p = random_presentation(rng, 1 + i % 2);
    const FreeWord target = testing::random_reduced(rng, p.alphabet, 1 + i % 4);
    const auto w = i % 2 ? affine_witness(p, target, 5) : perm_witness(p, target, 4);
    if (!w) continue;
    EXPECT_TRUE(verify_witness(p, *w, target));
    EXPECT_EQ(w, i % 2 ? affine_witness(p, target, 5) : perm_witness(p, target, 4));
  }
}

}  // namespace
}  // namespace hnnkit
