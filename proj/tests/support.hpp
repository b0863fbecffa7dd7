#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hnnkit/polynomial.hpp"
#include "hnnkit/words.hpp"

namespace hnnkit::testing {

inline constexpr int kPropertyCases = 250;

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline AlphabetRef ab() {
  static const AlphabetRef a = Alphabet::make({"a", "b"});
  return a;
}

// Letters are +-(gen+1); the oracle reduces them with a stack, independently
// of the syllable code in the library.
using Letters = std::vector<int>;

inline Letters reduce_letters(const Letters& in) {
  Letters out;
  for (int l : in) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Letters to_letters(const FreeWord& w) {
  Letters out;
  for (const auto& s : w.syllables()) {
    const std::int64_t n = s.exp < 0 ? -s.exp : s.exp;
    for (std::int64_t i = 0; i < n; ++i) out.push_back(s.exp > 0 ? s.gen + 1 : -(s.gen + 1));
  }
  return out;
}

inline FreeWord from_letters(const AlphabetRef& alphabet, const Letters& letters) {
  std::vector<Syllable> raw;
  for (int l : letters) raw.push_back({(l > 0 ? l : -l) - 1, l > 0 ? 1 : -1});
  return FreeWord(alphabet, raw);
}

inline Letters invert_letters(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

inline Letters concat(Letters a, const Letters& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Unreduced random letter list over k generators.
inline Letters random_letters(std::mt19937_64& rng, int k, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, k);
  std::bernoulli_distribution sign(0.5);
  Letters out(static_cast<std::size_t>(len(rng)));
  for (int& l : out) l = sign(rng) ? gen(rng) : -gen(rng);
  return out;
}

// Reduced word with exactly the requested letter length.
inline FreeWord random_reduced(std::mt19937_64& rng, const AlphabetRef& alphabet, int length) {
  const int k = static_cast<int>(alphabet->size());
  std::uniform_int_distribution<int> gen(1, k);
  std::bernoulli_distribution sign(0.5);
  Letters out;
  while (static_cast<int>(out.size()) < length) {
    const int l = sign(rng) ? gen(rng) : -gen(rng);
    if (!out.empty() && out.back() == -l) continue;
    out.push_back(l);
  }
  return from_letters(alphabet, out);
}

inline FreeWord random_word(std::mt19937_64& rng, const AlphabetRef& alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  return random_reduced(rng, alphabet, len(rng));
}

// 2x2 rational matrices written out by hand, for the trace oracle.
using RawMat = std::array<Rational, 4>;

inline RawMat raw_mul(const RawMat& p, const RawMat& q) {
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3]};
}

inline RawMat raw_inverse(const RawMat& m) { return {m[3], -m[1], -m[2], m[0]}; }

// Product of up to six elementary matrices [[1,r],[0,1]], [[1,0],[r,1]].
inline RawMat random_raw_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 5);
  std::bernoulli_distribution upper(0.5);
  RawMat m{1, 0, 0, 1};
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    const RawMat e = upper(rng) ? RawMat{1, r, 0, 1} : RawMat{1, 0, r, 1};
    m = raw_mul(m, e);
  }
  return m;
}

inline Rational raw_trace_of_word(const FreeWord& w, const RawMat& a, const RawMat& b) {
  RawMat acc{1, 0, 0, 1};
  for (int l : to_letters(w)) {
    const RawMat& g = (l == 1 || l == -1) ? a : b;
    acc = raw_mul(acc, l > 0 ? g : raw_inverse(g));
  }
  return acc[0] + acc[3];
}

// Random integer polynomial in x, y, z with total degree <= max_degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, int max_terms = 6) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<std::uint32_t> exp(0, static_cast<std::uint32_t>(max_degree));
  Polynomial p;
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint32_t> e(3);
    std::uint32_t budget = static_cast<std::uint32_t>(max_degree);
    for (auto& ei : e) {
      ei = std::min(exp(rng), budget);
      budget -= ei;
    }
    p += Polynomial::term(coeff(rng), Monomial(e));
  }
  return p;
}

inline std::array<Rational, 3> random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 6);
  std::array<Rational, 3> pt;
  for (auto& v : pt) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return pt;
}

// All reduced products of at most max_factors generators or inverses.
inline std::set<Letters> brute_force_subgroup(const std::vector<Letters>& gens, int max_factors) {
  std::vector<Letters> factors;
  for (const auto& g : gens) {
    factors.push_back(g);
    factors.push_back(invert_letters(g));
  }
  std::set<Letters> seen{Letters{}};
  std::vector<Letters> frontier{Letters{}};
  for (int depth = 0; depth < max_factors; ++depth) {
    std::vector<Letters> next;
    for (const auto& w : frontier) {
      for (const auto& f : factors) {
        Letters p = reduce_letters(concat(w, f));
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace hnnkit::testing
