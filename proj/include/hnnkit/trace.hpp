#pragma once

#include <array>
#include <map>
#include <random>
#include <shared_mutex>
#include <vector>

#include "hnnkit/polynomial.hpp"
#include "hnnkit/words.hpp"

namespace hnnkit {

/// 2x2 matrix over Q with determinant 1.
class Mat2 {
 public:
  /// Throws std::invalid_argument unless e11*e22 - e12*e21 == 1.
  Mat2(Rational e11, Rational e12, Rational e21, Rational e22);
  static Mat2 identity();
  static Mat2 upper(const Rational& r) { return {1, r, 0, 1}; }
  static Mat2 lower(const Rational& r) { return {1, 0, r, 1}; }

  const Rational& operator()(int i, int j) const { return e_[static_cast<std::size_t>(2 * i + j)]; }
  Rational trace() const { return e_[0] + e_[3]; }
  Rational det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  /// Adjugate, which is the inverse in SL2.
  Mat2 inverse() const;
  Mat2 pow(std::int64_t n) const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  bool operator==(const Mat2& o) const { return e_ == o.e_; }

 private:
  struct Unchecked {};
  Mat2(Unchecked, std::array<Rational, 4> e) : e_(std::move(e)) {}
  std::array<Rational, 4> e_;
};

/// Random element of SL2(Q): a product of elementary matrices with small
/// rational entries, alternating upper and lower.
Mat2 random_sl2(std::mt19937_64& rng, int factors = 4);

/// Product of the matrices following w: generator 0 -> A, generator 1 -> B.
Mat2 eval_word(const FreeWord& w, const Mat2& a, const Mat2& b);

/// Trace polynomials of words over a two-letter alphabet in the Fricke
/// coordinates x = tr(a), y = tr(b), z = tr(ab).
///
/// Words are first brought to a canonical conjugacy/inversion representative
/// and looked up in a memo table shared by all callers. The table is guarded
/// by a shared mutex, so one context may be used from several threads.
class TraceContext {
 public:
  explicit TraceContext(bool memoize = true) : memoize_(memoize) {}

  Polynomial trace(const FreeWord& w);
  Polynomial trace(std::span<const Syllable> word);

  std::size_t memo_size() const;
  void clear();

 private:
  using Key = std::vector<Syllable>;
  Polynomial trace_canonical(const Key& key);
  Polynomial compute(const Key& key);

  bool memoize_;
  mutable std::shared_mutex mutex_;
  std::map<Key, Polynomial> memo_;
};

/// Canonical representative of the conjugacy class of w together with w^-1:
/// the least cyclic rotation of the cyclically reduced form of w or of w^-1.
std::vector<Syllable> trace_key(std::span<const Syllable> word);

/// Uses a process-wide memoizing context.
Polynomial trace_poly(const FreeWord& w);

/// px^2 + py^2 + pz^2 - px*py*pz - 2, the trace of the commutator.
Polynomial kappa(const Polynomial& px, const Polynomial& py, const Polynomial& pz);

/// True iff kappa(px, py, pz) - 2 is the zero polynomial.
bool is_solvable_triple(const Polynomial& px, const Polynomial& py, const Polynomial& pz);

}  // namespace hnnkit
