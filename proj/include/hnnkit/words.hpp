#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hnnkit {

/// Ordered list of distinct generator names. Generator i is referred to by index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  static std::shared_ptr<const Alphabet> make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of `name`, or -1 if it is not a generator of this alphabet.
  int index_of(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

bool is_identifier(std::string_view s);

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;

  auto operator<=>(const Syllable&) const = default;
};

/// Free reduction of a raw syllable list: merges equal neighbours and drops
/// zero exponents until no two adjacent syllables share a generator.
std::vector<Syllable> reduce_syllables(std::span<const Syllable> raw);

/// Letter-level length: the sum of |exponent| over syllables.
std::int64_t letter_length(std::span<const Syllable> s);

/// A reduced word in a free group. Immutable value.
class FreeWord {
 public:
  FreeWord() = default;
  /// Identity over `alphabet`.
  explicit FreeWord(AlphabetRef alphabet);
  /// Reduces `raw`; throws if a generator index is out of range.
  FreeWord(AlphabetRef alphabet, std::span<const Syllable> raw);
  FreeWord(AlphabetRef alphabet, std::initializer_list<Syllable> raw);

  static FreeWord generator(AlphabetRef alphabet, int gen, std::int64_t exp = 1);

  const AlphabetRef& alphabet() const { return alphabet_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  std::int64_t length() const { return letter_length(syllables_); }

  /// Exponent sum of generator `gen`.
  std::int64_t exponent_sum(int gen) const;

  /// Canonical text: "1" for the identity, else space-separated `name` or `name^n`.
  std::string to_string() const;

  bool operator==(const FreeWord& other) const;
  bool operator<(const FreeWord& other) const { return syllables_ < other.syllables_; }

 private:
  AlphabetRef alphabet_;
  std::vector<Syllable> syllables_;
};

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b);

FreeWord multiply(const FreeWord& u, const FreeWord& v);
FreeWord invert(const FreeWord& u);
/// u v u^-1 v^-1
FreeWord commutator(const FreeWord& u, const FreeWord& v);
/// u^n for any integer n, computed through the cyclic reduction of u.
FreeWord power(const FreeWord& u, std::int64_t n);
/// Writes u = c·core·c^-1 with core cyclically reduced.
struct CyclicDecomposition {
  FreeWord conjugator;
  FreeWord core;
};
CyclicDecomposition cyclic_decomposition(const FreeWord& u);

inline FreeWord operator*(const FreeWord& u, const FreeWord& v) { return multiply(u, v); }

/// Endomorphism of a free group: generator i of `domain` maps to images[i],
/// a word over `codomain` (usually the same alphabet).
class Endomorphism {
 public:
  Endomorphism(AlphabetRef domain, std::vector<FreeWord> images);

  static Endomorphism identity(AlphabetRef alphabet);

  const AlphabetRef& domain() const { return domain_; }
  const AlphabetRef& codomain() const { return images_.empty() ? domain_ : images_.front().alphabet(); }
  const std::vector<FreeWord>& images() const { return images_; }
  const FreeWord& image(int gen) const { return images_.at(static_cast<std::size_t>(gen)); }

  /// Textual form "a -> w_a ; b -> w_b".
  std::string to_string() const;

 private:
  AlphabetRef domain_;
  std::vector<FreeWord> images_;
};

FreeWord apply_endo(const Endomorphism& phi, const FreeWord& w);
/// phi^n(w), n >= 0.
FreeWord apply_endo_power(const Endomorphism& phi, const FreeWord& w, std::int64_t n);
Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner);

}  // namespace hnnkit
