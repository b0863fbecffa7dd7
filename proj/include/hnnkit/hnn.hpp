#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hnnkit/polynomial.hpp"
#include "hnnkit/presentation.hpp"
#include "hnnkit/subgroup_graph.hpp"
#include "hnnkit/words.hpp"

namespace hnnkit {

/// A letter of an HNN word: a base generator or the stable letter, with exponent.
struct HnnLetter {
  bool stable = false;
  int gen = 0;  ///< base generator index; ignored for the stable letter
  std::int64_t exp = 1;

  bool operator==(const HnnLetter&) const = default;
};

using HnnWord = std::vector<HnnLetter>;

/// Element t^-p w t^q. When p > 0 and q > 0, w is not in the image of phi.
struct HnnNormalForm {
  std::int64_t p = 0;
  FreeWord w;
  std::int64_t q = 0;

  bool operator==(const HnnNormalForm&) const = default;
  bool is_identity() const { return p == 0 && q == 0 && w.is_identity(); }
};

/// Ascending HNN extension <base, t | t g t^-1 = phi(g)> of a free group,
/// phi injective. The folded graph of Im(phi) is built once and shared.
class HnnPresentation {
 public:
  /// Throws std::invalid_argument if phi is not injective.
  explicit HnnPresentation(Endomorphism phi, std::string stable = "t");

  const AlphabetRef& base() const { return phi_.domain(); }
  const Endomorphism& phi() const { return phi_; }
  const std::string& stable() const { return stable_; }
  const SubgroupGraph& image_graph() const { return *image_; }
  /// Base generators followed by the stable letter.
  const AlphabetRef& full_alphabet() const { return full_; }

  /// Extra spellings accepted when parsing words (e.g. "a" for "b0").
  void add_alias(const std::string& name, const std::string& generator);

  HnnWord parse(std::string_view text) const;
  std::string format(const HnnNormalForm& nf) const;
  /// "gens: b0 b1; phi: b0 -> b1 ; b1 -> b0^2", with "; stable: s" when not t.
  std::string to_string() const;
  FinitePresentation relators() const;

 private:
  Endomorphism phi_;
  std::string stable_;
  std::shared_ptr<const SubgroupGraph> image_;
  AlphabetRef full_;
  std::map<std::string, std::string> aliases_;
};

HnnWord hnn_word(const FreeWord& base_word);
HnnWord stable_power(std::int64_t n);
HnnWord concat(const HnnWord& a, const HnnWord& b);
HnnWord inverse(const HnnWord& w);

HnnNormalForm normal_form(const HnnPresentation& pres, const HnnWord& u);
bool equal(const HnnPresentation& pres, const HnnWord& u, const HnnWord& v);

/// Rewrites <a, t | t^n a t^-n = w(a)> as an ascending HNN extension of the
/// free group on b_i = t^i a t^-i (i < n): phi(b_i) = b_(i+1), phi(b_(n-1)) = w(b_0).
/// The result aliases "a" to b0. Throws std::invalid_argument if phi is not injective.
HnnPresentation magnus_rewrite(int n, const FreeWord& w, const std::string& stable = "t");

/// True iff every source relator maps to the identity of `target`.
/// `images` maps each source generator (by index) to an HNN word.
bool check_homomorphism(const FinitePresentation& source, const HnnPresentation& target,
                        const std::vector<HnnWord>& images);

enum class InnerPowerVerdict { NoPowerInner, Inconclusive };

/// Integer matrix of phi on the abelianization: entry (i, j) is the exponent
/// sum of generator i in phi(generator j).
std::vector<std::vector<std::int64_t>> abelianization_matrix(const Endomorphism& phi);
Integer integer_determinant(const std::vector<std::vector<std::int64_t>>& m);

/// Sufficient test that no nonzero power of phi is inner: inner automorphisms
/// act trivially on the abelianization, so det != +-1 rules them out.
InnerPowerVerdict no_power_inner_sufficient(const Endomorphism& phi);

/// Builds the HNN presentation described by a presentation file: directly
/// from "phi:", or by Magnus rewriting a single "rel:" of shape t^n a t^-n = w(a).
HnnPresentation hnn_from_spec(const PresentationSpec& spec);

}  // namespace hnnkit
