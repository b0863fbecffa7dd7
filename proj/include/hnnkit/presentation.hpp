#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnnkit/words.hpp"

namespace hnnkit {

/// <generators | relators>, relators being words that equal 1.
struct FinitePresentation {
  AlphabetRef alphabet;
  std::vector<FreeWord> relators;

  std::string to_string() const;
};

/// Parsed presentation file. Directives may be separated by newlines or by
/// ';' when the next directive keyword follows:
///   gens: a b
///   stable: t                  (optional, defaults to t)
///   phi: a -> b ; b -> a^2     (endomorphism form)
///   rel: t^2 a t^-2 = a^2      (relator form; repeatable; "= rhs" optional)
struct PresentationSpec {
  std::vector<std::string> gens;
  std::optional<std::string> stable;
  std::optional<std::string> phi;
  std::vector<std::string> relations;

  std::string stable_letter() const { return stable.value_or("t"); }
  bool is_endomorphism_form() const { return phi.has_value(); }
};

PresentationSpec parse_presentation_spec(std::string_view text);

/// Relator form: relators over `gens`; endomorphism form: the HNN relators
/// t g t^-1 phi(g)^-1 over gens plus the stable letter.
FinitePresentation to_finite_presentation(const PresentationSpec& spec);

}  // namespace hnnkit
