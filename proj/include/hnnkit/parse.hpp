#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hnnkit/words.hpp"

namespace hnnkit {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Word grammar:
//   word  := "1" | term { WS term }
//   term  := atom [ "^" integer ]
//   atom  := ident | "(" word ")" | "[" word "," word "]"
// Parenthesised groups and commutator brackets extend the plain
// ident^integer form so that endomorphism images can be written compactly.

/// Unreduced syllables in reading order. Unknown identifiers are errors.
std::vector<Syllable> parse_raw_word(std::string_view text, const Alphabet& alphabet);

FreeWord parse_word(std::string_view text, const AlphabetRef& alphabet);

/// Identifiers appearing in `text`, in order of first appearance.
std::vector<std::string> scan_identifiers(std::string_view text);

/// "a -> w_a ; b -> w_b" over `alphabet`; every generator must be assigned exactly once.
Endomorphism parse_endomorphism(std::string_view text, const AlphabetRef& alphabet);

/// Splits "lhs -> rhs ; ..." into (lhs, rhs) pairs without interpreting the words.
std::vector<std::pair<std::string, std::string>> split_assignments(std::string_view text,
                                                                   std::string_view arrow);

}  // namespace hnnkit
