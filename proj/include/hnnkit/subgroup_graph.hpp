#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hnnkit/words.hpp"

namespace hnnkit {

class NotAMember : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Folded Stallings core graph of a finitely generated subgroup of a free group.
///
/// Every edge u -> v carries a decoration: a word over the subgroup-generator
/// alphabet. Reading a basepoint loop and multiplying its decorations gives
/// an expression of the loop's label in the original generators. After
/// construction the decorations are normalised against a breadth-first
/// spanning tree, so tree edges carry the identity.
class SubgroupGraph {
 public:
  struct Edge {
    int from = 0;
    int to = 0;
    int gen = 0;  ///< label; traversing the edge backwards reads gen^-1
    FreeWord decoration;
  };

  /// `generator_names` names the subgroup generators (defaults to g1, g2, ...).
  static SubgroupGraph build(const std::vector<FreeWord>& gens, AlphabetRef ambient,
                             std::vector<std::string> generator_names = {});

  const AlphabetRef& ambient() const { return ambient_; }
  const AlphabetRef& generator_alphabet() const { return gen_alphabet_; }
  const std::vector<FreeWord>& generators() const { return gens_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int vertex_count() const { return vertices_; }
  static constexpr int basepoint() { return 0; }

  /// edges - vertices + 1
  int rank() const { return static_cast<int>(edges_.size()) - vertices_ + 1; }

  bool contains(const FreeWord& w) const;
  /// Word e over the generator alphabet with e(gens) = w. Throws NotAMember.
  FreeWord express(const FreeWord& w) const;
  /// Substitutes the subgroup generators into e.
  FreeWord evaluate(const FreeWord& e) const;

  /// Edge list relabelled by breadth-first order from the basepoint, with
  /// edges visited by (generator, direction). Equal for isomorphic graphs.
  std::vector<std::tuple<int, int, int>> canonical_form() const;

  std::string to_string() const;

 private:
  struct Walk {
    bool complete = false;
    int end = 0;
    FreeWord product;
  };
  Walk walk(const FreeWord& w, bool track) const;
  // Outgoing (dir 0) and incoming (dir 1) edge per vertex and generator, or -1.
  int step_edge(int vertex, int gen, bool forward) const;

  AlphabetRef ambient_;
  AlphabetRef gen_alphabet_;
  std::vector<FreeWord> gens_;
  int vertices_ = 1;
  std::vector<Edge> edges_;
  std::vector<int> out_;  // vertex * k + gen
  std::vector<int> in_;
};

/// rank(build(images)) == size of the domain.
bool is_injective(const Endomorphism& phi);

}  // namespace hnnkit
