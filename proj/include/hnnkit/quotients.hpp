#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hnnkit/presentation.hpp"
#include "hnnkit/words.hpp"

namespace hnnkit {

/// x -> alpha*x + beta on Z/m, alpha a unit. Composition (f*g)(x) = f(g(x)).
struct AffineMap {
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  bool operator==(const AffineMap&) const = default;
};

/// images[i] is the image of point i (0-based). Composition (f*g)(i) = f(g(i)).
struct Permutation {
  std::vector<int> images;
  bool operator==(const Permutation&) const = default;
  /// Cycle notation on points 1..n, "()" for the identity.
  std::string to_string() const;
};

using GroupElement = std::variant<AffineMap, Permutation>;

enum class TargetFamily { Affine, Symmetric };

struct TargetGroup {
  TargetFamily family = TargetFamily::Affine;
  int degree = 2;  ///< m for Affine(m), n for Sym(n)

  std::string to_string() const;
  bool operator==(const TargetGroup&) const = default;
};

/// Largest Sym(n) the searches will enumerate.
inline constexpr int kMaxPermDegree = 8;

class UnassignedGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Assignment of presentation generators to elements of a finite target group.
struct FiniteAssignment {
  TargetGroup target;
  AlphabetRef alphabet;
  std::vector<std::optional<GroupElement>> images;

  /// "Affine(7): a=(1,1), t=(3,0)"
  std::string to_string() const;
  /// Order of the subgroup generated by the images.
  std::uint64_t quotient_order() const;
  bool operator==(const FiniteAssignment&) const;
};

GroupElement identity_element(const TargetGroup& target);
bool is_identity(const GroupElement& g);
std::string element_to_string(const GroupElement& g);

/// Product of the images along r (generators matched by name). Throws
/// UnassignedGenerator when r uses a generator without an image.
GroupElement evaluate_relator(const FiniteAssignment& a, const FreeWord& r);

/// All relators evaluate to the identity and the target word does not.
bool verify_witness(const FinitePresentation& pres, const FiniteAssignment& a, const FreeWord& target);

enum class Execution { Serial, Parallel };

/// First witness over m = 2..m_max in Affine(m); assignments ordered
/// lexicographically (first generator most significant, elements by (alpha, beta)).
/// Throws std::invalid_argument if the target word is trivial.
std::optional<FiniteAssignment> affine_witness(const FinitePresentation& pres, const FreeWord& target,
                                               int m_max, Execution exec = Execution::Parallel);

/// First witness over n = 2..n_max in Sym(n); the first generator ranges over
/// one representative per conjugacy class, the others over all permutations
/// in lexicographic order.
std::optional<FiniteAssignment> perm_witness(const FinitePresentation& pres, const FreeWord& target, int n_max,
                                             Execution exec = Execution::Parallel);

/// Search within one target group, split into independent branches indexed
/// by the choices of the leading generators. The witness returned for
/// [0, branch_count) is the minimum in the fixed total order whichever way the
/// branch range is partitioned.
class WitnessSearch {
 public:
  WitnessSearch(const FinitePresentation& pres, const FreeWord& target, TargetGroup group,
                bool restrict_first_to_classes);
  ~WitnessSearch();
  WitnessSearch(WitnessSearch&&) noexcept;
  WitnessSearch& operator=(WitnessSearch&&) noexcept;

  std::uint64_t branch_count() const;
  /// First witness among branches [lo, hi), scanned serially in order.
  std::optional<FiniteAssignment> search_range(std::uint64_t lo, std::uint64_t hi) const;
  /// All branches, OpenMP-parallel with a deterministic minimum merge.
  std::optional<FiniteAssignment> search_parallel() const;
  std::optional<FiniteAssignment> search(Execution exec) const;

  struct Impl;  // per-group engine, defined in the source file

 private:
  std::unique_ptr<Impl> impl_;
};

/// Conjugacy class representatives of Sym(n), one per cycle type, in
/// lexicographic order of their image tuples.
std::vector<Permutation> conjugacy_class_representatives(int n);

}  // namespace hnnkit
