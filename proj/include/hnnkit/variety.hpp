#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hnnkit/polynomial.hpp"
#include "hnnkit/trace.hpp"
#include "hnnkit/words.hpp"

namespace hnnkit {

/// Defining equations of the trace variety of an endomorphism of F2, each as
/// left-hand side minus right-hand side:
///   E1 = tr(phi(a)) - x,  E2 = tr(phi(b)) - y,  E3 = tr(phi(a) phi(b)) - z.
struct TraceSystem {
  std::array<Polynomial, 3> equations;

  const Polynomial& operator[](std::size_t i) const { return equations.at(i); }
};

TraceSystem build_system(const Endomorphism& phi);

/// Substitution on {x, y, z}; unset entries are free variables.
struct Component {
  Substitution sigma = Substitution(3);
  std::vector<std::size_t> free_variables;

  std::size_t dimension() const { return free_variables.size(); }
  /// "y=x^2-1, z=x^3-2*x"; only the substituted variables are listed.
  std::string to_string(const VariableNames& names = VariableNames()) const;
  /// Complete substitution with free variables mapped to themselves.
  Substitution total() const;
};

bool check_component(const TraceSystem& system, const Substitution& sigma);

struct SolveResult {
  bool solved = false;
  std::vector<Component> components;
  /// Equations left when the triangular strategy stops.
  std::vector<Polynomial> residual;
  /// Variables fixed by linear eliminations, in the order they were eliminated.
  std::vector<std::size_t> eliminated;
  /// The quadratic split in the last step and its discriminant in that variable.
  std::optional<Polynomial> quadratic;
  std::optional<Polynomial> discriminant;
  /// Free variables remaining: 3 - eliminations - residual constraints (floored at 0).
  std::size_t dimension = 3;
};

/// Triangular solving in the style of a hand elimination: drop zero
/// equations, eliminate variables from equations linear and monic up to sign
/// in them (reducing one equation by another monic one when that exposes such
/// a variable), then split a final monic quadratic into one component per
/// root. Anything else is returned as an unsolved residual.
SolveResult solve_triangular(const TraceSystem& system);

/// Whether trace(u), trace(v), trace(uv), pushed through sigma, satisfy kappa = 2.
bool solvable_pair_probe(const Substitution& sigma, const FreeWord& u, const FreeWord& v);

}  // namespace hnnkit
