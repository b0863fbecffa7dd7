#include "hnnkit/variety.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace hnnkit {

namespace {

constexpr std::size_t kVars = 3;
// Preference order for elimination and quadratic splitting: z, y, x.
constexpr std::array<std::size_t, 3> kVarOrder{2, 1, 0};

std::string compact(const Polynomial& p, const VariableNames& names) {
  std::string s = p.to_string(names);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// If e = c*v + rest with c = +-1 and rest free of v, returns v's value -c*rest.
std::optional<Polynomial> solve_linear(const Polynomial& e, std::size_t v) {
  if (e.degree_in(v) != 1) return std::nullopt;
  const Polynomial c = e.coefficient_in(v, 1);
  if (!(c == Polynomial(1)) && !(c == Polynomial(-1))) return std::nullopt;
  const Polynomial rest = e.coefficient_in(v, 0);
  return c == Polynomial(1) ? -rest : rest;
}

struct LinearStep {
  std::size_t equation;
  std::size_t var;
  Polynomial value;
};

std::optional<LinearStep> find_linear(const std::vector<Polynomial>& eqs) {
  std::optional<LinearStep> best;
  std::tuple<std::uint64_t, std::size_t, std::size_t> best_rank{};
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t r = 0; r < kVarOrder.size(); ++r) {
      const std::size_t v = kVarOrder[r];
      auto value = solve_linear(eqs[i], v);
      if (!value) continue;
      const auto rank = std::make_tuple(value->total_degree(), r, i);
      if (!best || rank < best_rank) {
        best = LinearStep{i, v, std::move(*value)};
        best_rank = rank;
      }
    }
  }
  return best;
}

// Remainder of a on division by b, where b is monic up to sign in v.
Polynomial remainder_monic(Polynomial a, const Polynomial& b, std::size_t v) {
  const std::uint32_t d = b.degree_in(v);
  const Polynomial lc = b.coefficient_in(v, d);
  while (a.degree_in(v) >= d) {
    const std::uint32_t da = a.degree_in(v);
    const Polynomial shift = Polynomial::term(1, Monomial::var(v, da - d));
    a -= a.coefficient_in(v, da) * lc * shift * b;
  }
  return a;
}

bool monic_in(const Polynomial& p, std::size_t v) {
  const std::uint32_t d = p.degree_in(v);
  if (d == 0) return false;
  const Polynomial lc = p.coefficient_in(v, d);
  return lc == Polynomial(1) || lc == Polynomial(-1);
}

// Replaces one equation by its remainder modulo another when the remainder
// becomes zero or exposes a linear elimination. The ideal is unchanged.
bool try_reduction(std::vector<Polynomial>& eqs) {
  for (std::size_t j = 0; j < eqs.size(); ++j) {
    for (std::size_t v : kVarOrder) {
      if (!monic_in(eqs[j], v)) continue;
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (i == j || eqs[i].degree_in(v) < eqs[j].degree_in(v)) continue;
        Polynomial r = remainder_monic(eqs[i], eqs[j], v);
        if (r == eqs[i]) continue;
        const bool useful = r.is_zero() || std::any_of(kVarOrder.begin(), kVarOrder.end(), [&](std::size_t w) {
                              return solve_linear(r, w).has_value();
                            });
        if (useful) {
          eqs[i] = std::move(r);
          return true;
        }
      }
    }
  }
  return false;
}

void drop_zeros(std::vector<Polynomial>& eqs) {
  eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const Polynomial& p) { return p.is_zero(); }), eqs.end());
}

}  // namespace

TraceSystem build_system(const Endomorphism& phi) {
  if (phi.domain()->size() != 2 || !same_alphabet(phi.domain(), phi.codomain())) {
    throw AlphabetMismatch("trace systems need an endomorphism of a rank-2 free group");
  }
  const FreeWord& pa = phi.image(0);
  const FreeWord& pb = phi.image(1);
  return TraceSystem{{trace_poly(pa) - Polynomial::x(), trace_poly(pb) - Polynomial::y(),
                      trace_poly(pa * pb) - Polynomial::z()}};
}

std::string Component::to_string(const VariableNames& names) const {
  std::string out;
  for (std::size_t v = 0; v < sigma.size(); ++v) {
    if (!sigma[v]) continue;
    if (!out.empty()) out += ", ";
    out += names[v] + "=" + compact(*sigma[v], names);
  }
  return out.empty() ? "(no constraints)" : out;
}

Substitution Component::total() const {
  Substitution s = sigma;
  s.resize(kVars);
  for (std::size_t v = 0; v < kVars; ++v) {
    if (!s[v]) s[v] = Polynomial::var(v);
  }
  return s;
}

bool check_component(const TraceSystem& system, const Substitution& sigma) {
  return std::all_of(system.equations.begin(), system.equations.end(),
                     [&](const Polynomial& e) { return substitute(e, sigma).is_zero(); });
}

SolveResult solve_triangular(const TraceSystem& system) {
  std::vector<Polynomial> eqs(system.equations.begin(), system.equations.end());
  std::vector<std::pair<std::size_t, Polynomial>> steps;

  while (true) {
    drop_zeros(eqs);
    if (auto step = find_linear(eqs)) {
      eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(step->equation));
      for (auto& e : eqs) e = substitute(e, step->var, step->value);
      for (auto& [var, value] : steps) value = substitute(value, step->var, step->value);
      steps.emplace_back(step->var, std::move(step->value));
      continue;
    }
    if (eqs.size() >= 2 && try_reduction(eqs)) continue;
    break;
  }

  SolveResult result;
  for (const auto& [var, value] : steps) result.eliminated.push_back(var);

  auto make_component = [&](std::optional<std::pair<std::size_t, Polynomial>> root) {
    Component c;
    if (root) c.sigma[root->first] = root->second;
    for (const auto& [var, value] : steps) {
      c.sigma[var] = root ? substitute(value, root->first, root->second) : value;
    }
    for (std::size_t v = 0; v < kVars; ++v) {
      if (!c.sigma[v]) c.free_variables.push_back(v);
    }
    if (!check_component(system, c.total())) {
      throw std::logic_error("triangular solver produced a component that does not satisfy the system");
    }
    return c;
  };

  if (eqs.empty() && !steps.empty()) {
    result.solved = true;
    result.components.push_back(make_component(std::nullopt));
  } else if (eqs.size() == 1) {
    for (std::size_t v : kVarOrder) {
      if (eqs[0].degree_in(v) != 2 || !monic_in(eqs[0], v)) continue;
      auto roots = quadratic_roots_in_var(eqs[0], v);
      if (!roots) break;
      result.solved = true;
      result.eliminated.push_back(v);
      const Polynomial a = eqs[0].coefficient_in(v, 2);
      const Polynomial b = eqs[0].coefficient_in(v, 1);
      const Polynomial c = eqs[0].coefficient_in(v, 0);
      result.quadratic = eqs[0];
      result.discriminant = b * b - Polynomial(4) * a * c;
      result.components.push_back(make_component(std::make_pair(v, roots->first)));
      if (!(roots->second == roots->first)) {
        result.components.push_back(make_component(std::make_pair(v, roots->second)));
      }
      break;
    }
  }

  if (result.solved) {
    result.dimension = result.components.front().dimension();
  } else {
    result.residual = eqs;
    const std::size_t used = steps.size() + eqs.size();
    result.dimension = used >= kVars ? 0 : kVars - used;
  }
  return result;
}

bool solvable_pair_probe(const Substitution& sigma, const FreeWord& u, const FreeWord& v) {
  const Polynomial pu = substitute(trace_poly(u), sigma);
  const Polynomial pv = substitute(trace_poly(v), sigma);
  const Polynomial puv = substitute(trace_poly(u * v), sigma);
  return is_solvable_triple(pu, pv, puv);
}

}  // namespace hnnkit
