#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hnnkit {

using Integer = mpz_class;
/// Always kept canonical: denominator > 0 and gcd(|num|, den) = 1.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Variable names indexed by position; the default ring uses x, y, z.
class VariableNames {
 public:
  VariableNames() : names_{"x", "y", "z"} {}
  explicit VariableNames(std::vector<std::string> names);

  const std::string& operator[](std::size_t i) const { return names_.at(i); }
  std::size_t size() const { return names_.size(); }
  int index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

/// Exponent vector with trailing zeros trimmed, so monomials over any prefix of
/// the variable list compare consistently.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps);
  static Monomial var(std::size_t index, std::uint32_t exp = 1);

  std::uint32_t exponent(std::size_t var) const { return var < exps_.size() ? exps_[var] : 0; }
  std::size_t width() const { return exps_.size(); }
  std::uint64_t degree() const;
  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient when `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  Monomial without(std::size_t var) const;

  bool operator==(const Monomial&) const = default;

 private:
  void trim();
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order, larger monomials first: total degree
/// descending, then lexicographic with variable 0 > variable 1 > ...
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Integer, GradedLexGreater>;

  Polynomial() = default;
  Polynomial(long c);  // NOLINT: implicit constants read naturally in formulas
  Polynomial(const Integer& c);  // NOLINT
  static Polynomial var(std::size_t index);
  static Polynomial x() { return var(0); }
  static Polynomial y() { return var(1); }
  static Polynomial z() { return var(2); }
  static Polynomial term(const Integer& c, Monomial m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term.
  Integer constant() const;
  std::size_t size() const { return terms_.size(); }
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  /// Leading term under graded lex; undefined on zero.
  const std::pair<const Monomial, Integer>& leading() const { return *terms_.begin(); }

  /// Coefficient of var^k as a polynomial free of var.
  Polynomial coefficient_in(std::size_t var, std::uint32_t k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

  /// Coefficientwise exact division by an integer, if every coefficient is divisible.
  std::optional<Polynomial> divide_exact(const Integer& d) const;

  bool operator==(const Polynomial& q) const { return terms_ == q.terms_; }
  /// Total order: compares term lists in canonical order.
  bool operator<(const Polynomial& q) const;

  std::string to_string(const VariableNames& names = VariableNames()) const;

 private:
  void add_term(const Monomial& m, const Integer& c);
  Terms terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial neg(const Polynomial& p);
Polynomial pow(const Polynomial& p, unsigned n);

/// Simultaneous substitution. `sigma[i]` replaces variable i; variables beyond
/// sigma's size, or mapped to nullopt, are left in place.
using Substitution = std::vector<std::optional<Polynomial>>;
Polynomial substitute(const Polynomial& p, const Substitution& sigma);
/// Convenience: replace a single variable.
Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value);

/// Exact evaluation; point[i] is the value of variable i.
Rational eval(const Polynomial& p, std::span<const Rational> point);

/// q with q*q = p and positive leading coefficient, when it exists over the integers.
std::optional<Polynomial> poly_sqrt(const Polynomial& p);

class SolverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Roots of p, viewed as a quadratic in `var` that is monic up to sign.
/// Returns the two roots (ascending in canonical order) or nullopt when the
/// discriminant has no integral square root or the halving is not exact.
/// Throws SolverError if the degree in `var` is not 2 or the leading
/// coefficient is not +-1.
std::optional<std::pair<Polynomial, Polynomial>> quadratic_roots_in_var(const Polynomial& p,
                                                                        std::size_t var);

/// Parses the printed form (also accepts parentheses, implicit products, unary minus).
Polynomial parse_polynomial(std::string_view text, const VariableNames& names = VariableNames());

}  // namespace hnnkit
