#include "hnnkit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "hnnkit/parse.hpp"

namespace hnnkit {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

VariableNames::VariableNames(std::vector<std::string> names) : names_(std::move(names)) {}

int VariableNames::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

Monomial Monomial::var(std::size_t index, std::uint32_t exp) {
  std::vector<std::uint32_t> e(index + 1, 0);
  e[index] = exp;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint32_t> e(std::max(exps_.size(), other.exps_.size()), 0);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponent(i) + other.exponent(i);
  return Monomial(std::move(e));
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  if (divisor.exps_.size() > exps_.size()) return std::nullopt;
  std::vector<std::uint32_t> e = exps_;
  for (std::size_t i = 0; i < divisor.exps_.size(); ++i) {
    if (e[i] < divisor.exps_[i]) return std::nullopt;
    e[i] -= divisor.exps_[i];
  }
  return Monomial(std::move(e));
}

Monomial Monomial::without(std::size_t var) const {
  std::vector<std::uint32_t> e = exps_;
  if (var < e.size()) e[var] = 0;
  return Monomial(std::move(e));
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  const std::size_t n = std::max(a.width(), b.width());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.exponent(i) != b.exponent(i)) return a.exponent(i) > b.exponent(i);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.emplace(Monomial(), Integer(c));
}

Polynomial::Polynomial(const Integer& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial Polynomial::var(std::size_t index) { return term(1, Monomial::var(index)); }

Polynomial Polynomial::term(const Integer& c, Monomial m) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Integer Polynomial::constant() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Integer(0) : it->second;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

Polynomial Polynomial::coefficient_in(std::size_t var, std::uint32_t k) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(var) == k) out.add_term(m.without(var), c);
  }
  return out;
}

void Polynomial::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) out.add_term(mp * mq, cp * cq);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

std::optional<Polynomial> Polynomial::divide_exact(const Integer& d) const {
  if (d == 0) return std::nullopt;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    out.terms_.emplace(m, qc);
  }
  return out;
}

bool Polynomial::operator<(const Polynomial& q) const {
  auto a = terms_.begin();
  auto b = q.terms_.begin();
  const GradedLexGreater greater;
  for (; a != terms_.end() && b != q.terms_.end(); ++a, ++b) {
    if (!(a->first == b->first)) return greater(b->first, a->first);
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != q.terms_.end();
}

std::string Polynomial::to_string(const VariableNames& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Integer mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < m.width(); ++i) {
      const auto e = m.exponent(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e != 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + '*' + mono;
    }
  }
  return out;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
Polynomial neg(const Polynomial& p) { return -p; }

Polynomial pow(const Polynomial& p, unsigned n) {
  Polynomial result(1);
  Polynomial base = p;
  while (n) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n) base *= base;
  }
  return result;
}

Polynomial substitute(const Polynomial& p, const Substitution& sigma) {
  // powers[v][e] caches sigma(v)^e
  std::vector<std::vector<Polynomial>> powers(sigma.size());
  auto power_of = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *sigma[v]);
    return cache[e];
  };
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> kept(m.width(), 0);
    Polynomial factor(c);
    for (std::size_t v = 0; v < m.width(); ++v) {
      const auto e = m.exponent(v);
      if (e == 0) continue;
      if (v < sigma.size() && sigma[v]) {
        factor *= power_of(v, e);
      } else {
        kept[v] = e;
      }
    }
    out += factor * Polynomial::term(1, Monomial(std::move(kept)));
  }
  return out;
}

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value) {
  Substitution sigma(var + 1);
  sigma[var] = value;
  return substitute(p, sigma);
}

Rational eval(const Polynomial& p, std::span<const Rational> point) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t v = 0; v < m.width(); ++v) {
      const auto e = m.exponent(v);
      if (e == 0) continue;
      if (v >= point.size()) throw std::invalid_argument("evaluation point misses a variable");
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[v].get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), point[v].get_den_mpz_t(), e);
      t *= pw;
    }
    total += t;
  }
  total.canonicalize();
  return total;
}

std::optional<Polynomial> poly_sqrt(const Polynomial& p) {
  if (p.is_zero()) return Polynomial();
  const auto& [lead_mono, lead_coeff] = p.leading();
  if (lead_coeff < 0 || !mpz_perfect_square_p(lead_coeff.get_mpz_t())) return std::nullopt;
  std::vector<std::uint32_t> half(lead_mono.width());
  for (std::size_t i = 0; i < half.size(); ++i) {
    const auto e = lead_mono.exponent(i);
    if (e % 2 != 0) return std::nullopt;
    half[i] = e / 2;
  }
  const Monomial root_mono(std::move(half));
  const Integer root_coeff = sqrt(lead_coeff);
  const Integer twice = 2 * root_coeff;

  Polynomial q = Polynomial::term(root_coeff, root_mono);
  Polynomial rest = p - q * q;
  while (!rest.is_zero()) {
    const auto& [m, c] = rest.leading();
    auto mono = m.divide(root_mono);
    if (!mono || !mpz_divisible_p(c.get_mpz_t(), twice.get_mpz_t())) return std::nullopt;
    Integer coeff;
    mpz_divexact(coeff.get_mpz_t(), c.get_mpz_t(), twice.get_mpz_t());
    const Polynomial t = Polynomial::term(coeff, *mono);
    rest -= Polynomial(2) * q * t + t * t;
    q += t;
  }
  return q;
}

std::optional<std::pair<Polynomial, Polynomial>> quadratic_roots_in_var(const Polynomial& p,
                                                                        std::size_t var) {
  if (p.degree_in(var) != 2) throw SolverError("polynomial is not quadratic in the chosen variable");
  Polynomial lead = p.coefficient_in(var, 2);
  Polynomial monic = p;
  if (lead == Polynomial(-1)) {
    monic = -p;
  } else if (!(lead == Polynomial(1))) {
    throw SolverError("quadratic is not monic up to sign");
  }
  const Polynomial b = monic.coefficient_in(var, 1);
  const Polynomial c = monic.coefficient_in(var, 0);
  const Polynomial disc = b * b - Polynomial(4) * c;
  const auto s = poly_sqrt(disc);
  if (!s) return std::nullopt;
  auto r1 = (-b + *s).divide_exact(2);
  auto r2 = (-b - *s).divide_exact(2);
  if (!r1 || !r2) return std::nullopt;
  if (*r2 < *r1) std::swap(r1, r2);
  return std::make_pair(std::move(*r1), std::move(*r2));
}

// ---------------------------------------------------------------------------
// Parser:  expr := ["-"] term { ("+"|"-") term }
//          term := factor { ["*"] factor }
//          factor := atom [ "^" nat ]
//          atom := integer | variable | "(" expr ")"

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VariableNames& names) : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  Polynomial expr() {
    skip_ws();
    Polynomial acc;
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a non-negative integer exponent", start);
    const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (e > 10000) throw ParseError("exponent too large", start);
    return pow(base, static_cast<unsigned>(e));
  }

  Polynomial atom() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    // Longest variable name matching here.
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.size() > best_len && text_.substr(pos_, n.size()) == n) {
        best = static_cast<int>(i);
        best_len = n.size();
      }
    }
    if (best < 0) throw ParseError("expected a number, variable or '('", pos_);
    pos_ += best_len;
    return Polynomial::var(static_cast<std::size_t>(best));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  const VariableNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VariableNames& names) {
  return PolyParser(text, names).parse();
}

}  // namespace hnnkit
