#include "hnnkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

namespace hnnkit {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

// Appends one syllable to an already-reduced stack.
void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp = checked_add(out.back().exp, s.exp);
    if (out.back().exp == 0) out.pop_back();
  } else {
    out.push_back(s);
  }
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw std::invalid_argument("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate generator name '" + n + "'");
  }
}

AlphabetRef Alphabet::make(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

int Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<Syllable> reduce_syllables(std::span<const Syllable> raw) {
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const auto& s : raw) push_reduced(out, s);
  return out;
}

std::int64_t letter_length(std::span<const Syllable> s) {
  std::int64_t n = 0;
  for (const auto& x : s) n = checked_add(n, x.exp < 0 ? -x.exp : x.exp);
  return n;
}

FreeWord::FreeWord(AlphabetRef alphabet) : alphabet_(std::move(alphabet)) {}

FreeWord::FreeWord(AlphabetRef alphabet, std::span<const Syllable> raw)
    : alphabet_(std::move(alphabet)), syllables_(reduce_syllables(raw)) {
  const auto k = static_cast<int>(alphabet_ ? alphabet_->size() : 0);
  for (const auto& s : syllables_) {
    if (s.gen < 0 || s.gen >= k) throw AlphabetMismatch("generator index out of range");
  }
}

FreeWord::FreeWord(AlphabetRef alphabet, std::initializer_list<Syllable> raw)
    : FreeWord(std::move(alphabet), std::span<const Syllable>(raw.begin(), raw.size())) {}

FreeWord FreeWord::generator(AlphabetRef alphabet, int gen, std::int64_t exp) {
  const Syllable s{gen, exp};
  return FreeWord(std::move(alphabet), std::span<const Syllable>(&s, 1));
}

std::int64_t FreeWord::exponent_sum(int gen) const {
  std::int64_t total = 0;
  for (const auto& s : syllables_) {
    if (s.gen == gen) total = checked_add(total, s.exp);
  }
  return total;
}

std::string FreeWord::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += alphabet_->name(static_cast<std::size_t>(s.gen));
    if (s.exp != 1) out += '^' + std::to_string(s.exp);
  }
  return out;
}

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->size() == 0) && (!b || b->size() == 0);
  return *a == *b;
}

bool FreeWord::operator==(const FreeWord& other) const {
  return syllables_ == other.syllables_ && same_alphabet(alphabet_, other.alphabet_);
}

namespace {

void require_same(const FreeWord& u, const FreeWord& v) {
  if (!same_alphabet(u.alphabet(), v.alphabet())) {
    throw AlphabetMismatch("words are over different alphabets");
  }
}

}  // namespace

FreeWord multiply(const FreeWord& u, const FreeWord& v) {
  require_same(u, v);
  std::vector<Syllable> out = u.syllables();
  for (const auto& s : v.syllables()) push_reduced(out, s);
  return FreeWord(u.alphabet() ? u.alphabet() : v.alphabet(), out);
}

FreeWord invert(const FreeWord& u) {
  std::vector<Syllable> out(u.syllables().rbegin(), u.syllables().rend());
  for (auto& s : out) s.exp = -s.exp;
  return FreeWord(u.alphabet(), out);
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) {
  return multiply(multiply(u, v), multiply(invert(u), invert(v)));
}

CyclicDecomposition cyclic_decomposition(const FreeWord& u) {
  const auto& s = u.syllables();
  std::size_t lo = 0;
  std::size_t hi = s.size();
  // Peel matching inverse syllables from both ends.
  while (hi - lo >= 2 && s[lo].gen == s[hi - 1].gen && s[lo].exp == -s[hi - 1].exp) {
    ++lo;
    --hi;
  }
  std::vector<Syllable> conj(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(lo));
  std::vector<Syllable> core(s.begin() + static_cast<std::ptrdiff_t>(lo),
                             s.begin() + static_cast<std::ptrdiff_t>(hi));
  if (core.size() >= 2 && core.front().gen == core.back().gen) {
    // x^e M x^f = x^-f (x^(e+f) M) x^f, and e != -f here.
    const Syllable last = core.back();
    core.pop_back();
    conj.push_back({last.gen, -last.exp});
    core.front().exp = checked_add(core.front().exp, last.exp);
  }
  return {FreeWord(u.alphabet(), conj), FreeWord(u.alphabet(), core)};
}

FreeWord power(const FreeWord& u, std::int64_t n) {
  if (n == 0 || u.is_identity()) return FreeWord(u.alphabet());
  if (n < 0) return power(invert(u), -n);
  auto [conj, core] = cyclic_decomposition(u);
  const auto& cs = core.syllables();
  std::vector<Syllable> body;
  if (cs.size() == 1) {
    body.push_back({cs.front().gen, checked_mul(cs.front().exp, n)});
  } else {
    // A cyclically reduced core with distinct end generators concatenates without cancellation.
    body.reserve(cs.size() * static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) body.insert(body.end(), cs.begin(), cs.end());
  }
  return multiply(multiply(conj, FreeWord(u.alphabet(), body)), invert(conj));
}

Endomorphism::Endomorphism(AlphabetRef domain, std::vector<FreeWord> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (!domain_ || images_.size() != domain_->size()) {
    throw std::invalid_argument("endomorphism needs one image per generator");
  }
  for (auto& w : images_) {
    if (!w.alphabet()) w = FreeWord(domain_, w.syllables());
    if (!same_alphabet(w.alphabet(), images_.front().alphabet())) {
      throw AlphabetMismatch("images are over different alphabets");
    }
  }
}

Endomorphism Endomorphism::identity(AlphabetRef alphabet) {
  std::vector<FreeWord> images;
  for (std::size_t i = 0; i < alphabet->size(); ++i) {
    images.push_back(FreeWord::generator(alphabet, static_cast<int>(i)));
  }
  return Endomorphism(alphabet, std::move(images));
}

std::string Endomorphism::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += " ; ";
    out += domain_->name(i) + " -> " + images_[i].to_string();
  }
  return out;
}

FreeWord apply_endo(const Endomorphism& phi, const FreeWord& w) {
  if (!same_alphabet(w.alphabet(), phi.domain())) {
    throw AlphabetMismatch("word is not over the endomorphism's domain");
  }
  FreeWord out(phi.codomain());
  for (const auto& s : w.syllables()) out = multiply(out, power(phi.image(s.gen), s.exp));
  return out;
}

FreeWord apply_endo_power(const Endomorphism& phi, const FreeWord& w, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("negative endomorphism power");
  FreeWord out = w;
  for (std::int64_t i = 0; i < n; ++i) out = apply_endo(phi, out);
  return out;
}

Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner) {
  std::vector<FreeWord> images;
  images.reserve(inner.images().size());
  for (const auto& w : inner.images()) images.push_back(apply_endo(outer, w));
  return Endomorphism(inner.domain(), std::move(images));
}

}  // namespace hnnkit
