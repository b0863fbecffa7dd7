#include "hnnkit/trace.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace hnnkit {

// ---------------------------------------------------------------------------
// Mat2

Mat2::Mat2(Rational e11, Rational e12, Rational e21, Rational e22)
    : e_{std::move(e11), std::move(e12), std::move(e21), std::move(e22)} {
  for (auto& e : e_) e.canonicalize();
  if (det() != 1) throw std::invalid_argument("matrix determinant is not 1");
}

Mat2 Mat2::identity() { return {1, 0, 0, 1}; }

Mat2 Mat2::inverse() const { return Mat2(Unchecked{}, {e_[3], -e_[1], -e_[2], e_[0]}); }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return Mat2(Mat2::Unchecked{}, {a.e_[0] * b.e_[0] + a.e_[1] * b.e_[2], a.e_[0] * b.e_[1] + a.e_[1] * b.e_[3],
                                  a.e_[2] * b.e_[0] + a.e_[3] * b.e_[2], a.e_[2] * b.e_[1] + a.e_[3] * b.e_[3]});
}

Mat2 Mat2::pow(std::int64_t n) const {
  Mat2 base = n < 0 ? inverse() : *this;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Mat2 result = identity();
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

Mat2 random_sl2(std::mt19937_64& rng, int factors) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  Mat2 m = Mat2::identity();
  for (int i = 0; i < factors; ++i) {
    const Rational r = make_rational(num(rng), den(rng));
    m = m * (i % 2 == 0 ? Mat2::upper(r) : Mat2::lower(r));
  }
  return m;
}

Mat2 eval_word(const FreeWord& w, const Mat2& a, const Mat2& b) {
  if (!w.alphabet() || w.alphabet()->size() != 2) {
    throw AlphabetMismatch("eval_word needs a two-generator alphabet");
  }
  Mat2 out = Mat2::identity();
  for (const auto& s : w.syllables()) out = out * (s.gen == 0 ? a : b).pow(s.exp);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

std::vector<Syllable> cyclically_reduce(std::vector<Syllable> s) {
  s = reduce_syllables(s);
  // Fold the last syllable onto the first while they share a generator.
  while (s.size() >= 2 && s.front().gen == s.back().gen) {
    s.front().exp += s.back().exp;
    s.pop_back();
    if (s.front().exp == 0) {
      s.erase(s.begin());
    }
  }
  return s;
}

std::vector<Syllable> inverse_of(std::span<const Syllable> s) {
  std::vector<Syllable> out(s.rbegin(), s.rend());
  for (auto& x : out) x.exp = -x.exp;
  return out;
}

void consider_rotations(const std::vector<Syllable>& s, std::vector<Syllable>& best, bool& have) {
  const std::size_t n = s.size();
  std::vector<Syllable> rot(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) rot[i] = s[(r + i) % n];
    if (!have || rot < best) {
      best = rot;
      have = true;
    }
  }
}

std::vector<Syllable> concat(std::span<const Syllable> a, std::span<const Syllable> b) {
  std::vector<Syllable> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

std::vector<Syllable> trace_key(std::span<const Syllable> word) {
  std::vector<Syllable> c = cyclically_reduce(std::vector<Syllable>(word.begin(), word.end()));
  if (c.size() <= 1) {
    if (!c.empty() && c.front().exp < 0) c.front().exp = -c.front().exp;
    return c;
  }
  std::vector<Syllable> best;
  bool have = false;
  consider_rotations(c, best, have);
  consider_rotations(inverse_of(c), best, have);
  return best;
}

// ---------------------------------------------------------------------------
// TraceContext

Polynomial TraceContext::trace(const FreeWord& w) {
  if (!w.alphabet() || w.alphabet()->size() != 2) {
    throw AlphabetMismatch("trace polynomials need a two-generator alphabet");
  }
  return trace(std::span<const Syllable>(w.syllables()));
}

Polynomial TraceContext::trace(std::span<const Syllable> word) { return trace_canonical(trace_key(word)); }

std::size_t TraceContext::memo_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void TraceContext::clear() {
  std::unique_lock lock(mutex_);
  memo_.clear();
}

Polynomial TraceContext::trace_canonical(const Key& key) {
  if (memoize_) {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Polynomial value = compute(key);
  if (memoize_) {
    std::unique_lock lock(mutex_);
    memo_.emplace(key, value);
  }
  return value;
}

// `key` is cyclically reduced, canonical under rotation and inversion.
Polynomial TraceContext::compute(const Key& key) {
  const Polynomial x = Polynomial::x();
  const Polynomial y = Polynomial::y();
  const Polynomial z = Polynomial::z();
  if (key.empty()) return Polynomial(2);

  // Cayley-Hamilton step on a syllable g^e with |e| >= 2, rotated to the front:
  // tr(g^e R) = tr(g) tr(g^(e-1) R) - tr(g^(e-2) R)  (with g^-1 for e < 0).
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (abs64(key[i].exp) < 2) continue;
    std::vector<Syllable> rotated(key.begin() + static_cast<std::ptrdiff_t>(i), key.end());
    rotated.insert(rotated.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(i));
    const Syllable head = rotated.front();
    const std::int64_t step = head.exp > 0 ? 1 : -1;
    std::vector<Syllable> once = rotated;
    once.front().exp -= step;
    std::vector<Syllable> twice = rotated;
    twice.front().exp -= 2 * step;
    const Polynomial tg = head.gen == 0 ? x : y;
    return tg * trace(once) - trace(twice);
  }

  // All exponents are +-1 from here on; the word alternates a and b.
  if (key.size() == 1) return key.front().gen == 0 ? x : y;
  if (key.size() == 2) {
    // a^s b^r: tr(ab) = tr(a^-1 b^-1) = z, tr(a b^-1) = tr(a^-1 b) = xy - z.
    return key[0].exp == key[1].exp ? z : x * y - z;
  }

  // tr(uv) = tr(u) tr(v) - tr(u v^-1). An even split length makes both
  // junctions of u v^-1 join equal generators, so that word either shortens
  // or gains a square and the Cayley-Hamilton step shortens it next.
  const std::size_t n = key.size();
  std::size_t m = n / 2;
  if (m % 2 != 0) m -= 1;
  const std::span<const Syllable> all(key);
  const auto u = all.subspan(0, m);
  const auto v = all.subspan(m);
  const Polynomial tu = trace(u);
  const Polynomial tv = trace(v);
  const Polynomial tuv_inv = trace(concat(u, inverse_of(v)));
  return tu * tv - tuv_inv;
}

Polynomial trace_poly(const FreeWord& w) {
  static TraceContext context;
  return context.trace(w);
}

Polynomial kappa(const Polynomial& px, const Polynomial& py, const Polynomial& pz) {
  return px * px + py * py + pz * pz - px * py * pz - Polynomial(2);
}

bool is_solvable_triple(const Polynomial& px, const Polynomial& py, const Polynomial& pz) {
  return (kappa(px, py, pz) - Polynomial(2)).is_zero();
}

}  // namespace hnnkit
