#include "hnnkit/quotients.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <set>

#include <omp.h>

namespace hnnkit {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------
// Concrete target groups used by the search kernels.

class AffineGroup {
 public:
  using Element = AffineMap;

  explicit AffineGroup(int m) : m_(m), inverse_(static_cast<std::size_t>(m), 0) {
    for (int a = 1; a < m; ++a) {
      if (std::gcd(a, m) == 1) units_.push_back(a);
    }
    if (m == 1) units_.push_back(0);
    for (int a : units_) {
      for (int b : units_) {
        if (mod(static_cast<std::int64_t>(a) * b, m) == 1 % m) inverse_[static_cast<std::size_t>(a)] = b;
      }
    }
  }

  std::uint64_t size() const { return units_.size() * static_cast<std::uint64_t>(m_); }
  Element element(std::uint64_t i) const {
    return {units_[static_cast<std::size_t>(i / static_cast<std::uint64_t>(m_))],
            static_cast<std::int64_t>(i % static_cast<std::uint64_t>(m_))};
  }
  Element identity() const { return {1 % m_, 0}; }
  bool is_identity(const Element& g) const { return g == identity(); }
  Element mul(const Element& f, const Element& g) const {
    return {mod(f.alpha * g.alpha, m_), mod(f.alpha * g.beta + f.beta, m_)};
  }
  Element inv(const Element& f) const {
    const std::int64_t ai = inverse_[static_cast<std::size_t>(f.alpha)];
    return {ai, mod(-ai * f.beta, m_)};
  }
  GroupElement wrap(const Element& g) const { return g; }

 private:
  int m_;
  std::vector<int> units_;
  std::vector<std::int64_t> inverse_;
};

class SymmetricGroup {
 public:
  using Element = std::array<std::uint8_t, kMaxPermDegree>;

  explicit SymmetricGroup(int n) : n_(n) {
    Element p{};
    for (int i = 0; i < kMaxPermDegree; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    identity_ = p;
    do {
      elements_.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n_));
  }

  std::uint64_t size() const { return elements_.size(); }
  Element element(std::uint64_t i) const { return elements_[static_cast<std::size_t>(i)]; }
  Element identity() const { return identity_; }
  bool is_identity(const Element& g) const { return g == identity_; }
  Element mul(const Element& f, const Element& g) const {
    Element r = identity_;
    for (int i = 0; i < n_; ++i) r[static_cast<std::size_t>(i)] = f[g[static_cast<std::size_t>(i)]];
    return r;
  }
  Element inv(const Element& f) const {
    Element r = identity_;
    for (int i = 0; i < n_; ++i) r[f[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    return r;
  }
  Element from(const Permutation& p) const {
    Element r = identity_;
    for (int i = 0; i < n_; ++i) r[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(p.images[static_cast<std::size_t>(i)]);
    return r;
  }
  GroupElement wrap(const Element& g) const {
    Permutation p;
    for (int i = 0; i < n_; ++i) p.images.push_back(g[static_cast<std::size_t>(i)]);
    return p;
  }

 private:
  int n_;
  Element identity_{};
  std::vector<Element> elements_;
};

template <class G>
typename G::Element group_pow(const G& group, typename G::Element base, std::int64_t e) {
  if (e < 0) {
    base = group.inv(base);
    e = -e;
  }
  auto result = group.identity();
  while (e) {
    if (e & 1) result = group.mul(result, base);
    e >>= 1;
    if (e) base = group.mul(base, base);
  }
  return result;
}

std::vector<std::vector<int>> partitions(int n, int max_part) {
  if (n == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int part = std::min(n, max_part); part >= 1; --part) {
    for (auto rest : partitions(n - part, part)) {
      rest.insert(rest.begin(), part);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

using CompiledWord = std::vector<Syllable>;

CompiledWord compile(const FreeWord& w, const Alphabet& alphabet) {
  CompiledWord out;
  for (const auto& s : w.syllables()) {
    const int g = alphabet.index_of(w.alphabet()->name(static_cast<std::size_t>(s.gen)));
    if (g < 0) {
      throw std::invalid_argument("generator '" + w.alphabet()->name(static_cast<std::size_t>(s.gen)) +
                                  "' is not in the presentation");
    }
    out.push_back({g, s.exp});
  }
  return out;
}

int max_generator(const CompiledWord& w) {
  int m = -1;
  for (const auto& s : w) m = std::max(m, s.gen);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Search engine: depth-first over generator choices in lexicographic order.

struct WitnessSearch::Impl {
  virtual ~Impl() = default;
  virtual std::uint64_t branch_count() const = 0;
  virtual std::optional<FiniteAssignment> search_branch(std::uint64_t b) const = 0;
};

namespace {

template <class G>
class Engine final : public WitnessSearch::Impl {
 public:
  using Element = typename G::Element;

  Engine(const FinitePresentation& pres, const FreeWord& target, TargetGroup tg, G group,
         std::vector<Element> first_choices)
      : pres_(pres), target_group_(tg), group_(std::move(group)) {
    const auto k = static_cast<int>(pres.alphabet->size());
    by_level_.resize(static_cast<std::size_t>(k));
    for (const auto& r : pres.relators) {
      CompiledWord c = compile(r, *pres.alphabet);
      const int level = max_generator(c);
      if (level >= 0) by_level_[static_cast<std::size_t>(level)].push_back(std::move(c));
    }
    target_ = compile(target, *pres.alphabet);
    target_level_ = max_generator(target_);

    choices_.resize(static_cast<std::size_t>(k));
    for (int level = 0; level < k; ++level) {
      if (level == 0 && !first_choices.empty()) {
        choices_[0] = std::move(first_choices);
      } else {
        auto& list = choices_[static_cast<std::size_t>(level)];
        for (std::uint64_t i = 0; i < group_.size(); ++i) list.push_back(group_.element(i));
      }
    }
    leading_ = std::min<std::size_t>(2, choices_.size());
    branches_ = 1;
    for (std::size_t l = 0; l < leading_; ++l) branches_ *= choices_[l].size();
  }

  std::uint64_t branch_count() const override { return choices_.empty() ? 0 : branches_; }

  std::optional<FiniteAssignment> search_branch(std::uint64_t b) const override {
    std::vector<Element> assigned(choices_.size(), group_.identity());
    // Decode leading digits, most significant first.
    std::vector<std::uint64_t> digits(leading_);
    for (std::size_t l = leading_; l-- > 0;) {
      digits[l] = b % choices_[l].size();
      b /= choices_[l].size();
    }
    for (std::size_t l = 0; l < leading_; ++l) {
      assigned[l] = choices_[l][digits[l]];
      if (!consistent(assigned, static_cast<int>(l))) return std::nullopt;
    }
    if (!dfs(assigned, leading_)) return std::nullopt;
    FiniteAssignment out;
    out.target = target_group_;
    out.alphabet = pres_.alphabet;
    for (const auto& e : assigned) out.images.emplace_back(group_.wrap(e));
    return out;
  }

 private:
  Element eval(const CompiledWord& w, const std::vector<Element>& assigned) const {
    Element acc = group_.identity();
    for (const auto& s : w) acc = group_.mul(acc, group_pow(group_, assigned[static_cast<std::size_t>(s.gen)], s.exp));
    return acc;
  }

  // Relators fully determined at `level` hold, and the target survives once determined.
  bool consistent(const std::vector<Element>& assigned, int level) const {
    for (const auto& r : by_level_[static_cast<std::size_t>(level)]) {
      if (!group_.is_identity(eval(r, assigned))) return false;
    }
    if (target_level_ == level && group_.is_identity(eval(target_, assigned))) return false;
    return true;
  }

  bool dfs(std::vector<Element>& assigned, std::size_t level) const {
    if (level == choices_.size()) return true;
    for (const auto& e : choices_[level]) {
      assigned[level] = e;
      if (consistent(assigned, static_cast<int>(level)) && dfs(assigned, level + 1)) return true;
    }
    return false;
  }

  FinitePresentation pres_;
  TargetGroup target_group_;
  G group_;
  std::vector<std::vector<CompiledWord>> by_level_;
  CompiledWord target_;
  int target_level_ = -1;
  std::vector<std::vector<Element>> choices_;
  std::size_t leading_ = 0;
  std::uint64_t branches_ = 0;
};

}  // namespace

WitnessSearch::WitnessSearch(const FinitePresentation& pres, const FreeWord& target, TargetGroup group,
                             bool restrict_first_to_classes) {
  if (target.is_identity()) throw std::invalid_argument("trivial target: the word must be nontrivial");
  if (group.family == TargetFamily::Affine) {
    if (group.degree < 1) throw std::invalid_argument("Affine(m) needs m >= 1");
    impl_ = std::make_unique<Engine<AffineGroup>>(pres, target, group, AffineGroup(group.degree),
                                                  std::vector<AffineMap>{});
  } else {
    if (group.degree < 1 || group.degree > kMaxPermDegree) {
      throw std::invalid_argument("Sym(n) search supports 1 <= n <= " + std::to_string(kMaxPermDegree));
    }
    SymmetricGroup sym(group.degree);
    std::vector<SymmetricGroup::Element> first;
    if (restrict_first_to_classes) {
      for (const auto& p : conjugacy_class_representatives(group.degree)) first.push_back(sym.from(p));
    }
    impl_ = std::make_unique<Engine<SymmetricGroup>>(pres, target, group, std::move(sym), std::move(first));
  }
}

WitnessSearch::~WitnessSearch() = default;
WitnessSearch::WitnessSearch(WitnessSearch&&) noexcept = default;
WitnessSearch& WitnessSearch::operator=(WitnessSearch&&) noexcept = default;

std::uint64_t WitnessSearch::branch_count() const { return impl_->branch_count(); }

std::optional<FiniteAssignment> WitnessSearch::search_range(std::uint64_t lo, std::uint64_t hi) const {
  hi = std::min(hi, branch_count());
  for (std::uint64_t b = lo; b < hi; ++b) {
    if (auto r = impl_->search_branch(b)) return r;
  }
  return std::nullopt;
}

std::optional<FiniteAssignment> WitnessSearch::search_parallel() const {
  // Ordered blocks of branches; each block is searched in parallel and the
  // scan stops after the first block holding a witness. Inside a block the
  // lowest witnessing branch wins, so the result equals the serial one.
  const auto n = static_cast<std::int64_t>(branch_count());
  const std::int64_t block = std::max<std::int64_t>(64, 16 * static_cast<std::int64_t>(omp_get_max_threads()));
  std::vector<std::optional<FiniteAssignment>> found(static_cast<std::size_t>(std::min(block, n)));
  for (std::int64_t lo = 0; lo < n; lo += block) {
    const std::int64_t hi = std::min(n, lo + block);
    std::atomic<std::int64_t> best{hi};
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = lo; b < hi; ++b) {
      // Branches after an already-found witness cannot be the minimum.
      if (b > best.load(std::memory_order_relaxed)) continue;
      auto r = impl_->search_branch(static_cast<std::uint64_t>(b));
      if (!r) continue;
      found[static_cast<std::size_t>(b - lo)] = std::move(r);
      std::int64_t cur = best.load();
      while (b < cur && !best.compare_exchange_weak(cur, b)) {
      }
    }
    const std::int64_t winner = best.load();
    if (winner < hi) return std::move(found[static_cast<std::size_t>(winner - lo)]);
  }
  return std::nullopt;
}

std::optional<FiniteAssignment> WitnessSearch::search(Execution exec) const {
  return exec == Execution::Parallel ? search_parallel() : search_range(0, branch_count());
}

std::optional<FiniteAssignment> affine_witness(const FinitePresentation& pres, const FreeWord& target, int m_max,
                                               Execution exec) {
  if (target.is_identity()) throw std::invalid_argument("trivial target: the word must be nontrivial");
  for (int m = 2; m <= m_max; ++m) {
    WitnessSearch search(pres, target, {TargetFamily::Affine, m}, false);
    if (auto r = search.search(exec)) return r;
  }
  return std::nullopt;
}

std::optional<FiniteAssignment> perm_witness(const FinitePresentation& pres, const FreeWord& target, int n_max,
                                             Execution exec) {
  if (target.is_identity()) throw std::invalid_argument("trivial target: the word must be nontrivial");
  if (n_max > kMaxPermDegree) {
    throw std::invalid_argument("Sym(n) search supports n <= " + std::to_string(kMaxPermDegree));
  }
  for (int n = 2; n <= n_max; ++n) {
    WitnessSearch search(pres, target, {TargetFamily::Symmetric, n}, true);
    if (auto r = search.search(exec)) return r;
  }
  return std::nullopt;
}

std::vector<Permutation> conjugacy_class_representatives(int n) {
  std::vector<Permutation> out;
  for (const auto& shape : partitions(n, n)) {
    Permutation p;
    p.images.resize(static_cast<std::size_t>(n));
    int start = 0;
    for (int len : shape) {
      for (int i = 0; i < len; ++i) p.images[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
      start += len;
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Permutation& a, const Permutation& b) { return a.images < b.images; });
  return out;
}

// ---------------------------------------------------------------------------
// Assignments

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i] || images[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(images[j]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string TargetGroup::to_string() const {
  return (family == TargetFamily::Affine ? "Affine(" : "Sym(") + std::to_string(degree) + ")";
}

GroupElement identity_element(const TargetGroup& target) {
  if (target.family == TargetFamily::Affine) return AffineMap{1 % target.degree, 0};
  Permutation p;
  for (int i = 0; i < target.degree; ++i) p.images.push_back(i);
  return p;
}

bool is_identity(const GroupElement& g) {
  if (const auto* a = std::get_if<AffineMap>(&g)) return a->beta == 0 && (a->alpha == 1 || a->alpha == 0);
  const auto& p = std::get<Permutation>(g);
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    if (p.images[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::string element_to_string(const GroupElement& g) {
  if (const auto* a = std::get_if<AffineMap>(&g)) {
    return "(" + std::to_string(a->alpha) + "," + std::to_string(a->beta) + ")";
  }
  return std::get<Permutation>(g).to_string();
}

std::string FiniteAssignment::to_string() const {
  std::string out = target.to_string() + ":";
  bool first = true;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) continue;
    out += first ? " " : ", ";
    first = false;
    out += alphabet->name(i) + "=" + element_to_string(*images[i]);
  }
  return out;
}

bool FiniteAssignment::operator==(const FiniteAssignment& o) const {
  return target == o.target && same_alphabet(alphabet, o.alphabet) && images == o.images;
}

namespace {

template <class G>
typename G::Element to_concrete(const G&, const GroupElement& g);

template <>
AffineMap to_concrete(const AffineGroup&, const GroupElement& g) {
  return std::get<AffineMap>(g);
}

template <>
SymmetricGroup::Element to_concrete(const SymmetricGroup& group, const GroupElement& g) {
  return group.from(std::get<Permutation>(g));
}

std::vector<std::int64_t> element_key(const AffineMap& g) { return {g.alpha, g.beta}; }
std::vector<std::int64_t> element_key(const SymmetricGroup::Element& g) { return {g.begin(), g.end()}; }

template <class G>
std::uint64_t closure_size(const G& group, const FiniteAssignment& a) {
  std::vector<typename G::Element> gens;
  for (const auto& img : a.images) {
    if (img) gens.push_back(to_concrete(group, *img));
  }
  std::set<std::vector<std::int64_t>> seen{element_key(group.identity())};
  std::vector<typename G::Element> frontier{group.identity()};
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      auto next = group.mul(cur, g);
      if (seen.insert(element_key(next)).second) frontier.push_back(next);
    }
  }
  return seen.size();
}

template <class G>
GroupElement evaluate_in(const G& group, const FiniteAssignment& a, const FreeWord& r) {
  auto acc = group.identity();
  for (const auto& s : r.syllables()) {
    const std::string& name = r.alphabet()->name(static_cast<std::size_t>(s.gen));
    const int idx = a.alphabet ? a.alphabet->index_of(name) : -1;
    if (idx < 0 || !a.images[static_cast<std::size_t>(idx)]) {
      throw UnassignedGenerator("generator '" + name + "' has no image");
    }
    acc = group.mul(acc, group_pow(group, to_concrete(group, *a.images[static_cast<std::size_t>(idx)]), s.exp));
  }
  return group.wrap(acc);
}

}  // namespace

std::uint64_t FiniteAssignment::quotient_order() const {
  if (target.family == TargetFamily::Affine) return closure_size(AffineGroup(target.degree), *this);
  return closure_size(SymmetricGroup(target.degree), *this);
}

GroupElement evaluate_relator(const FiniteAssignment& a, const FreeWord& r) {
  if (a.target.family == TargetFamily::Affine) return evaluate_in(AffineGroup(a.target.degree), a, r);
  if (a.target.degree > kMaxPermDegree) throw std::invalid_argument("permutation degree too large");
  // Evaluating does not need the element table, so avoid building n! entries.
  const int n = a.target.degree;
  Permutation acc = std::get<Permutation>(identity_element(a.target));
  for (const auto& s : r.syllables()) {
    const std::string& name = r.alphabet()->name(static_cast<std::size_t>(s.gen));
    const int idx = a.alphabet ? a.alphabet->index_of(name) : -1;
    if (idx < 0 || !a.images[static_cast<std::size_t>(idx)]) {
      throw UnassignedGenerator("generator '" + name + "' has no image");
    }
    const auto& g = std::get<Permutation>(*a.images[static_cast<std::size_t>(idx)]);
    Permutation step = g;
    if (s.exp < 0) {
      for (int i = 0; i < n; ++i) step.images[static_cast<std::size_t>(g.images[static_cast<std::size_t>(i)])] = i;
    }
    const std::int64_t reps = s.exp < 0 ? -s.exp : s.exp;
    for (std::int64_t k = 0; k < reps; ++k) {
      Permutation next = acc;
      for (int i = 0; i < n; ++i) {
        next.images[static_cast<std::size_t>(i)] =
            acc.images[static_cast<std::size_t>(step.images[static_cast<std::size_t>(i)])];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

bool verify_witness(const FinitePresentation& pres, const FiniteAssignment& a, const FreeWord& target) {
  for (const auto& r : pres.relators) {
    if (!is_identity(evaluate_relator(a, r))) return false;
  }
  return !is_identity(evaluate_relator(a, target));
}

}  // namespace hnnkit
