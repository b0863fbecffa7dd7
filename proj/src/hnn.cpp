#include "hnnkit/hnn.hpp"

#include <stdexcept>

#include "hnnkit/parse.hpp"

namespace hnnkit {

HnnPresentation::HnnPresentation(Endomorphism phi, std::string stable)
    : phi_(std::move(phi)), stable_(std::move(stable)) {
  if (!same_alphabet(phi_.domain(), phi_.codomain())) {
    throw AlphabetMismatch("an ascending HNN extension needs an endomorphism of one free group");
  }
  if (phi_.domain()->index_of(stable_) >= 0) {
    throw std::invalid_argument("stable letter '" + stable_ + "' clashes with a base generator");
  }
  image_ = std::make_shared<const SubgroupGraph>(
      SubgroupGraph::build(phi_.images(), phi_.domain(), phi_.domain()->names()));
  if (image_->rank() != static_cast<int>(phi_.domain()->size())) {
    throw std::invalid_argument("endomorphism is not injective: its images span a subgroup of rank " +
                                std::to_string(image_->rank()));
  }
  std::vector<std::string> names = phi_.domain()->names();
  names.push_back(stable_);
  full_ = Alphabet::make(std::move(names));
}

void HnnPresentation::add_alias(const std::string& name, const std::string& generator) {
  if (full_->index_of(generator) < 0) throw std::invalid_argument("alias target '" + generator + "' is unknown");
  if (full_->index_of(name) >= 0) return;
  aliases_[name] = generator;
}

HnnWord HnnPresentation::parse(std::string_view text) const {
  std::vector<std::string> names = full_->names();
  std::vector<int> target;
  for (std::size_t i = 0; i < names.size(); ++i) target.push_back(static_cast<int>(i));
  for (const auto& [alias, gen] : aliases_) {
    names.push_back(alias);
    target.push_back(full_->index_of(gen));
  }
  const Alphabet parse_alphabet(names);
  const int stable_index = static_cast<int>(base()->size());
  HnnWord out;
  for (const auto& s : parse_raw_word(text, parse_alphabet)) {
    const int g = target[static_cast<std::size_t>(s.gen)];
    out.push_back(g == stable_index ? HnnLetter{true, 0, s.exp} : HnnLetter{false, g, s.exp});
  }
  return out;
}

std::string HnnPresentation::format(const HnnNormalForm& nf) const {
  std::string out;
  auto append = [&](const std::string& part) {
    if (!out.empty()) out += ' ';
    out += part;
  };
  if (nf.p > 0) append(stable_ + "^" + std::to_string(-nf.p));
  if (!nf.w.is_identity()) append(nf.w.to_string());
  if (nf.q > 0) append(nf.q == 1 ? stable_ : stable_ + "^" + std::to_string(nf.q));
  return out.empty() ? "1" : out;
}

std::string HnnPresentation::to_string() const {
  std::string out = "gens:";
  for (const auto& n : base()->names()) out += " " + n;
  if (stable_ != "t") out += "; stable: " + stable_;
  out += "; phi: " + phi_.to_string();
  return out;
}

FinitePresentation HnnPresentation::relators() const {
  FinitePresentation out;
  out.alphabet = full_;
  const int t = static_cast<int>(base()->size());
  for (std::size_t g = 0; g < base()->size(); ++g) {
    std::vector<Syllable> raw{{t, 1}, {static_cast<int>(g), 1}, {t, -1}};
    const auto& img = phi_.image(static_cast<int>(g)).syllables();
    for (auto it = img.rbegin(); it != img.rend(); ++it) raw.push_back({it->gen, -it->exp});
    out.relators.emplace_back(full_, raw);
  }
  return out;
}

HnnWord hnn_word(const FreeWord& base_word) {
  HnnWord out;
  for (const auto& s : base_word.syllables()) out.push_back({false, s.gen, s.exp});
  return out;
}

HnnWord stable_power(std::int64_t n) {
  if (n == 0) return {};
  return {HnnLetter{true, 0, n}};
}

HnnWord concat(const HnnWord& a, const HnnWord& b) {
  HnnWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

HnnWord inverse(const HnnWord& w) {
  HnnWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

HnnNormalForm normal_form(const HnnPresentation& pres, const HnnWord& u) {
  const auto& base = pres.base();
  const auto& phi = pres.phi();
  // phi^j(g) for each generator, grown on demand.
  std::vector<std::vector<FreeWord>> iterates(base->size());
  auto phi_power_of = [&](int g, std::int64_t j) -> const FreeWord& {
    auto& list = iterates[static_cast<std::size_t>(g)];
    if (list.empty()) list.push_back(FreeWord::generator(base, g));
    while (static_cast<std::int64_t>(list.size()) <= j) list.push_back(apply_endo(phi, list.back()));
    return list[static_cast<std::size_t>(j)];
  };

  // Invariant: the prefix read so far equals t^-p w t^q.
  HnnNormalForm nf{0, FreeWord(base), 0};
  for (const auto& letter : u) {
    if (!letter.stable) {
      if (letter.gen < 0 || letter.gen >= static_cast<int>(base->size())) {
        throw std::invalid_argument("unknown base generator in HNN word");
      }
      nf.w = nf.w * power(phi_power_of(letter.gen, nf.q), letter.exp);
    } else if (letter.exp > 0) {
      nf.q += letter.exp;
    } else {
      const std::int64_t n = -letter.exp;
      const std::int64_t absorbed = std::min(nf.q, n);
      nf.q -= absorbed;
      const std::int64_t pushed = n - absorbed;
      nf.p += pushed;
      nf.w = apply_endo_power(phi, nf.w, pushed);
    }
  }

  const auto& image = pres.image_graph();
  while (nf.p > 0 && nf.q > 0 && image.contains(nf.w)) {
    // The image graph's generators are named by the base alphabet, so the
    // expression is the preimage phi^-1(w).
    nf.w = FreeWord(base, image.express(nf.w).syllables());
    --nf.p;
    --nf.q;
  }
  return nf;
}

bool equal(const HnnPresentation& pres, const HnnWord& u, const HnnWord& v) {
  return normal_form(pres, u) == normal_form(pres, v);
}

HnnPresentation magnus_rewrite(int n, const FreeWord& w, const std::string& stable) {
  if (n < 1) throw std::invalid_argument("Magnus rewriting needs n >= 1");
  if (!w.alphabet() || w.alphabet()->size() != 1) {
    throw AlphabetMismatch("Magnus rewriting expects w over a single generator");
  }
  const std::string original = w.alphabet()->name(0);
  std::vector<std::string> names;
  if (n == 1) {
    names.push_back(original);
  } else {
    for (int i = 0; i < n; ++i) names.push_back("b" + std::to_string(i));
  }
  const auto base = Alphabet::make(names);
  std::vector<FreeWord> images;
  for (int i = 0; i + 1 < n; ++i) images.push_back(FreeWord::generator(base, i + 1));
  images.emplace_back(base, w.syllables());
  HnnPresentation pres(Endomorphism(base, std::move(images)), stable);
  if (n > 1) pres.add_alias(original, names.front());
  return pres;
}

bool check_homomorphism(const FinitePresentation& source, const HnnPresentation& target,
                        const std::vector<HnnWord>& images) {
  if (images.size() != source.alphabet->size()) {
    throw std::invalid_argument("an image is required for every source generator");
  }
  for (const auto& rel : source.relators) {
    HnnWord image;
    for (const auto& s : rel.syllables()) {
      const HnnWord& g = images[static_cast<std::size_t>(s.gen)];
      const HnnWord piece = s.exp > 0 ? g : inverse(g);
      const std::int64_t reps = s.exp > 0 ? s.exp : -s.exp;
      for (std::int64_t i = 0; i < reps; ++i) image = concat(image, piece);
    }
    if (!normal_form(target, image).is_identity()) return false;
  }
  return true;
}

std::vector<std::vector<std::int64_t>> abelianization_matrix(const Endomorphism& phi) {
  const std::size_t k = phi.domain()->size();
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) m[i][j] = phi.image(static_cast<int>(j)).exponent_sum(static_cast<int>(i));
  }
  return m;
}

Integer integer_determinant(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

InnerPowerVerdict no_power_inner_sufficient(const Endomorphism& phi) {
  const Integer det = integer_determinant(abelianization_matrix(phi));
  return (det == 1 || det == -1) ? InnerPowerVerdict::Inconclusive : InnerPowerVerdict::NoPowerInner;
}

HnnPresentation hnn_from_spec(const PresentationSpec& spec) {
  const std::string stable = spec.stable_letter();
  if (spec.phi) {
    const auto base = Alphabet::make(spec.gens);
    return HnnPresentation(parse_endomorphism(*spec.phi, base), stable);
  }
  if (spec.relations.size() != 1 || spec.gens.size() != 2) {
    throw std::invalid_argument("relator form needs two generators and one relation t^n a t^-n = w(a)");
  }
  const auto alphabet = Alphabet::make(spec.gens);
  const int t = alphabet->index_of(stable);
  if (t < 0) throw std::invalid_argument("stable letter '" + stable + "' is not among the generators");
  const int a = 1 - t;

  const std::string& rel = spec.relations.front();
  const auto eq = rel.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("relation must be written as lhs = rhs");
  FreeWord lhs = parse_word(rel.substr(0, eq), alphabet);
  FreeWord rhs = parse_word(rel.substr(eq + 1), alphabet);

  auto conjugate_shape = [&](const FreeWord& w) -> int {
    const auto& s = w.syllables();
    if (s.size() == 3 && s[0].gen == t && s[1].gen == a && s[1].exp == 1 && s[2].gen == t && s[0].exp > 0 &&
        s[2].exp == -s[0].exp) {
      return static_cast<int>(s[0].exp);
    }
    return 0;
  };
  auto only_a = [&](const FreeWord& w) {
    for (const auto& s : w.syllables()) {
      if (s.gen != a) return false;
    }
    return true;
  };
  int n = conjugate_shape(lhs);
  if (n == 0 || !only_a(rhs)) {
    std::swap(lhs, rhs);
    n = conjugate_shape(lhs);
  }
  if (n == 0 || !only_a(rhs)) {
    throw std::invalid_argument("relation is not of the form t^n a t^-n = w(a)");
  }
  const auto single = Alphabet::make({alphabet->name(static_cast<std::size_t>(a))});
  std::vector<Syllable> w;
  for (const auto& s : rhs.syllables()) w.push_back({0, s.exp});
  return magnus_rewrite(n, FreeWord(single, w), stable);
}

}  // namespace hnnkit
