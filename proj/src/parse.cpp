#include "hnnkit/parse.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>

namespace hnnkit {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class WordParser {
 public:
  WordParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  std::vector<Syllable> parse_all() {
    skip_ws();
    std::vector<Syllable> out;
    if (peek() == '1') {
      ++pos_;
      skip_ws();
      if (!at_end()) throw ParseError("identity '1' cannot be combined with other terms", pos_);
      return out;
    }
    out = parse_sequence();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    return out;
  }

 private:
  std::vector<Syllable> parse_sequence() {
    std::vector<Syllable> out;
    skip_ws();
    if (at_end() || !starts_atom()) throw ParseError("expected a generator", pos_);
    while (true) {
      auto term = parse_term();
      out.insert(out.end(), term.begin(), term.end());
      skip_ws();
      if (at_end() || !starts_atom()) break;
    }
    return out;
  }

  bool starts_atom() const {
    const char c = peek();
    return ident_start(c) || c == '(' || c == '[';
  }

  std::vector<Syllable> parse_term() {
    std::vector<Syllable> atom = parse_atom();
    skip_ws();
    if (peek() != '^') return atom;
    ++pos_;
    skip_ws();
    const std::int64_t n = parse_integer();
    if (atom.size() == 1) {
      std::int64_t e;
      if (__builtin_mul_overflow(atom.front().exp, n, &e)) throw ParseError("exponent overflow", pos_);
      atom.front().exp = e;
      return atom;
    }
    std::vector<Syllable> base = atom;
    if (n < 0) base = inverse(base);
    const std::int64_t reps = n < 0 ? -n : n;
    if (reps > 1'000'000) throw ParseError("exponent too large for a compound term", pos_);
    std::vector<Syllable> out;
    for (std::int64_t i = 0; i < reps; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  std::vector<Syllable> parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = parse_group_body(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      auto u = parse_sequence();
      skip_ws();
      expect(',');
      auto v = parse_sequence();
      skip_ws();
      expect(']');
      std::vector<Syllable> out = u;
      out.insert(out.end(), v.begin(), v.end());
      auto ui = inverse(u);
      auto vi = inverse(v);
      out.insert(out.end(), ui.begin(), ui.end());
      out.insert(out.end(), vi.begin(), vi.end());
      return out;
    }
    const std::size_t start = pos_;
    while (!at_end() && ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    const int gen = alphabet_.index_of(name);
    if (gen < 0) throw ParseError("unknown generator '" + std::string(name) + "'", start);
    return {Syllable{gen, 1}};
  }

  std::vector<Syllable> parse_group_body(char close) {
    skip_ws();
    std::vector<Syllable> out;
    if (peek() == '1') {
      ++pos_;
    } else {
      out = parse_sequence();
    }
    skip_ws();
    expect(close);
    return out;
  }

  std::int64_t parse_integer() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    const std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected an integer exponent", start);
    std::int64_t value = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc()) throw ParseError("exponent out of range", start);
    if (value == 0) throw ParseError("exponent must be nonzero", start);
    return value;
  }

  static std::vector<Syllable> inverse(const std::vector<Syllable>& s) {
    std::vector<Syllable> out(s.rbegin(), s.rend());
    for (auto& x : out) x.exp = -x.exp;
    return out;
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<Syllable> parse_raw_word(std::string_view text, const Alphabet& alphabet) {
  return WordParser(text, alphabet).parse_all();
}

FreeWord parse_word(std::string_view text, const AlphabetRef& alphabet) {
  return FreeWord(alphabet, parse_raw_word(text, *alphabet));
}

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::size_t i = 0;
  while (i < text.size()) {
    if (ident_start(text[i]) && (i == 0 || !ident_char(text[i - 1]))) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string name(text.substr(i, j - i));
      if (seen.insert(name).second) out.push_back(std::move(name));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> split_assignments(std::string_view text,
                                                                   std::string_view arrow) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = trim(text.substr(start, end - start));
    if (!part.empty()) {
      const std::size_t at = part.find(arrow);
      if (at == std::string_view::npos) {
        throw ParseError("expected '" + std::string(arrow) + "' in '" + std::string(part) + "'", start);
      }
      out.emplace_back(std::string(trim(part.substr(0, at))),
                       std::string(trim(part.substr(at + arrow.size()))));
    }
    start = end + 1;
  }
  return out;
}

Endomorphism parse_endomorphism(std::string_view text, const AlphabetRef& alphabet) {
  std::vector<std::optional<FreeWord>> images(alphabet->size());
  for (const auto& [lhs, rhs] : split_assignments(text, "->")) {
    const int gen = alphabet->index_of(lhs);
    if (gen < 0) throw ParseError("unknown generator '" + lhs + "' on the left of '->'", 0);
    if (images[static_cast<std::size_t>(gen)]) throw ParseError("generator '" + lhs + "' assigned twice", 0);
    images[static_cast<std::size_t>(gen)] = parse_word(rhs, alphabet);
  }
  std::vector<FreeWord> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) throw ParseError("no image given for '" + alphabet->name(i) + "'", 0);
    out.push_back(*images[i]);
  }
  return Endomorphism(alphabet, std::move(out));
}

}  // namespace hnnkit
