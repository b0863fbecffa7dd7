#include "hnnkit/presentation.hpp"

#include <cctype>
#include <regex>
#include <sstream>

#include "hnnkit/parse.hpp"

namespace hnnkit {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) || s.front() == ';')) s.remove_prefix(1);
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == ';')) s.remove_suffix(1);
  return std::string(s);
}

std::string strip_comments(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

PresentationSpec parse_presentation_spec(std::string_view raw) {
  const std::string text = strip_comments(raw);
  static const std::regex directive(R"((^|[\n;])[ \t]*(gens|stable|phi|rel)[ \t]*:)");
  struct Hit {
    std::size_t start;
    std::size_t body;
    std::string key;
  };
  std::vector<Hit> hits;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), directive); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    hits.push_back({static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.position(0) + m.length(0)),
                    m[2].str()});
  }
  if (hits.empty()) throw ParseError("no 'gens:' directive found", 0);
  if (!trim(std::string_view(text).substr(0, hits.front().start)).empty()) {
    throw ParseError("unexpected text before the first directive", 0);
  }

  PresentationSpec spec;
  bool have_gens = false;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const std::size_t end = i + 1 < hits.size() ? hits[i + 1].start : text.size();
    const std::string body = trim(std::string_view(text).substr(hits[i].body, end - hits[i].body));
    const std::string& key = hits[i].key;
    if (key == "gens") {
      if (have_gens) throw ParseError("duplicate 'gens:' directive", hits[i].start);
      std::istringstream in(body);
      std::string name;
      while (in >> name) {
        if (!is_identifier(name)) throw ParseError("invalid generator name '" + name + "'", hits[i].body);
        spec.gens.push_back(name);
      }
      have_gens = true;
    } else if (key == "stable") {
      if (!is_identifier(body)) throw ParseError("invalid stable letter '" + body + "'", hits[i].body);
      spec.stable = body;
    } else if (key == "phi") {
      if (spec.phi) throw ParseError("duplicate 'phi:' directive", hits[i].start);
      spec.phi = body;
    } else {
      spec.relations.push_back(body);
    }
  }
  if (!have_gens) throw ParseError("missing 'gens:' directive", 0);
  if (spec.phi && !spec.relations.empty()) {
    throw ParseError("a presentation uses either 'phi:' or 'rel:', not both", 0);
  }
  return spec;
}

FinitePresentation to_finite_presentation(const PresentationSpec& spec) {
  FinitePresentation out;
  if (spec.phi) {
    const auto base = Alphabet::make(spec.gens);
    const Endomorphism phi = parse_endomorphism(*spec.phi, base);
    std::vector<std::string> names = spec.gens;
    names.push_back(spec.stable_letter());
    out.alphabet = Alphabet::make(names);
    const int t = static_cast<int>(spec.gens.size());
    for (std::size_t g = 0; g < spec.gens.size(); ++g) {
      // t g t^-1 phi(g)^-1, reading phi(g) over the enlarged alphabet.
      std::vector<Syllable> raw{{t, 1}, {static_cast<int>(g), 1}, {t, -1}};
      const auto& img = phi.image(static_cast<int>(g)).syllables();
      for (auto it = img.rbegin(); it != img.rend(); ++it) raw.push_back({it->gen, -it->exp});
      out.relators.emplace_back(out.alphabet, raw);
    }
    return out;
  }
  out.alphabet = Alphabet::make(spec.gens);
  for (const auto& rel : spec.relations) {
    const auto eq = rel.find('=');
    std::vector<Syllable> raw = parse_raw_word(rel.substr(0, eq), *out.alphabet);
    if (eq != std::string::npos) {
      const auto rhs = parse_raw_word(rel.substr(eq + 1), *out.alphabet);
      for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) raw.push_back({it->gen, -it->exp});
    }
    out.relators.emplace_back(out.alphabet, raw);
  }
  return out;
}

std::string FinitePresentation::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < alphabet->size(); ++i) {
    if (i) out += ", ";
    out += alphabet->name(i);
  }
  out += " | ";
  for (std::size_t i = 0; i < relators.size(); ++i) {
    if (i) out += ", ";
    out += relators[i].to_string();
  }
  return out + ">";
}

}  // namespace hnnkit
