#include "hnnkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hnnkit/hnn.hpp"
#include "hnnkit/parse.hpp"
#include "hnnkit/subgroup_graph.hpp"
#include "hnnkit/trace.hpp"
#include "hnnkit/variety.hpp"

namespace hnnkit::cli {

namespace {

using Json = nlohmann::ordered_json;

// What a command produced: text for plain output, a value for JSON output.
struct Outcome {
  int code = kSuccess;
  std::vector<std::string> lines;
  Json computed;
};

// Errors in the user's input (bad files, bad --map entries) rather than in the library.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AlphabetRef f2() {
  static const AlphabetRef ab = Alphabet::make({"a", "b"});
  return ab;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// "y=x^2-1; z=x^3-2*x" -> substitution with the listed variables set.
Substitution parse_component(const std::string& text) {
  Substitution s(3);
  const VariableNames names;
  for (const auto& [lhs, rhs] : split_assignments(text, "=")) {
    const int v = names.index_of(lhs);
    if (v < 0) throw UsageError("unknown variable '" + lhs + "' in component");
    s[static_cast<std::size_t>(v)] = parse_polynomial(rhs);
  }
  return s;
}

Substitution totalize(Substitution s) {
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (!s[v]) s[v] = Polynomial::var(v);
  }
  return s;
}

Outcome cmd_trace(const std::string& text) {
  const Polynomial p = trace_poly(parse_word(text, f2()));
  return {kSuccess, {p.to_string()}, p.to_string()};
}

Outcome cmd_kappa(const std::string& u_text, const std::string& v_text, const std::string& component) {
  const FreeWord u = parse_word(u_text, f2());
  const FreeWord v = parse_word(v_text, f2());
  Substitution sigma = totalize(component.empty() ? Substitution(3) : parse_component(component));
  const Polynomial pu = substitute(trace_poly(u), sigma);
  const Polynomial pv = substitute(trace_poly(v), sigma);
  const Polynomial puv = substitute(trace_poly(u * v), sigma);
  const Polynomial k = kappa(pu, pv, puv);
  const bool solvable = is_solvable_triple(pu, pv, puv);
  Json j;
  j["kappa"] = k.to_string();
  j["solvable"] = solvable;
  return {kSuccess, {k.to_string(), "solvable: " + bool_text(solvable)}, j};
}

std::string plural(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

Outcome cmd_variety(const std::string& phi_text, bool solve, const std::string& check) {
  const TraceSystem sys = build_system(parse_endomorphism(phi_text, f2()));
  Outcome o;
  Json eqs = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    o.lines.push_back("E" + std::to_string(i + 1) + " = " + sys[i].to_string());
    eqs.push_back(sys[i].to_string());
  }
  o.computed["equations"] = eqs;
  if (solve) {
    const SolveResult r = solve_triangular(sys);
    Json sj;
    sj["solved"] = r.solved;
    sj["dimension"] = r.dimension;
    if (r.solved) {
      o.lines.push_back("Solved: " + plural(r.components.size(), "component") + " (dimension " +
                        std::to_string(r.dimension) + ")");
      Json comps = Json::array();
      for (const auto& c : r.components) {
        o.lines.push_back("  " + c.to_string());
        comps.push_back(c.to_string());
      }
      sj["components"] = comps;
    } else {
      o.lines.push_back("Unsolved: " + plural(r.residual.size(), "constraint") + " (dimension " +
                        std::to_string(r.dimension) + ")");
      Json res = Json::array();
      for (const auto& p : r.residual) {
        o.lines.push_back("  " + p.to_string() + " = 0");
        res.push_back(p.to_string());
      }
      sj["residual"] = res;
    }
    o.computed["solve"] = sj;
  }
  if (!check.empty()) {
    const bool ok = check_component(sys, totalize(parse_component(check)));
    o.lines.push_back("check: " + bool_text(ok));
    o.computed["check"] = ok;
    if (!ok) o.code = kCheckFailed;
  }
  return o;
}

AlphabetRef subgroup_alphabet(const std::string& explicit_names, const std::vector<std::string>& texts) {
  if (!explicit_names.empty()) {
    std::istringstream in(explicit_names);
    std::vector<std::string> names;
    for (std::string n; in >> n;) names.push_back(n);
    return Alphabet::make(std::move(names));
  }
  std::set<std::string> names{"a", "b"};
  for (const auto& t : texts) {
    for (auto& n : scan_identifiers(t)) names.insert(std::move(n));
  }
  return Alphabet::make(std::vector<std::string>(names.begin(), names.end()));
}

Outcome cmd_subgroup(const std::string& op, const std::vector<std::string>& gen_texts, const std::string& word_text,
                     const std::string& alphabet_names) {
  std::vector<std::string> all = gen_texts;
  if (!word_text.empty()) all.push_back(word_text);
  const AlphabetRef alphabet = subgroup_alphabet(alphabet_names, all);
  std::vector<FreeWord> gens;
  for (const auto& g : gen_texts) gens.push_back(parse_word(g, alphabet));
  const SubgroupGraph graph = SubgroupGraph::build(gens, alphabet);

  if (op == "fold") {
    Outcome o;
    std::istringstream in(graph.to_string());
    for (std::string line; std::getline(in, line);) o.lines.push_back(line);
    o.computed["vertices"] = graph.vertex_count();
    Json edges = Json::array();
    for (const auto& e : graph.edges()) {
      edges.push_back({{"from", e.from}, {"label", alphabet->name(static_cast<std::size_t>(e.gen))}, {"to", e.to},
                       {"decoration", e.decoration.to_string()}});
    }
    o.computed["edges"] = edges;
    o.computed["rank"] = graph.rank();
    return o;
  }
  if (op == "rank") return {kSuccess, {std::to_string(graph.rank())}, graph.rank()};
  const FreeWord w = parse_word(word_text, alphabet);
  if (op == "contains") {
    const bool in = graph.contains(w);
    return {kSuccess, {bool_text(in)}, in};
  }
  try {
    const std::string e = graph.express(w).to_string();
    return {kSuccess, {e}, e};
  } catch (const NotAMember&) {
    return {kCheckFailed, {"not a member"}, nullptr};
  }
}

// Source generator -> HNN word, from "a -> b0 ; b -> b1 ; t -> t^2".
std::vector<HnnWord> parse_images(const FinitePresentation& source, const HnnPresentation& target,
                                  const std::string& text) {
  std::vector<std::optional<HnnWord>> images(source.alphabet->size());
  for (const auto& [lhs, rhs] : split_assignments(text, "->")) {
    const int g = source.alphabet->index_of(lhs);
    if (g < 0) throw UsageError("'" + lhs + "' is not a generator of the source presentation");
    images[static_cast<std::size_t>(g)] = target.parse(rhs);
  }
  std::vector<HnnWord> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) throw UsageError("no image given for '" + source.alphabet->name(i) + "'");
    out.push_back(*images[i]);
  }
  return out;
}

struct HnnArgs {
  std::string file;
  std::string op;
  std::string word1;
  std::string word2;
  std::string source;
  std::string map;
};

Outcome cmd_hnn(const HnnArgs& a) {
  const HnnPresentation pres = hnn_from_spec(parse_presentation_spec(read_file(a.file)));
  if (a.op == "rewrite") return {kSuccess, {pres.to_string()}, pres.to_string()};
  if (a.op == "normal-form") {
    const HnnNormalForm nf = normal_form(pres, pres.parse(a.word1));
    Json j;
    j["normal_form"] = pres.format(nf);
    j["p"] = nf.p;
    j["w"] = nf.w.to_string();
    j["q"] = nf.q;
    return {kSuccess, {pres.format(nf)}, j};
  }
  if (a.op == "equal") {
    const bool eq = equal(pres, pres.parse(a.word1), pres.parse(a.word2));
    return {kSuccess, {bool_text(eq)}, eq};
  }
  const FinitePresentation source = to_finite_presentation(parse_presentation_spec(read_file(a.source)));
  const bool ok = check_homomorphism(source, pres, parse_images(source, pres, a.map));
  return {ok ? kSuccess : kCheckFailed, {bool_text(ok)}, ok};
}

Outcome cmd_separate(const std::string& file, const std::string& word_text, int affine_max, int perm_max,
                     Execution exec) {
  const FinitePresentation pres = to_finite_presentation(parse_presentation_spec(read_file(file)));
  const FreeWord target = parse_word(word_text, pres.alphabet);
  const bool affine = affine_max > 0;
  const auto w = affine ? affine_witness(pres, target, affine_max, exec) : perm_witness(pres, target, perm_max, exec);
  if (!w) {
    const std::string range =
        affine ? "Affine(m), m <= " + std::to_string(affine_max) : "Sym(n), n <= " + std::to_string(perm_max);
    return {kCheckFailed, {"none: no witness in " + range}, nullptr};
  }
  if (!verify_witness(pres, *w, target)) throw std::logic_error("search returned an invalid witness");
  Json j;
  j["witness"] = w->to_string();
  j["quotient_order"] = w->quotient_order();
  return {kSuccess, {w->to_string()}, j};
}

Format parse_format(const std::string& s) { return s == "json" ? Format::Json : Format::Plain; }

void emit(const Outcome& o, const std::string& command, Format format, std::ostream& out) {
  if (format == Format::Json) {
    Json j;
    j["command"] = command;
    j["status"] = o.code == kSuccess ? "ok" : "fail";
    j["computed"] = o.computed;
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& line : o.lines) out << line << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-group, trace-variety and ascending-HNN toolkit", "hnnkit"};
  app.require_subcommand(1);
  std::string format_name = "plain";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"plain", "json"}))
      ->capture_default_str();
  app.fallthrough();

  std::function<Outcome()> action;
  std::string command;

  std::string trace_word;
  auto* trace = app.add_subcommand("trace", "Trace polynomial of a word in a, b");
  trace->add_option("word", trace_word, "Word, e.g. \"a b a^-1 b^-1\"")->required();
  trace->callback([&] { action = [&] { return cmd_trace(trace_word); }; });

  std::string kappa_u, kappa_v, kappa_component;
  auto* kap = app.add_subcommand("kappa", "Commutator trace of two words, optionally on a component");
  kap->add_option("u", kappa_u, "First word")->required();
  kap->add_option("v", kappa_v, "Second word")->required();
  kap->add_option("--component", kappa_component, "Substitution such as \"y=x^2-1; z=x^3-2*x\"");
  kap->callback([&] { action = [&] { return cmd_kappa(kappa_u, kappa_v, kappa_component); }; });

  std::string phi_text, check_text;
  bool solve = false;
  auto* variety = app.add_subcommand("variety", "Trace variety of an endomorphism of F(a, b)");
  variety->add_option("phi", phi_text, "Endomorphism, e.g. \"a -> a ; b -> [a,b]\"")->required();
  variety->add_flag("--solve", solve, "Run the triangular solver");
  variety->add_option("--check", check_text, "Check a component such as \"y=2; z=x\"");
  variety->callback([&] { action = [&] { return cmd_variety(phi_text, solve, check_text); }; });

  std::vector<std::string> sub_gens;
  std::string sub_word, sub_alphabet, sub_op;
  auto* subgroup = app.add_subcommand("subgroup", "Stallings graph of a subgroup of a free group");
  subgroup->require_subcommand(1);
  subgroup->add_option("--alphabet", sub_alphabet, "Ambient generators (default: a, b and any names used)");
  for (const char* op : {"fold", "rank", "contains", "express"}) {
    const bool needs_word = std::string(op) == "contains" || std::string(op) == "express";
    auto* s = subgroup->add_subcommand(op, needs_word ? "Query a word against the subgroup" : "Inspect the graph");
    s->fallthrough();
    if (needs_word) s->add_option("word", sub_word, "Word to test")->required();
    s->add_option("gens", sub_gens, "Subgroup generators")->required();
    s->callback([&, op] {
      sub_op = op;
      action = [&] { return cmd_subgroup(sub_op, sub_gens, sub_word, sub_alphabet); };
    });
  }

  HnnArgs hnn_args;
  auto* hnn = app.add_subcommand("hnn", "Ascending HNN extension given by a presentation file");
  hnn->add_option("file", hnn_args.file, "Presentation file")->required();
  hnn->require_subcommand(1);
  auto* nf = hnn->add_subcommand("normal-form", "Normal form t^-p w t^q of a word");
  nf->add_option("word", hnn_args.word1)->required();
  auto* eq = hnn->add_subcommand("equal", "Decide whether two words are equal");
  eq->add_option("u", hnn_args.word1)->required();
  eq->add_option("v", hnn_args.word2)->required();
  auto* rw = hnn->add_subcommand("rewrite", "Print the presentation in endomorphism form");
  auto* ch = hnn->add_subcommand("check-hom", "Check that a map from another presentation preserves its relators");
  ch->add_option("--source", hnn_args.source, "Source presentation file")->required();
  ch->add_option("--map", hnn_args.map, "Images, e.g. \"a -> b0 ; b -> b1 ; t -> t^2\"")->required();
  for (auto* s : {nf, eq, rw, ch}) {
    s->fallthrough();
    s->callback([&, s] {
      hnn_args.op = s->get_name();
      action = [&] { return cmd_hnn(hnn_args); };
    });
  }

  std::string sep_file, sep_word;
  int affine_max = 0, perm_max = 0;
  bool serial = false;
  auto* separate = app.add_subcommand("separate", "Find a finite quotient in which a word survives");
  separate->add_option("file", sep_file, "Presentation file")->required();
  separate->add_option("word", sep_word, "Nontrivial word")->required();
  auto* affine_opt = separate->add_option("--affine", affine_max, "Search Affine(m) for m <= M")->check(CLI::Range(2, 1000));
  auto* perm_opt = separate->add_option("--perm", perm_max, "Search Sym(n) for n <= N")
                       ->check(CLI::Range(2, kMaxPermDegree));
  affine_opt->excludes(perm_opt);
  separate->add_flag("--serial", serial, "Use the serial reference search");
  separate->callback([&] {
    if (affine_max == 0 && perm_max == 0) throw CLI::ValidationError("separate", "one of --affine or --perm is required");
    action = [&] {
      return cmd_separate(sep_file, sep_word, affine_max, perm_max, serial ? Execution::Serial : Execution::Parallel);
    };
  });

  bool corrupt = false, verify_serial = false;
  auto* verify = app.add_subcommand("verify-paper", "Reproduce the worked examples as a checked report");
  verify->add_flag("--test-corrupt", corrupt, "Test mode: corrupt one expected polynomial");
  verify->add_flag("--serial", verify_serial, "Use the serial reference quotient search");
  for (auto* s : {trace, kap, variety, subgroup, hnn, separate, verify}) s->fallthrough();

  std::vector<const char*> argv{"hnnkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const Format format = parse_format(format_name);
  if (verify->parsed()) {
    const Report report = verify_paper({corrupt, verify_serial ? Execution::Serial : Execution::Parallel});
    out << report.render(format);
    return report.passed() ? kSuccess : kCheckFailed;
  }
  for (auto* s : app.get_subcommands()) command = s->get_name();
  try {
    const Outcome o = action();
    emit(o, command, format, out);
    return o.code;
  } catch (const std::logic_error& e) {
    // Includes std::invalid_argument and ParseError: bad input.
    if (dynamic_cast<const std::invalid_argument*>(&e) == nullptr &&
        dynamic_cast<const std::domain_error*>(&e) == nullptr &&
        dynamic_cast<const std::out_of_range*>(&e) == nullptr) {
      err << "internal error: " << e.what() << "\n";
      return kCheckFailed;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace hnnkit::cli
