#include "hnnkit/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

namespace hnnkit {

namespace {

struct WorkEdge {
  int from;
  int to;
  int gen;
  FreeWord dec;
  bool alive = true;
};

// Mutable graph used while folding. Invariant maintained throughout: there
// are h_v in the free group with h_base = 1 such that every edge u -> v with
// label g has eval(decoration) = h_u g h_v^-1.
class Folder {
 public:
  Folder(AlphabetRef gen_alphabet) : gen_alphabet_(std::move(gen_alphabet)) {
    inc_.emplace_back();
    alive_.push_back(true);
  }

  void add_petal(const FreeWord& w, int index) {
    std::vector<std::pair<int, bool>> letters;
    for (const auto& s : w.syllables()) {
      const std::int64_t n = s.exp < 0 ? -s.exp : s.exp;
      for (std::int64_t i = 0; i < n; ++i) letters.emplace_back(s.gen, s.exp > 0);
    }
    if (letters.empty()) return;
    const FreeWord g = FreeWord::generator(gen_alphabet_, index);
    int cur = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const bool last = i + 1 == letters.size();
      const int next = last ? 0 : new_vertex();
      const auto [gen, forward] = letters[i];
      // The closing step carries the generator, read in traversal direction.
      FreeWord dec = last ? (forward ? g : invert(g)) : FreeWord(gen_alphabet_);
      if (forward) {
        add_edge(cur, next, gen, std::move(dec));
      } else {
        add_edge(next, cur, gen, std::move(dec));
      }
      cur = next;
    }
  }

  void fold() {
    std::vector<int> stack;
    for (int v = 0; v < static_cast<int>(inc_.size()); ++v) stack.push_back(v);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (!alive_[static_cast<std::size_t>(v)]) continue;
      if (auto merged = fold_once(v)) {
        stack.push_back(v);
        stack.push_back(*merged);
      }
    }
  }

  void prune() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 1; v < static_cast<int>(inc_.size()); ++v) {
        if (!alive_[static_cast<std::size_t>(v)]) continue;
        int degree = 0;
        int last = -1;
        for (int e : live_incident(v)) {
          const auto& ed = edges_[static_cast<std::size_t>(e)];
          degree += (ed.from == v && ed.to == v) ? 2 : 1;
          last = e;
        }
        if (degree <= 1) {
          if (last >= 0) edges_[static_cast<std::size_t>(last)].alive = false;
          alive_[static_cast<std::size_t>(v)] = false;
          changed = true;
        }
      }
    }
  }

  std::vector<WorkEdge>& edges() { return edges_; }
  const std::vector<bool>& alive() const { return alive_; }
  std::size_t vertex_slots() const { return inc_.size(); }

 private:
  int new_vertex() {
    inc_.emplace_back();
    alive_.push_back(true);
    return static_cast<int>(inc_.size()) - 1;
  }

  void add_edge(int from, int to, int gen, FreeWord dec) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({from, to, gen, std::move(dec)});
    inc_[static_cast<std::size_t>(from)].push_back(id);
    if (to != from) inc_[static_cast<std::size_t>(to)].push_back(id);
  }

  std::vector<int> live_incident(int v) {
    auto& list = inc_[static_cast<std::size_t>(v)];
    std::vector<int> out;
    for (int e : list) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.alive && (ed.from == v || ed.to == v) && std::find(out.begin(), out.end(), e) == out.end()) {
        out.push_back(e);
      }
    }
    list = out;
    return out;
  }

  // Performs one fold at v if two edges conflict there. Returns the vertex
  // that absorbed the other one (or v itself for parallel edges).
  std::optional<int> fold_once(int v) {
    std::map<std::pair<int, bool>, int> seen;  // (gen, outgoing) -> edge
    for (int e : live_incident(v)) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      for (bool outgoing : {true, false}) {
        if ((outgoing ? ed.from : ed.to) != v) continue;
        auto [it, inserted] = seen.try_emplace({ed.gen, outgoing}, e);
        if (!inserted && it->second != e) return merge(it->second, e, outgoing);
      }
    }
    return std::nullopt;
  }

  int merge(int e1, int e2, bool outgoing) {
    auto& a = edges_[static_cast<std::size_t>(e1)];
    auto& b = edges_[static_cast<std::size_t>(e2)];
    int v1 = outgoing ? a.to : a.from;
    int v2 = outgoing ? b.to : b.from;
    // eval(shift) = h_v1 h_v2^-1
    FreeWord shift = outgoing ? invert(a.dec) * b.dec : a.dec * invert(b.dec);
    b.alive = false;
    if (v1 == v2) return v1;
    if (v2 == 0) {
      std::swap(v1, v2);
      shift = invert(shift);
    }
    const FreeWord shift_inv = invert(shift);
    for (int e : live_incident(v2)) {
      auto& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.from == v2) {
        ed.dec = shift * ed.dec;
        ed.from = v1;
      }
      if (ed.to == v2) {
        ed.dec = ed.dec * shift_inv;
        ed.to = v1;
      }
      inc_[static_cast<std::size_t>(v1)].push_back(e);
    }
    inc_[static_cast<std::size_t>(v2)].clear();
    alive_[static_cast<std::size_t>(v2)] = false;
    return v1;
  }

  AlphabetRef gen_alphabet_;
  std::vector<WorkEdge> edges_;
  std::vector<std::vector<int>> inc_;
  std::vector<bool> alive_;
};

}  // namespace

SubgroupGraph SubgroupGraph::build(const std::vector<FreeWord>& gens, AlphabetRef ambient,
                                   std::vector<std::string> generator_names) {
  for (const auto& g : gens) {
    if (!same_alphabet(g.alphabet(), ambient) && !g.is_identity()) {
      throw AlphabetMismatch("subgroup generators must share the ambient alphabet");
    }
  }
  if (generator_names.empty()) {
    for (std::size_t i = 0; i < gens.size(); ++i) generator_names.push_back("g" + std::to_string(i + 1));
  }
  if (generator_names.size() != gens.size()) {
    throw std::invalid_argument("one name per subgroup generator is required");
  }

  SubgroupGraph g;
  g.ambient_ = std::move(ambient);
  g.gen_alphabet_ = Alphabet::make(std::move(generator_names));
  for (const auto& w : gens) g.gens_.push_back(w.alphabet() ? w : FreeWord(g.ambient_));

  Folder folder(g.gen_alphabet_);
  for (std::size_t i = 0; i < gens.size(); ++i) folder.add_petal(gens[i], static_cast<int>(i));
  folder.fold();
  folder.prune();

  const int k = static_cast<int>(g.ambient_->size());
  auto& wedges = folder.edges();

  // Incidence of the surviving graph, ordered by (generator, direction).
  std::vector<std::vector<int>> out_of(folder.vertex_slots(), std::vector<int>(static_cast<std::size_t>(k), -1));
  std::vector<std::vector<int>> into(folder.vertex_slots(), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (int e = 0; e < static_cast<int>(wedges.size()); ++e) {
    const auto& ed = wedges[static_cast<std::size_t>(e)];
    if (!ed.alive) continue;
    out_of[static_cast<std::size_t>(ed.from)][static_cast<std::size_t>(ed.gen)] = e;
    into[static_cast<std::size_t>(ed.to)][static_cast<std::size_t>(ed.gen)] = e;
  }

  // Breadth-first numbering and spanning-tree gauge T_v (tree-path decoration).
  std::vector<int> number(folder.vertex_slots(), -1);
  std::vector<FreeWord> gauge(folder.vertex_slots(), FreeWord(g.gen_alphabet_));
  std::deque<int> queue{0};
  number[0] = 0;
  int next = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int gen = 0; gen < k; ++gen) {
      for (bool forward : {true, false}) {
        const int e = (forward ? out_of : into)[static_cast<std::size_t>(v)][static_cast<std::size_t>(gen)];
        if (e < 0) continue;
        const auto& ed = wedges[static_cast<std::size_t>(e)];
        const int w = forward ? ed.to : ed.from;
        if (number[static_cast<std::size_t>(w)] >= 0) continue;
        number[static_cast<std::size_t>(w)] = next++;
        const auto& tv = gauge[static_cast<std::size_t>(v)];
        gauge[static_cast<std::size_t>(w)] = tv * (forward ? ed.dec : invert(ed.dec));
        queue.push_back(w);
      }
    }
  }

  g.vertices_ = next;
  for (const auto& ed : wedges) {
    if (!ed.alive) continue;
    const int from = number[static_cast<std::size_t>(ed.from)];
    const int to = number[static_cast<std::size_t>(ed.to)];
    FreeWord dec = gauge[static_cast<std::size_t>(ed.from)] * ed.dec * invert(gauge[static_cast<std::size_t>(ed.to)]);
    g.edges_.push_back({from, to, ed.gen, std::move(dec)});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.gen, a.to) < std::tie(b.from, b.gen, b.to); });

  g.out_.assign(static_cast<std::size_t>(g.vertices_ * k), -1);
  g.in_.assign(static_cast<std::size_t>(g.vertices_ * k), -1);
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    const auto& ed = g.edges_[static_cast<std::size_t>(e)];
    g.out_[static_cast<std::size_t>(ed.from * k + ed.gen)] = e;
    g.in_[static_cast<std::size_t>(ed.to * k + ed.gen)] = e;
  }
  return g;
}

int SubgroupGraph::step_edge(int vertex, int gen, bool forward) const {
  const int k = static_cast<int>(ambient_->size());
  const auto idx = static_cast<std::size_t>(vertex * k + gen);
  return forward ? out_[idx] : in_[idx];
}

SubgroupGraph::Walk SubgroupGraph::walk(const FreeWord& w, bool track) const {
  if (!w.is_identity() && !same_alphabet(w.alphabet(), ambient_)) {
    throw AlphabetMismatch("word is not over the subgroup's ambient alphabet");
  }
  Walk result;
  result.product = FreeWord(gen_alphabet_);
  int cur = basepoint();
  for (const auto& s : w.syllables()) {
    const bool forward = s.exp > 0;
    const std::int64_t total = forward ? s.exp : -s.exp;
    const int start = cur;
    std::vector<FreeWord> step_decs;
    std::int64_t taken = 0;
    bool cycled = false;
    while (taken < total) {
      const int e = step_edge(cur, s.gen, forward);
      if (e < 0) return result;
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      if (track) step_decs.push_back(forward ? ed.decoration : invert(ed.decoration));
      cur = forward ? ed.to : ed.from;
      ++taken;
      if (cur == start && taken < total) {
        cycled = true;
        break;
      }
    }
    if (!cycled) {
      if (track) {
        for (const auto& d : step_decs) result.product = result.product * d;
      }
      continue;
    }
    // Following this label from `start` is periodic with period `taken`.
    const std::int64_t period = taken;
    const std::int64_t rem = total % period;
    if (track) {
      FreeWord loop(gen_alphabet_);
      for (const auto& d : step_decs) loop = loop * d;
      result.product = result.product * power(loop, total / period);
      for (std::int64_t i = 0; i < rem; ++i) result.product = result.product * step_decs[static_cast<std::size_t>(i)];
    }
    cur = start;
    for (std::int64_t i = 0; i < rem; ++i) {
      const auto& ed = edges_[static_cast<std::size_t>(step_edge(cur, s.gen, forward))];
      cur = forward ? ed.to : ed.from;
    }
  }
  result.complete = true;
  result.end = cur;
  return result;
}

bool SubgroupGraph::contains(const FreeWord& w) const {
  const Walk r = walk(w, false);
  return r.complete && r.end == basepoint();
}

FreeWord SubgroupGraph::express(const FreeWord& w) const {
  Walk r = walk(w, true);
  if (!r.complete || r.end != basepoint()) throw NotAMember(w.to_string() + " is not in the subgroup");
  return r.product;
}

FreeWord SubgroupGraph::evaluate(const FreeWord& e) const {
  FreeWord out(ambient_);
  for (const auto& s : e.syllables()) out = out * power(gens_.at(static_cast<std::size_t>(s.gen)), s.exp);
  return out;
}

std::vector<std::tuple<int, int, int>> SubgroupGraph::canonical_form() const {
  std::vector<std::tuple<int, int, int>> out;
  for (const auto& e : edges_) out.emplace_back(e.from, e.gen, e.to);
  std::sort(out.begin(), out.end());
  return out;
}

std::string SubgroupGraph::to_string() const {
  std::ostringstream os;
  os << "vertices: " << vertices_ << "\n";
  os << "edges: " << edges_.size() << "\n";
  for (const auto& e : edges_) {
    os << "  " << e.from << " -" << ambient_->name(static_cast<std::size_t>(e.gen)) << "-> " << e.to;
    if (!e.decoration.is_identity()) os << "  [" << e.decoration.to_string() << "]";
    os << "\n";
  }
  os << "rank: " << rank();
  return os.str();
}

bool is_injective(const Endomorphism& phi) {
  const auto g = SubgroupGraph::build(phi.images(), phi.codomain());
  return g.rank() == static_cast<int>(phi.domain()->size());
}

}  // namespace hnnkit
