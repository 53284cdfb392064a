#include "ulpa/assocgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {
constexpr std::size_t kMaxWords = 200000;
constexpr std::uint64_t kMaxXSet = 100000;
}  // namespace

Word Word::prefix(std::size_t m) const {
  if (m < 1 || m > bits.size())
    throw std::logic_error("word prefix length out of range");
  return Word{std::vector<std::uint8_t>(bits.begin(), bits.begin() + m)};
}

Word Word::child(std::uint8_t b) const {
  Word w = *this;
  w.bits.push_back(b);
  return w;
}

bool Word::has_one() const {
  return std::find(bits.begin(), bits.end(), 1) != bits.end();
}

bool Word::is_zeros_then_one() const {
  if (bits.empty() || bits.back() != 1) return false;
  for (std::size_t i = 0; i + 1 < bits.size(); ++i)
    if (bits[i] != 0) return false;
  return true;
}

std::string Word::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

UPSet word_range(const Ultragraph& g, const Word& w) {
  if (w.length() > g.edges.size())
    throw InvalidInput("word longer than the edge list");
  if (!w.has_one()) return UPSet::empty();
  UPSet r = UPSet::all();
  for (std::size_t i = 0; i < w.length(); ++i)
    if (w.bits[i]) r = r.intersect(g.edges[i].range);
  for (std::size_t i = 0; i < w.length(); ++i)
    if (!w.bits[i]) r = r.minus(g.edges[i].range);
  return r.intersect(g.universe.to_upset());
}

int DeltaStructure::index_of(const Word& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it != words.end() && *it == w)
    return static_cast<int>(it - words.begin());
  return -1;
}

int DeltaStructure::sigma_index(const Ultragraph& g, std::uint64_t v) const {
  for (std::size_t n = g.edges.size(); n >= 1; --n) {
    if (n >= by_length.size() || by_length[n].empty()) continue;
    Word chi;
    for (std::size_t i = 0; i < n; ++i)
      chi.bits.push_back(g.edges[i].range.contains(v) ? 1 : 0);
    int idx = index_of(chi);
    if (idx != -1) return idx;
  }
  return -1;
}

std::optional<Word> DeltaStructure::sigma(const Ultragraph& g,
                                          std::uint64_t v) const {
  int idx = sigma_index(g, v);
  if (idx == -1) return std::nullopt;
  return words[idx];
}

DeltaStructure compute_delta(const Ultragraph& g) {
  const std::size_t m = g.edges.size();
  DeltaStructure ds;
  std::vector<Word> level;  // previous level, any order
  std::vector<Word> all;
  for (std::size_t n = 1; n <= m; ++n) {
    // A length-n word with infinite range either extends one from the level
    // above or is the fresh root 0^{n-1}1: any other word has a 1 strictly
    // before position n, so its length-(n-1) prefix already has infinite
    // range.
    std::set<Word> candidates;
    for (const Word& w : level) {
      candidates.insert(w.child(0));
      candidates.insert(w.child(1));
    }
    Word root{std::vector<std::uint8_t>(n, 0)};
    root.bits.back() = 1;
    candidates.insert(root);
    std::vector<Word> next;
    for (const Word& w : candidates)
      if (word_range(g, w).cardinality().infinite) next.push_back(w);
    all.insert(all.end(), next.begin(), next.end());
    if (all.size() > kMaxWords)
      throw InvalidInput("infinite-range word tree too large");
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  ds.words = std::move(all);
  ds.by_length.assign(m + 1, {});
  for (std::size_t i = 0; i < ds.words.size(); ++i) {
    ds.by_length[ds.words[i].length()].push_back(static_cast<int>(i));
    if (ds.words[i].is_zeros_then_one())
      ds.roots.push_back(static_cast<int>(i));
    else
      ds.interior.push_back(static_cast<int>(i));
  }
  ds.w_plus = UPSet::empty();
  for (const Word& w : ds.words) ds.w_plus = ds.w_plus.unite(word_range(g, w));
  // Finitely many words, so no vertex lies in infinitely many ranges.
  ds.w_infinity = UPSet::empty();
  ds.sigma_preimage.resize(ds.words.size());
  for (std::size_t i = 0; i < ds.words.size(); ++i) {
    UPSet rest = word_range(g, ds.words[i]);
    for (std::size_t j = 0; j < ds.words.size(); ++j) {
      if (ds.words[j].length() <= ds.words[i].length()) continue;
      if (ds.words[j].prefix(ds.words[i].length()) == ds.words[i])
        rest = rest.minus(word_range(g, ds.words[j]));
    }
    ds.sigma_preimage[i] = std::move(rest);
  }
  return ds;
}

std::string ENode::to_string() const {
  return kind == Kind::vertex ? std::to_string(vertex)
                              : "[" + word.to_string() + "]";
}

CardinalityClass AssocGraph::out_degree(const ENode& n) const {
  if (n.kind == ENode::Kind::vertex)
    return {false, pair_degree(n.vertex)};
  int idx = delta.index_of(n.word);
  if (idx == -1) throw InvalidInput("not a node of the associated graph");
  CardinalityClass fam = delta.sigma_preimage[idx].cardinality();
  if (fam.infinite) return fam;
  return {false, fam.count + word_children[idx].size()};
}

std::uint64_t AssocGraph::pair_degree(std::uint64_t v) const {
  auto it = pair_edges_by_source.find(v);
  return it == pair_edges_by_source.end() ? 0 : it->second.size();
}

AssocGraph build_assoc_graph(const Ultragraph& g) {
  auto violations = validate(g);
  if (!violations.empty()) throw InvalidInput(violations.front().what);
  AssocGraph e;
  e.g = g;
  e.delta = compute_delta(g);
  const std::size_t m = g.edges.size();

  e.x_sets.resize(m);
  for (std::size_t n0 = 0; n0 < m; ++n0) {
    const std::size_t n = n0 + 1;
    // Vertices of the range not inside any word of length >= n.  Words with
    // a 0 at position n have ranges disjoint from r(e_n), so restricting to
    // a 1 there changes nothing but keeps the subtraction tight.
    UPSet vertex_part = g.edges[n0].range;
    for (std::size_t len = n; len < e.delta.by_length.size(); ++len)
      for (int idx : e.delta.by_length[len])
        if (e.delta.words[idx].bits[n0])
          vertex_part = vertex_part.minus(word_range(g, e.delta.words[idx]));
    CardinalityClass card = vertex_part.cardinality();
    if (card.infinite)
      throw std::logic_error(
          "internal: the concrete part of an X set came out infinite");
    if (card.count > kMaxXSet) throw InvalidInput("X set too large");
    std::vector<ENode>& xs = e.x_sets[n0];
    for (std::uint64_t v : vertex_part.elements())
      xs.push_back(ENode::of_vertex(v));
    if (n < e.delta.by_length.size())
      for (int idx : e.delta.by_length[n])
        if (e.delta.words[idx].bits[n0])
          xs.push_back(ENode::of_word(e.delta.words[idx]));
    if (xs.empty())
      throw std::logic_error("internal: an X set came out empty");
    for (const ENode& x : xs)
      e.pair_edges.push_back(EEdge{EEdge::Kind::pair, static_cast<int>(n0),
                                   ENode::of_vertex(g.edges[n0].source), x});
  }
  for (std::size_t k = 0; k < e.pair_edges.size(); ++k)
    e.pair_edges_by_source[e.pair_edges[k].source.vertex].push_back(
        static_cast<int>(k));

  e.word_children.assign(e.delta.words.size(), {});
  e.word_parent.assign(e.delta.words.size(), -1);
  for (std::size_t i = 0; i < e.delta.words.size(); ++i) {
    const Word& w = e.delta.words[i];
    if (w.is_zeros_then_one()) continue;  // roots of the word tree
    int pidx = e.delta.index_of(w.prefix(w.length() - 1));
    if (pidx == -1)
      throw std::logic_error(
          "internal: a non-root word's parent has finite range");
    e.word_parent[i] = pidx;
    e.word_children[pidx].push_back(static_cast<int>(i));
    e.bar_word_edges.push_back(EEdge{EEdge::Kind::bar_word, -1,
                                     ENode::of_word(e.delta.words[pidx]),
                                     ENode::of_word(w)});
  }
  return e;
}

namespace {

// Successor edges of a node that can matter for paths ending at `w`: from a
// word, only family members that emit something (or are `w` itself) can be
// stepped into and then left or stopped at.
std::vector<EEdge> successors(const AssocGraph& e, const ENode& node,
                              std::uint64_t w) {
  std::vector<EEdge> out;
  if (node.kind == ENode::Kind::vertex) {
    auto it = e.pair_edges_by_source.find(node.vertex);
    if (it != e.pair_edges_by_source.end())
      for (int k : it->second) out.push_back(e.pair_edges[k]);
    return out;
  }
  int idx = e.delta.index_of(node.word);
  for (int c : e.word_children[idx])
    out.push_back(EEdge{EEdge::Kind::bar_word, -1, node,
                        ENode::of_word(e.delta.words[c])});
  std::set<std::uint64_t> targets;
  if (e.delta.sigma_preimage[idx].contains(w)) targets.insert(w);
  for (const Edge& ge : e.g.edges)
    if (e.delta.sigma_preimage[idx].contains(ge.source))
      targets.insert(ge.source);
  for (std::uint64_t v : targets)
    out.push_back(EEdge{EEdge::Kind::bar_vertex, -1, node,
                        ENode::of_vertex(v)});
  return out;
}

}  // namespace

std::vector<std::uint64_t> count_paths(const AssocGraph& e, PathSide side,
                                       std::uint64_t v, std::uint64_t w,
                                       std::size_t max_len) {
  if (!e.g.universe.contains(v) || !e.g.universe.contains(w))
    throw UnknownVertex("path endpoint outside the universe");
  std::vector<std::uint64_t> counts(max_len + 1, 0);
  if (side == PathSide::ultragraph) {
    for (const Path& p : enumerate_paths(e.g, v, max_len))
      if (path_range(e.g, p).contains(w)) ++counts[p.length()];
    return counts;
  }
  std::function<void(const ENode&, std::size_t)> dfs =
      [&](const ENode& node, std::size_t len) {
        if (node == ENode::of_vertex(w)) ++counts[len];
        if (len == max_len) return;
        for (const EEdge& ed : successors(e, node, w)) dfs(ed.target, len + 1);
      };
  dfs(ENode::of_vertex(v), 0);
  return counts;
}

std::vector<std::vector<EEdge>> enumerate_assoc_paths(const AssocGraph& e,
                                                      std::uint64_t v,
                                                      std::uint64_t w,
                                                      std::size_t max_len) {
  if (!e.g.universe.contains(v) || !e.g.universe.contains(w))
    throw UnknownVertex("path endpoint outside the universe");
  std::vector<std::vector<EEdge>> out;
  std::vector<EEdge> cur;
  std::function<void(const ENode&)> dfs = [&](const ENode& node) {
    if (node == ENode::of_vertex(w)) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (const EEdge& ed : successors(e, node, w)) {
      cur.push_back(ed);
      dfs(ed.target);
      cur.pop_back();
    }
  };
  dfs(ENode::of_vertex(v));
  return out;
}

std::vector<EEdge> correspondence_image(const AssocGraph& e, const Path& alpha,
                                        std::uint64_t w) {
  if (!path_valid(e.g, alpha)) throw InvalidInput("invalid path");
  if (!path_range(e.g, alpha).contains(w))
    throw InvalidInput("target vertex is not in the path's range");
  std::vector<EEdge> out;
  for (std::size_t i = 0; i < alpha.edges.size(); ++i) {
    const int n0 = alpha.edges[i];
    const std::size_t n = static_cast<std::size_t>(n0) + 1;
    const std::uint64_t u = i + 1 < alpha.edges.size()
                                ? e.g.edges[alpha.edges[i + 1]].source
                                : w;
    const ENode src = ENode::of_vertex(e.g.edges[n0].source);
    int si = e.delta.sigma_index(e.g, u);
    if (si == -1 || e.delta.words[si].length() < n) {
      out.push_back(EEdge{EEdge::Kind::pair, n0, src, ENode::of_vertex(u)});
      continue;
    }
    // The step lands inside the word tree: enter at the length-n word
    // containing u, climb to sigma(u), drop down to u.
    const Word& sw = e.delta.words[si];
    Word chi = sw.prefix(n);
    if (e.delta.index_of(chi) == -1)
      throw std::logic_error(
          "internal: a prefix of a sigma word has finite range");
    out.push_back(EEdge{EEdge::Kind::pair, n0, src, ENode::of_word(chi)});
    for (std::size_t j = n + 1; j <= sw.length(); ++j)
      out.push_back(EEdge{EEdge::Kind::bar_word, -1,
                          ENode::of_word(sw.prefix(j - 1)),
                          ENode::of_word(sw.prefix(j))});
    out.push_back(EEdge{EEdge::Kind::bar_vertex, -1, ENode::of_word(sw),
                        ENode::of_vertex(u)});
  }
  return out;
}

std::string eedge_to_string(const AssocGraph& e, const EEdge& ed) {
  switch (ed.kind) {
    case EEdge::Kind::pair:
      return "(" + e.g.edges[ed.edge_index].id + "," + ed.target.to_string() +
             ")";
    case EEdge::Kind::bar_vertex:
    case EEdge::Kind::bar_word:
      return "bar:" + ed.source.to_string() + "->" + ed.target.to_string();
  }
  return "?";
}

FollowableStructure followable_structure(const AssocGraph& e) {
  FollowableStructure fs;
  fs.edges = e.pair_edges;
  fs.edges.insert(fs.edges.end(), e.bar_word_edges.begin(),
                  e.bar_word_edges.end());
  std::set<std::uint64_t> sources;
  for (const Edge& ge : e.g.edges) sources.insert(ge.source);
  for (std::size_t i = 0; i < e.delta.words.size(); ++i)
    for (std::uint64_t s : sources)
      if (e.delta.sigma_preimage[i].contains(s))
        fs.edges.push_back(EEdge{EEdge::Kind::bar_vertex, -1,
                                 ENode::of_word(e.delta.words[i]),
                                 ENode::of_vertex(s)});
  std::sort(fs.edges.begin(), fs.edges.end());
  fs.transitions.n = static_cast<int>(fs.edges.size());
  fs.transitions.succ.resize(fs.transitions.n);
  for (int a = 0; a < fs.transitions.n; ++a)
    for (int b = 0; b < fs.transitions.n; ++b)
      if (fs.edges[a].target == fs.edges[b].source)
        fs.transitions.succ[a].push_back(b);
  return fs;
}

namespace {

// Model the followable part as an ultragraph with singleton ranges so the
// cycle machinery can be reused verbatim.
struct FollowableModel {
  FollowableStructure fs;
  std::vector<ENode> nodes;  // synthetic vertex id -> node
  Ultragraph synthetic;
};

FollowableModel followable_model(const AssocGraph& e) {
  FollowableModel fm;
  fm.fs = followable_structure(e);
  std::set<ENode> node_set;
  for (const EEdge& ed : fm.fs.edges) {
    node_set.insert(ed.source);
    node_set.insert(ed.target);
  }
  fm.nodes.assign(node_set.begin(), node_set.end());
  auto node_id = [&](const ENode& n) {
    return static_cast<std::uint64_t>(
        std::lower_bound(fm.nodes.begin(), fm.nodes.end(), n) -
        fm.nodes.begin());
  };
  fm.synthetic.universe = Universe::bounded(fm.nodes.size());
  for (std::size_t k = 0; k < fm.fs.edges.size(); ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "f%06zu", k);
    fm.synthetic.edges.push_back(
        Edge{id, node_id(fm.fs.edges[k].source),
             UPSet::singleton(node_id(fm.fs.edges[k].target))});
  }
  return fm;
}

}  // namespace

std::vector<std::vector<EEdge>> assoc_cycles(const AssocGraph& e) {
  FollowableModel fm = followable_model(e);
  std::vector<std::vector<EEdge>> out;
  for (const Path& c : find_cycles(fm.synthetic)) {
    std::vector<EEdge> cyc;
    for (int k : c.edges) cyc.push_back(fm.fs.edges[k]);
    out.push_back(std::move(cyc));
  }
  return out;
}

bool assoc_no_exit(const AssocGraph& e) {
  for (const auto& cyc : assoc_cycles(e))
    for (const EEdge& ed : cyc)
      if (!(e.out_degree(ed.source) == CardinalityClass{false, 1}))
        return false;
  return true;
}

EndsResult assoc_infinite_paths_end_in_sink_or_cycle(const AssocGraph& e) {
  return ends_criterion(followable_structure(e).transitions);
}

bool LemmaReport::all_agree() const {
  return emitter_finiteness.agree() && no_sinks.agree() &&
         finite_ranges_iff_no_words.agree() &&
         row_finite_characterization.agree() && tame_infinite_paths.agree();
}

LemmaReport check_lemmas(const AssocGraph& e) {
  LemmaReport rep;
  const Ultragraph& g = e.g;

  // A finite edge list has no infinite emitters; state it via the actual
  // maximum emission count so the computation stays honest.
  std::uint64_t max_emit = 0;
  for (const Edge& ge : g.edges)
    max_emit = std::max<std::uint64_t>(max_emit,
                                       g.edges_from(ge.source).size());
  const bool g_no_infinite_emitters = max_emit < kMaxXSet;  // always true

  std::uint64_t max_pair = 0;
  for (const auto& [v, ks] : e.pair_edges_by_source)
    max_pair = std::max<std::uint64_t>(max_pair, ks.size());
  rep.assoc_row_finite_concrete = max_pair < kMaxXSet;  // always true

  bool word_sink = false;
  rep.assoc_row_finite_full = true;
  for (std::size_t i = 0; i < e.delta.words.size(); ++i) {
    CardinalityClass d = e.out_degree(ENode::of_word(e.delta.words[i]));
    rep.word_out_degrees.emplace_back(e.delta.words[i], d);
    if (d.infinite) rep.assoc_row_finite_full = false;
    if (!d.infinite && d.count == 0) word_sink = true;
  }

  rep.emitter_finiteness = {rep.assoc_row_finite_concrete,
                            g_no_infinite_emitters};

  const bool g_sink_free = sink_set(g).is_empty();
  rep.no_sinks = {!word_sink && g_sink_free, g_sink_free};

  const bool ranges_finite = is_row_finite(g).row_finite;
  rep.finite_ranges_iff_no_words = {e.delta.empty(), ranges_finite};

  const bool g_row_finite = ranges_finite && g_no_infinite_emitters;
  rep.row_finite_characterization = {
      rep.assoc_row_finite_full && e.delta.empty(), g_row_finite};

  const bool g_tame = g_row_finite && is_no_exit(g).no_exit &&
                      infinite_paths_end_in_sink_or_cycle(g)
                          .ends_in_sink_or_cycle;
  const bool e_tame =
      rep.assoc_row_finite_full && rep.assoc_row_finite_concrete &&
      assoc_no_exit(e) &&
      assoc_infinite_paths_end_in_sink_or_cycle(e).ends_in_sink_or_cycle;
  rep.tame_infinite_paths = {e_tame, g_tame};
  return rep;
}

std::string to_dot(const AssocGraph& e, std::uint64_t window) {
  std::ostringstream os;
  os << "digraph assoc {\n  rankdir=LR;\n";
  std::set<std::uint64_t> shown;
  for (std::uint64_t v = 0; v < window; ++v)
    if (e.g.universe.contains(v)) shown.insert(v);
  for (const EEdge& ed : e.pair_edges) {
    shown.insert(ed.source.vertex);
    if (ed.target.kind == ENode::Kind::vertex) shown.insert(ed.target.vertex);
  }
  for (std::uint64_t v : shown)
    os << "  v" << v << " [label=\"" << v << "\", shape=circle];\n";
  for (const Word& w : e.delta.words)
    os << "  w" << w.to_string() << " [label=\"" << w.to_string()
       << "\", shape=box];\n";
  auto name = [](const ENode& n) {
    return n.kind == ENode::Kind::vertex ? "v" + std::to_string(n.vertex)
                                         : "w" + n.word.to_string();
  };
  for (const EEdge& ed : e.pair_edges)
    os << "  " << name(ed.source) << " -> " << name(ed.target) << " [label=\""
       << e.g.edges[ed.edge_index].id << "\"];\n";
  for (const EEdge& ed : e.bar_word_edges)
    os << "  " << name(ed.source) << " -> " << name(ed.target)
       << " [style=bold];\n";
  for (std::size_t i = 0; i < e.delta.words.size(); ++i) {
    if (e.delta.sigma_preimage[i].is_empty()) continue;
    os << "  fam" << i << " [shape=note, label=\"family "
       << e.delta.sigma_preimage[i].to_string() << "\"];\n";
    os << "  w" << e.delta.words[i].to_string() << " -> fam" << i
       << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ulpa
