#ifndef ULPA_ASSOCGRAPH_HPP
#define ULPA_ASSOCGRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ulpa/paths.hpp"
#include "ulpa/ultragraph.hpp"

namespace ulpa {

// Binary word over the edge enumeration e_1, e_2, ...  Position i (1-based)
// says whether the word's range is cut with r(e_i) (bit 1) or away from it
// (bit 0): range(w) = intersection of r(e_i) over 1-bits minus the union over
// 0-bits.  A word with no 1-bit has empty range.
struct Word {
  std::vector<std::uint8_t> bits;  // nonempty, entries 0/1

  std::size_t length() const { return bits.size(); }
  Word prefix(std::size_t m) const;
  Word child(std::uint8_t b) const;
  bool has_one() const;
  // A string of zeros followed by a single one, i.e. 0^{n-1}1.
  bool is_zeros_then_one() const;
  std::string to_string() const;  // e.g. "011"

  bool operator==(const Word&) const = default;
  // Shorter words first, then bitwise.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.bits.size() != b.bits.size()) return a.bits.size() < b.bits.size();
    return a.bits < b.bits;
  }
};

UPSet word_range(const Ultragraph& g, const Word& w);

// The word skeleton of the associated graph: per length, the words with
// infinite range, plus the data derived from them.
//
// With a finite edge list no word is longer than the edge count, so every
// vertex lies in only finitely many word ranges and the longest-word rule
// picks sigma unambiguously.  The tie-break needed when a vertex lies in
// infinitely many ranges is therefore dead code and guarded by an error.
struct DeltaStructure {
  std::vector<Word> words;                   // sorted by (length, bits)
  std::vector<std::vector<int>> by_length;   // 1-based length -> word indices
  std::vector<int> roots;                    // indices of 0^{n-1}1 words
  std::vector<int> interior;                 // the rest (words with a parent)
  UPSet w_plus;                              // union of all word ranges
  UPSet w_infinity;                          // always empty here
  // sigma_preimage[i] = vertices whose longest containing word is words[i];
  // pairwise disjoint, union = w_plus, possibly empty or infinite per word.
  std::vector<UPSet> sigma_preimage;

  bool empty() const { return words.empty(); }
  int index_of(const Word& w) const;         // -1 when absent
  bool contains(const Word& w) const { return index_of(w) != -1; }
  // Longest word whose range contains v; -1 when v is in no word range.
  int sigma_index(const Ultragraph& g, std::uint64_t v) const;
  std::optional<Word> sigma(const Ultragraph& g, std::uint64_t v) const;
};

DeltaStructure compute_delta(const Ultragraph& g);

// A vertex of the associated graph: a concrete vertex or a word.
struct ENode {
  enum class Kind { vertex, word };
  Kind kind = Kind::vertex;
  std::uint64_t vertex = 0;
  Word word;

  static ENode of_vertex(std::uint64_t v) { return {Kind::vertex, v, {}}; }
  static ENode of_word(Word w) { return {Kind::word, 0, std::move(w)}; }
  std::string to_string() const;
  bool operator==(const ENode&) const = default;
  friend bool operator<(const ENode& a, const ENode& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::vertex) return a.vertex < b.vertex;
    return a.word < b.word;
  }
};

// An edge of the associated graph.
//   pair:       (e_n, x), source s(e_n), target x in X(e_n)
//   bar_vertex: sigma(v) -> v, one per vertex of a sigma family
//   bar_word:   w|_{n-1} -> w, for words w that are not 0^{n-1}1
struct EEdge {
  enum class Kind { pair, bar_vertex, bar_word };
  Kind kind = Kind::pair;
  int edge_index = -1;  // pair edges: index into g.edges
  ENode source;
  ENode target;

  bool operator==(const EEdge&) const = default;
  friend bool operator<(const EEdge& a, const EEdge& b) {
    return std::tie(a.kind, a.edge_index, a.source, a.target) <
           std::tie(b.kind, b.edge_index, b.source, b.target);
  }
};

// The graph associated with an ultragraph: vertices are the concrete vertices
// together with the infinite-range words; edges are the pair edges into the
// finite sets X(e_n), the bar edges from each word to its sigma family, and
// the bar edges along the word tree.
//
// Bar families are stored symbolically (one vertex set per word) because
// truncating the edge enumeration leaves whole range tails inside the longest
// words: their families can be infinite, which an unbounded enumeration never
// produces.  Every concrete query needs only finitely many family members.
struct AssocGraph {
  Ultragraph g;
  DeltaStructure delta;
  std::vector<std::vector<ENode>> x_sets;  // per edge: X(e_n), sorted
  std::vector<EEdge> pair_edges;
  std::vector<EEdge> bar_word_edges;
  std::map<std::uint64_t, std::vector<int>> pair_edges_by_source;
  std::vector<std::vector<int>> word_children;  // delta index -> child indices
  std::vector<int> word_parent;                 // delta index -> parent or -1

  // Out-degree of a node with bar families fully counted.
  CardinalityClass out_degree(const ENode& n) const;
  // Number of pair edges leaving v.
  std::uint64_t pair_degree(std::uint64_t v) const;
};

AssocGraph build_assoc_graph(const Ultragraph& g);

enum class PathSide { ultragraph, assoc };

// counts[len] = number of paths of that exact length, len <= max_len.
// On the ultragraph side: paths starting at v whose range contains w.
// On the assoc side: paths from v to w in the associated graph.
std::vector<std::uint64_t> count_paths(const AssocGraph& e, PathSide side,
                                       std::uint64_t v, std::uint64_t w,
                                       std::size_t max_len);

// All associated-graph paths from v to w of length <= max_len, as explicit
// edge lists in a deterministic order.  The zero-length path appears (as an
// empty list) exactly when v == w.
std::vector<std::vector<EEdge>> enumerate_assoc_paths(const AssocGraph& e,
                                                      std::uint64_t v,
                                                      std::uint64_t w,
                                                      std::size_t max_len);

// The path correspondence, made explicit: the associated-graph path from
// path_source(alpha) to w determined by an ultragraph path alpha with
// w in range(alpha).  A step into u via e_n becomes a single pair edge when
// no word of length >= n contains u, and otherwise a pair edge into the
// length-n word containing u, a bar chain up the word tree to sigma(u), and a
// bar edge down to u.  Restricted to any length cap on the output side this
// is a bijection onto the associated-graph paths; the test suites assert it.
std::vector<EEdge> correspondence_image(const AssocGraph& e, const Path& alpha,
                                        std::uint64_t w);

std::string eedge_to_string(const AssocGraph& e, const EEdge& ed);

// One biconditional, both sides evaluated independently.
struct SideCheck {
  bool assoc_side = false;
  bool ultragraph_side = false;
  bool agree() const { return assoc_side == ultragraph_side; }
};

// Cross-checks between an ultragraph and its associated graph.  Each check
// computes both sides of a known equivalence by separate algorithms; a
// disagreement is surfaced, never patched over.
//
// Truncation caveat: with finitely many edges the longest words keep infinite
// sigma families (see AssocGraph), so word vertices can be infinite emitters
// even though concrete vertices never are.  `emitter_finiteness` therefore
// compares over concrete vertices, where the equivalence genuinely lives;
// the word-family cardinalities are reported alongside, and the checks that
// need the full count (`row_finite_characterization`,
// `tame_infinite_paths`) use it.
struct LemmaReport {
  // assoc side: every concrete vertex has finite out-degree;
  // ultragraph side: no infinite emitters.
  SideCheck emitter_finiteness;
  // assoc side: no node of the associated graph is a sink;
  // ultragraph side: no vertex is a sink.
  SideCheck no_sinks;
  // assoc side: no infinite-range words exist;
  // ultragraph side: every edge range is finite.
  SideCheck finite_ranges_iff_no_words;
  // assoc side: fully row-finite and no words; ultragraph side: row-finite.
  SideCheck row_finite_characterization;
  // assoc side: fully row-finite, no cycle has an exit, and every infinite
  // path ends in a sink or a cycle; ultragraph side: same three, evaluated
  // on the ultragraph.
  SideCheck tame_infinite_paths;

  std::vector<std::pair<Word, CardinalityClass>> word_out_degrees;
  bool assoc_row_finite_full = true;      // word families counted
  bool assoc_row_finite_concrete = true;  // concrete vertices only

  bool all_agree() const;
};

LemmaReport check_lemmas(const AssocGraph& e);

// The finite substructure of the associated graph every cycle and every
// infinite path must stay inside: pair edges, bar word edges, and bar vertex
// edges into emitting vertices.  Nodes of `transitions` are indices into
// `edges`, with a step a -> b when b starts where a ends.
struct FollowableStructure {
  std::vector<EEdge> edges;
  Digraph transitions;
};

FollowableStructure followable_structure(const AssocGraph& e);

// Cycles of the associated graph (closed paths with pairwise distinct
// nodes), as edge lists in canonical rotation.
std::vector<std::vector<EEdge>> assoc_cycles(const AssocGraph& e);

// No-exit and infinite-path analyses of the associated graph, full
// out-degrees.  Shapes match the ultragraph-side analyses.
bool assoc_no_exit(const AssocGraph& e);
EndsResult assoc_infinite_paths_end_in_sink_or_cycle(const AssocGraph& e);

// Graphviz rendering: concrete vertices below `window`, all words, pair and
// bar word edges, and one dashed annotation per nonempty sigma family.
std::string to_dot(const AssocGraph& e, std::uint64_t window);

}  // namespace ulpa

#endif
