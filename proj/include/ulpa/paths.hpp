#ifndef ULPA_PATHS_HPP
#define ULPA_PATHS_HPP

#include <optional>
#include <utility>

#include "ulpa/ultragraph.hpp"

namespace ulpa {

// A finite path: either zero-length at `start`, or a chain of edge indices
// where each next edge's source lies in the previous edge's range.
struct Path {
  std::uint64_t start = 0;  // used when `edges` is empty
  std::vector<int> edges;

  bool zero_length() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }
  bool operator==(const Path&) const = default;
};

bool path_valid(const Ultragraph& g, const Path& p);
std::uint64_t path_source(const Ultragraph& g, const Path& p);
UPSet path_range(const Ultragraph& g, const Path& p);
// Whether the path can wrap around: its source lies in its final range.
bool path_closed(const Ultragraph& g, const Path& p);

// All paths from `from` of length <= max_len, in depth-first preorder with
// edges tried in id-lexicographic order.  Includes the zero-length path.
std::vector<Path> enumerate_paths(const Ultragraph& g, std::uint64_t from,
                                  std::size_t max_len);

// All cycles (closed paths with pairwise distinct sources), each reported
// once in its id-lexicographically least rotation; sorted by length then ids.
std::vector<Path> find_cycles(const Ultragraph& g);

struct ExitWitness {
  enum class Kind { edge, sink };
  Kind kind = Kind::edge;
  int at_index = 0;           // path position whose range admits the exit
  int edge = -1;              // for Kind::edge
  std::uint64_t sink = 0;     // for Kind::sink
};

struct ExitReport {
  std::vector<std::pair<int, int>> edge_exits;     // (index, edge)
  std::vector<std::pair<int, UPSet>> sink_exits;   // (index, sinks in range)

  bool none() const { return edge_exits.empty() && sink_exits.empty(); }
  std::optional<ExitWitness> first() const;
};

// Exits of a path: alternative edges emitted from a range, and sinks lying in
// a range.  Closed paths are scanned cyclically (the successor of the last
// edge is the first), so a lone loop traversal exits nowhere.  Sink exits per
// index come as one vertex set, since cofinite ranges hold infinitely many.
ExitReport exits_of(const Ultragraph& g, const Path& p);

struct NoExitResult {
  bool no_exit = true;
  std::optional<std::pair<Path, ExitWitness>> witness;
};

// No cycle has an exit; equivalently every cycle step has a one-edge source
// and a one-vertex range.
NoExitResult is_no_exit(const Ultragraph& g);

// Small directed multigraph used for infinite-tail analysis.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> succ;

  // Strongly connected components in a deterministic order.
  std::vector<std::vector<int>> sccs() const;
};

// Nodes are edges; e -> f when f's source lies in e's range.
Digraph edge_transition_graph(const Ultragraph& g);

struct BranchWitness {
  std::vector<int> scc;
  int node = -1, succ_a = -1, succ_b = -1;  // two in-component successors
};

struct EndsResult {
  bool ends_in_sink_or_cycle = true;
  std::optional<BranchWitness> witness;
};

// True iff every nontrivial strongly connected component is a simple cycle
// (each node has exactly one in-component successor): with finitely many
// edges every infinite path tail then settles into a cycle, and infinite
// sinks cannot occur at all.
EndsResult ends_criterion(const Digraph& d);
EndsResult infinite_paths_end_in_sink_or_cycle(const Ultragraph& g);

enum class ComponentKind { acyclic_row_finite_sinks, isolated_loop, other };

struct Component {
  UPSet vertices;
  std::vector<int> edges;
  ComponentKind kind = ComponentKind::other;
};

struct Decomposition {
  std::vector<Component> components;  // components holding at least one edge
  UPSet residual;                     // untouched vertices, one family
  CardinalityClass residual_count;
};

// Undirected connectivity where an edge links its source with all its range
// vertices.  Residual singleton components are reported as one vertex set.
Decomposition decompose_components(const Ultragraph& g);

}  // namespace ulpa

#endif
