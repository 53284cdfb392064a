#ifndef ULPA_ULTRAGRAPH_HPP
#define ULPA_ULTRAGRAPH_HPP

#include <string>
#include <vector>

#include "ulpa/setalg.hpp"

namespace ulpa {

// A directed edge with a single source vertex and a nonempty set of range
// vertices.
struct Edge {
  std::string id;
  std::uint64_t source = 0;
  UPSet range;
};

struct Ultragraph {
  Universe universe;
  std::vector<Edge> edges;

  std::vector<int> edges_from(std::uint64_t v) const;
};

struct Violation {
  std::string what;
  int edge_index = -1;  // -1 when not tied to a specific edge
};

std::vector<Violation> validate(const Ultragraph& g);

struct VertexClass {
  bool is_sink = false;
  bool is_source = false;
  bool is_infinite_emitter = false;  // impossible with a finite edge list
  bool is_regular = false;
};

VertexClass classify_vertex(const Ultragraph& g, std::uint64_t v);

UPSet sink_set(const Ultragraph& g);    // vertices emitting no edge
UPSet source_set(const Ultragraph& g);  // vertices in no edge range

struct RowFiniteResult {
  bool row_finite = true;
  int witness_edge = -1;  // an edge with infinite range when !row_finite
};

RowFiniteResult is_row_finite(const Ultragraph& g);

// Set algebra generated by the edge ranges over the graph's universe.
AlgebraContext range_context(const Ultragraph& g);

}  // namespace ulpa

#endif
