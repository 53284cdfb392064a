#include "ulpa/ultragraph.hpp"

#include <set>

#include "ulpa/errors.hpp"

namespace ulpa {

std::vector<int> Ultragraph::edges_from(std::uint64_t v) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].source == v) out.push_back(i);
  return out;
}

std::vector<Violation> validate(const Ultragraph& g) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const Edge& e = g.edges[i];
    if (!seen.insert(e.id).second)
      out.push_back({"duplicate edge id '" + e.id + "'", i});
    if (e.range.is_empty())
      out.push_back({"edge '" + e.id + "' has empty range", i});
    if (!g.universe.contains(e.source))
      out.push_back({"edge '" + e.id + "' has source outside the universe", i});
    if (!e.range.minus(g.universe.to_upset()).is_empty())
      out.push_back({"edge '" + e.id + "' has range outside the universe", i});
  }
  return out;
}

VertexClass classify_vertex(const Ultragraph& g, std::uint64_t v) {
  if (!g.universe.contains(v))
    throw UnknownVertex("vertex " + std::to_string(v) +
                        " outside the universe");
  VertexClass c;
  c.is_sink = g.edges_from(v).empty();
  c.is_source = true;
  for (const Edge& e : g.edges)
    if (e.range.contains(v)) c.is_source = false;
  c.is_infinite_emitter = false;
  c.is_regular = !c.is_sink && !c.is_infinite_emitter;
  return c;
}

UPSet sink_set(const Ultragraph& g) {
  std::vector<std::uint64_t> sources;
  for (const Edge& e : g.edges) sources.push_back(e.source);
  return g.universe.to_upset().minus(UPSet::finite_set(std::move(sources)));
}

UPSet source_set(const Ultragraph& g) {
  UPSet covered;
  for (const Edge& e : g.edges) covered = covered.unite(e.range);
  return g.universe.to_upset().minus(covered);
}

RowFiniteResult is_row_finite(const Ultragraph& g) {
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    if (g.edges[i].range.cardinality().infinite) return {false, i};
  return {true, -1};
}

AlgebraContext range_context(const Ultragraph& g) {
  std::vector<UPSet> gens;
  for (const Edge& e : g.edges) gens.push_back(e.range);
  return AlgebraContext::make(g.universe, std::move(gens));
}

}  // namespace ulpa
