#include "ulpa/paths.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {

// Edge indices ordered by id (ties by index), the order used whenever edge
// alternatives are tried.
std::vector<int> edges_by_id(const Ultragraph& g) {
  std::vector<int> idx(g.edges.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return g.edges[a].id < g.edges[b].id;
  });
  return idx;
}

std::vector<std::string> id_sequence(const Ultragraph& g,
                                     const std::vector<int>& seq) {
  std::vector<std::string> ids;
  for (int e : seq) ids.push_back(g.edges[e].id);
  return ids;
}

}  // namespace

bool path_valid(const Ultragraph& g, const Path& p) {
  if (p.zero_length()) return g.universe.contains(p.start);
  const int m = static_cast<int>(g.edges.size());
  for (int e : p.edges)
    if (e < 0 || e >= m) return false;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
    if (!g.edges[p.edges[i]].range.contains(g.edges[p.edges[i + 1]].source))
      return false;
  return true;
}

std::uint64_t path_source(const Ultragraph& g, const Path& p) {
  return p.zero_length() ? p.start : g.edges[p.edges.front()].source;
}

UPSet path_range(const Ultragraph& g, const Path& p) {
  return p.zero_length() ? UPSet::singleton(p.start)
                         : g.edges[p.edges.back()].range;
}

bool path_closed(const Ultragraph& g, const Path& p) {
  return path_range(g, p).contains(path_source(g, p));
}

std::vector<Path> enumerate_paths(const Ultragraph& g, std::uint64_t from,
                                  std::size_t max_len) {
  if (!g.universe.contains(from))
    throw UnknownVertex("vertex " + std::to_string(from) +
                        " outside the universe");
  const auto order = edges_by_id(g);
  std::vector<Path> out;
  Path cur{from, {}};
  std::function<void()> dfs = [&]() {
    out.push_back(cur);
    if (cur.length() >= max_len) return;
    for (int e : order) {
      bool fits = cur.zero_length()
                      ? g.edges[e].source == from
                      : g.edges[cur.edges.back()].range.contains(
                            g.edges[e].source);
      if (!fits) continue;
      cur.edges.push_back(e);
      dfs();
      cur.edges.pop_back();
    }
  };
  dfs();
  return out;
}

std::vector<Path> find_cycles(const Ultragraph& g) {
  const int m = static_cast<int>(g.edges.size());
  const auto order = edges_by_id(g);
  std::set<std::vector<int>> canon;

  auto canonical = [&](const std::vector<int>& seq) {
    std::vector<int> best = seq;
    auto best_ids = id_sequence(g, best);
    std::vector<int> rot = seq;
    for (std::size_t k = 1; k < seq.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      auto ids = id_sequence(g, rot);
      if (ids < best_ids) {
        best = rot;
        best_ids = ids;
      }
    }
    return best;
  };

  std::vector<int> seq;
  std::set<std::uint64_t> used_sources;
  std::function<void()> dfs = [&]() {
    if (g.edges[seq.back()].range.contains(g.edges[seq.front()].source))
      canon.insert(canonical(seq));
    if (static_cast<int>(seq.size()) == m) return;
    for (int f : order) {
      std::uint64_t src = g.edges[f].source;
      if (used_sources.count(src)) continue;
      if (!g.edges[seq.back()].range.contains(src)) continue;
      seq.push_back(f);
      used_sources.insert(src);
      dfs();
      used_sources.erase(src);
      seq.pop_back();
    }
  };
  for (int e = 0; e < m; ++e) {
    seq = {e};
    used_sources = {g.edges[e].source};
    dfs();
  }

  std::vector<Path> out;
  for (const auto& c : canon) out.push_back(Path{0, c});
  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return id_sequence(g, a.edges) < id_sequence(g, b.edges);
  });
  return out;
}

std::optional<ExitWitness> ExitReport::first() const {
  std::optional<ExitWitness> best;
  auto better = [&](const ExitWitness& w) {
    if (!best) return true;
    if (w.at_index != best->at_index) return w.at_index < best->at_index;
    // Edge exits come before sink exits at the same index.
    return w.kind == ExitWitness::Kind::edge &&
           best->kind == ExitWitness::Kind::sink;
  };
  for (const auto& [i, e] : edge_exits) {
    ExitWitness w{ExitWitness::Kind::edge, i, e, 0};
    if (better(w)) best = w;
  }
  for (const auto& [i, s] : sink_exits) {
    ExitWitness w{ExitWitness::Kind::sink, i, -1, *s.min_element()};
    if (better(w)) best = w;
  }
  return best;
}

ExitReport exits_of(const Ultragraph& g, const Path& p) {
  ExitReport rep;
  if (p.zero_length()) return rep;
  if (!path_valid(g, p)) throw InvalidInput("invalid path");
  const bool closed = path_closed(g, p);
  const auto order = edges_by_id(g);
  const UPSet sinks = sink_set(g);
  const int n = static_cast<int>(p.edges.size());
  for (int i = 0; i < n; ++i) {
    const UPSet& r = g.edges[p.edges[i]].range;
    int successor = i + 1 < n ? p.edges[i + 1] : (closed ? p.edges[0] : -1);
    for (int f : order)
      if (f != successor && r.contains(g.edges[f].source))
        rep.edge_exits.emplace_back(i, f);
    UPSet s = sinks.intersect(r);
    if (!s.is_empty()) rep.sink_exits.emplace_back(i, std::move(s));
  }
  return rep;
}

NoExitResult is_no_exit(const Ultragraph& g) {
  for (const Path& cycle : find_cycles(g)) {
    bool clean = true;
    for (std::size_t i = 0; i < cycle.edges.size() && clean; ++i) {
      const Edge& e = g.edges[cycle.edges[i]];
      if (g.edges_from(e.source).size() != 1) clean = false;
      if (!(e.range.cardinality() == CardinalityClass{false, 1}))
        clean = false;
    }
    if (clean) continue;
    auto w = exits_of(g, cycle).first();
    if (!w)
      throw std::logic_error("internal: cycle fails the numeric no-exit "
                             "condition but shows no exit");
    return {false, std::make_pair(cycle, *w)};
  }
  return {true, std::nullopt};
}

std::vector<std::vector<int>> Digraph::sccs() const {
  // Iterative Tarjan.
  std::vector<int> index(n, -1), low(n, 0), stack, comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> out;
  int counter = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < succ[f.v].size()) {
        int w = succ[f.v][f.next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> scc;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc.push_back(w);
            if (w == f.v) break;
          }
          std::sort(scc.begin(), scc.end());
          out.push_back(std::move(scc));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Digraph edge_transition_graph(const Ultragraph& g) {
  Digraph d;
  d.n = static_cast<int>(g.edges.size());
  d.succ.resize(d.n);
  for (int e = 0; e < d.n; ++e)
    for (int f = 0; f < d.n; ++f)
      if (g.edges[e].range.contains(g.edges[f].source)) d.succ[e].push_back(f);
  return d;
}

EndsResult ends_criterion(const Digraph& d) {
  for (const auto& scc : d.sccs()) {
    bool nontrivial = scc.size() > 1;
    if (!nontrivial) {
      int v = scc[0];
      nontrivial = std::count(d.succ[v].begin(), d.succ[v].end(), v) > 0;
    }
    if (!nontrivial) continue;
    std::set<int> members(scc.begin(), scc.end());
    for (int v : scc) {
      std::vector<int> inside;
      for (int w : d.succ[v])
        if (members.count(w)) inside.push_back(w);
      if (inside.size() != 1) {
        BranchWitness bw;
        bw.scc = scc;
        bw.node = v;
        bw.succ_a = inside.empty() ? -1 : inside[0];
        bw.succ_b = inside.size() > 1 ? inside[1] : -1;
        return {false, bw};
      }
    }
  }
  return {true, std::nullopt};
}

EndsResult infinite_paths_end_in_sink_or_cycle(const Ultragraph& g) {
  return ends_criterion(edge_transition_graph(g));
}

Decomposition decompose_components(const Ultragraph& g) {
  const int m = static_cast<int>(g.edges.size());
  std::vector<UPSet> touched(m);
  for (int e = 0; e < m; ++e)
    touched[e] =
        g.edges[e].range.unite(UPSet::singleton(g.edges[e].source));

  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (touched[a].intersects(touched[b])) parent[find(a)] = find(b);

  std::map<int, std::vector<int>> groups;
  for (int e = 0; e < m; ++e) groups[find(e)].push_back(e);

  Decomposition dec;
  std::vector<std::vector<int>> ordered;
  for (auto& [root, edges] : groups) ordered.push_back(edges);
  std::sort(ordered.begin(), ordered.end());

  UPSet covered;
  for (auto& edge_list : ordered) {
    Component comp;
    comp.edges = edge_list;
    Ultragraph sub{g.universe, {}};
    for (int e : edge_list) {
      comp.vertices = comp.vertices.unite(touched[e]);
      sub.edges.push_back(g.edges[e]);
    }
    covered = covered.unite(comp.vertices);
    const Edge& e0 = g.edges[edge_list[0]];
    if (edge_list.size() == 1 && e0.range == UPSet::singleton(e0.source)) {
      comp.kind = ComponentKind::isolated_loop;
    } else if (find_cycles(sub).empty() && is_row_finite(sub).row_finite) {
      // Acyclic with finitely many edges: infinite paths are impossible, so
      // "infinite paths end in sinks" holds vacuously.
      comp.kind = ComponentKind::acyclic_row_finite_sinks;
    } else {
      comp.kind = ComponentKind::other;
    }
    dec.components.push_back(std::move(comp));
  }
  dec.residual = g.universe.to_upset().minus(covered);
  dec.residual_count = dec.residual.cardinality();
  return dec;
}

}  // namespace ulpa
