#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "testutil.hpp"
#include "ulpa/corpus.hpp"
#include "ulpa/errors.hpp"
#include "ulpa/paths.hpp"

using namespace ulpa;
using testutil::edge;
using testutil::fs;
using testutil::graph;

namespace {

std::set<std::vector<int>> least_rotations(const std::vector<Path>& cycles) {
  std::set<std::vector<int>> out;
  for (const Path& c : cycles) {
    std::vector<int> best = c.edges;
    for (std::size_t r = 1; r < c.edges.size(); ++r) {
      std::vector<int> rot;
      for (std::size_t i = 0; i < c.edges.size(); ++i)
        rot.push_back(c.edges[(r + i) % c.edges.size()]);
      best = std::min(best, rot);
    }
    out.insert(best);
  }
  return out;
}

}  // namespace

TEST_CASE("path basics") {
  auto g = graph(Universe::bounded(3),
                 {edge("e1", 0, fs({1})), edge("e2", 1, fs({2}))});

  Path zero{2, {}};
  CHECK(path_valid(g, zero));
  CHECK(path_source(g, zero) == 2);
  CHECK(path_range(g, zero) == UPSet::singleton(2));
  CHECK(path_closed(g, zero));  // trivially: the range is the start itself

  Path chain{0, {0, 1}};
  CHECK(path_valid(g, chain));
  CHECK(path_source(g, chain) == 0);
  CHECK(path_range(g, chain) == fs({2}));

  CHECK_FALSE(path_valid(g, Path{0, {1, 0}}));  // 2 is not the source of e1
  CHECK_FALSE(path_valid(g, Path{0, {5}}));     // no such edge
  CHECK_FALSE(path_valid(graph(Universe::bounded(1), {}), Path{4, {}}));
}

TEST_CASE("path enumeration is depth-first in id order") {
  auto g = graph(Universe::bounded(3),
                 {edge("e1", 0, fs({1})), edge("e2", 1, fs({2})),
                  edge("e3", 0, fs({2}))});
  auto ps = enumerate_paths(g, 0, 2);
  REQUIRE(ps.size() == 4);
  CHECK(ps[0] == Path{0, {}});
  CHECK(ps[1] == Path{0, {0}});
  CHECK(ps[2] == Path{0, {0, 1}});
  CHECK(ps[3] == Path{0, {2}});

  CHECK(enumerate_paths(g, 2, 5) == std::vector<Path>{Path{2, {}}});
  CHECK_THROWS_AS(enumerate_paths(g, 9, 1), UnknownVertex);
}

TEST_CASE("a lone loop is a cycle without exits") {
  auto g = graph(Universe::bounded(1), {edge("e1", 0, fs({0}))});
  auto cycles = find_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].edges == std::vector<int>{0});
  CHECK(exits_of(g, cycles[0]).none());
  CHECK(is_no_exit(g).no_exit);
}

TEST_CASE("a fat loop exits through the sink in its range") {
  auto g = graph(Universe::bounded(2), {edge("e1", 0, fs({0, 1}))});
  auto r = is_no_exit(g);
  REQUIRE_FALSE(r.no_exit);
  REQUIRE(r.witness.has_value());
  const auto& [cycle, w] = *r.witness;
  CHECK(cycle.edges == std::vector<int>{0});
  CHECK(w.kind == ExitWitness::Kind::sink);
  CHECK(w.at_index == 0);
  CHECK(w.sink == 1);
}

TEST_CASE("a clean two-cycle has no exit until a branch edge appears") {
  auto base = graph(Universe::bounded(3),
                    {edge("e1", 0, fs({1})), edge("e2", 1, fs({0}))});
  auto cycles = find_cycles(base);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].edges == std::vector<int>{0, 1});
  CHECK(is_no_exit(base).no_exit);

  auto g = base;
  g.edges.push_back(edge("e3", 1, fs({2})));
  auto r = is_no_exit(g);
  REQUIRE_FALSE(r.no_exit);
  REQUIRE(r.witness.has_value());
  const auto& [cycle, w] = *r.witness;
  CHECK(cycle.edges == std::vector<int>{0, 1});
  CHECK(w.kind == ExitWitness::Kind::edge);
  CHECK(w.at_index == 0);
  CHECK(w.edge == 2);
}

TEST_CASE("parallel returns make an infinite path that never settles") {
  auto g = graph(Universe::bounded(2),
                 {edge("e1", 0, fs({1})), edge("e2", 1, fs({0})),
                  edge("e3", 1, fs({0}))});
  auto r = infinite_paths_end_in_sink_or_cycle(g);
  REQUIRE_FALSE(r.ends_in_sink_or_cycle);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->scc == std::vector<int>{0, 1, 2});
  CHECK(r.witness->node == 0);
  CHECK(r.witness->succ_a == 1);
  CHECK(r.witness->succ_b == 2);

  // Without the duplicate return edge the criterion holds.
  auto h = graph(Universe::bounded(2),
                 {edge("e1", 0, fs({1})), edge("e2", 1, fs({0}))});
  CHECK(infinite_paths_end_in_sink_or_cycle(h).ends_in_sink_or_cycle);
}

TEST_CASE("component decomposition") {
  SUBCASE("loop plus a stick plus an untouched vertex") {
    auto g = graph(Universe::bounded(4),
                   {edge("e1", 0, fs({0})), edge("e2", 1, fs({2}))});
    auto d = decompose_components(g);
    REQUIRE(d.components.size() == 2);
    CHECK(d.components[0].edges == std::vector<int>{0});
    CHECK(d.components[0].vertices == fs({0}));
    CHECK(d.components[0].kind == ComponentKind::isolated_loop);
    CHECK(d.components[1].edges == std::vector<int>{1});
    CHECK(d.components[1].vertices == fs({1, 2}));
    CHECK(d.components[1].kind == ComponentKind::acyclic_row_finite_sinks);
    CHECK(d.residual == fs({3}));
    CHECK(d.residual_count == CardinalityClass{false, 1});
  }
  SUBCASE("an all-devouring loop is neither acyclic nor isolated") {
    auto g = graph(Universe::nat(), {edge("e1", 0, UPSet::all())});
    auto d = decompose_components(g);
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].kind == ComponentKind::other);
    CHECK(d.residual.is_empty());
    CHECK(d.residual_count == CardinalityClass{false, 0});
  }
  SUBCASE("ranges merge the components they touch") {
    auto g = graph(Universe::bounded(5),
                   {edge("e1", 0, fs({1})), edge("e2", 2, fs({3})),
                    edge("e3", 4, fs({1, 3}))});
    auto d = decompose_components(g);
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].edges == std::vector<int>{0, 1, 2});
    CHECK(d.components[0].vertices == fs({0, 1, 2, 3, 4}));
    CHECK(d.components[0].kind == ComponentKind::acyclic_row_finite_sinks);
  }
  SUBCASE("infinite residual") {
    auto g = graph(Universe::nat(), {edge("e1", 0, fs({1}))});
    auto d = decompose_components(g);
    CHECK(d.residual == UPSet::cofinite({0, 1}));
    CHECK(d.residual_count.infinite);
  }
}

TEST_CASE("enumeration agrees with the counting oracle on random graphs") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    Ultragraph g = random_ultragraph(rng);

    for (std::uint64_t v = 0; v < 7; ++v) {
      if (!g.universe.contains(v)) continue;
      auto expected = testutil::brute_paths(g, v, 4);
      auto got = enumerate_paths(g, v, 4);
      std::vector<std::vector<int>> got_edges;
      for (const Path& p : got) {
        CHECK(path_valid(g, p));
        got_edges.push_back(p.edges);
      }
      std::sort(expected.begin(), expected.end());
      std::sort(got_edges.begin(), got_edges.end());
      CHECK(expected == got_edges);
    }

    CHECK(least_rotations(find_cycles(g)) ==
          testutil::brute_cycles(g, g.edges.size()));
  }
}
