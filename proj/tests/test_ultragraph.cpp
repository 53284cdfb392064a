#include <doctest.h>

#include <algorithm>

#include "testutil.hpp"
#include "ulpa/errors.hpp"
#include "ulpa/ultragraph.hpp"

using namespace ulpa;
using testutil::edge;
using testutil::fs;
using testutil::graph;

TEST_CASE("validate accepts a well-formed ultragraph") {
  auto g = graph(Universe::bounded(3),
                 {edge("e1", 0, fs({1, 2})), edge("e2", 1, fs({0}))});
  CHECK(validate(g).empty());
}

TEST_CASE("validate reports every malformed edge") {
  SUBCASE("empty range") {
    auto g = graph(Universe::nat(), {edge("e1", 0, UPSet::empty())});
    auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "edge 'e1' has empty range");
    CHECK(v[0].edge_index == 0);
  }
  SUBCASE("source outside a finite universe") {
    auto g = graph(Universe::bounded(2), {edge("e1", 5, fs({0}))});
    auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "edge 'e1' has source outside the universe");
  }
  SUBCASE("range outside a finite universe") {
    auto g = graph(Universe::bounded(2), {edge("e1", 0, fs({1, 4}))});
    auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "edge 'e1' has range outside the universe");
  }
  SUBCASE("infinite range inside a finite universe") {
    auto g = graph(Universe::bounded(2), {edge("e1", 0, UPSet::all())});
    auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "edge 'e1' has range outside the universe");
  }
  SUBCASE("duplicate id, second occurrence flagged") {
    auto g = graph(Universe::nat(),
                   {edge("e1", 0, fs({1})), edge("e1", 1, fs({2}))});
    auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].what == "duplicate edge id 'e1'");
    CHECK(v[0].edge_index == 1);
  }
  SUBCASE("several problems accumulate") {
    auto g = graph(Universe::bounded(1),
                   {edge("e1", 0, UPSet::empty()), edge("e1", 3, fs({0}))});
    auto v = validate(g);
    CHECK(v.size() == 3);  // empty range, duplicate id, bad source
  }
}

TEST_CASE("vertex classification") {
  // 0 --e1--> {1,2}, 1 --e2--> {1}
  auto g = graph(Universe::bounded(3),
                 {edge("e1", 0, fs({1, 2})), edge("e2", 1, fs({1}))});

  auto c0 = classify_vertex(g, 0);
  CHECK_FALSE(c0.is_sink);
  CHECK(c0.is_source);
  CHECK(c0.is_regular);

  auto c1 = classify_vertex(g, 1);
  CHECK_FALSE(c1.is_sink);
  CHECK_FALSE(c1.is_source);

  auto c2 = classify_vertex(g, 2);
  CHECK(c2.is_sink);
  CHECK_FALSE(c2.is_source);
  CHECK_FALSE(c2.is_regular);

  CHECK_FALSE(classify_vertex(g, 0).is_infinite_emitter);
  CHECK_THROWS_AS(classify_vertex(g, 3), UnknownVertex);
}

TEST_CASE("sink and source sets") {
  auto g = graph(Universe::bounded(4),
                 {edge("e1", 0, fs({1, 2})), edge("e2", 1, fs({1}))});
  CHECK(sink_set(g) == fs({2, 3}));
  CHECK(source_set(g) == fs({0, 3}));

  auto h = graph(Universe::nat(), {edge("e1", 0, UPSet::cofinite({0}))});
  CHECK(sink_set(h) == UPSet::cofinite({0}));
  CHECK(source_set(h) == UPSet::singleton(0));
}

TEST_CASE("row finiteness flags the first infinite range") {
  auto g = graph(Universe::nat(), {edge("e1", 0, fs({1})),
                                   edge("e2", 1, UPSet::periodic(0, 2, {0})),
                                   edge("e3", 2, UPSet::all())});
  auto r = is_row_finite(g);
  CHECK_FALSE(r.row_finite);
  CHECK(r.witness_edge == 1);

  auto h = graph(Universe::nat(), {edge("e1", 0, fs({1}))});
  auto rh = is_row_finite(h);
  CHECK(rh.row_finite);
  CHECK(rh.witness_edge == -1);
}

TEST_CASE("edges_from lists emitted edge indices in order") {
  auto g = graph(Universe::bounded(3),
                 {edge("e1", 0, fs({1})), edge("e2", 1, fs({2})),
                  edge("e3", 0, fs({2}))});
  CHECK(g.edges_from(0) == std::vector<int>{0, 2});
  CHECK(g.edges_from(1) == std::vector<int>{1});
  CHECK(g.edges_from(2).empty());
}

TEST_CASE("range context exposes the ranges as generators") {
  auto g = graph(Universe::nat(), {edge("e1", 0, UPSet::periodic(0, 2, {0})),
                                   edge("e2", 1, fs({0, 2}))});
  auto ctx = range_context(g);
  REQUIRE(ctx.generators().size() == 2);
  CHECK(ctx.generators()[0] == g.edges[0].range);
  CHECK(ctx.generators()[1] == g.edges[1].range);
  CHECK(ctx.universe() == g.universe);
  // Cells are the nonempty membership regions of the two ranges.
  for (const auto& c : ctx.cells()) CHECK_FALSE(c.set.is_empty());
}
