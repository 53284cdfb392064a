#include <doctest.h>

#include <random>
#include <string>
#include <variant>

#include "testutil.hpp"
#include "ulpa/dsl.hpp"
#include "ulpa/errors.hpp"

using namespace ulpa;
using testutil::edge;
using testutil::fs;
using testutil::graph;

namespace {

ParsedSpec good(const std::string& text) {
  auto r = parse_spec(text);
  auto* spec = std::get_if<ParsedSpec>(&r);
  if (!spec) FAIL(std::get<SyntaxError>(r).message());
  return *spec;
}

SyntaxError bad(const std::string& text) {
  auto r = parse_spec(text);
  auto* err = std::get_if<SyntaxError>(&r);
  REQUIRE(err != nullptr);
  return *err;
}

}  // namespace

TEST_CASE("minimal documents") {
  auto s = good("vertices: finite(1)\n");
  CHECK(s.graph.universe == Universe::bounded(1));
  CHECK(s.graph.edges.empty());
  CHECK_FALSE(s.ring_specified);
  CHECK(s.ring == RingDescriptor::field(FieldDescriptor::rationals()));

  auto t = good("vertices: nat\nedge e1: 0 -> cofinite{0}\n");
  CHECK(t.graph.universe == Universe::nat());
  REQUIRE(t.graph.edges.size() == 1);
  CHECK(t.graph.edges[0].id == "e1");
  CHECK(t.graph.edges[0].source == 0);
  CHECK(t.graph.edges[0].range == UPSet::cofinite({0}));
}

TEST_CASE("set literals") {
  auto s = good(
      "vertices: nat\n"
      "edge a: 0 -> {1, 2}\n"
      "edge b: 1 -> all\n"
      "edge c: 2 -> empty\n"
      "edge d: 3 -> periodic(N=2, p=3, r={1}, extra={0})\n"
      "edge e: 4 -> periodic(N=0, p=2, r={0})\n");
  CHECK(s.graph.edges[0].range == fs({1, 2}));
  CHECK(s.graph.edges[1].range == UPSet::all());
  CHECK(s.graph.edges[2].range == UPSet::empty());
  CHECK(s.graph.edges[3].range == UPSet::periodic(2, 3, {1}, {0}));
  CHECK(s.graph.edges[4].range == UPSet::periodic(0, 2, {0}));
}

TEST_CASE("empty ranges are a semantic, not syntactic, problem") {
  auto s = good("vertices: nat\nedge e1: 0 -> {}\n");
  CHECK(s.graph.edges[0].range.is_empty());
  CHECK(validate(s.graph).size() == 1);
}

TEST_CASE("comments, blank lines, and missing final newline") {
  auto s = good(
      "# header comment\n"
      "vertices: finite(3)   # inline comment\n"
      "\n"
      "edge e1: 0 -> {1}");
  CHECK(s.graph.universe == Universe::bounded(3));
  CHECK(s.graph.edges.size() == 1);
}

TEST_CASE("ring lines") {
  auto s = good("vertices: finite(1)\nring: Q x F2 x F5\n");
  REQUIRE(s.ring.factors.size() == 3);
  CHECK(s.ring.factors[0] == FieldDescriptor::rationals());
  CHECK(s.ring.factors[1] == FieldDescriptor::prime_field(2));
  CHECK(s.ring.factors[2] == FieldDescriptor::prime_field(5));
  CHECK(s.ring_specified);
  CHECK(s.ring.to_string() == "Q x F2 x F5");
}

TEST_CASE("positioned diagnostics") {
  SUBCASE("unclosed vertex count") {
    auto e = bad("vertices: finite(2");
    CHECK(e.line == 1);
    CHECK(e.column == 19);
    CHECK(e.found == "end of line");
    CHECK(e.expected == std::vector<std::string>{"')'"});
    CHECK(e.message() ==
          "syntax error at line 1, column 19: found end of line; "
          "expected ')'");
  }
  SUBCASE("missing header") {
    auto e = bad("edge e1: 0 -> {1}\n");
    CHECK(e.line == 1);
    CHECK(e.expected == std::vector<std::string>{"vertices"});
  }
  SUBCASE("composite modulus") {
    auto e = bad("vertices: finite(1)\nring: F4\n");
    CHECK(e.line == 2);
    CHECK(e.found == "F4");
    CHECK(e.expected == std::vector<std::string>{"prime modulus"});
  }
  SUBCASE("stray separator in the ring") {
    auto e = bad("vertices: finite(1)\nring: F2 y Q\n");
    CHECK(e.line == 2);
    CHECK(e.column == 10);
    CHECK(e.found == "y");
    CHECK(e.expected == std::vector<std::string>{"end of line"});
  }
  SUBCASE("two ring lines") {
    auto e = bad("vertices: finite(1)\nring: Q\nring: F2\n");
    CHECK(e.line == 3);
    CHECK(e.found == "ring");
    CHECK(e.expected == std::vector<std::string>{"at most one ring line"});
  }
  SUBCASE("zero period") {
    auto e = bad("vertices: nat\nedge a: 0 -> periodic(N=0, p=0, r={})\n");
    CHECK(e.expected == std::vector<std::string>{"positive period"});
  }
  SUBCASE("residue at the period") {
    auto e = bad("vertices: nat\nedge a: 0 -> periodic(N=0, p=2, r={2})\n");
    CHECK(e.expected == std::vector<std::string>{"residues below the period"});
  }
  SUBCASE("bad character") {
    auto e = bad("vertices: finite(1)\nedge %: 0 -> {0}\n");
    CHECK(e.line == 2);
    CHECK(e.column == 6);
    CHECK(e.found == "character '%'");
  }
  SUBCASE("throwing wrapper") {
    CHECK_THROWS_AS(parse_spec_or_throw("vertices: finite(2"), InvalidInput);
  }
}

TEST_CASE("set rendering is canonical") {
  CHECK(render_upset(UPSet::empty()) == "{}");
  CHECK(render_upset(fs({2, 5})) == "{2, 5}");
  CHECK(render_upset(UPSet::all()) == "all");
  CHECK(render_upset(UPSet::cofinite({3})) == "cofinite{3}");
  CHECK(render_upset(UPSet::periodic(0, 2, {0})) == "periodic(N=0, p=2, r={0})");
  CHECK(render_upset(UPSet::periodic(2, 3, {1}, {0})) ==
        "periodic(N=2, p=3, r={1}, extra={0})");
}

TEST_CASE("documents round-trip through rendering") {
  std::vector<ParsedSpec> specs;
  specs.push_back(ParsedSpec{
      graph(Universe::bounded(4),
            {edge("e1", 0, fs({1, 2})), edge("e2", 1, fs({3}))}),
      RingDescriptor::field(FieldDescriptor::prime_field(3)), true});
  specs.push_back(ParsedSpec{
      graph(Universe::nat(),
            {edge("a", 0, UPSet::cofinite({0, 2})),
             edge("b", 5, UPSet::periodic(1, 4, {0, 3}, {0})),
             edge("c", 2, UPSet::all())}),
      RingDescriptor{{FieldDescriptor::rationals(),
                      FieldDescriptor::prime_field(7)}},
      true});
  for (const auto& spec : specs) {
    auto back = good(render_spec(spec));
    CHECK(back.graph.universe == spec.graph.universe);
    REQUIRE(back.graph.edges.size() == spec.graph.edges.size());
    for (std::size_t i = 0; i < spec.graph.edges.size(); ++i) {
      CHECK(back.graph.edges[i].id == spec.graph.edges[i].id);
      CHECK(back.graph.edges[i].source == spec.graph.edges[i].source);
      CHECK(back.graph.edges[i].range == spec.graph.edges[i].range);
    }
    CHECK(back.ring == spec.ring);
  }
}

TEST_CASE("the parser survives arbitrary inputs") {
  std::mt19937_64 rng(99);
  const std::string pieces[] = {
      "vertices", "edge", "ring", "finite", "nat", "periodic", "cofinite",
      ":", "(", ")", "{", "}", ",", "->", "=", "Q", "F2", "x", "0", "17",
      "\n", " ", "#", "e1", "N", "p", "r", "extra", "%", "18446744073709551616"};
  for (int t = 0; t < 500; ++t) {
    std::string text;
    for (int k = 0, n = static_cast<int>(rng() % 30); k < n; ++k)
      text += pieces[rng() % std::size(pieces)];
    auto r = parse_spec(text);  // must terminate without crashing
    if (auto* e = std::get_if<SyntaxError>(&r)) CHECK(!e->message().empty());
  }
}
