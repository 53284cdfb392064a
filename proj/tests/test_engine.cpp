#include <doctest.h>

#include <algorithm>
#include <random>

#include "testutil.hpp"
#include "ulpa/engine.hpp"
#include "ulpa/errors.hpp"

using namespace ulpa;
using testutil::edge;
using testutil::fs;
using testutil::graph;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();

Vec vec(const FieldDescriptor& f, std::vector<long> entries) {
  Vec v;
  for (long e : entries) v.push_back(Scalar::of_int(f, e));
  return v;
}

// The one-edge, two-vertex graph whose model is a single 2x2 block.
Ultragraph stick() {
  return graph(Universe::bounded(2), {edge("e1", 0, fs({1}))});
}

// 0 --e1--> {1,2}: two sinks, two 2x2 blocks.
Ultragraph fork() {
  return graph(Universe::bounded(3), {edge("e1", 0, fs({1, 2}))});
}

// 0 --e1--> 1 --e2--> 2: one 3x3 block.
Ultragraph chain() {
  return graph(Universe::bounded(3),
               {edge("e1", 0, fs({1})), edge("e2", 1, fs({2}))});
}

// All elements x of the model with x * t == 0 (resp. t * x == 0), found by
// scanning the whole finite algebra; only usable over small prime fields.
Subspace brute_annihilator(const Representation& rep, const AlgebraElement& t,
                           bool left) {
  REQUIRE(rep.field().kind == FieldDescriptor::Kind::prime);
  const std::uint64_t q = rep.field().p;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < rep.dim(); ++i) total *= q;
  std::vector<Vec> hits;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec v;
    std::uint64_t c = code;
    for (std::size_t i = 0; i < rep.dim(); ++i, c /= q)
      v.push_back(Scalar::of_int(rep.field(), static_cast<long>(c % q)));
    auto x = rep.unflatten(v);
    auto prod = left ? ae_mul(x, t) : ae_mul(t, x);
    if (prod.is_zero()) hits.push_back(std::move(v));
  }
  return Subspace::from_vectors(rep.field(), rep.dim(), hits);
}

}  // namespace

TEST_CASE("an edgeless vertex is a one-dimensional model") {
  auto rep = Representation::build(graph(Universe::bounded(1), {}), kQ);
  CHECK(rep.dim() == 1);
  CHECK(rep.identity() == rep.vertex_set_op(fs({0})));
  CHECK(verify_ck(rep) == std::nullopt);
}

TEST_CASE("build rejects what it cannot model") {
  CHECK_THROWS_AS(
      Representation::build(graph(Universe::nat(), {edge("e1", 0, fs({1}))}),
                            kQ),
      NotFiniteAcyclic);
  CHECK_THROWS_AS(
      Representation::build(graph(Universe::bounded(1), {edge("e1", 0, fs({0}))}),
                            kQ),
      NotFiniteAcyclic);
}

TEST_CASE("the fork splits into two blocks") {
  auto rep = Representation::build(fork(), kQ);
  REQUIRE(rep.blocks().size() == 2);
  CHECK(rep.blocks()[0].sink == 1);
  CHECK(rep.blocks()[1].sink == 2);
  for (const Block& b : rep.blocks()) {
    REQUIRE(b.n() == 2);
    CHECK(b.pairs[0].alpha.zero_length());
    CHECK(b.pairs[0].alpha.start == b.sink);
    CHECK(b.pairs[0].sink == b.sink);
    CHECK(b.pairs[1].alpha.edges == std::vector<int>{0});
  }
  CHECK(rep.dim() == 8);
  CHECK(verify_ck(rep) == std::nullopt);

  // Defining identities of the single edge.
  auto s = rep.edge_op(0);
  auto s_star = rep.edge_op_star(0);
  CHECK(ae_mul(s_star, s) == rep.vertex_set_op(fs({1, 2})));
  CHECK(ae_mul(s, s_star) == rep.vertex_set_op(fs({0})));
  CHECK(ae_involute(s) == s_star);

  // Vertex-set operators respect the set algebra.
  CHECK(ae_add(rep.vertex_set_op(fs({1})), rep.vertex_set_op(fs({0, 2}))) ==
        rep.identity());
  CHECK(rep.vertex_set_op(UPSet::empty()) == rep.zero());
}

TEST_CASE("annihilator of a vertex projection with its generators") {
  auto rep = Representation::build(fork(), kQ);
  auto p1 = rep.vertex_set_op(fs({1}));
  auto ann = left_annihilator(rep, {p1});
  CHECK(ann.dim() == 6);
  CHECK(is_left_ideal(rep, ann));
  CHECK(is_graded_subspace(rep, ann));

  // The generator is the identity with the (0,0) unit of the first block
  // removed; idempotent and projection agree because it is symmetric.
  AlgebraElement expected = rep.identity();
  expected.blocks[0].at(0, 0) = Scalar::zero(kQ);
  auto idem = idempotent_generator(rep, ann);
  REQUIRE(idem.has_value());
  CHECK(*idem == expected);
  auto proj = projection_generator(rep, ann);
  REQUIRE(proj.has_value());
  CHECK(*proj == expected);
  auto gidem = graded_idempotent_generator(rep, ann);
  REQUIRE(gidem.has_value());
  CHECK(*gidem == expected);
  auto gproj = graded_projection_generator(rep, ann);
  REQUIRE(gproj.has_value());
  CHECK(*gproj == expected);

  // Right annihilator of the same projection kills the mirrored column.
  auto rann = right_annihilator(rep, {p1});
  CHECK(rann.dim() == 6);
}

TEST_CASE("the chain is one three-by-three block with graded structure") {
  auto rep = Representation::build(chain(), kQ);
  REQUIRE(rep.blocks().size() == 1);
  REQUIRE(rep.blocks()[0].n() == 3);
  CHECK(rep.blocks()[0].pairs[1].alpha.edges == std::vector<int>{1});
  CHECK(rep.blocks()[0].pairs[2].alpha.edges == std::vector<int>{0, 1});
  CHECK(rep.dim() == 9);
  CHECK(verify_ck(rep) == std::nullopt);

  CHECK(ae_add(ae_add(rep.vertex_set_op(fs({0})), rep.vertex_set_op(fs({1}))),
               rep.vertex_set_op(fs({2}))) == rep.identity());

  CHECK(rep.homogeneous_degree(rep.edge_op(0)) == 1);
  CHECK(rep.homogeneous_degree(rep.edge_op_star(1)) == -1);
  CHECK(rep.homogeneous_degree(rep.path_op(Path{0, {0, 1}})) == 2);
  CHECK(rep.homogeneous_degree(rep.identity()) == 0);
  CHECK(rep.homogeneous_degree(rep.zero()) == 0);
  CHECK(rep.homogeneous_degree(ae_add(rep.identity(), rep.edge_op(0))) ==
        std::nullopt);

  auto parts = rep.degree_decompose(ae_add(rep.identity(), rep.edge_op(0)));
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(0) == rep.identity());
  CHECK(parts.at(1) == rep.edge_op(0));
  CHECK(rep.degree_component(ae_add(rep.identity(), rep.edge_op(0)), 1) ==
        rep.edge_op(0));

  // A monomial is a single matrix unit: s_{e1 e2} p_{2} (s_{e2})^*.
  auto m = rep.monomial(Path{0, {0, 1}}, fs({2}), Path{1, {1}});
  auto unit = rep.zero();
  unit.blocks[0].at(2, 1) = Scalar::one(kQ);
  CHECK(m == unit);

  // Flatten round-trip and coordinates.
  for (std::size_t k = 0; k < rep.dim(); ++k) {
    auto x = rep.coordinate_element(k);
    CHECK(rep.unflatten(rep.flatten(x)) == x);
    auto d = rep.homogeneous_degree(x);
    REQUIRE(d.has_value());
    CHECK(*d == rep.coord_degree(0, k / 3, k % 3));
  }
}

TEST_CASE("graded regular witnesses invert homogeneous elements") {
  auto rep = Representation::build(chain(), kQ);

  for (std::size_t k = 0; k < rep.dim(); ++k) {
    auto x = rep.coordinate_element(k);
    auto y = graded_vn_regular_witness(rep, x);
    REQUIRE(y.has_value());
    CHECK(ae_mul(ae_mul(x, *y), x) == x);
    CHECK(*rep.homogeneous_degree(*y) == -*rep.homogeneous_degree(x));
  }

  auto s = rep.edge_op(0);
  auto y = graded_vn_regular_witness(rep, s);
  REQUIRE(y.has_value());
  CHECK(ae_mul(ae_mul(s, *y), s) == s);
  CHECK(*rep.homogeneous_degree(*y) == -1);

  CHECK_THROWS_AS(
      graded_vn_regular_witness(rep, ae_add(rep.identity(), rep.edge_op(0))),
      NotHomogeneous);
}

TEST_CASE("a span with a partial row is not a left ideal") {
  auto rep = Representation::build(fork(), kQ);
  auto e01 = rep.zero();
  e01.blocks[0].at(0, 1) = Scalar::one(kQ);
  auto i = Subspace::from_vectors(kQ, rep.dim(), {rep.flatten(e01)});
  CHECK_FALSE(is_left_ideal(rep, i));
  CHECK_THROWS_AS(idempotent_generator(rep, i), NotALeftIdeal);
}

TEST_CASE("gradedness of subspaces") {
  auto rep = Representation::build(chain(), kQ);
  auto mixed = ae_add(rep.identity(), rep.edge_op(0));
  CHECK_FALSE(is_graded_subspace(
      rep, Subspace::from_vectors(kQ, rep.dim(), {rep.flatten(mixed)})));
  CHECK(is_graded_subspace(
      rep, Subspace::from_vectors(
               kQ, rep.dim(),
               {rep.flatten(rep.identity()), rep.flatten(rep.edge_op(0))})));
  CHECK_THROWS_AS(
      graded_idempotent_generator(
          rep, Subspace::from_vectors(kQ, rep.dim(), {rep.flatten(mixed)})),
      NotGraded);
}

TEST_CASE("a row-sum ideal admits an idempotent but no projection mod two") {
  const auto f2 = FieldDescriptor::prime_field(2);
  auto rep2 = Representation::build(stick(), f2);
  REQUIRE(rep2.dim() == 4);
  auto i2 = Subspace::from_vectors(
      f2, 4, {vec(f2, {1, 1, 0, 0}), vec(f2, {0, 0, 1, 1})});
  CHECK(is_left_ideal(rep2, i2));

  auto idem = idempotent_generator(rep2, i2);
  REQUIRE(idem.has_value());
  CHECK(ae_mul(*idem, *idem) == *idem);
  CHECK(i2.contains(rep2.flatten(*idem)));

  // A symmetric idempotent with row space spanned by (1,1) would need
  // entries summing against themselves; over F2 no candidate survives.
  CHECK(projection_generator(rep2, i2) == std::nullopt);

  // The same ideal over the rationals projects through (1/2) * ones.
  auto repq = Representation::build(stick(), kQ);
  auto iq = Subspace::from_vectors(
      kQ, 4, {vec(kQ, {1, 1, 0, 0}), vec(kQ, {0, 0, 1, 1})});
  auto proj = projection_generator(repq, iq);
  REQUIRE(proj.has_value());
  CHECK(ae_mul(*proj, *proj) == *proj);
  CHECK(ae_involute(*proj) == *proj);
  CHECK(proj->blocks[0].at(0, 0) == Scalar::of_rational(1, 2));
}

TEST_CASE("annihilators match exhaustive search over a small prime field") {
  const auto f2 = FieldDescriptor::prime_field(2);
  auto rep = Representation::build(stick(), f2);
  for (std::size_t k = 0; k < rep.dim(); ++k) {
    auto t = rep.coordinate_element(k);
    CHECK(left_annihilator(rep, {t}) == brute_annihilator(rep, t, true));
    CHECK(right_annihilator(rep, {t}) == brute_annihilator(rep, t, false));
  }
  auto s = rep.edge_op(0);
  CHECK(left_annihilator(rep, {s}) == brute_annihilator(rep, s, true));
}

TEST_CASE("positive definiteness probes") {
  auto repq = Representation::build(stick(), kQ);
  auto rq = positive_definite_probe(repq, 25, 11);
  CHECK(rq.positive_definite);
  CHECK(rq.counterexample.empty());

  for (std::uint64_t p : {2ull, 5ull}) {
    auto repp =
        Representation::build(stick(), FieldDescriptor::prime_field(p));
    auto rp = positive_definite_probe(repp, 25, 11);
    CHECK_FALSE(rp.positive_definite);
    REQUIRE_FALSE(rp.counterexample.empty());
    auto sum = repp.zero();
    bool any_nonzero = false;
    for (const auto& c : rp.counterexample) {
      sum = ae_add(sum, ae_mul(c, ae_involute(c)));
      if (!c.is_zero()) any_nonzero = true;
    }
    CHECK(sum.is_zero());
    CHECK(any_nonzero);
    CHECK(rp.counterexample.size() == 2);
  }
}

TEST_CASE("corners of a vertex projection") {
  auto rep = Representation::build(fork(), kQ);
  auto u = rep.vertex_set_op(fs({0}));
  auto corner = make_corner(rep, u);
  CHECK(corner.unit == u);
  CHECK(corner.space.dim() == 2);

  // Inside the corner the unit annihilates nothing.
  CHECK(corner_left_annihilator(rep, corner, {u}).dim() == 0);

  // Annihilating one diagonal leg leaves the other.
  auto leg = rep.zero();
  leg.blocks[0].at(1, 1) = Scalar::one(kQ);
  auto ann = corner_left_annihilator(rep, corner, {leg});
  CHECK(ann.dim() == 1);
  auto other = rep.zero();
  other.blocks[1].at(1, 1) = Scalar::one(kQ);
  CHECK(ann.contains(rep.flatten(other)));

  auto gen = corner_idempotent_generator(rep, corner, ann);
  REQUIRE(gen.has_value());
  CHECK(*gen == other);
  auto full = corner_idempotent_generator(rep, corner, corner.space);
  REQUIRE(full.has_value());
  CHECK(*full == u);

  CHECK_THROWS_AS(make_corner(rep, rep.edge_op(0)), NotIdempotent);
}

TEST_CASE("product models act componentwise") {
  auto g = graph(Universe::bounded(1), {});
  auto ring = RingDescriptor{{kQ, FieldDescriptor::prime_field(2)}};
  auto pr = product_build(g, ring);
  REQUIRE(pr.factors.size() == 2);

  ProductElement one_zero{{pr.factors[0].identity(), pr.factors[1].zero()}};
  auto anns = product_left_annihilator(pr, {one_zero});
  REQUIRE(anns.size() == 2);
  CHECK(anns[0].dim() == 0);
  CHECK(anns[1].dim() == 1);

  auto gen = product_idempotent_generator(pr, anns);
  REQUIRE(gen.has_value());
  CHECK(gen->parts[0] == pr.factors[0].zero());
  CHECK(gen->parts[1] == pr.factors[1].identity());

  CHECK(product_homogeneous_degree(pr, one_zero) == 0);

  // The involution reverses products componentwise.
  std::mt19937_64 rng(5);
  auto chain_pr = product_build(chain(), RingDescriptor::field(kQ));
  auto& rep = chain_pr.factors[0];
  for (int t = 0; t < 10; ++t) {
    Vec a, b;
    for (std::size_t i = 0; i < rep.dim(); ++i) {
      a.push_back(Scalar::of_int(kQ, static_cast<long>(rng() % 5) - 2));
      b.push_back(Scalar::of_int(kQ, static_cast<long>(rng() % 5) - 2));
    }
    ProductElement x{{rep.unflatten(a)}}, y{{rep.unflatten(b)}};
    CHECK(pe_involute(pe_mul(x, y)) ==
          pe_mul(pe_involute(y), pe_involute(x)));
    CHECK(pe_add(x, y) == pe_add(y, x));
  }
}
