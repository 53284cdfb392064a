#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "ulpa/errors.hpp"
#include "ulpa/setalg.hpp"

using namespace ulpa;
using testutil::closure_family;
using testutil::mask_to_set;

namespace {

UPSet evens() { return UPSet::periodic(0, 2, {0}); }
UPSet odds() { return UPSet::periodic(0, 2, {1}); }
UPSet threes() { return UPSet::periodic(0, 3, {0}); }
UPSet fours() { return UPSet::periodic(0, 4, {0}); }

// Reassemble the set named by a membership certificate and compare.
bool certificate_reconstructs(const AlgebraContext& ctx,
                              const MembershipCertificate& c, const UPSet& x) {
  if (!c.member) return false;
  if (c.added.cardinality().infinite || c.removed.cardinality().infinite)
    return false;
  UPSet u = UPSet::empty();
  for (int i : c.cell_indices) u = u.unite(ctx.cells()[i].set);
  return u.minus(c.removed).unite(c.added) == x;
}

// A set lies outside the generated algebra exactly when it differs
// infinitely from every union of cells; with few cells scan them all.
bool outside_by_exhaustion(const AlgebraContext& ctx, const UPSet& x) {
  const auto& cells = ctx.cells();
  REQUIRE(cells.size() <= 16);
  for (std::uint32_t mask = 0; mask < (1u << cells.size()); ++mask) {
    UPSet u = UPSet::empty();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask & (1u << i)) u = u.unite(cells[i].set);
    UPSet diff = u.minus(x).unite(x.minus(u));
    if (!diff.cardinality().infinite) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("universe helpers") {
  CHECK(Universe::nat().contains(1u << 30));
  CHECK(Universe::bounded(3).contains(2));
  CHECK_FALSE(Universe::bounded(3).contains(3));
  CHECK(Universe::bounded(3).to_upset() == UPSet::finite_set({0, 1, 2}));
  CHECK(Universe::nat().to_upset() == UPSet::all());
}

TEST_CASE("cells partition the union of the generators") {
  auto ctx = AlgebraContext::make(Universe::nat(), {evens(), threes()});
  // Atoms: multiples of 6, other evens, other multiples of 3.
  CHECK(ctx.cells().size() == 3);
  UPSet covered = UPSet::empty();
  for (std::size_t i = 0; i < ctx.cells().size(); ++i) {
    const auto& ci = ctx.cells()[i];
    CHECK_FALSE(ci.set.is_empty());
    for (std::size_t j = i + 1; j < ctx.cells().size(); ++j)
      CHECK_FALSE(ci.set.intersects(ctx.cells()[j].set));
    covered = covered.unite(ci.set);
  }
  CHECK(covered == evens().unite(threes()));
}

TEST_CASE("without generators only finite sets are members") {
  auto ctx = AlgebraContext::make(Universe::nat(), {});
  CHECK(ctx.cells().empty());
  CHECK(in_generated_algebra(ctx, UPSet::finite_set({0, 4})).member);
  CHECK_FALSE(in_generated_algebra(ctx, evens()).member);
  CHECK_FALSE(in_generated_algebra(ctx, UPSet::all()).member);
}

TEST_CASE("membership with certificates on an infinite universe") {
  auto ctx = AlgebraContext::make(Universe::nat(), {evens()});

  SUBCASE("a generator adjusted by finitely many points is a member") {
    const UPSet x = evens().minus(UPSet::singleton(0)).unite(UPSet::singleton(1));
    auto c = in_generated_algebra(ctx, x);
    CHECK(c.member);
    CHECK(certificate_reconstructs(ctx, c, x));
  }
  SUBCASE("finite sets are members") {
    auto c = in_generated_algebra(ctx, UPSet::finite_set({3, 5, 9}));
    CHECK(c.member);
    CHECK(certificate_reconstructs(ctx, c, UPSet::finite_set({3, 5, 9})));
  }
  SUBCASE("the complement of a generator is not a member") {
    // There is no complementation: odds cannot be built from evens and
    // singletons with finite unions, intersections, and differences.
    auto c = in_generated_algebra(ctx, odds());
    CHECK_FALSE(c.member);
    CHECK(outside_by_exhaustion(ctx, odds()));
  }
  SUBCASE("a finer period is not a member") {
    auto c = in_generated_algebra(ctx, fours());
    CHECK_FALSE(c.member);
    CHECK(outside_by_exhaustion(ctx, fours()));
    // The witness names a class of x owned by a cell that spills outside x.
    CHECK(c.modulus == 4);
    CHECK(c.conflicting_residue.has_value());
  }
  SUBCASE("multiples of three are not a member") {
    auto c = in_generated_algebra(ctx, threes());
    CHECK_FALSE(c.member);
    CHECK(outside_by_exhaustion(ctx, threes()));
  }
}

TEST_CASE("whole vertex set membership") {
  CHECK(whole_vertex_set_in_G0(
      AlgebraContext::make(Universe::nat(), {UPSet::cofinite({0})})));
  CHECK_FALSE(
      whole_vertex_set_in_G0(AlgebraContext::make(Universe::nat(), {evens()})));
  // On a finite universe singletons already generate everything.
  CHECK(whole_vertex_set_in_G0(AlgebraContext::make(Universe::bounded(4), {})));
}

TEST_CASE("finite universes give the full power set") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<std::uint32_t> gens;
    for (std::uint64_t i = 0, k = rng() % 4; i < k; ++i)
      gens.push_back(static_cast<std::uint32_t>(rng()) & ((1u << n) - 1));
    std::vector<UPSet> gen_sets;
    for (auto g : gens) gen_sets.push_back(mask_to_set(g));
    auto ctx = AlgebraContext::make(Universe::bounded(n), gen_sets);
    auto table = closure_family(n, gens);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      auto c = in_generated_algebra(ctx, mask_to_set(m));
      CHECK(c.member);
      CHECK(c.member == table[m]);
      CHECK(certificate_reconstructs(ctx, c, mask_to_set(m)));
    }
  }
}

TEST_CASE("signatures record membership patterns") {
  std::vector<UPSet> xs{evens(), UPSet::finite_set({2, 5})};
  CHECK(signature(2, xs) == std::vector<bool>{true, true});
  CHECK(signature(5, xs) == std::vector<bool>{false, true});
  CHECK(signature(7, xs) == std::vector<bool>{false, false});
}

TEST_CASE("indistinguishable pair on a frozen instance") {
  auto ctx = AlgebraContext::make(
      Universe::nat(), {UPSet::cofinite({0, 1}), UPSet::finite_set({2, 5})});
  const std::vector<UPSet> xs{UPSet::cofinite({0, 1}),
                              UPSet::finite_set({2, 5})};
  const UPSet a = UPSet::all();
  const UPSet s = evens();

  auto pair = indistinguishable_pair(ctx, xs, s, a);
  CHECK(pair.s == 6);
  CHECK(pair.t == 7);
  // Independent verification of the pair's defining behavior.
  CHECK(signature(pair.s, xs) == signature(pair.t, xs));
  CHECK(a.contains(pair.s));
  CHECK(a.contains(pair.t));
  CHECK(s.contains(pair.s));
  CHECK_FALSE(s.contains(pair.t));
}

TEST_CASE("indistinguishable pair with no distinguishing sets") {
  auto ctx = AlgebraContext::make(Universe::nat(), {UPSet::cofinite({0})});
  auto pair = indistinguishable_pair(ctx, {}, evens(), UPSet::all());
  CHECK(pair.s == 0);
  CHECK(pair.t == 1);
}

TEST_CASE("indistinguishable pair preconditions are each rejected") {
  const UPSet all = UPSet::all();

  SUBCASE("distinguishing set outside the algebra") {
    auto ctx = AlgebraContext::make(Universe::nat(), {evens()});
    CHECK_THROWS_WITH_AS(
        indistinguishable_pair(ctx, {threes()}, fours(), all),
        "precondition violated: X_list[0] is not in the generated set algebra",
        PreconditionViolated);
  }
  SUBCASE("ambient set outside the algebra") {
    auto ctx = AlgebraContext::make(Universe::nat(), {evens()});
    CHECK_THROWS_WITH_AS(
        indistinguishable_pair(ctx, {}, fours(), threes()),
        "precondition violated: A is not in the generated set algebra",
        PreconditionViolated);
  }
  SUBCASE("intersection finite") {
    auto ctx = AlgebraContext::make(Universe::nat(), {UPSet::cofinite({0})});
    CHECK_THROWS_WITH_AS(
        indistinguishable_pair(ctx, {}, UPSet::finite_set({0, 2}), all),
        "precondition violated: A ∩ S is finite", PreconditionViolated);
  }
  SUBCASE("difference finite") {
    auto ctx = AlgebraContext::make(Universe::nat(), {UPSet::cofinite({0})});
    CHECK_THROWS_WITH_AS(
        indistinguishable_pair(ctx, {}, UPSet::cofinite({1}), all),
        "precondition violated: A \\ S is finite", PreconditionViolated);
  }
  SUBCASE("intersection already in the algebra") {
    auto ctx = AlgebraContext::make(Universe::nat(), {evens(), fours()});
    CHECK_THROWS_WITH_AS(
        indistinguishable_pair(ctx, {evens()}, fours(), evens()),
        "precondition violated: A ∩ S is in the generated set algebra",
        PreconditionViolated);
  }
}
