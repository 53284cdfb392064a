#ifndef ULPA_SETALG_HPP
#define ULPA_SETALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ulpa/upset.hpp"

namespace ulpa {

struct Universe {
  bool finite = false;
  std::uint64_t size = 0;  // used when finite

  static Universe nat() { return {false, 0}; }
  static Universe bounded(std::uint64_t m) { return {true, m}; }

  bool contains(std::uint64_t v) const { return !finite || v < size; }
  UPSet to_upset() const { return finite ? UPSet::below(size) : UPSet::all(); }
  bool operator==(const Universe&) const = default;
};

/**
 * The set algebra generated by a family of vertex sets: the closure of the
 * singletons, the generators and the empty set under finite unions,
 * intersections and relative complements.  Membership questions reduce to the
 * generator cells (nonempty regions with a fixed membership pattern across
 * the generators) plus finite adjustments.
 */
class AlgebraContext {
 public:
  struct Cell {
    std::vector<int> members;  // generator indices the cell lies inside
    UPSet set;
  };

  static AlgebraContext make(Universe u, std::vector<UPSet> generators);

  const Universe& universe() const { return universe_; }
  const std::vector<UPSet>& generators() const { return generators_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::uint64_t common_threshold() const { return common_threshold_; }
  std::uint64_t common_period() const { return common_period_; }

 private:
  Universe universe_;
  std::vector<UPSet> generators_;
  std::vector<Cell> cells_;
  std::uint64_t common_threshold_ = 0;
  std::uint64_t common_period_ = 1;
};

struct MembershipCertificate {
  bool member = false;
  // When member: x = (union of the listed cells minus `removed`) ∪ `added`,
  // both adjustments finite.
  std::vector<int> cell_indices;
  UPSet added, removed;
  // When !member: a residue class (`residue` mod `modulus`, past the common
  // threshold) witnessing the failure.  Without `conflicting_residue` no cell
  // covers the class, so every cell union differs from x infinitely often on
  // it.  With it, the covering cell also spans the conflicting class outside
  // x, so any union is wrong on one of the two classes.
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;
  std::optional<std::uint64_t> conflicting_residue;
};

MembershipCertificate in_generated_algebra(const AlgebraContext& ctx,
                                           const UPSet& x);

bool whole_vertex_set_in_G0(const AlgebraContext& ctx);

// Membership pattern of v across the listed sets.
std::vector<bool> signature(std::uint64_t v, const std::vector<UPSet>& xs);

struct IndistinguishablePair {
  std::uint64_t s = 0, t = 0;
};

/**
 * Finds s ∈ A∩S and t ∈ A∖S with identical signatures across xs, both past
 * the point where every input set has become purely periodic; returns the
 * lexicographically smallest such pair.  Requires each xs[i] and A to lie in
 * the generated algebra, A∩S and A∖S infinite, and A∩S outside the algebra;
 * throws PreconditionViolated naming the failed hypothesis otherwise.
 */
IndistinguishablePair indistinguishable_pair(const AlgebraContext& ctx,
                                             const std::vector<UPSet>& xs,
                                             const UPSet& S, const UPSet& A);

}  // namespace ulpa

#endif
