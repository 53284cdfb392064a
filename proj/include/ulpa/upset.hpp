#ifndef ULPA_UPSET_HPP
#define ULPA_UPSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ulpa {

struct CardinalityClass {
  bool infinite = false;
  std::uint64_t count = 0;  // meaningful only when !infinite

  bool operator==(const CardinalityClass&) const = default;
};

/**
 * Ultimately periodic subset of the naturals.
 *
 * Denotes  finite_part ∪ { n >= threshold : n mod period ∈ residues }.
 * Instances are kept in canonical form: the period is the minimal eventual
 * period of the denoted set, and the threshold is the least bound past which
 * membership is purely periodic.  Purely finite sets therefore have period 1
 * and no residues; two values denote the same set iff they compare equal.
 */
class UPSet {
 public:
  UPSet() = default;  // empty set

  static UPSet empty();
  static UPSet all();
  static UPSet singleton(std::uint64_t v);
  static UPSet finite_set(std::vector<std::uint64_t> elems);
  static UPSet below(std::uint64_t bound);  // {0, 1, ..., bound-1}
  static UPSet cofinite(std::vector<std::uint64_t> excluded);
  static UPSet periodic(std::uint64_t threshold, std::uint64_t period,
                        std::vector<std::uint64_t> residues,
                        std::vector<std::uint64_t> extra = {});

  bool contains(std::uint64_t n) const;
  bool is_empty() const { return finite_.empty() && residues_.empty(); }
  CardinalityClass cardinality() const;

  UPSet unite(const UPSet& o) const;
  UPSet intersect(const UPSet& o) const;
  UPSet minus(const UPSet& o) const;  // relative complement

  bool subset_of(const UPSet& o) const { return minus(o).is_empty(); }
  bool intersects(const UPSet& o) const { return !intersect(o).is_empty(); }
  bool operator==(const UPSet& o) const = default;

  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t period() const { return period_; }
  const std::vector<std::uint64_t>& finite_part() const { return finite_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  std::optional<std::uint64_t> min_element() const;
  // First `k` members in increasing order (fewer if the set is smaller).
  std::vector<std::uint64_t> first_elements(std::size_t k) const;
  // All members; throws InvalidInput when the set is infinite.
  std::vector<std::uint64_t> elements() const;

  std::string to_string() const;

 private:
  std::uint64_t threshold_ = 0;
  std::vector<std::uint64_t> finite_;  // sorted, unique, all < threshold_
  std::uint64_t period_ = 1;
  std::vector<std::uint64_t> residues_;  // sorted, unique, all < period_

  void canonicalize();
  bool residue_member(std::uint64_t r) const;
  static UPSet combine(const UPSet& a, const UPSet& b, bool (*op)(bool, bool));
};

}  // namespace ulpa

#endif
