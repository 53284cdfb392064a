#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ulpa/paths.hpp"
#include "ulpa/scalar.hpp"
#include "ulpa/ultragraph.hpp"

namespace ulpa {

enum class Verdict { yes, no, not_determined };

std::string verdict_to_string(Verdict v);

/*
 * Combinatorial object attached to a No verdict: the edge, vertex set, cycle
 * with exit, branching witness, or component that breaks the property.
 */
struct ClassifierWitness {
  enum class Kind { edge, vertex_set, cycle_exit, branch, component };
  Kind kind = Kind::vertex_set;
  int edge = -1;                                           // Kind::edge
  UPSet set = UPSet::empty();                              // Kind::vertex_set
  std::optional<std::pair<Path, ExitWitness>> cycle_exit;  // Kind::cycle_exit
  std::optional<BranchWitness> branch;                     // Kind::branch
  std::size_t component = 0;                               // Kind::component
  std::string note;
};

struct PropertyEntry {
  std::string property;
  Verdict verdict = Verdict::not_determined;
  std::string citation;  // the characterization backing the verdict
  std::optional<ClassifierWitness> witness;
};

/*
 * One entry per ring-theoretic property, in the fixed order of
 * property_order().  The bool fields surface the combinatorial facts the
 * verdicts were derived from.
 */
struct PropertyReport {
  std::vector<PropertyEntry> entries;

  bool ring_positive_definite = false;
  bool vertex_set_generated = false;
  bool row_finite = false;
  bool no_exit = false;
  bool paths_end_in_sink_or_cycle = false;
  bool finite_graph = false;
  bool components_all_acyclic_or_loops = false;

  const PropertyEntry& entry(const std::string& property) const;
  Verdict verdict(const std::string& property) const;
};

const std::vector<std::string>& property_order();

/*
 * Decide all fifteen properties of the ultragraph algebra of g over the
 * product ring r.  Verdicts are three-valued: NotDetermined marks the cases
 * where only one direction of a characterization is available (the starred
 * graded properties over rings that are not positive definite).  Pure;
 * throws InvalidInput on a malformed ultragraph or empty ring.
 */
PropertyReport classify(const Ultragraph& g, const RingDescriptor& r);

}  // namespace ulpa
