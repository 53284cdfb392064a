#include "ulpa/classifier.hpp"

#include <stdexcept>

#include "ulpa/errors.hpp"
#include "ulpa/setalg.hpp"

namespace ulpa {

namespace {

const char* kCiteAlwaysLocal =
    "ultragraph algebras over commutative semisimple rings are always locally "
    "Rickart and graded locally Rickart";
const char* kCiteGradedLocallyRickartStar =
    "graded locally Rickart * holds over positive definite rings; without "
    "positive definiteness no converse is available";
const char* kCiteRickartUnital =
    "Rickart, graded Rickart, and unital are each equivalent to the whole "
    "vertex set lying in the generated set algebra";
const char* kCiteGradedRickartStar =
    "over a positive definite ring, graded Rickart * is equivalent to the "
    "whole vertex set lying in the generated set algebra";
const char* kCiteLocallyBaer =
    "locally Baer and graded locally Baer hold exactly for row-finite "
    "no-exit ultragraphs whose infinite paths all end in a sink or a cycle";
const char* kCiteGradedLocallyBaerStar =
    "over a positive definite ring, graded locally Baer * holds exactly for "
    "row-finite no-exit ultragraphs whose infinite paths all end in a sink "
    "or a cycle";
const char* kCiteBaer =
    "Baer and graded Baer hold exactly for finite no-exit ultragraphs whose "
    "infinite paths all end in a sink or a cycle";
const char* kCiteGradedBaerStar =
    "over a positive definite ring, graded Baer * holds exactly for finite "
    "no-exit ultragraphs whose infinite paths all end in a sink or a cycle";
const char* kCiteLocallyBaerStar =
    "over a positive definite ring, locally Baer * holds exactly when every "
    "component is acyclic and row-finite with all paths ending in sinks, or "
    "an isolated loop";
const char* kCiteBaerStar =
    "over a positive definite ring, Baer * holds exactly when the ultragraph "
    "is a finite disjoint union of finite acyclic ultragraphs and isolated "
    "loops";

ClassifierWitness edge_witness(int e, std::string note) {
  ClassifierWitness w;
  w.kind = ClassifierWitness::Kind::edge;
  w.edge = e;
  w.note = std::move(note);
  return w;
}

ClassifierWitness set_witness(UPSet s, std::string note) {
  ClassifierWitness w;
  w.kind = ClassifierWitness::Kind::vertex_set;
  w.set = std::move(s);
  w.note = std::move(note);
  return w;
}

}  // namespace

std::string verdict_to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "Yes";
    case Verdict::no: return "No";
    case Verdict::not_determined: return "NotDetermined";
  }
  throw std::logic_error("unreachable");
}

const std::vector<std::string>& property_order() {
  static const std::vector<std::string> order{
      "unital",
      "locally_rickart",
      "graded_locally_rickart",
      "graded_locally_rickart_star",
      "rickart",
      "graded_rickart",
      "graded_rickart_star",
      "locally_baer",
      "graded_locally_baer",
      "graded_locally_baer_star",
      "baer",
      "graded_baer",
      "graded_baer_star",
      "locally_baer_star",
      "baer_star",
  };
  return order;
}

const PropertyEntry& PropertyReport::entry(const std::string& property) const {
  for (const PropertyEntry& e : entries)
    if (e.property == property) return e;
  throw std::logic_error("unknown property: " + property);
}

Verdict PropertyReport::verdict(const std::string& property) const {
  return entry(property).verdict;
}

PropertyReport classify(const Ultragraph& g, const RingDescriptor& r) {
  auto violations = validate(g);
  if (!violations.empty()) throw InvalidInput(violations.front().what);
  if (r.factors.empty()) throw InvalidInput("ring needs at least one factor");

  PropertyReport rep;
  rep.ring_positive_definite = r.positive_definite();
  rep.vertex_set_generated = whole_vertex_set_in_G0(range_context(g));
  RowFiniteResult rf = is_row_finite(g);
  rep.row_finite = rf.row_finite;
  NoExitResult ne = is_no_exit(g);
  rep.no_exit = ne.no_exit;
  EndsResult ends = infinite_paths_end_in_sink_or_cycle(g);
  rep.paths_end_in_sink_or_cycle = ends.ends_in_sink_or_cycle;
  rep.finite_graph = g.universe.finite;
  Decomposition dec = decompose_components(g);
  std::optional<std::size_t> bad_component;
  for (std::size_t i = 0; i < dec.components.size(); ++i)
    if (dec.components[i].kind == ComponentKind::other && !bad_component)
      bad_component = i;
  rep.components_all_acyclic_or_loops = !bad_component;

  const bool pd = rep.ring_positive_definite;
  const bool local_baer_cond =
      rep.row_finite && rep.no_exit && rep.paths_end_in_sink_or_cycle;
  const bool baer_cond =
      rep.finite_graph && rep.no_exit && rep.paths_end_in_sink_or_cycle;

  // Witness for the first failing clause of the Baer-type conditions.
  auto baer_witness = [&](bool need_row_finite,
                          bool need_finite) -> std::optional<ClassifierWitness> {
    if (need_finite && !rep.finite_graph)
      return set_witness(g.universe.to_upset(), "infinite vertex universe");
    if (need_row_finite && !rep.row_finite)
      return edge_witness(rf.witness_edge, "edge with infinite range");
    if (!rep.no_exit) {
      ClassifierWitness w;
      w.kind = ClassifierWitness::Kind::cycle_exit;
      w.cycle_exit = ne.witness;
      w.note = "cycle with an exit";
      return w;
    }
    if (!rep.paths_end_in_sink_or_cycle) {
      ClassifierWitness w;
      w.kind = ClassifierWitness::Kind::branch;
      w.branch = ends.witness;
      w.note = "edge component that branches forever";
      return w;
    }
    return std::nullopt;
  };
  auto component_witness = [&]() -> std::optional<ClassifierWitness> {
    if (!bad_component) return std::nullopt;
    ClassifierWitness w;
    w.kind = ClassifierWitness::Kind::component;
    w.component = *bad_component;
    w.note = "component is neither acyclic row-finite nor an isolated loop";
    return w;
  };

  auto push = [&](const std::string& name, Verdict v, const char* cite,
                  std::optional<ClassifierWitness> witness = std::nullopt) {
    rep.entries.push_back(PropertyEntry{
        name, v, cite, v == Verdict::no ? std::move(witness) : std::nullopt});
  };
  auto yes_no = [](bool b) { return b ? Verdict::yes : Verdict::no; };
  auto gated = [&](bool b) {
    return pd ? yes_no(b) : Verdict::not_determined;
  };

  std::optional<ClassifierWitness> not_generated;
  if (!rep.vertex_set_generated)
    not_generated = set_witness(
        g.universe.to_upset(),
        "the whole vertex set is not in the generated set algebra");

  push("unital", yes_no(rep.vertex_set_generated), kCiteRickartUnital,
       not_generated);
  push("locally_rickart", Verdict::yes, kCiteAlwaysLocal);
  push("graded_locally_rickart", Verdict::yes, kCiteAlwaysLocal);
  push("graded_locally_rickart_star", gated(true), kCiteGradedLocallyRickartStar);
  push("rickart", yes_no(rep.vertex_set_generated), kCiteRickartUnital,
       not_generated);
  push("graded_rickart", yes_no(rep.vertex_set_generated), kCiteRickartUnital,
       not_generated);
  push("graded_rickart_star", gated(rep.vertex_set_generated),
       kCiteGradedRickartStar, not_generated);
  push("locally_baer", yes_no(local_baer_cond), kCiteLocallyBaer,
       baer_witness(true, false));
  push("graded_locally_baer", yes_no(local_baer_cond), kCiteLocallyBaer,
       baer_witness(true, false));
  push("graded_locally_baer_star", gated(local_baer_cond),
       kCiteGradedLocallyBaerStar, baer_witness(true, false));
  push("baer", yes_no(baer_cond), kCiteBaer, baer_witness(false, true));
  push("graded_baer", yes_no(baer_cond), kCiteBaer, baer_witness(false, true));
  push("graded_baer_star", gated(baer_cond), kCiteGradedBaerStar,
       baer_witness(false, true));
  push("locally_baer_star", gated(rep.components_all_acyclic_or_loops),
       kCiteLocallyBaerStar, component_witness());
  {
    bool ok = rep.finite_graph && rep.components_all_acyclic_or_loops;
    std::optional<ClassifierWitness> w;
    if (!rep.finite_graph)
      w = set_witness(g.universe.to_upset(), "infinite vertex universe");
    else
      w = component_witness();
    push("baer_star", gated(ok), kCiteBaerStar, std::move(w));
  }

  if (rep.entries.size() != property_order().size())
    throw std::logic_error("property report incomplete");
  for (std::size_t i = 0; i < rep.entries.size(); ++i)
    if (rep.entries[i].property != property_order()[i])
      throw std::logic_error("property report out of order");

  // Cross-checks between independently computed verdicts.
  auto v = [&](const char* p) { return rep.verdict(p); };
  if (v("baer") == Verdict::yes && v("locally_baer") != Verdict::yes)
    throw std::logic_error("baer without locally baer");
  if (v("baer_star") == Verdict::yes &&
      (v("locally_baer_star") != Verdict::yes || v("baer") != Verdict::yes))
    throw std::logic_error("baer * without locally baer * and baer");
  if (v("rickart") != v("unital") || v("rickart") != v("graded_rickart"))
    throw std::logic_error("rickart, unital, graded rickart disagree");
  if (v("locally_rickart") != Verdict::yes)
    throw std::logic_error("locally rickart must hold");
  for (const PropertyEntry& e : rep.entries)
    if (e.verdict == Verdict::no && !e.witness)
      throw std::logic_error("No verdict without witness: " + e.property);
  return rep;
}

}  // namespace ulpa
