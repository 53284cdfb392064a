#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulpa/assocgraph.hpp"
#include "ulpa/classifier.hpp"
#include "ulpa/corpus.hpp"
#include "ulpa/dsl.hpp"
#include "ulpa/engine.hpp"
#include "ulpa/errors.hpp"

using json = nlohmann::ordered_json;
using namespace ulpa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

int input_error(const std::string& msg) {
  std::cerr << "input error: " << msg << "\n";
  return kExitInputError;
}

std::optional<std::string> read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  ss << in.rdbuf();
  return ss.str();
}

// Parse + semantic validation; on failure prints diagnostics and returns
// nullopt (caller exits with kExitInputError).
std::optional<ParsedSpec> load(const std::string& path) {
  auto text = read_input(path);
  if (!text) {
    input_error("cannot read " + path);
    return std::nullopt;
  }
  auto parsed = parse_spec(*text);
  if (auto* e = std::get_if<SyntaxError>(&parsed)) {
    input_error(e->message());
    return std::nullopt;
  }
  ParsedSpec spec = std::get<ParsedSpec>(std::move(parsed));
  auto violations = validate(spec.graph);
  if (!violations.empty()) {
    for (const Violation& v : violations) {
      std::string where =
          v.edge_index >= 0 ? " (edge " + spec.graph.edges[v.edge_index].id + ")"
                            : "";
      std::cerr << "violation: " << v.what << where << "\n";
    }
    std::cerr << "input error: ultragraph is not valid\n";
    return std::nullopt;
  }
  return spec;
}

std::string universe_string(const Universe& u) {
  return u.finite ? "finite(" + std::to_string(u.size) + ")" : "nat";
}

json witness_json(const Ultragraph& g, const ClassifierWitness& w) {
  json j;
  switch (w.kind) {
    case ClassifierWitness::Kind::edge:
      j["kind"] = "edge";
      j["edge"] = g.edges[w.edge].id;
      break;
    case ClassifierWitness::Kind::vertex_set:
      j["kind"] = "vertex_set";
      j["set"] = render_upset(w.set);
      break;
    case ClassifierWitness::Kind::cycle_exit: {
      j["kind"] = "cycle_with_exit";
      if (w.cycle_exit) {
        json ids = json::array();
        for (int e : w.cycle_exit->first.edges) ids.push_back(g.edges[e].id);
        j["cycle"] = ids;
        const ExitWitness& x = w.cycle_exit->second;
        j["exit_at"] = x.at_index;
        if (x.kind == ExitWitness::Kind::edge)
          j["exit_edge"] = g.edges[x.edge].id;
        else
          j["exit_sink"] = x.sink;
      }
      break;
    }
    case ClassifierWitness::Kind::branch: {
      j["kind"] = "branching";
      if (w.branch) {
        json ids = json::array();
        for (int e : w.branch->scc) ids.push_back(g.edges[e].id);
        j["component"] = ids;
        j["edge"] = g.edges[w.branch->node].id;
        j["successors"] = {g.edges[w.branch->succ_a].id,
                           g.edges[w.branch->succ_b].id};
      }
      break;
    }
    case ClassifierWitness::Kind::component:
      j["kind"] = "component";
      j["component"] = w.component;
      break;
  }
  j["note"] = w.note;
  return j;
}

int cmd_validate(const std::string& path) {
  auto spec = load(path);
  if (!spec) return kExitInputError;
  std::cout << "ok: vertices " << universe_string(spec->graph.universe) << ", "
            << spec->graph.edges.size() << " edge(s), ring "
            << spec->ring.to_string() << "\n";
  return kExitOk;
}

int cmd_report(const std::string& path) {
  auto spec = load(path);
  if (!spec) return kExitInputError;
  PropertyReport rep = classify(spec->graph, spec->ring);
  json out;
  for (const PropertyEntry& e : rep.entries) {
    json je;
    je["verdict"] = verdict_to_string(e.verdict);
    je["citation"] = e.citation;
    if (e.witness) je["witness"] = witness_json(spec->graph, *e.witness);
    out[e.property] = je;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_construct(const std::string& path, std::uint64_t window,
                  const std::string& dot_path) {
  auto spec = load(path);
  if (!spec) return kExitInputError;
  AssocGraph e = build_assoc_graph(spec->graph);
  std::string dot = to_dot(e, window);
  if (dot_path == "-") {
    std::cout << dot;
    return kExitOk;
  }
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) return input_error("cannot write " + dot_path);
    out << dot;
  }
  json out;
  out["delta_empty"] = e.delta.empty();
  out["summary"] =
      e.delta.empty()
          ? "delta empty; the associated graph is the edge splitting"
          : "delta has " + std::to_string(e.delta.words.size()) + " word(s)";
  json words = json::array();
  for (std::size_t i = 0; i < e.delta.words.size(); ++i) {
    const Word& w = e.delta.words[i];
    json jw;
    jw["word"] = w.to_string();
    jw["range"] = render_upset(word_range(e.g, w));
    jw["root"] = w.is_zeros_then_one();
    jw["sigma_family"] = render_upset(e.delta.sigma_preimage[i]);
    words.push_back(jw);
  }
  out["words"] = words;
  out["w_plus"] = render_upset(e.delta.w_plus);
  json xs;
  for (std::size_t i = 0; i < e.g.edges.size(); ++i) {
    json lst = json::array();
    for (const ENode& n : e.x_sets[i]) lst.push_back(n.to_string());
    xs[e.g.edges[i].id] = lst;
  }
  out["x_sets"] = xs;
  json pe = json::array();
  for (const EEdge& ed : e.pair_edges) pe.push_back(eedge_to_string(e, ed));
  out["pair_edges"] = pe;
  json bw = json::array();
  for (const EEdge& ed : e.bar_word_edges) bw.push_back(eedge_to_string(e, ed));
  out["bar_word_edges"] = bw;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_paths(const std::string& path, long long from, long long to,
              std::size_t max_len, bool assoc) {
  auto spec = load(path);
  if (!spec) return kExitInputError;
  const Ultragraph& g = spec->graph;
  json out;

  json cycles = json::array();
  for (const Path& c : find_cycles(g)) {
    json jc;
    json ids = json::array();
    for (int e : c.edges) ids.push_back(g.edges[e].id);
    jc["edges"] = ids;
    ExitReport er = exits_of(g, c);
    json exits = json::array();
    for (const auto& [idx, e] : er.edge_exits)
      exits.push_back(json{{"at", idx}, {"edge", g.edges[e].id}});
    for (const auto& [idx, sinks] : er.sink_exits)
      exits.push_back(json{{"at", idx}, {"sinks", render_upset(sinks)}});
    jc["exits"] = exits;
    cycles.push_back(jc);
  }
  out["cycles"] = cycles;

  NoExitResult ne = is_no_exit(g);
  out["no_exit"] = ne.no_exit;
  EndsResult ends = infinite_paths_end_in_sink_or_cycle(g);
  out["infinite_paths_end_in_sink_or_cycle"] = ends.ends_in_sink_or_cycle;

  if (from >= 0) {
    std::uint64_t v = static_cast<std::uint64_t>(from);
    if (assoc) {
      if (to < 0)
        return input_error("--assoc path listing needs --from and --to");
      AssocGraph e = build_assoc_graph(g);
      json lst = json::array();
      for (const auto& p : enumerate_assoc_paths(
               e, v, static_cast<std::uint64_t>(to), max_len)) {
        json jp = json::array();
        for (const EEdge& ed : p) jp.push_back(eedge_to_string(e, ed));
        lst.push_back(jp);
      }
      out["assoc_paths"] = lst;
    } else {
      json lst = json::array();
      for (const Path& p : enumerate_paths(g, v, max_len)) {
        UPSet r = path_range(g, p);
        if (to >= 0 && !r.contains(static_cast<std::uint64_t>(to))) continue;
        json ids = json::array();
        for (int e : p.edges) ids.push_back(g.edges[e].id);
        lst.push_back(json{{"edges", ids}, {"range", render_upset(r)}});
      }
      out["paths"] = lst;
    }
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// Random elements with homogeneous parts, so the graded generator variants
// apply to their annihilators as well.
std::vector<AlgebraElement> random_homogeneous_set(const Representation& rep,
                                                   std::mt19937_64& rng) {
  std::vector<AlgebraElement> out;
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    Vec v(rep.dim(), Scalar::zero(rep.field()));
    for (auto& s : v)
      s = Scalar::of_int(rep.field(), static_cast<long>(rng() % 5) - 2);
    auto comps = rep.degree_decompose(rep.unflatten(v));
    if (comps.empty()) continue;
    auto it = comps.begin();
    std::advance(it, rng() % comps.size());
    out.push_back(it->second);
  }
  if (out.empty()) out.push_back(rep.zero());
  return out;
}

int cmd_oracle(const std::string& path, int samples, std::uint64_t seed) {
  auto spec = load(path);
  if (!spec) return kExitInputError;
  const Ultragraph& g = spec->graph;
  PropertyReport rep = classify(g, spec->ring);

  ProductRepresentation pr;
  try {
    pr = product_build(g, spec->ring);
  } catch (const NotFiniteAcyclic& e) {
    return input_error(std::string("oracle needs a finite acyclic instance: ") +
                       e.what());
  }

  std::cout << "classifier: rickart=" << verdict_to_string(rep.verdict("rickart"))
            << " baer=" << verdict_to_string(rep.verdict("baer"))
            << " baer_star=" << verdict_to_string(rep.verdict("baer_star"))
            << " (ring " << spec->ring.to_string() << ")\n";

  std::vector<std::string> disagreements;
  if (rep.verdict("rickart") != Verdict::yes)
    disagreements.push_back("classifier denies rickart on a finite instance");
  if (rep.verdict("baer") != Verdict::yes)
    disagreements.push_back("classifier denies baer on a finite acyclic instance");
  Verdict want_star = spec->ring.positive_definite() ? Verdict::yes
                                                     : Verdict::not_determined;
  if (rep.verdict("baer_star") != want_star)
    disagreements.push_back("baer_star verdict does not match ring positivity");

  for (std::size_t fi = 0; fi < pr.factors.size(); ++fi) {
    const Representation& r = pr.factors[fi];
    const bool pd = field_positive_definite(r.field());
    if (auto bad = verify_ck(r)) {
      disagreements.push_back("ck relations fail over " +
                              r.field().to_string() + ": " + *bad);
      continue;
    }
    std::vector<std::vector<AlgebraElement>> sample_sets;
    for (std::uint64_t v = 0; v < g.universe.size; ++v)
      sample_sets.push_back({r.vertex_set_op(UPSet::singleton(v))});
    for (const auto& cell : range_context(g).cells())
      sample_sets.push_back({r.vertex_set_op(cell.set)});
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i)
      sample_sets.push_back(random_homogeneous_set(r, rng));

    std::size_t idem_ok = 0, proj_ok = 0, total = 0;
    for (const auto& s : sample_sets)
      for (bool left : {true, false}) {
        ++total;
        // The right annihilator is the involution mirror of the left
        // annihilator of the involuted set; generator verdicts transfer
        // through the mirror, so both sides go through left ideals.
        Subspace ann;
        if (left) {
          ann = left_annihilator(r, s);
        } else {
          std::vector<AlgebraElement> starred;
          for (const auto& x : s) starred.push_back(ae_involute(x));
          ann = left_annihilator(r, starred);
        }
        bool idem = idempotent_generator(r, ann).has_value() &&
                    graded_idempotent_generator(r, ann).has_value();
        bool proj = projection_generator(r, ann).has_value() &&
                    graded_projection_generator(r, ann).has_value();
        idem_ok += idem;
        proj_ok += proj;
        if (!idem)
          disagreements.push_back("annihilator without idempotent generator over " +
                                  r.field().to_string());
        if (pd && !proj)
          disagreements.push_back("annihilator without projection generator over " +
                                  r.field().to_string());
      }
    std::cout << "engine[" << r.field().to_string() << "]: ck relations hold; "
              << idem_ok << "/" << total << " annihilators idempotent-generated; "
              << proj_ok << "/" << total << " projection-generated"
              << (pd ? "" : " (field not positive definite)") << "\n";
  }

  if (disagreements.empty()) {
    std::cout << "AGREE\n";
    return kExitOk;
  }
  for (const std::string& d : disagreements) std::cout << "DISAGREE: " << d << "\n";
  return kExitCheckFailed;
}

int cmd_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    Ultragraph g = random_ultragraph(rng);
    AssocGraph e = build_assoc_graph(g);
    LemmaReport rep = check_lemmas(e);
    bool ok = rep.all_agree();
    std::cout << "instance " << i << ": " << (ok ? "ok" : "FAIL") << " ("
              << g.edges.size() << " edge(s), universe "
              << universe_string(g.universe) << ", "
              << e.delta.words.size() << " word(s))\n";
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "all lemma checks agree"
                              : std::to_string(failures) + " failure(s)")
            << " on " << count << " instance(s)\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultragraph Leavitt path algebra toolkit"};
  app.require_subcommand(1);

  std::string file = "-";
  std::uint64_t window = 8;
  std::string dot_path;
  long long from = -1, to = -1;
  std::size_t max_len = 6;
  bool assoc = false;
  int samples = 25, count = 50;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a document");
  validate_cmd->add_option("file", file, "input path or - for stdin");

  auto* report_cmd = app.add_subcommand("report", "classify and emit the property report");
  report_cmd->add_option("file", file, "input path or - for stdin");

  auto* construct_cmd =
      app.add_subcommand("construct", "build the associated graph");
  construct_cmd->add_option("file", file, "input path or - for stdin");
  construct_cmd->add_option("--window", window, "concrete vertices rendered");
  construct_cmd->add_option("--dot", dot_path, "DOT output path, - for stdout");

  auto* paths_cmd = app.add_subcommand("paths", "paths, cycles, and exits");
  paths_cmd->add_option("file", file, "input path or - for stdin");
  paths_cmd->add_option("--from", from, "start vertex for enumeration");
  paths_cmd->add_option("--to", to, "target vertex filter");
  paths_cmd->add_option("--max-len", max_len, "path length bound");
  paths_cmd->add_flag("--assoc", assoc, "enumerate associated-graph paths");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "cross-check classifier against the matrix model");
  oracle_cmd->add_option("file", file, "input path or - for stdin");
  oracle_cmd->add_option("--samples", samples, "random annihilator samples");
  oracle_cmd->add_option("--seed", seed, "random seed");

  auto* corpus_cmd =
      app.add_subcommand("corpus", "randomized lemma checks on random instances");
  corpus_cmd->add_option("--count", count, "number of instances");
  corpus_cmd->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) return cmd_validate(file);
    if (app.got_subcommand(report_cmd)) return cmd_report(file);
    if (app.got_subcommand(construct_cmd))
      return cmd_construct(file, window, dot_path);
    if (app.got_subcommand(paths_cmd))
      return cmd_paths(file, from, to, max_len, assoc);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(file, samples, seed);
    if (app.got_subcommand(corpus_cmd)) return cmd_corpus(count, seed);
  } catch (const InvalidInput& e) {
    return input_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
