#pragma once

#include <random>
#include <string>
#include <vector>

#include "ulpa/ultragraph.hpp"

namespace ulpa {

/*
 * Seeded random instance used by the randomized check suites: vertex
 * universe either all naturals or finite of size 2..6, up to four edges,
 * ranges drawn from finite, cofinite and periodic shapes.  Always valid.
 */
inline Ultragraph random_ultragraph(std::mt19937_64& rng) {
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  Ultragraph g;
  const bool nat = pick(2) == 0;
  const std::uint64_t m = 2 + pick(5);
  g.universe = nat ? Universe::nat() : Universe::bounded(m);
  const std::uint64_t verts = nat ? 6 : m;
  const std::uint64_t num_edges = pick(5);
  for (std::uint64_t i = 0; i < num_edges; ++i) {
    Edge e;
    e.id = "e" + std::to_string(i + 1);
    e.source = pick(verts);
    const int shape = nat ? static_cast<int>(pick(3)) : 0;
    if (shape == 0) {
      std::vector<std::uint64_t> elems;
      const std::uint64_t size = 1 + pick(3);
      for (std::uint64_t j = 0; j < size; ++j) elems.push_back(pick(verts));
      e.range = UPSet::finite_set(elems);
    } else if (shape == 1) {
      std::vector<std::uint64_t> excluded;
      const std::uint64_t size = pick(3);
      for (std::uint64_t j = 0; j < size; ++j) excluded.push_back(pick(6));
      e.range = UPSet::cofinite(excluded);
    } else {
      const std::uint64_t p = 2 + pick(3);
      std::vector<std::uint64_t> residues{pick(p)};
      if (pick(2) == 0) residues.push_back(pick(p));
      e.range = UPSet::periodic(pick(3), p, residues);
    }
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace ulpa
