// invlimit.hpp — coherent families of reduced words: the finite-level
// representation of elements of the inverse limit of the free groups F_n,
// with coherence checking and the letter-multiplicity diagnostic.
#pragma once

#include "graphends/freegroup.hpp"

namespace graphends {

// levels[n] is a reduced word in F_n = pi_1(Gamma_n) for n = 1..max_level;
// homs[(m, n)] is the bonding homomorphism F_m -> F_n (m > n). Coherence
// means every bonding map carries levels[m] onto levels[n].
struct CoherentFamily {
  std::string loop;
  int max_level = 0;
  std::map<int, ReducedWord> levels;
  std::map<int, std::vector<EdgeId>> chords_by_level;  // chord index -> origin edge id
  std::map<std::pair<int, int>, GroupHom> homs;
};

struct CoherenceReport {
  bool pass = true;
  std::optional<std::pair<int, int>> first_failure;  // (m, n), m > n
};

// Verifies levels[n] == hom(m,n)(levels[m]) for every pair, scanning m
// ascending and n ascending below it; reports the first failing pair.
inline CoherenceReport check_coherence(const CoherentFamily& fam) {
  for (int m = 2; m <= fam.max_level; ++m) {
    for (int n = 1; n < m; ++n) {
      const GroupHom& h = fam.homs.at({m, n});
      if (!equal(apply_hom(h, fam.levels.at(m)), fam.levels.at(n)))
        return {false, std::make_pair(m, n)};
    }
  }
  return {true, std::nullopt};
}

// The level-indexed trace of a loop: levels[n] is the reduced word of the
// level-n trace over the canonical spanning tree of Gamma_n. Coherent by
// construction; re-verified before returning.
inline CoherentFamily psi_family(const LoopSpec& loop, const GraphFamily& family, int max_level) {
  if (max_level < 1) throw InvalidArgument("psi_family requires max_level >= 1");

  CoherentFamily fam;
  fam.loop = loop.name;
  fam.max_level = max_level;

  std::map<int, SpanningTree> trees;
  for (int n = 1; n <= max_level; ++n) {
    trees.emplace(n, spanning_tree(truncate(family, n).graph));
    const SpanningTree& tree = trees.at(n);
    fam.levels.emplace(n, reduce(trace_word(theta_trace(loop, family, n), tree)));
    std::vector<EdgeId> chord_edges;
    for (const SpanningTree::Chord& c : tree.chords()) chord_edges.push_back(c.edge);
    fam.chords_by_level.emplace(n, std::move(chord_edges));
  }
  for (int m = 2; m <= max_level; ++m)
    for (int n = 1; n < m; ++n)
      fam.homs.emplace(std::make_pair(m, n), induced_hom(rho_map(family, m, n), trees.at(m), trees.at(n)));

  const CoherenceReport report = check_coherence(fam);
  if (!report.pass)
    throw GraphError("psi_family produced an incoherent family at pair (" +
                     std::to_string(report.first_failure->first) + "," +
                     std::to_string(report.first_failure->second) + ")");
  return fam;
}

// Occurrence counts of a persistent generator lineage. A lineage is an
// original edge that is a chord of the canonical tree at every level from
// its first appearance up to max_level. Stabilized multiplicities are
// consistent with (not proof of) membership in the image of the level map;
// a growing sequence rules membership out at this scale.
struct LineageMultiplicity {
  EdgeId edge;
  int first_level = 0;
  std::vector<int> counts;  // one per level from first_level to max_level
  bool stabilized = true;   // final two counts agree
};

inline std::vector<LineageMultiplicity> letter_multiplicity(const CoherentFamily& fam) {
  std::map<EdgeId, int, IdLess> first_seen;
  for (int n = 1; n <= fam.max_level; ++n)
    for (const EdgeId& e : fam.chords_by_level.at(n))
      first_seen.emplace(e, n);

  std::vector<LineageMultiplicity> out;
  for (const auto& [edge, first] : first_seen) {
    bool persistent = true;
    std::vector<int> counts;
    for (int m = first; m <= fam.max_level && persistent; ++m) {
      const auto& chords = fam.chords_by_level.at(m);
      int gen = -1;
      for (std::size_t i = 0; i < chords.size(); ++i)
        if (chords[i] == edge) gen = static_cast<int>(i);
      if (gen < 0) {
        persistent = false;
        break;
      }
      int count = 0;
      for (const Letter& l : fam.levels.at(m).letters())
        if (l.gen == gen) ++count;
      counts.push_back(count);
    }
    if (!persistent) continue;
    LineageMultiplicity lm;
    lm.edge = edge;
    lm.first_level = first;
    lm.stabilized = counts.size() < 2 || counts[counts.size() - 1] == counts[counts.size() - 2];
    lm.counts = std::move(counts);
    out.push_back(std::move(lm));
  }
  return out;
}

// Levelwise product of two families of the same depth (traces of loops with
// a common basepoint compose this way).
inline CoherentFamily concat_families(const CoherentFamily& a, const CoherentFamily& b) {
  if (a.max_level != b.max_level) throw InvalidArgument("family depth mismatch");
  CoherentFamily out = a;
  out.loop = a.loop + "." + b.loop;
  for (int n = 1; n <= a.max_level; ++n)
    out.levels.at(n) = concat(a.levels.at(n), b.levels.at(n));
  return out;
}

}  // namespace graphends
