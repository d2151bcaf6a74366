#pragma once

// Genetic operators. Each one consumes a fixed number of PRNG draws
// regardless of the values drawn, so whole-run traces replay exactly:
//
//   random_genome          one draw per locus, in index order
//   single_point_crossover one draw (the cut)
//   mutate_one_locus       two draws (locus, then value)

#include <stdexcept>
#include <utility>

#include "searchathome/core/genome.hpp"
#include "searchathome/core/rng.hpp"

namespace searchathome {

inline Gene draw_from(const LocusDomain& d, Rng& rng) {
  return d.lo + static_cast<Gene>(rng.below(d.size()));
}

inline Genome random_genome(const GenomeSpec& spec, Rng& rng) {
  Genome g;
  g.genes.reserve(spec.length());
  for (const auto& locus : spec.loci()) g.genes.push_back(draw_from(locus, rng));
  return g;
}

inline std::pair<Genome, Genome> single_point_crossover(const Genome& a, const Genome& b,
                                                        Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: parent lengths differ");
  if (a.size() < 2) throw std::invalid_argument("crossover: genomes need at least two loci");
  const auto cut = static_cast<std::ptrdiff_t>(1 + rng.below(a.size() - 1));
  Genome c1, c2;
  c1.genes.reserve(a.size());
  c2.genes.reserve(a.size());
  c1.genes.insert(c1.genes.end(), a.genes.begin(), a.genes.begin() + cut);
  c1.genes.insert(c1.genes.end(), b.genes.begin() + cut, b.genes.end());
  c2.genes.insert(c2.genes.end(), b.genes.begin(), b.genes.begin() + cut);
  c2.genes.insert(c2.genes.end(), a.genes.begin() + cut, a.genes.end());
  return {std::move(c1), std::move(c2)};
}

// Resamples one locus from its full domain. The new value may equal the old.
inline void mutate_one_locus_in_place(Genome& g, const GenomeSpec& spec, Rng& rng) {
  if (g.size() != spec.length()) throw std::invalid_argument("mutate: genome/spec length mismatch");
  const auto locus = rng.below(g.size());
  g.genes[locus] = draw_from(spec[locus], rng);
}

inline Genome mutate_one_locus(Genome g, const GenomeSpec& spec, Rng& rng) {
  mutate_one_locus_in_place(g, spec, rng);
  return g;
}

}  // namespace searchathome
