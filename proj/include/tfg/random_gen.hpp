#pragma once

#include <random>

#include "tfg/group_element.hpp"

namespace tfg {

/// Seeded generator for reproducible test inputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::size_t below(std::size_t n);  // uniform in [0, n)
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// A uniform random permutation of the residues at a random level in
/// [1, max_level], returned as a cocycle table of smallest absolute lifts.
GroupElement random_element(Rng& rng, const SpecPtr& spec, std::size_t max_level);

/// As random_element, but every residue cycle gets cocycle sum zero.
GroupElement random_periodic(Rng& rng, const SpecPtr& spec, std::size_t max_level);

/// As random_element, but every nontrivial cycle gets a nonzero sum, so the
/// element is aperiodic outside its fixed set.
GroupElement random_aperiodic(Rng& rng, const SpecPtr& spec, std::size_t max_level);

/// A uniformly random clopen set at a random level in [1, max_level];
/// nonempty when `nonempty` is set.
ClopenSet random_clopen(Rng& rng, const SpecPtr& spec, std::size_t max_level,
                        bool nonempty);

}  // namespace tfg
