#pragma once

#include <array>

#include "tfg/certificate.hpp"

namespace tfg {

/// A permutation of Z/Q(m): the image of a full-group element under
/// truncation at level m.
struct FinitePermutation {
  std::size_t m = 0;
  std::vector<std::size_t> images;

  static FinitePermutation identity(std::size_t m, std::size_t q);
  static FinitePermutation from_images(std::size_t m, std::vector<std::size_t> images);

  std::size_t size() const { return images.size(); }
  FinitePermutation compose(const FinitePermutation& other) const;  // *this after other
  FinitePermutation inverse() const;
  FinitePermutation power(long e) const;
  bool is_identity() const;
  bool is_involution_or_id() const;
  std::vector<std::size_t> support() const;
  bool operator==(const FinitePermutation& other) const {
    return m == other.m && images == other.images;
  }
};

FinitePermutation truncate(const GroupElement& g, std::size_t m);

Json finite_to_json(const FinitePermutation& p);
FinitePermutation finite_from_json(const Json& j);

/// Given g cycling 18 blocks and involutions h_0..h_17 supported in block 0
/// whose ordered product equals g^18 on block 0, returns the involution
/// d = prod_k g^k h_k^{-1} g^{-k}; then (g*d)^18 = id.
FinitePermutation finite_cycles_lemma(const FinitePermutation& g,
                                      const std::array<std::vector<std::size_t>, 18>& blocks,
                                      const std::array<FinitePermutation, 18>& hs);

/// Three involutions whose product is the cyclic shift a -> a+1 on Z/Q(m).
Certificate finite_three_involutions(SpecPtr spec, std::size_t m);

struct LocalSubgroupReport {
  bool matches;            // W_pi == pointwise stabilizer of the co-support
  bool chain_valid;        // V_pi inside C_pi; S_pi supported off supp(pi)
  std::size_t w_size = 0;
  std::size_t stabilizer_size = 0;
};

/// Computes the centralizer chain C, U, V, S, W for an involution pi in
/// Sym(Q(m)) and compares W with the pointwise stabilizer of the complement
/// of supp(pi).  Exhaustive; requires Q(m) <= 8 and pi != id.
LocalSubgroupReport local_subgroup_check(const FinitePermutation& pi);

/// Whether the level-m2 truncation of g projects to the level-m1 one.
bool truncation_coherence(const GroupElement& g, std::size_t m1, std::size_t m2);

}  // namespace tfg
