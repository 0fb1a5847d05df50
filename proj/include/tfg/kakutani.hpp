#pragma once

#include <map>
#include <vector>

#include "tfg/group_element.hpp"

namespace tfg {

/// Rohlin tower: base, g(base), ..., g^{height-1}(base), pairwise disjoint.
struct Tower {
  ClopenSet base;
  Int height;
};

/// Partition of the ambient set into the floors of finitely many towers,
/// grouped by first-return time and ordered by increasing height.
struct KRPartition {
  std::vector<Tower> towers;
  ClopenSet over;  // union of the bases
};

/// First-return times of g to A, constant on residue cells of A at level
/// max(g.level, A.level); keyed by cell residue.
std::map<Int, Int> first_return(const GroupElement& g, const ClopenSet& A);

KRPartition kr_partition(const GroupElement& g, const ClopenSet& A);

/// The induced map phi_A of g on A (first-return powers on A, identity off A).
GroupElement induced_map(const GroupElement& g, const ClopenSet& A);

/// The periodic element phi_A^{-1} phi.
GroupElement periodic_quotient(const ClopenSet& A);

}  // namespace tfg
