#pragma once

#include <vector>

#include "tfg/odometer.hpp"

namespace tfg {

/// The cylinder of all points whose first `level` digits encode `residue`;
/// a finite stand-in for a point of the Cantor set.
struct PointPrefix {
  std::size_t level = 0;
  Int residue = 0;

  /// Same point prefix read at a deeper level (extends with zero digits).
  PointPrefix deepen(std::size_t new_level) const {
    if (new_level < level) throw precondition_error("cannot coarsen a point prefix");
    return {new_level, residue};
  }
};

/// A clopen subset of the odometer's Cantor space, canonically a set of
/// residues modulo Q(level).  Canonical form uses the smallest level at
/// which the set is a union of cylinders, so equality is structural.
class ClopenSet {
 public:
  /// Canonicalizing constructor; residues may arrive unsorted.
  ClopenSet(SpecPtr spec, std::size_t level, std::vector<Int> residues);

  static ClopenSet empty(SpecPtr spec);
  static ClopenSet full(SpecPtr spec);
  /// Single cylinder [residue] at the given level.
  static ClopenSet cylinder(SpecPtr spec, std::size_t level, Int residue);

  const SpecPtr& spec() const { return spec_; }
  std::size_t level() const { return level_; }
  const std::vector<Int>& residues() const { return residues_; }

  bool is_empty() const { return residues_.empty(); }
  bool is_full() const { return level_ == 0 && residues_.size() == 1; }

  /// Residues of this set read at level m >= level().
  std::vector<Int> residues_at(std::size_t m) const;

  ClopenSet union_with(const ClopenSet& other) const;
  ClopenSet intersect(const ClopenSet& other) const;
  ClopenSet complement() const;
  ClopenSet difference(const ClopenSet& other) const;

  /// Image under phi^n (residue translation), canonicalized.
  ClopenSet translate(const Int& n) const;

  /// Exact invariant measure |residues| / Q(level).
  Rat measure() const;

  bool contains(const ClopenSet& other) const;
  bool contains(const PointPrefix& p) const;
  bool disjoint_from(const ClopenSet& other) const;

  bool operator==(const ClopenSet& other) const;
  bool operator!=(const ClopenSet& other) const { return !(*this == other); }

 private:
  SpecPtr spec_;
  std::size_t level_;
  std::vector<Int> residues_;  // sorted, unique, in [0, Q(level))
};

/// A nonempty clopen subset of `inside` with measure strictly below `bound`
/// whose phi^s-image is disjoint from it for every s in `separation`.
ClopenSet find_small_clopen(const ClopenSet& inside, const Rat& bound,
                            const std::vector<Int>& separation);

}  // namespace tfg
