#pragma once

#include <optional>
#include <vector>

#include "tfg/clopen.hpp"

namespace tfg {

/// Thrown by from_cocycle when the residue map a -> a + n(a) is not a
/// bijection of Z/Q(k), i.e. the table does not define a homeomorphism.
struct not_bijective_error : precondition_error {
  using precondition_error::precondition_error;
};

class GroupElement;

/// Partition of the space by exact orbit size under a group element:
/// classes of finite period n plus an aperiodic remainder.
struct PeriodSpectrum {
  struct Periodic {
    Int period;          // n >= 1
    ClopenSet part;      // X_n
    ClopenSet base;      // X_n0 with X_n = disjoint union of g^i(X_n0)
  };
  std::vector<Periodic> classes;  // ordered by period
  ClopenSet aperiodic;

  bool is_periodic() const { return aperiodic.is_empty(); }
  /// lcm of the class periods; only valid when is_periodic().
  Int order() const;
};

/// An element of the topological full group: a level-k cocycle table
/// a -> n(a) inducing x -> phi^{n(x)}(x).  Canonical form factors the table
/// through the coarsest possible level, so equality is structural.
class GroupElement {
 public:
  static GroupElement identity(SpecPtr spec);
  /// The odometer map phi itself (constant cocycle 1).
  static GroupElement shift(SpecPtr spec);
  static GroupElement shift_power(SpecPtr spec, Int m);

  /// Validates the permutation condition at the given level and
  /// canonicalizes; throws not_bijective_error otherwise.
  static GroupElement from_cocycle(SpecPtr spec, std::size_t level, std::vector<Int> table);

  const SpecPtr& spec() const { return spec_; }
  std::size_t level() const { return level_; }
  const std::vector<Int>& cocycle() const { return cocycle_; }

  /// Cocycle table refined to level m >= level().
  std::vector<Int> cocycle_at(std::size_t m) const;

  GroupElement compose(const GroupElement& other) const;  // *this after other
  GroupElement inverse() const;
  GroupElement power(const Int& m) const;
  GroupElement conjugate_by(const GroupElement& psi) const;  // psi g psi^{-1}

  bool equals(const GroupElement& other) const;
  bool is_identity() const;
  bool is_involution() const;

  ClopenSet support() const;
  /// Integral of the cocycle: (1/Q(k)) * sum n(a); the index homomorphism.
  Rat index() const;

  ClopenSet image_of(const ClopenSet& s) const;
  PointPrefix apply_to(const PointPrefix& p) const;

  PeriodSpectrum period_spectrum() const;
  bool is_periodic() const { return period_spectrum().is_periodic(); }

  /// Decides whether the element acts minimally on its (nonempty) support:
  /// single residue cycle at the canonical level whose holonomy is coprime
  /// to every deeper base.
  bool is_minimal_on_support() const;

  /// The induced permutation of Z/Q(m), m >= level(); images[a] =
  /// (a + n(a mod Q(level))) mod Q(m).
  std::vector<Int> truncate(std::size_t m) const;

  /// Restriction: equal to *this on `where`, identity elsewhere.
  /// Requires g(where) = where so the result is again a bijection.
  GroupElement restricted_to(const ClopenSet& where) const;

 private:
  GroupElement(SpecPtr spec, std::size_t level, std::vector<Int> table);
  void canonicalize();

  SpecPtr spec_;
  std::size_t level_;
  std::vector<Int> cocycle_;  // length Q(level)
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement commutator(const GroupElement& g, const GroupElement& h);
/// Ordered product f_1 o f_2 o ... o f_m (empty product = identity).
GroupElement product(SpecPtr spec, const std::vector<GroupElement>& factors);

}  // namespace tfg
