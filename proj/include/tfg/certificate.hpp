#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfg/json_io.hpp"

namespace tfg {

enum class CertKind {
  GlasnerWeissSub,
  GlasnerWeissEq,
  SmallGenerators,
  PeriodicCommutator,
  TwoInvolutions,
  ManyInvolutions,
  MinimalFirstStep,
  CommutatorExpansion,
  FourConjugates,
  TowerLemma,
  EighteenCycle,
  InducedTimesInvolutions,
  FiniteThreeInvolutions,
};

std::string kind_name(CertKind k);
CertKind kind_from_name(const std::string& name);

struct NamedElement {
  std::string name;
  GroupElement element;
};

/// A self-contained, re-checkable factorization claim: the target identity
/// can be validated from the stored data by multiplication and set algebra
/// alone, without re-running the construction that produced it.
struct Certificate {
  CertKind kind;
  SpecPtr spec;
  std::optional<GroupElement> target_element;
  std::optional<std::pair<ClopenSet, ClopenSet>> target_sets;
  std::vector<NamedElement> factors;
  Json side_data;  // clopen sets, measures, finite permutations

  const GroupElement& factor(const std::string& name) const;
  bool has_factor(const std::string& name) const;
};

struct VerifyResult {
  bool ok;
  std::string message;  // first failing check when !ok, "ok" otherwise
};

/// Recomputes every identity and postcondition the certificate claims.
VerifyResult verify(const Certificate& c);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

}  // namespace tfg
