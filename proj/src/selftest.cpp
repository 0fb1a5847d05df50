#include "tfg/selftest.hpp"

#include <functional>
#include <ostream>

#include "tfg/constructions.hpp"
#include "tfg/finite.hpp"
#include "tfg/kakutani.hpp"
#include "tfg/random_gen.hpp"

namespace tfg {

namespace {

struct Suite {
  const char* name;
  std::function<bool(Rng&, const SelftestOptions&)> one_case;
};

bool group_axioms(Rng& rng, const SelftestOptions& o) {
  const GroupElement a = random_element(rng, o.spec, o.max_level);
  const GroupElement b = random_element(rng, o.spec, o.max_level);
  const GroupElement c = random_element(rng, o.spec, o.max_level);
  const GroupElement id = GroupElement::identity(o.spec);
  return a.compose(b).compose(c).equals(a.compose(b.compose(c))) &&
         a.compose(a.inverse()).equals(id) && a.compose(id).equals(a) &&
         id.compose(a).equals(a);
}

bool index_homomorphism(Rng& rng, const SelftestOptions& o) {
  const GroupElement a = random_element(rng, o.spec, o.max_level);
  const GroupElement b = random_element(rng, o.spec, o.max_level);
  return a.compose(b).index() == a.index() + b.index() &&
         commutator(a, b).index() == 0;
}

bool induced_map_properties(Rng& rng, const SelftestOptions& o) {
  const ClopenSet A = random_clopen(rng, o.spec, o.max_level, true);
  const GroupElement phi = GroupElement::shift(o.spec);
  const GroupElement phi_a = induced_map(phi, A);
  const GroupElement quotient = periodic_quotient(A);
  return phi_a.index() == 1 && A.contains(phi_a.support()) &&
         phi_a.compose(quotient).equals(phi) && quotient.is_periodic();
}

bool glasner_weiss_roundtrip(Rng& rng, const SelftestOptions& o) {
  const ClopenSet A = random_clopen(rng, o.spec, o.max_level, true);
  const ClopenSet B = random_clopen(rng, o.spec, o.max_level, true);
  if (A.measure() == B.measure()) {
    return verify(glasner_weiss_eq(B, A)).ok;
  }
  const bool b_smaller = B.measure() < A.measure();
  return verify(glasner_weiss_sub(b_smaller ? B : A, b_smaller ? A : B)).ok;
}

bool two_involutions_roundtrip(Rng& rng, const SelftestOptions& o) {
  const GroupElement g = random_periodic(rng, o.spec, o.max_level);
  return verify(periodic_two_involutions(g)).ok;
}

bool commutator_roundtrip(Rng& rng, const SelftestOptions& o) {
  const GroupElement g = random_periodic(rng, o.spec, o.max_level);
  return verify(periodic_commutator(g)).ok;
}

bool small_generators_roundtrip(Rng& rng, const SelftestOptions& o) {
  const GroupElement g = random_element(rng, o.spec, o.max_level);
  return verify(small_generators(g, Rat(1, 4))).ok;
}

bool coherence(Rng& rng, const SelftestOptions& o) {
  const GroupElement g = random_element(rng, o.spec, o.max_level);
  return truncation_coherence(g, g.level(), g.level() + 2);
}

bool certificate_roundtrip(Rng& rng, const SelftestOptions& o) {
  const ClopenSet A = random_clopen(rng, o.spec, o.max_level, true);
  const Certificate cert = induced_times_involutions(A);
  const Certificate back = certificate_from_json(certificate_to_json(cert));
  return verify(back).ok;
}

}  // namespace

bool run_selftest(const SelftestOptions& options, std::ostream& out) {
  const Suite suites[] = {
      {"group_axioms", group_axioms},
      {"index_homomorphism", index_homomorphism},
      {"induced_map", induced_map_properties},
      {"glasner_weiss", glasner_weiss_roundtrip},
      {"two_involutions", two_involutions_roundtrip},
      {"periodic_commutator", commutator_roundtrip},
      {"small_generators", small_generators_roundtrip},
      {"truncation_coherence", coherence},
      {"certificate_roundtrip", certificate_roundtrip},
  };
  bool all_ok = true;
  std::size_t total = 0;
  for (const Suite& suite : suites) {
    Rng rng(options.seed);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < options.cases; ++i) {
      bool ok = false;
      try {
        ok = suite.one_case(rng, options);
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok) ++passed;
    }
    out << suite.name << ": " << passed << "/" << options.cases << "\n";
    all_ok = all_ok && passed == options.cases;
    total += passed;
  }
  out << (all_ok ? "selftest passed" : "selftest FAILED") << " (" << total << " cases)\n";
  return all_ok;
}

}  // namespace tfg
