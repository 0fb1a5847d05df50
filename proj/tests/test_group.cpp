#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfg/finite.hpp"
#include "tfg/random_gen.hpp"

using namespace tfg;

namespace {
SpecPtr dyadic() { return dyadic_spec(); }

GroupElement the_swap(const SpecPtr& s) {
  return GroupElement::from_cocycle(s, 1, {1, -1});
}
}  // namespace

TEST_CASE("from_cocycle validates and canonicalizes") {
  auto s = dyadic();
  CHECK(GroupElement::from_cocycle(s, 0, {1}).equals(GroupElement::shift(s)));
  CHECK_THROWS_AS(GroupElement::from_cocycle(s, 1, {0, 1}), not_bijective_error);
  GroupElement swap = the_swap(s);
  CHECK(swap.level() == 1);
  CHECK(swap.is_involution());
  CHECK(GroupElement::from_cocycle(s, 1, {1, 1}).equals(GroupElement::shift(s)));
}

TEST_CASE("compose, inverse, power") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  CHECK(phi.compose(phi).equals(GroupElement::shift_power(s, 2)));
  CHECK(the_swap(s).inverse().equals(the_swap(s)));
  ClopenSet evens(s, 1, {0});
  GroupElement q = induced_map(phi, evens).inverse().compose(phi);
  CHECK(q.level() == 1);
  CHECK(q.cocycle() == std::vector<Int>{1, -1});
  CHECK(phi.power(5).equals(GroupElement::shift_power(s, 5)));
  CHECK(phi.power(-3).compose(phi.power(3)).is_identity());
}

TEST_CASE("equality through canonical form") {
  auto s = dyadic();
  CHECK(GroupElement::shift(s).equals(GroupElement::from_cocycle(s, 1, {1, 1})));
  CHECK(!GroupElement::shift(s).equals(GroupElement::shift_power(s, 2)));
}

TEST_CASE("commutator and conjugation") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  CHECK(commutator(phi, phi).is_identity());
  CHECK(commutator(phi, phi.power(2)).is_identity());
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    GroupElement g = random_element(rng, s, 4);
    GroupElement h = random_element(rng, s, 4);
    CHECK(commutator(g, h).index() == 0);
    CHECK(g.conjugate_by(h).support() == h.image_of(g.support()));
  }
}

TEST_CASE("support and index") {
  auto s = dyadic();
  CHECK(GroupElement::identity(s).support().is_empty());
  CHECK(GroupElement::shift(s).support().is_full());
  CHECK(the_swap(s).support().is_full());
  CHECK(GroupElement::shift_power(s, 3).index() == Rat(3));
  CHECK(the_swap(s).index() == 0);
}

TEST_CASE("image_of and apply_to") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  CHECK(phi.image_of(ClopenSet(s, 2, {0})) == ClopenSet(s, 2, {1}));
  CHECK(GroupElement::identity(s).image_of(ClopenSet(s, 2, {1, 2})) == ClopenSet(s, 2, {1, 2}));
  PointPrefix p = phi.apply_to(PointPrefix{2, 3});
  CHECK(p.residue == 0);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    GroupElement g = random_element(rng, s, 4);
    ClopenSet a = random_clopen(rng, s, 4, false);
    CHECK(g.image_of(a).measure() == a.measure());
  }
}

TEST_CASE("period spectrum") {
  auto s = dyadic();
  auto id_spec = GroupElement::identity(s).period_spectrum();
  REQUIRE(id_spec.classes.size() == 1);
  CHECK(id_spec.classes[0].period == 1);
  CHECK(id_spec.classes[0].part.is_full());
  CHECK(id_spec.is_periodic());

  auto swap_spec = the_swap(s).period_spectrum();
  REQUIRE(swap_spec.classes.size() == 1);
  CHECK(swap_spec.classes[0].period == 2);
  CHECK(swap_spec.classes[0].part.is_full());
  CHECK(swap_spec.classes[0].base == ClopenSet(s, 1, {0}));
  CHECK(swap_spec.order() == 2);

  auto phi_spec = GroupElement::shift(s).period_spectrum();
  CHECK(phi_spec.classes.empty());
  CHECK(phi_spec.aperiodic.is_full());
}

TEST_CASE("period spectrum partitions and base orbits") {
  auto s = make_spec({3}, {2});
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    GroupElement g = random_element(rng, s, 3);
    auto ps = g.period_spectrum();
    Rat total = ps.aperiodic.measure();
    for (const auto& cls : ps.classes) {
      total += cls.part.measure();
      CHECK(g.power(cls.period).image_of(cls.base) == cls.base);
      ClopenSet orbit = ClopenSet::empty(s);
      for (Int k = 0; k < cls.period; ++k) orbit = orbit.union_with(g.power(k).image_of(cls.base));
      CHECK(orbit == cls.part);
    }
    CHECK(total == Rat(1));
    if (ps.is_periodic()) CHECK(g.power(ps.order()).is_identity());
  }
}

TEST_CASE("minimality criterion matches brute force") {
  auto s = dyadic();
  CHECK(GroupElement::shift(s).is_minimal_on_support());
  CHECK(!GroupElement::shift_power(s, 2).is_minimal_on_support());

  auto brute_single_cycle_on_support = [](const GroupElement& g, std::size_t m) {
    FinitePermutation p = truncate(g, m);
    auto supp = p.support();
    if (supp.empty()) return false;
    std::size_t x = supp[0], len = 0;
    do {
      x = p.images[x];
      ++len;
    } while (x != supp[0]);
    return len == supp.size();
  };
  Rng rng(17);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    GroupElement g = random_element(rng, s, 3);
    if (g.support().is_empty()) continue;
    ++checked;
    bool claim = g.is_minimal_on_support();
    for (std::size_t extra = 1; extra <= 4; ++extra) {
      std::size_t m = g.level() + extra;
      CHECK(claim == brute_single_cycle_on_support(g, m));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("truncation is a homomorphism") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  FinitePermutation t = truncate(phi, 2);
  CHECK(t.images == std::vector<std::size_t>{1, 2, 3, 0});
  CHECK(truncate(GroupElement::identity(s), 3).is_identity());
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    GroupElement g = random_element(rng, s, 3);
    GroupElement h = random_element(rng, s, 3);
    std::size_t m = std::max(g.level(), h.level()) + 1;
    CHECK(truncate(g.compose(h), m) == truncate(g, m).compose(truncate(h, m)));
    CHECK(truncate(g.inverse(), m) == truncate(g, m).inverse());
  }
}

TEST_CASE("group axioms on random triples") {
  auto s = make_spec({2}, {3, 2});
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    GroupElement g = random_element(rng, s, 4);
    GroupElement h = random_element(rng, s, 4);
    GroupElement k = random_element(rng, s, 4);
    CHECK(g.compose(h).compose(k).equals(g.compose(h.compose(k))));
    CHECK(g.compose(g.inverse()).is_identity());
    CHECK(g.compose(GroupElement::identity(s)).equals(g));
    CHECK(g.compose(h).index() == g.index() + h.index());
  }
}

TEST_CASE("restricted_to") {
  auto s = dyadic();
  GroupElement swap2 = GroupElement::from_cocycle(s, 2, {1, -1, 1, -1});
  ClopenSet evens01 = ClopenSet(s, 2, {0, 1});
  GroupElement r = swap2.restricted_to(evens01);
  CHECK(r.support() == evens01);
  CHECK(r.compose(swap2.restricted_to(evens01.complement())).equals(swap2));
  CHECK_THROWS_AS(GroupElement::shift(s).restricted_to(ClopenSet(s, 1, {0})), precondition_error);
}
