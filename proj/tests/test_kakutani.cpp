#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfg/finite.hpp"
#include "tfg/random_gen.hpp"

using namespace tfg;

namespace {
SpecPtr dyadic() { return dyadic_spec(); }
}  // namespace

TEST_CASE("first_return of the shift to the evens") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  auto times = first_return(phi, ClopenSet(s, 1, {0}));
  REQUIRE(times.size() == 1);
  CHECK(times.at(0) == 2);
}

TEST_CASE("first_return at a deeper base") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  auto times = first_return(phi, ClopenSet(s, 2, {0, 1}));
  REQUIRE(times.size() == 2);
  CHECK(times.at(0) == 1);
  CHECK(times.at(1) == 3);
}

TEST_CASE("kr_partition of the shift") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);

  KRPartition single = kr_partition(phi, ClopenSet(s, 1, {0}));
  REQUIRE(single.towers.size() == 1);
  CHECK(single.towers[0].base == ClopenSet(s, 1, {0}));
  CHECK(single.towers[0].height == 2);

  KRPartition two = kr_partition(phi, ClopenSet(s, 2, {0, 1}));
  REQUIRE(two.towers.size() == 2);
  CHECK(two.towers[0].base == ClopenSet(s, 2, {0}));
  CHECK(two.towers[0].height == 1);
  CHECK(two.towers[1].base == ClopenSet(s, 2, {1}));
  CHECK(two.towers[1].height == 3);
}

TEST_CASE("kr_partition floors tile the space") {
  auto spec = make_spec({}, {2, 3});
  GroupElement phi = GroupElement::shift(spec);
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    ClopenSet a = random_clopen(rng, spec, 4, true);
    KRPartition p = kr_partition(phi, a);
    ClopenSet covered = ClopenSet::empty(spec);
    Rat total(0);
    for (const auto& tower : p.towers) {
      for (Int j = 0; j < tower.height; ++j) {
        ClopenSet floor = phi.power(j).image_of(tower.base);
        CHECK(floor.disjoint_from(covered));
        covered = covered.union_with(floor);
        total += floor.measure();
      }
      CHECK(a.contains(phi.power(tower.height).image_of(tower.base)));
    }
    CHECK(covered.is_full());
    CHECK(total == Rat(1));
  }
}

TEST_CASE("induced map of the shift on the evens") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  ClopenSet evens(s, 1, {0});
  GroupElement ind = induced_map(phi, evens);
  CHECK(ind.level() == 1);
  CHECK(ind.cocycle() == std::vector<Int>{2, 0});
}

TEST_CASE("induced map properties on random sets") {
  auto spec = dyadic();
  GroupElement phi = GroupElement::shift(spec);
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    ClopenSet a = random_clopen(rng, spec, 4, true);
    GroupElement ind = induced_map(phi, a);
    CHECK(a.contains(ind.support()));
    CHECK(ind.image_of(a) == a);
    CHECK(ind.index() == 1);  // Kac
    GroupElement restricted = ind.restricted_to(a);
    CHECK(restricted.equals(ind));
    if (!ind.support().is_empty()) CHECK(ind.is_minimal_on_support());
  }
}

TEST_CASE("periodic quotient") {
  auto s = dyadic();
  ClopenSet evens(s, 1, {0});
  GroupElement q = periodic_quotient(evens);
  CHECK(q.level() == 1);
  CHECK(q.cocycle() == std::vector<Int>{1, -1});
  CHECK(q.period_spectrum().order() == 2);

  GroupElement q4 = periodic_quotient(ClopenSet(s, 2, {0}));
  CHECK(q4.is_periodic());
  CHECK(q4.period_spectrum().order() == 4);
}

TEST_CASE("induced map of a general element") {
  auto spec = dyadic();
  Rng rng(31);
  int done = 0;
  for (int i = 0; i < 600 && done < 60; ++i) {
    GroupElement g = random_aperiodic(rng, spec, 3);
    ClopenSet a = random_clopen(rng, spec, 3, true);
    if (!g.support().contains(a)) continue;
    ++done;
    GroupElement ind = induced_map(g, a);
    CHECK(a.contains(ind.support()));
    CHECK(ind.image_of(a) == a);
    // cross-check pointwise against iterating g at a deep truncation
    std::size_t m = std::max(g.level(), a.level()) + 3;
    FinitePermutation pg = truncate(g, m);
    FinitePermutation pi = truncate(ind, m);
    auto in_a = [&](std::size_t x) { return a.contains(PointPrefix{m, Int(x)}); };
    for (std::size_t x = 0; x < pg.images.size(); ++x) {
      if (!in_a(x)) continue;
      std::size_t y = pg.images[x];
      while (!in_a(y)) y = pg.images[y];
      CHECK(pi.images[x] == y);
    }
  }
  CHECK(done == 60);
}

TEST_CASE("errors") {
  auto s = dyadic();
  GroupElement phi = GroupElement::shift(s);
  CHECK_THROWS_AS(kr_partition(phi, ClopenSet::empty(s)), precondition_error);
  GroupElement swap = GroupElement::from_cocycle(s, 2, {1, -1, 0, 0});
  CHECK_THROWS_AS(kr_partition(swap, ClopenSet(s, 1, {0})), precondition_error);
}
