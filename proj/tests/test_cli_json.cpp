#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfg/constructions.hpp"
#include "tfg/finite.hpp"
#include "tfg/random_gen.hpp"

using namespace tfg;

namespace {
SpecPtr dyadic() { return dyadic_spec(); }
}  // namespace

TEST_CASE("integer and rational wire format") {
  CHECK(int_to_json(Int(-17)) == Json(-17));
  CHECK(int_from_json(Json(42)) == 42);
  CHECK(int_from_json(Json("-123")) == -123);
  CHECK_THROWS_AS(int_from_json(Json("abc")), parse_error);
  CHECK(rat_to_json(Rat(3, 12)) == Json("1/4"));
  CHECK(rat_from_json(Json("7/8")) == Rat(7, 8));
  CHECK(rat_from_json(Json("3")) == Rat(3));
  CHECK_THROWS_AS(rat_from_json(Json("1/0")), parse_error);
}

TEST_CASE("spec round trip") {
  auto s = make_spec({2, 3}, {5, 7});
  Json j = spec_to_json(*s);
  auto back = spec_from_json(j);
  CHECK(spec_to_json(*back) == j);
  CHECK(back->modulus(4) == s->modulus(4));
  CHECK_THROWS_AS(spec_from_json(parse_json(R"({"head":[],"tail":[]})")), parse_error);
  CHECK_THROWS_AS(spec_from_json(parse_json(R"({"head":[],"tail":[1]})")), parse_error);
}

TEST_CASE("clopen and element round trips") {
  auto s = dyadic();
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    ClopenSet a = random_clopen(rng, s, 4, false);
    CHECK(clopen_from_json(clopen_to_json(a), s) == a);
    GroupElement g = random_element(rng, s, 4);
    CHECK(element_from_json(element_to_json(g), s).equals(g));
  }
  CHECK_THROWS_AS(clopen_from_json(parse_json(R"({"level":1,"residues":[2]})"), s),
                  parse_error);
  CHECK_THROWS_AS(element_from_json(parse_json(R"({"level":1,"cocycle":[0,1]})"), s),
                  parse_error);
}

TEST_CASE("finite permutation round trip") {
  FinitePermutation p = FinitePermutation::from_images(2, {2, 3, 0, 1});
  CHECK(finite_from_json(finite_to_json(p)) == p);
  CHECK_THROWS_AS(finite_from_json(parse_json(R"({"m":1,"images":[0,0]})")), parse_error);
}

TEST_CASE("kr partition serialization") {
  auto s = dyadic();
  KRPartition p = kr_partition(GroupElement::shift(s), ClopenSet(s, 2, {0, 1}));
  Json j = kr_to_json(p);
  REQUIRE(j.at("towers").size() == 2);
  CHECK(int_from_json(j.at("towers")[0].at("height")) == 1);
  CHECK(int_from_json(j.at("towers")[1].at("height")) == 3);
}

TEST_CASE("certificate round trip and canonical dump") {
  auto s = dyadic();
  Certificate c = glasner_weiss_eq(ClopenSet(s, 1, {1}), ClopenSet(s, 1, {0}));
  Json j = certificate_to_json(c);
  Certificate back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
  CHECK(verify(back).ok);
  // byte-identical canonical output
  CHECK(dump_canonical(j) == dump_canonical(certificate_to_json(back)));
  CHECK(dump_canonical(j).back() == '\n');
}

TEST_CASE("verification catches tampered certificates") {
  auto s = dyadic();
  Certificate c = periodic_two_involutions(periodic_quotient(ClopenSet(s, 2, {0})));
  REQUIRE(verify(c).ok);
  Json j = certificate_to_json(c);
  // corrupt a single cocycle entry of the first factor while keeping the
  // table a permutation: negate a swap pair
  Json tampered = j;
  auto& coc = tampered.at("factors")[0].at("element").at("cocycle");
  bool changed = false;
  for (auto& v : coc) {
    if (v.get<long long>() != 0 && !changed) {
      long long n = v.get<long long>();
      v = -n;
      for (auto& w : coc) {
        if (&w != &v && w.get<long long>() == -n) {
          w = n;
          changed = true;
          break;
        }
      }
      if (changed) break;
      v = n;
    }
  }
  REQUIRE(changed);
  bool rejected = false;
  try {
    rejected = !verify(certificate_from_json(tampered)).ok;
  } catch (const parse_error&) {
    rejected = true;  // the mutation broke bijectivity and parsing refused it
  }
  CHECK(rejected);
}

TEST_CASE("parse errors carry through") {
  CHECK_THROWS_AS(parse_json("{not json"), parse_error);
  CHECK_THROWS_AS(certificate_from_json(parse_json(R"({"kind":"nope"})")), parse_error);
}
