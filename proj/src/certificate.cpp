#include "tfg/certificate.hpp"

#include <algorithm>
#include <map>

namespace tfg {

namespace {

const std::map<std::string, CertKind>& kind_table() {
  static const std::map<std::string, CertKind> table = {
      {"glasner_weiss_sub", CertKind::GlasnerWeissSub},
      {"glasner_weiss_eq", CertKind::GlasnerWeissEq},
      {"small_generators", CertKind::SmallGenerators},
      {"periodic_commutator", CertKind::PeriodicCommutator},
      {"two_involutions", CertKind::TwoInvolutions},
      {"many_involutions", CertKind::ManyInvolutions},
      {"minimal_first_step", CertKind::MinimalFirstStep},
      {"commutator_expansion", CertKind::CommutatorExpansion},
      {"four_conjugates", CertKind::FourConjugates},
      {"tower_lemma", CertKind::TowerLemma},
      {"eighteen_cycle", CertKind::EighteenCycle},
      {"induced_times_involutions", CertKind::InducedTimesInvolutions},
      {"finite_three_involutions", CertKind::FiniteThreeInvolutions},
  };
  return table;
}

}  // namespace

std::string kind_name(CertKind k) {
  for (const auto& [name, kind] : kind_table()) {
    if (kind == k) return name;
  }
  throw precondition_error("unknown certificate kind");
}

CertKind kind_from_name(const std::string& name) {
  const auto it = kind_table().find(name);
  if (it == kind_table().end()) throw parse_error("unknown certificate kind: " + name);
  return it->second;
}

const GroupElement& Certificate::factor(const std::string& name) const {
  for (const NamedElement& f : factors) {
    if (f.name == name) return f.element;
  }
  throw parse_error("certificate is missing factor \"" + name + "\"");
}

bool Certificate::has_factor(const std::string& name) const {
  return std::any_of(factors.begin(), factors.end(),
                     [&](const NamedElement& f) { return f.name == name; });
}

Json certificate_to_json(const Certificate& c) {
  Json target;
  if (c.target_element) {
    target = Json{{"element", element_to_json(*c.target_element)}};
  } else if (c.target_sets) {
    target = Json{{"sets", Json::array({clopen_to_json(c.target_sets->first),
                                        clopen_to_json(c.target_sets->second)})}};
  } else {
    target = nullptr;
  }
  Json factors = Json::array();
  for (const NamedElement& f : c.factors) {
    factors.push_back(Json{{"name", f.name}, {"element", element_to_json(f.element)}});
  }
  return Json{{"kind", kind_name(c.kind)},
              {"spec", spec_to_json(*c.spec)},
              {"target", target},
              {"factors", factors},
              {"side_data", c.side_data}};
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw parse_error("certificate must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw parse_error("certificate is missing \"kind\"");
  if (!j.contains("spec")) throw parse_error("certificate is missing \"spec\"");
  Certificate c{kind_from_name(j.at("kind").get<std::string>()),
                spec_from_json(j.at("spec")),
                std::nullopt,
                std::nullopt,
                {},
                j.value("side_data", Json::object())};
  if (j.contains("target") && j.at("target").is_object()) {
    const Json& t = j.at("target");
    if (t.contains("element")) {
      c.target_element = element_from_json(t.at("element"), c.spec);
    } else if (t.contains("sets")) {
      const Json& s = t.at("sets");
      if (!s.is_array() || s.size() != 2) throw parse_error("target sets must be a pair");
      c.target_sets = {clopen_from_json(s[0], c.spec), clopen_from_json(s[1], c.spec)};
    }
  }
  if (j.contains("factors")) {
    for (const Json& f : j.at("factors")) {
      if (!f.contains("name") || !f.at("name").is_string())
        throw parse_error("factor is missing \"name\"");
      c.factors.push_back(
          {f.at("name").get<std::string>(), element_from_json(f.at("element"), c.spec)});
    }
  }
  return c;
}

namespace {

/// Accumulates named checks; remembers the first failure.
struct Checker {
  bool ok = true;
  std::string message = "ok";

  void check(bool cond, const std::string& what) {
    if (ok && !cond) {
      ok = false;
      message = what;
    }
  }
};

GroupElement ordered_product(const Certificate& c, const std::vector<GroupElement>& fs) {
  GroupElement acc = GroupElement::identity(c.spec);
  for (const GroupElement& f : fs) acc = acc.compose(f);
  return acc;
}

const GroupElement& target_element(const Certificate& c) {
  if (!c.target_element) throw parse_error("certificate is missing its target element");
  return *c.target_element;
}

ClopenSet side_set(const Certificate& c, const char* key) {
  if (!c.side_data.contains(key))
    throw parse_error(std::string("side_data is missing \"") + key + "\"");
  return clopen_from_json(c.side_data.at(key), c.spec);
}

bool involution_or_id(const GroupElement& g) { return g.compose(g).is_identity(); }

void verify_glasner_weiss(const Certificate& c, Checker& ck, bool exact) {
  if (!c.target_sets) throw parse_error("certificate is missing its target sets");
  const auto& [B, A] = *c.target_sets;
  const GroupElement& alpha = c.factor("alpha");
  ck.check(involution_or_id(alpha), "alpha is not an involution");
  ck.check(alpha.index() == 0, "alpha has nonzero index");
  const ClopenSet image = alpha.image_of(B);
  if (exact) {
    ck.check(image == A, "alpha(B) differs from A");
  } else {
    ck.check(A.contains(image), "alpha(B) is not contained in A");
  }
  ck.check(B.union_with(image).contains(alpha.support()),
           "support of alpha exceeds B together with alpha(B)");
  ck.check(alpha.support().disjoint_from(B.intersect(A)),
           "alpha moves points of B that already lie in A");
}

void verify_small_generators(const Certificate& c, Checker& ck) {
  const GroupElement& g = target_element(c);
  const Rat delta = rat_from_json(c.side_data.at("delta"));
  const Json& supports = c.side_data.at("supports");
  if (!supports.is_array() || supports.size() != c.factors.size())
    throw parse_error("supports list does not match the factor list");
  std::vector<GroupElement> fs;
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    const GroupElement& f = c.factors[i].element;
    const ClopenSet e = clopen_from_json(supports[i], c.spec);
    ck.check(e.contains(f.support()),
             "factor " + c.factors[i].name + " escapes its support set");
    ck.check(e.measure() < delta,
             "support set of " + c.factors[i].name + " is not smaller than delta");
    fs.push_back(f);
  }
  ck.check(ordered_product(c, fs).equals(g), "factor product differs from the target");
}

void verify_periodic_commutator(const Certificate& c, Checker& ck) {
  const GroupElement& g = target_element(c);
  ck.check(g.is_periodic(), "target is not periodic");
  ck.check(commutator(c.factor("g1"), c.factor("psi")).equals(g),
           "commutator of the factors differs from the target");
}

void verify_two_involutions(const Certificate& c, Checker& ck) {
  const GroupElement& g = target_element(c);
  const GroupElement& s = c.factor("s");
  const GroupElement& t = c.factor("t");
  ck.check(involution_or_id(s), "s is not an involution");
  ck.check(involution_or_id(t), "t is not an involution");
  ck.check(s.compose(t).equals(g), "s*t differs from the target");
  if (c.side_data.contains("fixed_blocks")) {
    ck.check(s.support().disjoint_from(side_set(c, "fixed_blocks")),
             "s moves points of the base blocks");
  }
}

void verify_many_involutions(const Certificate& c, Checker& ck) {
  const GroupElement& h = target_element(c);
  const GroupElement& l = c.factor("l");
  const GroupElement& r = c.factor("r");
  const GroupElement& alpha = c.factor("alpha");
  const ClopenSet A = side_set(c, "A");
  const PointPrefix x = prefix_from_json(c.side_data.at("x"));
  const Int n = int_from_json(c.side_data.at("n"));
  ck.check(involution_or_id(alpha), "alpha is not an involution");
  ck.check(l.compose(r.inverse()).equals(h), "l*r^{-1} differs from h");
  ck.check(r.conjugate_by(alpha).equals(l), "l is not the alpha-conjugate of r");
  ck.check(A.contains(h.support()), "h escapes A");
  ck.check(h.support().contains(x), "h fixes the marked point");
  const PeriodSpectrum ps = h.period_spectrum();
  ck.check(ps.is_periodic(), "h is not periodic");
  for (const auto& cls : ps.classes) {
    if (cls.period == 1) continue;
    ck.check(cls.period == n, "an orbit of h has the wrong period");
    ck.check(cls.part == h.support(), "the period-n part differs from supp(h)");
  }
}

void verify_minimal_first_step(const Certificate& c, Checker& ck) {
  const GroupElement& f = target_element(c);
  const GroupElement& f1 = c.factor("f1");
  const GroupElement& s = c.factor("s");
  const GroupElement& t = c.factor("t");
  const Rat delta = rat_from_json(c.side_data.at("delta"));
  ck.check(f1.compose(commutator(s, t)).equals(f), "f1*[s,t] differs from f");
  ck.check(f1.support().measure() < delta, "residual support is not below delta");
  const ClopenSet supp = f.support();
  ck.check(supp.contains(f1.support()), "residual escapes supp(f)");
  ck.check(supp.contains(s.support()), "s escapes supp(f)");
  ck.check(supp.contains(t.support()), "t escapes supp(f)");
  ck.check(f1.is_minimal_on_support(), "residual is not minimal on its support");
  ck.check(!(f1.support() == supp), "residual support is not a proper subset");
}

void verify_commutator_expansion(const Certificate& c, Checker& ck) {
  const GroupElement& f = target_element(c);
  const GroupElement& residual = c.factor("residual");
  const Int steps = int_from_json(c.side_data.at("steps"));
  const ClopenSet supp = f.support();
  std::vector<GroupElement> fs{residual};
  for (Int i = steps; i >= 1; --i) {
    const std::string suffix = i.str();
    const GroupElement& s = c.factor("s" + suffix);
    const GroupElement& t = c.factor("t" + suffix);
    ck.check(supp.contains(s.support()), "s" + suffix + " escapes supp(f)");
    ck.check(supp.contains(t.support()), "t" + suffix + " escapes supp(f)");
    fs.push_back(commutator(s, t));
  }
  ck.check(ordered_product(c, fs).equals(f), "expansion product differs from f");
  Rat bound = supp.measure();
  for (Int i = 1; i < steps; ++i) bound /= 2;
  ck.check(residual.support().measure() < bound, "residual measure bound violated");
  ck.check(supp.contains(residual.support()), "residual escapes supp(f)");
  ck.check(residual.is_minimal_on_support(), "residual is not minimal on its support");
}

void verify_four_conjugates(const Certificate& c, Checker& ck) {
  const GroupElement& target = target_element(c);
  const GroupElement& h = c.factor("h");
  const GroupElement& g = c.factor("g");
  const GroupElement& w = c.factor("w");
  const GroupElement& alpha = c.factor("alpha");
  const GroupElement& q = c.factor("q");
  const ClopenSet E = side_set(c, "E");
  const ClopenSet aprime = side_set(c, "A_prime");
  ck.check(involution_or_id(w), "w is not an involution");
  ck.check(involution_or_id(alpha), "alpha is not an involution");
  ck.check(w.image_of(E).disjoint_from(E), "w(E) meets E");
  ck.check(E.contains(alpha.image_of(aprime)), "alpha(A') is not contained in E");
  ck.check(aprime.contains(h.support().union_with(g.support())),
           "A' does not contain the supports of h and g");
  ck.check(q.equals(alpha.compose(w).compose(alpha)), "q differs from alpha*w*alpha");
  ck.check(q.image_of(aprime).disjoint_from(aprime), "q(A') meets A'");
  ck.check(target.equals(commutator(h, g)), "target differs from [h,g]");
  const GroupElement gh = g.compose(h);
  ck.check(c.factor("p1").equals(q.conjugate_by(h)), "p1 is not h*q*h^{-1}");
  ck.check(c.factor("p2").equals(q.inverse()), "p2 is not q^{-1}");
  ck.check(c.factor("p3").equals(q.conjugate_by(g)), "p3 is not g*q*g^{-1}");
  ck.check(c.factor("p4").equals(q.inverse().conjugate_by(gh)),
           "p4 is not (gh)*q^{-1}*(gh)^{-1}");
  const GroupElement prod = ordered_product(
      c, {c.factor("p1"), c.factor("p2"), c.factor("p3"), c.factor("p4")});
  ck.check(prod.equals(target), "the four conjugates do not multiply to [h,g]");
}

void verify_tower_lemma(const Certificate& c, Checker& ck) {
  if (!c.target_sets) throw parse_error("certificate is missing its target sets");
  const auto& [A, B] = *c.target_sets;
  const Int n = int_from_json(c.side_data.at("n"));
  ClopenSet uni = ClopenSet::empty(c.spec);
  for (Int i = 0; i < n; ++i) {
    const ClopenSet shifted = A.translate(i);
    ck.check(uni.disjoint_from(shifted), "translates of A are not disjoint");
    uni = uni.union_with(shifted);
  }
  ck.check(B == uni.complement(), "B is not the complement of the translates");
  ck.check(A.contains(B.translate(1)), "the shift does not map B into A");
  ck.check(A.measure() * n + B.measure() == 1, "measure identity fails");
}

void verify_eighteen_cycle(const Certificate& c, Checker& ck) {
  const GroupElement& b = c.factor("b");
  const GroupElement& g = c.factor("g");
  ck.check(involution_or_id(b), "b is not an involution");
  ck.check(g.equals(b.compose(GroupElement::shift(c.spec))), "g differs from b*phi");
  ck.check(g.index() == 1, "g has index != 1");
  const Json& blocks_json = c.side_data.at("blocks");
  if (!blocks_json.is_array() || blocks_json.size() != 18)
    throw parse_error("expected 18 blocks");
  std::vector<ClopenSet> blocks;
  for (const Json& bj : blocks_json) blocks.push_back(clopen_from_json(bj, c.spec));
  ClopenSet uni = ClopenSet::empty(c.spec);
  for (std::size_t i = 0; i < 18; ++i) {
    ck.check(uni.disjoint_from(blocks[i]), "blocks are not disjoint");
    uni = uni.union_with(blocks[i]);
    ck.check(g.image_of(blocks[i]) == blocks[(i + 1) % 18],
             "g does not advance block " + std::to_string(i));
  }
  ck.check(uni.contains(g.support()), "g moves points outside the blocks");
  if (!ck.ok) return;
  const GroupElement g18 = g.power(18).restricted_to(blocks[0]);
  ck.check(g18.support() == blocks[0], "g^18 fixes part of the first block");
  ck.check(g18.is_minimal_on_support(), "g^18 is not minimal on the first block");
}

void verify_induced_times_involutions(const Certificate& c, Checker& ck) {
  const GroupElement& phi_a = c.factor("phi_A");
  const GroupElement& s = c.factor("s");
  const GroupElement& t = c.factor("t");
  const ClopenSet A = side_set(c, "A");
  ck.check(involution_or_id(s), "s is not an involution");
  ck.check(involution_or_id(t), "t is not an involution");
  ck.check(phi_a.compose(s).compose(t).equals(GroupElement::shift(c.spec)),
           "phi_A*s*t differs from phi");
  ck.check(phi_a.support() == A, "support of phi_A differs from A");
  ck.check(phi_a.index() == 1, "phi_A has index != 1");
  ck.check(phi_a.is_minimal_on_support(), "phi_A is not minimal on A");
}

std::vector<std::size_t> perm_from_json(const Json& j, std::size_t q) {
  std::vector<std::size_t> images;
  for (const Int& v : [&] {
         std::vector<Int> out;
         for (const Json& x : j.at("images")) out.push_back(int_from_json(x));
         return out;
       }()) {
    if (v < 0 || v >= Int(q)) throw parse_error("permutation image out of range");
    images.push_back(to_index(v));
  }
  if (images.size() != q) throw parse_error("permutation has the wrong length");
  std::vector<bool> seen(q, false);
  for (std::size_t x : images) {
    if (seen[x]) throw parse_error("not a permutation");
    seen[x] = true;
  }
  return images;
}

void verify_finite_three_involutions(const Certificate& c, Checker& ck) {
  const std::size_t m = to_index(int_from_json(c.side_data.at("m")));
  const std::size_t q = to_index(c.spec->modulus(m));
  const auto get = [&](const char* key) {
    return perm_from_json(c.side_data.at(key), q);
  };
  const auto comp = [](const std::vector<std::size_t>& f,
                       const std::vector<std::size_t>& g) {
    std::vector<std::size_t> out(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) out[a] = f[g[a]];
    return out;
  };
  const auto is_invol = [&](const std::vector<std::size_t>& p) {
    for (std::size_t a = 0; a < q; ++a) {
      if (p[p[a]] != a) return false;
    }
    return true;
  };
  const auto i1 = get("i1"), i2 = get("i2"), i3 = get("i3");
  const auto g = get("g"), d = get("d"), b = get("b");
  ck.check(is_invol(i1), "i1 is not an involution");
  ck.check(is_invol(i2), "i2 is not an involution");
  ck.check(is_invol(i3), "i3 is not an involution");
  ck.check(is_invol(d), "d is not an involution");
  ck.check(is_invol(b), "b is not an involution");
  std::vector<std::size_t> shift(q);
  for (std::size_t a = 0; a < q; ++a) shift[a] = (a + 1) % q;
  ck.check(comp(i1, comp(i2, i3)) == shift, "i1*i2*i3 differs from the shift");
  ck.check(comp(b, shift) == g, "g differs from b*shift");
  std::vector<std::size_t> gd = comp(g, d);
  std::vector<std::size_t> acc(q);
  for (std::size_t a = 0; a < q; ++a) acc[a] = a;
  for (int i = 0; i < 18; ++i) acc = comp(gd, acc);
  bool gd18_id = true;
  for (std::size_t a = 0; a < q; ++a) {
    if (acc[a] != a) gd18_id = false;
  }
  ck.check(gd18_id, "(g*d)^18 is not the identity");
}

}  // namespace

VerifyResult verify(const Certificate& c) {
  Checker ck;
  try {
    switch (c.kind) {
      case CertKind::GlasnerWeissSub: verify_glasner_weiss(c, ck, false); break;
      case CertKind::GlasnerWeissEq: verify_glasner_weiss(c, ck, true); break;
      case CertKind::SmallGenerators: verify_small_generators(c, ck); break;
      case CertKind::PeriodicCommutator: verify_periodic_commutator(c, ck); break;
      case CertKind::TwoInvolutions: verify_two_involutions(c, ck); break;
      case CertKind::ManyInvolutions: verify_many_involutions(c, ck); break;
      case CertKind::MinimalFirstStep: verify_minimal_first_step(c, ck); break;
      case CertKind::CommutatorExpansion: verify_commutator_expansion(c, ck); break;
      case CertKind::FourConjugates: verify_four_conjugates(c, ck); break;
      case CertKind::TowerLemma: verify_tower_lemma(c, ck); break;
      case CertKind::EighteenCycle: verify_eighteen_cycle(c, ck); break;
      case CertKind::InducedTimesInvolutions: verify_induced_times_involutions(c, ck); break;
      case CertKind::FiniteThreeInvolutions: verify_finite_three_involutions(c, ck); break;
    }
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
  return {ck.ok, ck.message};
}

}  // namespace tfg
