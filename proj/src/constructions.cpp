#include "tfg/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tfg/kakutani.hpp"

namespace tfg {

namespace {

Int mod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

/// Representative of `diff` mod q with smallest absolute value, ties broken
/// toward the positive one.
Int smallest_lift(const Int& diff, const Int& q) {
  const Int d = mod(diff, q);
  if (d * 2 <= q) return d;
  return d - q;
}

struct Cycle {
  std::vector<std::size_t> residues;  // in sigma order, starting at the minimum
  std::vector<Int> sums;              // sums[j] = cocycle total over the first j steps
};

/// Cycle decomposition of the residue permutation induced by `table` mod q.
std::vector<Cycle> cycles_of(const std::vector<Int>& table, const Int& q) {
  std::vector<bool> seen(table.size(), false);
  std::vector<Cycle> out;
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (seen[start]) continue;
    Cycle c;
    Int sum = 0;
    std::size_t a = start;
    do {
      seen[a] = true;
      c.residues.push_back(a);
      c.sums.push_back(sum);
      sum += table[a];
      a = to_index(mod(Int(a) + table[a], q));
    } while (a != start);
    c.sums.push_back(sum);  // sums[p] = full cycle total
    out.push_back(std::move(c));
  }
  return out;
}

Certificate make_cert(CertKind kind, SpecPtr spec) {
  return Certificate{kind, std::move(spec), std::nullopt, std::nullopt, {}, Json::object()};
}

void require(bool cond, const char* what) {
  if (!cond) throw precondition_error(what);
}

/// The matching involution behind both Glasner-Weiss statements: fixes
/// B ∩ A and swaps the residues of B∖A with an initial segment of A∖B,
/// lowest residues first.
GroupElement matching_involution(const ClopenSet& B, const ClopenSet& A) {
  require_same_spec(B.spec(), A.spec());
  const std::size_t k = std::max(B.level(), A.level());
  const Int q = B.spec()->modulus(k);
  const ClopenSet sources = B.difference(A);
  const ClopenSet targets = A.difference(B);
  const std::vector<Int> src = sources.residues_at(k);
  const std::vector<Int> dst = targets.residues_at(k);
  std::vector<Int> table(to_index(q), Int(0));
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Int d = smallest_lift(dst[i] - src[i], q);
    table[to_index(src[i])] = d;
    table[to_index(dst[i])] = -d;
  }
  return GroupElement::from_cocycle(B.spec(), k, std::move(table));
}

}  // namespace

Certificate glasner_weiss_sub(const ClopenSet& B, const ClopenSet& A) {
  if (!(B.measure() < A.measure()))
    throw precondition_error("measure of B is not smaller than the measure of A");
  Certificate c = make_cert(CertKind::GlasnerWeissSub, B.spec());
  c.target_sets = {B, A};
  c.factors.push_back({"alpha", matching_involution(B, A)});
  return c;
}

Certificate glasner_weiss_eq(const ClopenSet& B, const ClopenSet& A) {
  if (B.measure() != A.measure())
    throw precondition_error("measures of B and A differ");
  Certificate c = make_cert(CertKind::GlasnerWeissEq, B.spec());
  c.target_sets = {B, A};
  c.factors.push_back({"alpha", matching_involution(B, A)});
  return c;
}

namespace {

/// Core of periodic_two_involutions: per cycle, s reflects floor j to floor
/// (p-j) mod p (fixing floor 0) and t reflects floor j to floor p-1-j, so
/// s*t advances every floor by one.  Returns (s, t, floor-0 blocks).
struct TwoInvolutionParts {
  GroupElement s;
  GroupElement t;
  ClopenSet fixed_blocks;
};

TwoInvolutionParts two_involution_parts(const GroupElement& g) {
  if (!g.is_periodic()) throw precondition_error("element is not periodic");
  const Int q = g.spec()->modulus(g.level());
  const std::vector<Int>& table = g.cocycle();
  std::vector<Int> s_table(table.size(), Int(0));
  std::vector<Int> t_table(table.size(), Int(0));
  std::vector<Int> bases;
  for (const Cycle& c : cycles_of(table, q)) {
    const std::size_t p = c.residues.size();
    bases.push_back(Int(c.residues.front()));
    for (std::size_t j = 0; j < p; ++j) {
      s_table[c.residues[j]] = c.sums[(p - j) % p] - c.sums[j];
      t_table[c.residues[j]] = c.sums[p - 1 - j] - c.sums[j];
    }
  }
  return {GroupElement::from_cocycle(g.spec(), g.level(), std::move(s_table)),
          GroupElement::from_cocycle(g.spec(), g.level(), std::move(t_table)),
          ClopenSet(g.spec(), g.level(), std::move(bases))};
}

}  // namespace

Certificate periodic_two_involutions(const GroupElement& g) {
  TwoInvolutionParts parts = two_involution_parts(g);
  Certificate c = make_cert(CertKind::TwoInvolutions, g.spec());
  c.target_element = g;
  c.factors.push_back({"s", std::move(parts.s)});
  c.factors.push_back({"t", std::move(parts.t)});
  c.side_data["fixed_blocks"] = clopen_to_json(parts.fixed_blocks);
  return c;
}

namespace {

/// Core of periodic_commutator.  Writes a periodic g as [g1, psi]:
/// odd cycles get the half-cycle trick, even-length cycles are paired with
/// another cycle of the same length (refining levels until the even-length
/// counts allow pairing) and swapped by psi.
std::pair<GroupElement, GroupElement> commutator_parts(const GroupElement& g) {
  if (!g.is_periodic()) throw precondition_error("element is not periodic");
  const SpecPtr& spec = g.spec();
  for (std::size_t level = g.level(); level <= g.level() + 8; ++level) {
    const Int q = spec->modulus(level);
    const std::vector<Int> table = g.cocycle_at(level);
    std::vector<Cycle> cycles = cycles_of(table, q);
    std::map<std::size_t, std::vector<std::size_t>> even_groups;  // length -> cycle ids
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (cycles[i].residues.size() % 2 == 0) {
        even_groups[cycles[i].residues.size()].push_back(i);
      }
    }
    const bool pairable = std::all_of(even_groups.begin(), even_groups.end(),
                                      [](const auto& kv) { return kv.second.size() % 2 == 0; });
    if (!pairable) continue;
    std::vector<Int> g1(table.size(), Int(0));
    std::vector<Int> psi(table.size(), Int(0));
    for (const Cycle& c : cycles) {
      const std::size_t p = c.residues.size();
      if (p % 2 == 0) continue;
      // Odd cycle: g1 cycles the first half and psi reverses the whole tower.
      const std::size_t half = p / 2;
      for (std::size_t j = 0; j < half; ++j) g1[c.residues[j]] = table[c.residues[j]];
      g1[c.residues[half]] = -c.sums[half];
      for (std::size_t j = 0; j < p; ++j) {
        psi[c.residues[j]] = c.sums[p - 1 - j] - c.sums[j];
      }
    }
    for (const auto& [len, ids] : even_groups) {
      for (std::size_t i = 0; i + 1 < ids.size(); i += 2) {
        const Cycle& c1 = cycles[ids[i]];
        const Cycle& c2 = cycles[ids[i + 1]];
        const std::size_t p = len;
        // g1 runs the first tower; psi swaps the towers with a half-turn so
        // that conjugating g1 by psi yields g on the second tower.
        const Int d = smallest_lift(Int(c2.residues.front()) - Int(c1.residues.front()), q);
        for (std::size_t j = 0; j < p; ++j) g1[c1.residues[j]] = table[c1.residues[j]];
        for (std::size_t j = 0; j < p; ++j) {
          psi[c1.residues[j]] = -c1.sums[j] + d + c2.sums[(p - j) % p];
          psi[c2.residues[j]] = -c2.sums[j] - d + c1.sums[(p - j) % p];
        }
      }
    }
    return {GroupElement::from_cocycle(spec, level, std::move(g1)),
            GroupElement::from_cocycle(spec, level, std::move(psi))};
  }
  throw precondition_error(
      "even-length orbits cannot be paired for this base sequence");
}

}  // namespace

Certificate periodic_commutator(const GroupElement& g) {
  auto [g1, psi] = commutator_parts(g);
  Certificate c = make_cert(CertKind::PeriodicCommutator, g.spec());
  c.target_element = g;
  c.factors.push_back({"g1", std::move(g1)});
  c.factors.push_back({"psi", std::move(psi)});
  return c;
}

namespace {

/// Splits a periodic element into commuting pieces, one per residue cycle at
/// a level where every cycle set has measure below delta.
void periodic_pieces(const GroupElement& h, const Rat& delta,
                     std::vector<NamedElement>& factors, Json& supports,
                     const std::string& prefix) {
  if (h.is_identity()) return;
  const SpecPtr& spec = h.spec();
  std::size_t max_len = 1;
  {
    const Int q = spec->modulus(h.level());
    for (const Cycle& c : cycles_of(h.cocycle(), q)) {
      max_len = std::max(max_len, c.residues.size());
    }
  }
  std::size_t m = h.level();
  while (!(Rat(Int(max_len), spec->modulus(m)) < delta)) ++m;
  const Int q = spec->modulus(m);
  const std::vector<Int> table = h.cocycle_at(m);
  std::size_t count = 0;
  for (const Cycle& c : cycles_of(table, q)) {
    if (c.residues.size() == 1 && table[c.residues.front()] == 0) continue;
    std::vector<Int> piece(table.size(), Int(0));
    std::vector<Int> cell;
    for (std::size_t r : c.residues) {
      piece[r] = table[r];
      cell.push_back(Int(r));
    }
    factors.push_back({prefix + std::to_string(count++),
                       GroupElement::from_cocycle(spec, m, std::move(piece))});
    supports.push_back(clopen_to_json(ClopenSet(spec, m, std::move(cell))));
  }
}

}  // namespace

Certificate small_generators(const GroupElement& g, const Rat& delta) {
  require(delta > 0, "delta must be positive");
  Certificate c = make_cert(CertKind::SmallGenerators, g.spec());
  c.target_element = g;
  c.side_data["delta"] = rat_to_json(delta);
  Json supports = Json::array();
  if (!g.is_identity()) {
    const PeriodSpectrum ps = g.period_spectrum();
    const ClopenSet& aper = ps.aperiodic;
    const GroupElement g_per =
        aper.is_empty() ? g : g.restricted_to(aper.complement());
    periodic_pieces(g_per, delta, c.factors, supports, "p");
    if (!aper.is_empty()) {
      const GroupElement g_ap = g.restricted_to(aper);
      // Marker construction: k-spaced markers along every support cycle at a
      // level where those cycles are long enough, so the induced map has
      // support of measure below 1/k < delta and the quotient is periodic.
      const Int k = denominator(delta) / numerator(delta) + 1;
      const std::size_t spacing = to_index(k);
      std::size_t m = g_ap.level();
      std::vector<Cycle> cycles;
      for (;; ++m) {
        cycles = cycles_of(g_ap.cocycle_at(m), g_ap.spec()->modulus(m));
        const bool long_enough = std::all_of(
            cycles.begin(), cycles.end(), [&](const Cycle& cy) {
              return cy.sums.back() == 0 || cy.residues.size() >= 2 * spacing;
            });
        if (long_enough) break;
      }
      std::vector<Int> markers;
      for (const Cycle& cy : cycles) {
        if (cy.sums.back() == 0) continue;  // off the aperiodic support
        const std::size_t p = cy.residues.size();
        for (std::size_t j = 0; j < p; j += spacing) {
          if (j > 0 && p - j < spacing) break;  // wrap gap would be too short
          markers.push_back(Int(cy.residues[j]));
        }
      }
      const ClopenSet B(g.spec(), m, std::move(markers));
      const GroupElement gamma = induced_map(g_ap, B);
      c.factors.push_back({"marker_return", gamma});
      supports.push_back(clopen_to_json(B));
      const GroupElement rho = gamma.inverse().compose(g_ap);
      require(rho.is_periodic(), "marker quotient failed to be periodic");
      periodic_pieces(rho, delta, c.factors, supports, "q");
    }
  }
  c.side_data["supports"] = std::move(supports);
  return c;
}

Certificate many_involutions(const ClopenSet& A, const PointPrefix& x, const Int& n) {
  require(!A.is_empty(), "A is empty");
  require(n >= 2, "n must be at least 2");
  const SpecPtr& spec = A.spec();
  const std::size_t base_level = std::max(A.level(), x.level);
  require(A.contains(x.deepen(base_level)), "x does not lie in A");
  // Visit times of the orbit of x in A, read at the common level.
  const Int qa = spec->modulus(base_level);
  const std::vector<Int> a_res = A.residues_at(base_level);
  const Int x_res = x.deepen(base_level).residue;
  std::vector<Int> visits;
  for (Int t = 0; Int(visits.size()) < 2 * n; ++t) {
    if (std::binary_search(a_res.begin(), a_res.end(), mod(x_res + t, qa))) {
      visits.push_back(t);
    }
  }
  const std::size_t L = spec->level_with_modulus_above(visits.back(), base_level);
  const Int q = spec->modulus(L);
  const Int v0 = x.deepen(L).residue;
  const std::size_t half = to_index(n);
  const auto cell = [&](std::size_t i) { return to_index(mod(v0 + visits[i], q)); };
  std::vector<Int> l_table(to_index(q), Int(0));
  std::vector<Int> r_table(to_index(q), Int(0));
  std::vector<Int> a_table(to_index(q), Int(0));
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t next = (i + 1) % half;
    l_table[cell(i)] = visits[next] - visits[i];
    r_table[cell(half + i)] = visits[half + next] - visits[half + i];
    a_table[cell(i)] = visits[half + i] - visits[i];
    a_table[cell(half + i)] = visits[i] - visits[half + i];
  }
  const GroupElement l = GroupElement::from_cocycle(spec, L, std::move(l_table));
  const GroupElement r = GroupElement::from_cocycle(spec, L, std::move(r_table));
  const GroupElement alpha = GroupElement::from_cocycle(spec, L, std::move(a_table));
  const GroupElement h = l.compose(r.inverse());
  Certificate c = make_cert(CertKind::ManyInvolutions, spec);
  c.target_element = h;
  c.factors.push_back({"l", l});
  c.factors.push_back({"r", r});
  c.factors.push_back({"alpha", alpha});
  c.side_data["A"] = clopen_to_json(A);
  c.side_data["x"] = prefix_to_json(x);
  c.side_data["n"] = int_to_json(n);
  return c;
}

namespace {

struct FirstStepParts {
  GroupElement f1;
  GroupElement s;
  GroupElement t;
  ClopenSet A;
  ClopenSet B;
};

FirstStepParts first_step_parts(const GroupElement& f, const Rat& delta) {
  require(delta > 0, "delta must be positive");
  if (!f.is_minimal_on_support())
    throw precondition_error("element is not minimal on its support");
  const SpecPtr& spec = f.spec();
  const ClopenSet supp = f.support();
  // A deep cylinder on the support cycle: measure below delta/2, at least
  // four cylinders in the cycle (so f, f^2, f^3 move A off itself), and
  // small enough that B below stays a proper subset of the support.
  std::size_t m = f.level();
  while (!(Rat(1, spec->modulus(m)) < delta / 2) ||
         !(Rat(2, spec->modulus(m)) < supp.measure()) ||
         supp.residues_at(m).size() < 4) {
    ++m;
  }
  const ClopenSet A = ClopenSet::cylinder(spec, m, supp.residues_at(m).front());
  ClopenSet B = A;
  for (const Tower& tower : kr_partition(f, A).towers) {
    if (tower.height % 2 == 0) {
      B = B.union_with(f.power(tower.height / 2).image_of(tower.base));
    }
  }
  const GroupElement f1 = induced_map(f, B);
  const GroupElement g = f1.inverse().compose(f);
  auto [s, t] = commutator_parts(g);
  require(f1.compose(commutator(s, t)).equals(f), "first-step identity failed");
  require(f1.is_minimal_on_support(), "induced residual is not minimal");
  return {f1, s, t, A, B};
}

}  // namespace

Certificate minimal_first_step(const GroupElement& f, const Rat& delta) {
  FirstStepParts parts = first_step_parts(f, delta);
  Certificate c = make_cert(CertKind::MinimalFirstStep, f.spec());
  c.target_element = f;
  c.factors.push_back({"f1", std::move(parts.f1)});
  c.factors.push_back({"s", std::move(parts.s)});
  c.factors.push_back({"t", std::move(parts.t)});
  c.side_data["delta"] = rat_to_json(delta);
  c.side_data["A"] = clopen_to_json(parts.A);
  c.side_data["B"] = clopen_to_json(parts.B);
  return c;
}

Certificate commutator_expansion(const GroupElement& f, const Int& steps) {
  require(steps >= 1, "the step count must be at least 1");
  if (!f.is_minimal_on_support())
    throw precondition_error("element is not minimal on its support");
  Certificate c = make_cert(CertKind::CommutatorExpansion, f.spec());
  c.target_element = f;
  c.side_data["steps"] = int_to_json(steps);
  GroupElement current = f;
  Rat delta = f.support().measure();
  std::vector<NamedElement> pairs;
  for (Int i = 1; i <= steps; ++i) {
    delta /= 2;
    FirstStepParts parts = first_step_parts(current, delta);
    pairs.push_back({"s" + i.str(), std::move(parts.s)});
    pairs.push_back({"t" + i.str(), std::move(parts.t)});
    current = std::move(parts.f1);
  }
  c.factors.push_back({"residual", std::move(current)});
  for (NamedElement& p : pairs) c.factors.push_back(std::move(p));
  return c;
}

Certificate four_conjugates(const GroupElement& h, const GroupElement& g,
                            const GroupElement& w, const ClopenSet& E) {
  require_same_spec(h.spec(), g.spec());
  require_same_spec(h.spec(), w.spec());
  require(w.compose(w).is_identity(), "w is not an involution");
  require(w.image_of(E).disjoint_from(E), "w(E) meets E");
  const ClopenSet aprime = h.support().union_with(g.support());
  require(aprime.measure() < E.measure(), "supports are not smaller than E");
  const GroupElement alpha = aprime.is_empty()
                                 ? GroupElement::identity(h.spec())
                                 : glasner_weiss_sub(aprime, E).factor("alpha");
  const GroupElement q = alpha.compose(w).compose(alpha);
  require(q.image_of(aprime).disjoint_from(aprime), "q(A') meets A'");
  const GroupElement gh = g.compose(h);
  const GroupElement p1 = q.conjugate_by(h);
  const GroupElement p2 = q.inverse();
  const GroupElement p3 = q.conjugate_by(g);
  const GroupElement p4 = q.inverse().conjugate_by(gh);
  const GroupElement target = commutator(h, g);
  require(p1.compose(p2).compose(p3).compose(p4).equals(target),
          "conjugate product identity failed");
  Certificate c = make_cert(CertKind::FourConjugates, h.spec());
  c.target_element = target;
  c.factors = {{"h", h},   {"g", g},   {"w", w},   {"alpha", alpha}, {"q", q},
               {"p1", p1}, {"p2", p2}, {"p3", p3}, {"p4", p4}};
  c.side_data["E"] = clopen_to_json(E);
  c.side_data["A_prime"] = clopen_to_json(aprime);
  return c;
}

namespace {

/// Positions of the n-spaced selection inside a single tower of height K:
/// K = n*l + r, with r gaps widened to n+1 at the front.
std::vector<Int> tower_positions(const Int& K, const Int& n) {
  const Int l = K / n;
  const Int r = K % n;
  std::vector<Int> out;
  if (r == 0) {
    for (Int i = 0; i < l; ++i) out.push_back(n * i);
  } else {
    for (Int i = 0; i < r; ++i) out.push_back((n + 1) * i);
    for (Int i = r; i < l; ++i) out.push_back(n * i + r - 1);
  }
  return out;
}

}  // namespace

Certificate tower_lemma(SpecPtr spec, const Int& n) {
  require(n >= 2, "n must be at least 2");
  const std::size_t L = spec->level_with_modulus_above(n * n);
  const Int K = spec->modulus(L);
  const ClopenSet A(spec, L, tower_positions(K, n));
  ClopenSet uni = ClopenSet::empty(spec);
  for (Int i = 0; i < n; ++i) uni = uni.union_with(A.translate(i));
  const ClopenSet B = uni.complement();
  Certificate c = make_cert(CertKind::TowerLemma, spec);
  c.target_sets = {A, B};
  c.side_data["n"] = int_to_json(n);
  return c;
}

Certificate eighteen_cycle(SpecPtr spec) {
  const Certificate tower = tower_lemma(spec, 18);
  const auto& [A, B] = *tower.target_sets;
  GroupElement b = GroupElement::identity(spec);
  if (!B.is_empty()) {
    const std::size_t lv = B.level();
    std::vector<Int> table(to_index(spec->modulus(lv)), Int(0));
    for (const Int& r : B.residues()) table[to_index(r)] = 1;
    for (const Int& r : B.translate(1).residues_at(lv)) table[to_index(r)] = -1;
    b = GroupElement::from_cocycle(spec, lv, std::move(table));
  }
  const GroupElement g = b.compose(GroupElement::shift(spec));
  Json blocks = Json::array();
  ClopenSet block = A;
  for (int i = 0; i < 18; ++i) {
    blocks.push_back(clopen_to_json(block));
    block = g.image_of(block);
  }
  require(block == A, "the 18th image does not close the cycle");
  Certificate c = make_cert(CertKind::EighteenCycle, spec);
  c.target_element = g;
  c.factors.push_back({"b", b});
  c.factors.push_back({"g", g});
  c.side_data["blocks"] = std::move(blocks);
  c.side_data["B"] = clopen_to_json(B);
  return c;
}

Certificate induced_times_involutions(const ClopenSet& A) {
  require(!A.is_empty(), "A is empty");
  const SpecPtr& spec = A.spec();
  const GroupElement phi = GroupElement::shift(spec);
  const GroupElement phi_a = induced_map(phi, A);
  const GroupElement quotient = phi_a.inverse().compose(phi);
  TwoInvolutionParts parts = two_involution_parts(quotient);
  require(phi_a.compose(parts.s).compose(parts.t).equals(phi),
          "induced-map factorization failed");
  Certificate c = make_cert(CertKind::InducedTimesInvolutions, spec);
  c.target_element = phi;
  c.factors.push_back({"phi_A", phi_a});
  c.factors.push_back({"s", std::move(parts.s)});
  c.factors.push_back({"t", std::move(parts.t)});
  c.side_data["A"] = clopen_to_json(A);
  return c;
}

}  // namespace tfg
