#include "tfg/kakutani.hpp"

#include <algorithm>
#include <set>

namespace tfg {

namespace {

Int mod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

void check_inputs(const GroupElement& g, const ClopenSet& A) {
  require_same_spec(g.spec(), A.spec());
  if (A.is_empty()) throw precondition_error("first return to an empty set");
  if (!g.support().contains(A))
    throw precondition_error("return set not contained in the support");
}

}  // namespace

std::map<Int, Int> first_return(const GroupElement& g, const ClopenSet& A) {
  check_inputs(g, A);
  const std::size_t m = std::max(g.level(), A.level());
  const Int q = g.spec()->modulus(m);
  const std::vector<Int> table = g.cocycle_at(m);
  const std::vector<Int> cells = A.residues_at(m);
  const std::set<Int> in_A(cells.begin(), cells.end());
  std::map<Int, Int> times;
  for (const Int& a : cells) {
    Int r = mod(a + table[to_index(a)], q);
    Int t = 1;
    while (in_A.count(r) == 0) {
      r = mod(r + table[to_index(r)], q);
      ++t;
    }
    times[a] = t;
  }
  return times;
}

KRPartition kr_partition(const GroupElement& g, const ClopenSet& A) {
  const std::map<Int, Int> times = first_return(g, A);
  const std::size_t m = std::max(g.level(), A.level());
  std::map<Int, std::vector<Int>> bases;  // height -> base residues
  for (const auto& [a, t] : times) bases[t].push_back(a);
  KRPartition part{{}, A};
  ClopenSet floors = ClopenSet::empty(g.spec());
  for (const auto& [h, res] : bases) {
    Tower tower{ClopenSet(g.spec(), m, res), h};
    ClopenSet floor = tower.base;
    for (Int i = 0; i < h; ++i) {
      if (!floors.disjoint_from(floor))
        throw precondition_error("tower floors overlap");
      floors = floors.union_with(floor);
      floor = g.image_of(floor);
    }
    part.towers.push_back(std::move(tower));
  }
  const ClopenSet ambient =
      g.equals(GroupElement::shift(g.spec())) ? ClopenSet::full(g.spec()) : g.support();
  if (!(floors == ambient))
    throw precondition_error("return set does not meet every orbit");
  return part;
}

GroupElement induced_map(const GroupElement& g, const ClopenSet& A) {
  check_inputs(g, A);
  const std::size_t m = std::max(g.level(), A.level());
  const Int q = g.spec()->modulus(m);
  const std::vector<Int> table = g.cocycle_at(m);
  const std::vector<Int> cells = A.residues_at(m);
  const std::set<Int> in_A(cells.begin(), cells.end());
  std::vector<Int> out(to_index(q), Int(0));
  for (const Int& a : cells) {
    Int r = a;
    Int sum = 0;
    do {
      sum += table[to_index(r)];
      r = mod(r + table[to_index(r)], q);
    } while (in_A.count(r) == 0);
    out[to_index(a)] = sum;
  }
  return GroupElement::from_cocycle(g.spec(), m, std::move(out));
}

GroupElement periodic_quotient(const ClopenSet& A) {
  if (A.is_empty()) throw precondition_error("periodic quotient of an empty set");
  const GroupElement phi = GroupElement::shift(A.spec());
  const GroupElement g = induced_map(phi, A).inverse().compose(phi);
  if (!g.period_spectrum().is_periodic())
    throw precondition_error("quotient is not periodic");
  return g;
}

}  // namespace tfg
