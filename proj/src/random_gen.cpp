#include "tfg/random_gen.hpp"

#include <algorithm>
#include <numeric>

namespace tfg {

std::size_t Rng::below(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
}

namespace {

Int mod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng.engine());
  return p;
}

std::vector<Int> lift_table(const std::vector<std::size_t>& perm, const Int& q) {
  std::vector<Int> table(perm.size());
  for (std::size_t a = 0; a < perm.size(); ++a) {
    Int d = mod(Int(perm[a]) - Int(a), q);
    if (d * 2 > q) d -= q;
    table[a] = d;
  }
  return table;
}

struct CycleRef {
  std::vector<std::size_t> members;
  Int sum;
};

std::vector<CycleRef> table_cycles(const std::vector<Int>& table, const Int& q) {
  std::vector<bool> seen(table.size(), false);
  std::vector<CycleRef> out;
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (seen[start]) continue;
    CycleRef c{{}, 0};
    std::size_t a = start;
    do {
      seen[a] = true;
      c.members.push_back(a);
      c.sum += table[a];
      a = to_index(mod(Int(a) + table[a], q));
    } while (a != start);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

GroupElement random_element(Rng& rng, const SpecPtr& spec, std::size_t max_level) {
  const std::size_t level = 1 + rng.below(max_level);
  const Int q = spec->modulus(level);
  return GroupElement::from_cocycle(spec, level,
                                    lift_table(random_permutation(rng, to_index(q)), q));
}

GroupElement random_periodic(Rng& rng, const SpecPtr& spec, std::size_t max_level) {
  const std::size_t level = 1 + rng.below(max_level);
  const Int q = spec->modulus(level);
  std::vector<Int> table = lift_table(random_permutation(rng, to_index(q)), q);
  for (const CycleRef& c : table_cycles(table, q)) {
    table[c.members.back()] -= c.sum;  // sum is a multiple of q
  }
  return GroupElement::from_cocycle(spec, level, std::move(table));
}

GroupElement random_aperiodic(Rng& rng, const SpecPtr& spec, std::size_t max_level) {
  const std::size_t level = 1 + rng.below(max_level);
  const Int q = spec->modulus(level);
  std::vector<Int> table = lift_table(random_permutation(rng, to_index(q)), q);
  bool moved = false;
  for (const CycleRef& c : table_cycles(table, q)) {
    if (c.members.size() == 1 && table[c.members.front()] == 0) continue;
    moved = true;
    if (c.sum == 0) table[c.members.back()] += q;
  }
  if (!moved) table[0] += q;  // the identity permutation: make 0's orbit infinite
  return GroupElement::from_cocycle(spec, level, std::move(table));
}

ClopenSet random_clopen(Rng& rng, const SpecPtr& spec, std::size_t max_level,
                        bool nonempty) {
  const std::size_t level = 1 + rng.below(max_level);
  const std::size_t q = to_index(spec->modulus(level));
  std::vector<Int> residues;
  for (std::size_t r = 0; r < q; ++r) {
    if (rng.below(2) == 1) residues.push_back(Int(r));
  }
  if (nonempty && residues.empty()) residues.push_back(Int(rng.below(q)));
  return ClopenSet(spec, level, std::move(residues));
}

}  // namespace tfg
