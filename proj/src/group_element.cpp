#include "tfg/group_element.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <boost/integer/common_factor.hpp>

namespace tfg {

namespace {

Int mod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

}  // namespace

GroupElement::GroupElement(SpecPtr spec, std::size_t level, std::vector<Int> table)
    : spec_(std::move(spec)), level_(level), cocycle_(std::move(table)) {}

GroupElement GroupElement::identity(SpecPtr spec) {
  return GroupElement(std::move(spec), 0, {Int(0)});
}

GroupElement GroupElement::shift(SpecPtr spec) {
  return GroupElement(std::move(spec), 0, {Int(1)});
}

GroupElement GroupElement::shift_power(SpecPtr spec, Int m) {
  return GroupElement(std::move(spec), 0, {std::move(m)});
}

GroupElement GroupElement::from_cocycle(SpecPtr spec, std::size_t level,
                                        std::vector<Int> table) {
  if (!spec) throw precondition_error("null odometer spec");
  const Int q = spec->modulus(level);
  if (Int(table.size()) != q)
    throw precondition_error("cocycle table length does not match level modulus");
  std::set<Int> images;
  for (std::size_t a = 0; a < table.size(); ++a) {
    images.insert(mod(Int(a) + table[a], q));
  }
  if (Int(images.size()) != q)
    throw not_bijective_error("cocycle does not induce a bijection of residues");
  GroupElement g(std::move(spec), level, std::move(table));
  g.canonicalize();
  return g;
}

void GroupElement::canonicalize() {
  // Drop to the coarsest level through which the table factors: a level can
  // be removed when all residues in each fiber over Z/Q(k-1) carry the same
  // cocycle value.
  while (level_ > 0) {
    const Int q_prev = spec_->modulus(level_ - 1);
    const std::size_t prev = to_index(q_prev);
    bool constant_on_fibers = true;
    for (std::size_t a = prev; a < cocycle_.size() && constant_on_fibers; ++a) {
      if (cocycle_[a] != cocycle_[a % prev]) constant_on_fibers = false;
    }
    if (!constant_on_fibers) break;
    cocycle_.resize(prev);
    --level_;
  }
}

std::vector<Int> GroupElement::cocycle_at(std::size_t m) const {
  if (m < level_) throw precondition_error("cannot coarsen a cocycle table");
  const std::size_t qm = to_index(spec_->modulus(m));
  std::vector<Int> table(qm);
  for (std::size_t a = 0; a < qm; ++a) table[a] = cocycle_[a % cocycle_.size()];
  return table;
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  require_same_spec(spec_, other.spec_);
  const std::size_t m = std::max(level_, other.level_);
  const Int q = spec_->modulus(m);
  const std::vector<Int> ng = cocycle_at(m);
  const std::vector<Int> nh = other.cocycle_at(m);
  std::vector<Int> table(nh.size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    const std::size_t b = to_index(mod(Int(a) + nh[a], q));
    table[a] = nh[a] + ng[b];
  }
  GroupElement g(spec_, m, std::move(table));
  g.canonicalize();
  return g;
}

GroupElement GroupElement::inverse() const {
  const Int q = spec_->modulus(level_);
  std::vector<Int> table(cocycle_.size());
  for (std::size_t a = 0; a < cocycle_.size(); ++a) {
    const std::size_t b = to_index(mod(Int(a) + cocycle_[a], q));
    table[b] = -cocycle_[a];
  }
  GroupElement g(spec_, level_, std::move(table));
  g.canonicalize();
  return g;
}

GroupElement GroupElement::power(const Int& m) const {
  GroupElement base = m < 0 ? inverse() : *this;
  Int e = m < 0 ? Int(-m) : m;
  GroupElement acc = identity(spec_);
  while (e > 0) {
    if ((e & 1) != 0) acc = acc.compose(base);
    e >>= 1;
    if (e > 0) base = base.compose(base);
  }
  return acc;
}

GroupElement GroupElement::conjugate_by(const GroupElement& psi) const {
  return psi.compose(*this).compose(psi.inverse());
}

bool GroupElement::equals(const GroupElement& other) const {
  return *spec_ == *other.spec_ && level_ == other.level_ && cocycle_ == other.cocycle_;
}

bool GroupElement::is_identity() const {
  return level_ == 0 && cocycle_.size() == 1 && cocycle_[0] == 0;
}

bool GroupElement::is_involution() const {
  return !is_identity() && compose(*this).is_identity();
}

ClopenSet GroupElement::support() const {
  std::vector<Int> moved;
  for (std::size_t a = 0; a < cocycle_.size(); ++a) {
    if (cocycle_[a] != 0) moved.push_back(Int(a));
  }
  return ClopenSet(spec_, level_, std::move(moved));
}

Rat GroupElement::index() const {
  Int sum = 0;
  for (const Int& n : cocycle_) sum += n;
  return Rat(sum, spec_->modulus(level_));
}

ClopenSet GroupElement::image_of(const ClopenSet& s) const {
  require_same_spec(spec_, s.spec());
  const std::size_t m = std::max(level_, s.level());
  const Int q = spec_->modulus(m);
  std::vector<Int> out;
  for (const Int& r : s.residues_at(m)) {
    out.push_back(mod(r + cocycle_[to_index(r) % cocycle_.size()], q));
  }
  return ClopenSet(spec_, m, std::move(out));
}

PointPrefix GroupElement::apply_to(const PointPrefix& p) const {
  const std::size_t m = std::max(level_, p.level);
  const Int q = spec_->modulus(m);
  const Int r = p.deepen(m).residue;
  return {m, mod(r + cocycle_[to_index(r) % cocycle_.size()], q)};
}

PeriodSpectrum GroupElement::period_spectrum() const {
  const Int q = spec_->modulus(level_);
  const std::size_t n = cocycle_.size();
  // Decompose the induced residue permutation into cycles; a cycle whose
  // cocycle sums to zero is a genuine finite orbit of that exact length,
  // while a nonzero sum escapes every cylinder (the odometer is free).
  std::vector<bool> seen(n, false);
  std::map<Int, std::pair<std::vector<Int>, std::vector<Int>>> by_period;  // part, base
  std::vector<Int> aperiodic;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    Int sum = 0;
    std::size_t a = start;
    do {
      seen[a] = true;
      cycle.push_back(a);
      sum += cocycle_[a];
      a = to_index(mod(Int(a) + cocycle_[a], q));
    } while (a != start);
    if (sum == 0) {
      auto& bucket = by_period[Int(cycle.size())];
      for (std::size_t r : cycle) bucket.first.push_back(Int(r));
      bucket.second.push_back(Int(*std::min_element(cycle.begin(), cycle.end())));
    } else {
      for (std::size_t r : cycle) aperiodic.push_back(Int(r));
    }
  }
  PeriodSpectrum spec_out{{}, ClopenSet(spec_, level_, std::move(aperiodic))};
  for (auto& [period, bucket] : by_period) {
    spec_out.classes.push_back({period, ClopenSet(spec_, level_, std::move(bucket.first)),
                                ClopenSet(spec_, level_, std::move(bucket.second))});
  }
  return spec_out;
}

Int PeriodSpectrum::order() const {
  if (!is_periodic()) throw precondition_error("order of a non-periodic element");
  Int l = 1;
  for (const auto& c : classes) l = boost::integer::lcm(l, c.period);
  return l;
}

bool GroupElement::is_minimal_on_support() const {
  if (is_identity()) return false;
  const Int q = spec_->modulus(level_);
  // Support must be a single cycle of the residue permutation, and the
  // holonomy (cycle cocycle sum over Q(level)) must stay coprime to every
  // base occurring beyond this level so the cycle never splits on refining.
  std::vector<Int> support_res;
  for (std::size_t a = 0; a < cocycle_.size(); ++a) {
    if (cocycle_[a] != 0) support_res.push_back(Int(a));
  }
  if (support_res.empty()) return false;
  const std::size_t start = to_index(support_res.front());
  std::size_t a = start;
  std::size_t visited = 0;
  Int sum = 0;
  do {
    if (cocycle_[a] == 0) return false;
    ++visited;
    sum += cocycle_[a];
    a = to_index(mod(Int(a) + cocycle_[a], q));
  } while (a != start);
  if (visited != support_res.size()) return false;
  if (sum % q != 0) return false;  // cannot happen for a closed cycle, kept as a guard
  const Int holonomy = sum / q;
  if (holonomy == 0) return false;  // periodic on its support
  for (const Int& b : spec_->bases_beyond(level_)) {
    if (boost::integer::gcd(holonomy, b) != 1) return false;
  }
  return true;
}

std::vector<Int> GroupElement::truncate(std::size_t m) const {
  if (m < level_) throw precondition_error("truncation level below canonical level");
  const Int q = spec_->modulus(m);
  const std::size_t qm = to_index(q);
  std::vector<Int> images(qm);
  for (std::size_t a = 0; a < qm; ++a) {
    images[a] = mod(Int(a) + cocycle_[a % cocycle_.size()], q);
  }
  return images;
}

GroupElement GroupElement::restricted_to(const ClopenSet& where) const {
  require_same_spec(spec_, where.spec());
  if (!image_of(where).operator==(where))
    throw precondition_error("restriction set is not invariant");
  const std::size_t m = std::max(level_, where.level());
  const std::vector<Int> table = cocycle_at(m);
  std::vector<Int> out(table.size(), Int(0));
  for (const Int& r : where.residues_at(m)) out[to_index(r)] = table[to_index(r)];
  GroupElement g(spec_, m, std::move(out));
  g.canonicalize();
  return g;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return g.compose(h);
}

GroupElement commutator(const GroupElement& g, const GroupElement& h) {
  return g.compose(h).compose(g.inverse()).compose(h.inverse());
}

GroupElement product(SpecPtr spec, const std::vector<GroupElement>& factors) {
  GroupElement acc = GroupElement::identity(std::move(spec));
  for (const GroupElement& f : factors) acc = acc.compose(f);
  return acc;
}

}  // namespace tfg
