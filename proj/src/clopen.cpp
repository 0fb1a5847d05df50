#include "tfg/clopen.hpp"

#include <algorithm>
#include <map>

namespace tfg {

ClopenSet::ClopenSet(SpecPtr spec, std::size_t level, std::vector<Int> residues)
    : spec_(std::move(spec)), level_(level), residues_(std::move(residues)) {
  if (!spec_) throw precondition_error("clopen set needs an odometer spec");
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  const Int q = spec_->modulus(level_);
  for (const auto& r : residues_) {
    if (r < 0 || r >= q) throw precondition_error("residue out of range for level");
  }
  // canonical form: drop to the coarsest level at which the set is a union
  // of full fibers of Z/Q(k) -> Z/Q(k-1)
  while (level_ > 0) {
    const Int qk = spec_->base(level_);
    if (residues_.size() % to_index(qk) != 0) break;
    const Int q_prev = spec_->modulus(level_ - 1);
    // the set drops a level iff every projected residue carries its full
    // fiber, i.e. occurs exactly q_k times among r mod Q(k-1)
    std::map<Int, std::size_t> fiber_counts;
    for (const auto& r : residues_) ++fiber_counts[r % q_prev];
    bool saturated = true;
    for (const auto& [base, count] : fiber_counts) {
      if (count != to_index(qk)) {
        saturated = false;
        break;
      }
    }
    if (!saturated) break;
    std::vector<Int> reduced;
    reduced.reserve(fiber_counts.size());
    for (const auto& [base, count] : fiber_counts) reduced.push_back(base);
    residues_ = std::move(reduced);
    --level_;
  }
  if (residues_.empty()) level_ = 0;
}

ClopenSet ClopenSet::empty(SpecPtr spec) { return ClopenSet(std::move(spec), 0, {}); }

ClopenSet ClopenSet::full(SpecPtr spec) { return ClopenSet(std::move(spec), 0, {Int(0)}); }

ClopenSet ClopenSet::cylinder(SpecPtr spec, std::size_t level, Int residue) {
  return ClopenSet(std::move(spec), level, {std::move(residue)});
}

std::vector<Int> ClopenSet::residues_at(std::size_t m) const {
  if (m < level_) throw precondition_error("refinement level below set level");
  const Int q_here = spec_->modulus(level_);
  const Int q_there = spec_->modulus(m);
  std::vector<Int> out;
  out.reserve(residues_.size() * to_index(q_there / q_here));
  for (const auto& r : residues_) {
    for (Int lift = r; lift < q_there; lift += q_here) out.push_back(lift);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::size_t common_level(const ClopenSet& a, const ClopenSet& b) {
  require_same_spec(a.spec(), b.spec());
  return std::max(a.level(), b.level());
}

}  // namespace

ClopenSet ClopenSet::union_with(const ClopenSet& other) const {
  const std::size_t m = common_level(*this, other);
  auto ra = residues_at(m);
  auto rb = other.residues_at(m);
  std::vector<Int> out;
  std::set_union(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(out));
  return ClopenSet(spec_, m, std::move(out));
}

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
  const std::size_t m = common_level(*this, other);
  auto ra = residues_at(m);
  auto rb = other.residues_at(m);
  std::vector<Int> out;
  std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(out));
  return ClopenSet(spec_, m, std::move(out));
}

ClopenSet ClopenSet::complement() const {
  const Int q = spec_->modulus(level_);
  std::vector<Int> out;
  out.reserve(to_index(q) - residues_.size());
  std::size_t i = 0;
  for (Int r = 0; r < q; ++r) {
    if (i < residues_.size() && residues_[i] == r) {
      ++i;
    } else {
      out.push_back(r);
    }
  }
  return ClopenSet(spec_, level_, std::move(out));
}

ClopenSet ClopenSet::difference(const ClopenSet& other) const {
  const std::size_t m = common_level(*this, other);
  auto ra = residues_at(m);
  auto rb = other.residues_at(m);
  std::vector<Int> out;
  std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(out));
  return ClopenSet(spec_, m, std::move(out));
}

ClopenSet ClopenSet::translate(const Int& n) const {
  const Int q = spec_->modulus(level_);
  std::vector<Int> out;
  out.reserve(residues_.size());
  for (const auto& r : residues_) {
    Int shifted = (r + n) % q;
    if (shifted < 0) shifted += q;
    out.push_back(shifted);
  }
  return ClopenSet(spec_, level_, std::move(out));
}

Rat ClopenSet::measure() const {
  return Rat(Int(residues_.size()), spec_->modulus(level_));
}

bool ClopenSet::contains(const ClopenSet& other) const {
  return other.difference(*this).is_empty();
}

bool ClopenSet::contains(const PointPrefix& p) const {
  if (p.level < level_) {
    throw precondition_error("point prefix coarser than the set's level");
  }
  const Int q = spec_->modulus(level_);
  return std::binary_search(residues_.begin(), residues_.end(), p.residue % q);
}

bool ClopenSet::disjoint_from(const ClopenSet& other) const {
  return intersect(other).is_empty();
}

bool ClopenSet::operator==(const ClopenSet& other) const {
  require_same_spec(spec_, other.spec_);
  return level_ == other.level_ && residues_ == other.residues_;
}

ClopenSet find_small_clopen(const ClopenSet& inside, const Rat& bound,
                            const std::vector<Int>& separation) {
  if (inside.is_empty()) throw precondition_error("find_small_clopen: empty set");
  if (bound <= 0) throw precondition_error("find_small_clopen: bound must be positive");
  const auto& spec = inside.spec();
  Int max_sep = 0;
  for (const auto& s : separation) {
    if (s == 0) throw precondition_error("find_small_clopen: separation by 0 is infeasible");
    max_sep = std::max(max_sep, Int(abs(s)));
  }
  // a single deep cylinder always works: measure 1/Q(m) < bound and
  // Q(m) > max separation keeps the translates off the cylinder
  const Int inv_bound = Int(denominator(bound) / numerator(bound));
  const std::size_t m =
      spec->level_with_modulus_above(std::max(inv_bound, max_sep), inside.level());
  return ClopenSet::cylinder(spec, m, inside.residues_at(m).front());
}

}  // namespace tfg
