#include "tfg/odometer.hpp"

#include <algorithm>
#include <set>

namespace tfg {

std::size_t to_index(const Int& v) {
  if (v < 0 || v > Int(SIZE_MAX / 2)) {
    throw std::overflow_error("value does not fit an array index");
  }
  return v.convert_to<std::size_t>();
}

OdometerSpec::OdometerSpec(std::vector<Int> head, std::vector<Int> tail)
    : head_(std::move(head)), tail_(std::move(tail)) {
  if (tail_.empty()) {
    throw parse_error("odometer tail must be nonempty");
  }
  for (const auto& q : head_) {
    if (q < 2) throw parse_error("odometer base entries must be >= 2");
  }
  for (const auto& q : tail_) {
    if (q < 2) throw parse_error("odometer base entries must be >= 2");
  }
  canonicalize();
}

OdometerSpec OdometerSpec::dyadic() { return OdometerSpec({}, {Int(2)}); }

void OdometerSpec::canonicalize() {
  // reduce tail to its primitive period
  for (std::size_t p = 1; p < tail_.size(); ++p) {
    if (tail_.size() % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < tail_.size() && periodic; ++i) {
      periodic = tail_[i] == tail_[i % p];
    }
    if (periodic) {
      tail_.resize(p);
      break;
    }
  }
  // absorb head entries that already match the rotated tail
  while (!head_.empty() && head_.back() == tail_.back()) {
    head_.pop_back();
    std::rotate(tail_.rbegin(), tail_.rbegin() + 1, tail_.rend());
  }
}

const Int& OdometerSpec::base(std::size_t i) const {
  if (i == 0) throw std::out_of_range("base index starts at 1");
  if (i <= head_.size()) return head_[i - 1];
  return tail_[(i - head_.size() - 1) % tail_.size()];
}

Int OdometerSpec::modulus(std::size_t level) const {
  Int q = 1;
  for (std::size_t i = 1; i <= level; ++i) q *= base(i);
  return q;
}

std::size_t OdometerSpec::level_with_modulus_above(const Int& bound, std::size_t from) const {
  std::size_t level = from;
  Int q = modulus(level);
  while (q <= bound) {
    ++level;
    q *= base(level);
  }
  return level;
}

std::vector<Int> OdometerSpec::bases_beyond(std::size_t k) const {
  std::set<Int> seen;
  for (std::size_t i = k + 1; i <= head_.size(); ++i) seen.insert(head_[i - 1]);
  for (const auto& q : tail_) seen.insert(q);
  return {seen.begin(), seen.end()};
}

bool OdometerSpec::operator==(const OdometerSpec& other) const {
  return head_ == other.head_ && tail_ == other.tail_;
}

SpecPtr make_spec(std::vector<Int> head, std::vector<Int> tail) {
  return std::make_shared<OdometerSpec>(std::move(head), std::move(tail));
}

SpecPtr dyadic_spec() {
  static const SpecPtr spec = make_spec({}, {Int(2)});
  return spec;
}

void require_same_spec(const SpecPtr& a, const SpecPtr& b) {
  if (a == b) return;
  if (!a || !b || *a != *b) {
    throw precondition_error("operands belong to different odometers");
  }
}

}  // namespace tfg
