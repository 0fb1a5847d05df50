#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tfg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown when an operation's precondition is violated (CLI exit code 3).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when serialized data cannot be parsed or is malformed (CLI exit code 2).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Converts a nonnegative Int known to fit into size_t; throws otherwise.
std::size_t to_index(const Int& v);

/// Base sequence (q_1, q_2, ...) of the odometer: a finite head followed by
/// an infinitely repeated tail.  Every entry is >= 2, so the level moduli
/// Q(k) = q_1...q_k are strictly increasing.
class OdometerSpec {
 public:
  OdometerSpec(std::vector<Int> head, std::vector<Int> tail);

  /// The dyadic odometer (all bases 2).
  static OdometerSpec dyadic();

  /// q_i for i >= 1.
  const Int& base(std::size_t i) const;

  /// Q(k) = q_1...q_k, Q(0) = 1.
  Int modulus(std::size_t level) const;

  /// Smallest level m >= from with modulus(m) > bound.
  std::size_t level_with_modulus_above(const Int& bound, std::size_t from = 0) const;

  const std::vector<Int>& head() const { return head_; }
  const std::vector<Int>& tail() const { return tail_; }

  /// The distinct base values occurring at levels > k (finite since the
  /// sequence is eventually periodic).
  std::vector<Int> bases_beyond(std::size_t k) const;

  bool operator==(const OdometerSpec& other) const;
  bool operator!=(const OdometerSpec& other) const { return !(*this == other); }

 private:
  void canonicalize();

  std::vector<Int> head_;
  std::vector<Int> tail_;
};

using SpecPtr = std::shared_ptr<const OdometerSpec>;

SpecPtr make_spec(std::vector<Int> head, std::vector<Int> tail);
SpecPtr dyadic_spec();

void require_same_spec(const SpecPtr& a, const SpecPtr& b);

}  // namespace tfg
