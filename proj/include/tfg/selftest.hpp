#pragma once

#include <iosfwd>

#include "tfg/odometer.hpp"

namespace tfg {

struct SelftestOptions {
  SpecPtr spec;
  std::uint64_t seed = 0;
  std::size_t cases = 25;
  std::size_t max_level = 5;
};

/// Runs the per-module invariant suites; prints one line per suite and a
/// summary.  Returns true when every case passed.
bool run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace tfg
