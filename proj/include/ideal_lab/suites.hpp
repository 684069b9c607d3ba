#pragma once

// Verification batteries behind `ideal-lab verify`. Reports are deterministic
// JSON (no timing) and independent of the thread count.

#include <string>

#include "ideal_lab/json_io.hpp"
#include "ideal_lab/parallel.hpp"

namespace ideal_lab {

struct SuiteOptions {
  std::size_t depth = 4;
  ExecPolicy policy;
};

/// "thm42": pairs-based realization of the Cantor scheme.
/// "thm43": finite-sums realization over the size-10 very sparse set.
/// "axioms": (M), (R), (S) instances and the ν₂ digit rules.
/// The returned report has a top-level boolean "pass".
Json run_suite(const std::string& name, const SuiteOptions& options);

/// ε ladder 3^{-1} … 3^{-n}.
std::vector<double> cantor_eps_ladder(std::size_t n = 5);

}  // namespace ideal_lab
