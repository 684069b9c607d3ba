#pragma once

// Backtracking search for the lexicographically least generator set F whose
// image under FS / PAIRS / IDENT satisfies position-dependent constraints.
//
// Every index produced by F has a "tier": for FS it is the tier of the least
// position among its summands, for a pair {f_a, f_b} (a<b) the tier of a, for
// IDENT the tier of the element itself. A candidate F is accepted when every
// produced index s inside the window satisfies accept(s, tier). Indices at or
// beyond the window are not checked.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ideal_lab/combinatorics.hpp"

namespace ideal_lab {

enum class RhoKind { FS, Pairs, Ident };

struct TieredProblem {
  RhoKind kind = RhoKind::FS;
  std::size_t target_size = 1;
  Nat window = 0;
  /// Candidate generators, strictly increasing.
  std::vector<Nat> pool;
  std::function<bool(Index, std::size_t tier)> accept;
  /// Tier of generator position p (0-based). Must be nondecreasing in p.
  std::function<std::size_t(std::size_t position)> tier_of;
  /// accept(s, t) implies accept(s, t') for t' < t; enables counting look-ahead.
  bool nested_tiers = false;
  /// Search nodes allowed before giving up (0 = unlimited).
  std::uint64_t node_budget = 0;
};

struct TieredResult {
  std::optional<GenSet> found;
  /// True when the whole candidate space was explored (or a witness was found).
  bool exhausted = true;
  std::uint64_t nodes = 0;
};

TieredResult tiered_search(const TieredProblem& problem);

}  // namespace ideal_lab
