#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ideal_lab/combinatorics.hpp"
#include "ideal_lab/search.hpp"

namespace ideal_lab {

/// Finite-scale partition regular map: FS (naturals → naturals), PAIRS
/// (naturals → pairs) or IDENT (naturals → naturals, F ↦ F; test-only).
struct PartitionRegularMap {
  RhoKind kind = RhoKind::FS;

  static PartitionRegularMap fs() { return {RhoKind::FS}; }
  static PartitionRegularMap pairs() { return {RhoKind::Pairs}; }
  static PartitionRegularMap ident() { return {RhoKind::Ident}; }

  IndexDomain target_domain() const { return kind == RhoKind::Pairs ? IndexDomain::Pair : IndexDomain::Nat; }
  /// Smallest generator set with a nonempty image.
  std::size_t min_generators() const { return kind == RhoKind::Pairs ? 2 : 1; }
  /// Searches draw generators from [least_generator(), bound): 0 adds nothing to a finite sum.
  Nat least_generator() const { return kind == RhoKind::FS ? 1 : 0; }
  std::string name() const;

  friend bool operator==(const PartitionRegularMap&, const PartitionRegularMap&) = default;
};

PartitionRegularMap parse_rho(const std::string& name);

/// Window membership: a natural s < bound, or a pair {i,j} with j < bound.
inline bool in_window(IndexDomain d, Index s, Nat bound) {
  return d == IndexDomain::Nat ? s < bound : pair_hi(s) < bound;
}

/// ρ(F) restricted to the window below bound.
IndexSet apply(const PartitionRegularMap& rho, const GenSet& f, Nat bound);

/// Is ρ(F∖K) ⊆ B inside the window?
bool rho_tail_subset(const PartitionRegularMap& rho, const GenSet& f, const GenSet& k, const IndexSet& b, Nat bound);

struct PositivityWitness {
  GenSet f;
  Nat window = 0;

  friend bool operator==(const PositivityWitness&, const PositivityWitness&) = default;
};

using IndexPredicate = std::function<bool(Index)>;

/// Lexicographically least F ⊆ [0, search_bound) with |F| = target_size and
/// ρ(F) ∩ window ⊆ S. Exhaustive; nullopt means no such F exists.
std::optional<PositivityWitness> positivity_search(const PartitionRegularMap& rho, const IndexSet& s,
                                                   std::size_t target_size, Nat search_bound, Nat window);
std::optional<PositivityWitness> positivity_search(const PartitionRegularMap& rho, const IndexPredicate& in_s,
                                                   std::size_t target_size, Nat search_bound, Nat window);

/// Re-check of a positivity witness against S.
bool verify_positivity(const PartitionRegularMap& rho, const PositivityWitness& w, const IndexPredicate& in_s);

struct MonochromaticSet {
  GenSet e;
  int color = 0;
};

using Coloring = std::function<int(Index)>;

/// Searches E ⊆ F with |E| = target_size and ρ(E) monochromatic inside the
/// window. Returns the lexicographically least such E over both colors.
std::optional<MonochromaticSet> check_axiom_R(const PartitionRegularMap& rho, const GenSet& f,
                                              const Coloring& coloring, std::size_t target_size, Nat bound);

/// FS: greedily keeps each element exceeding the sum of those already kept,
/// so every finite sum has a unique support. Identity for PAIRS and IDENT.
GenSet thin_for_S(const PartitionRegularMap& rho, const GenSet& f);

}  // namespace ideal_lab
