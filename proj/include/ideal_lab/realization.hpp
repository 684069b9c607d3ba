#pragma once

// Sequences whose ρ-limit points are exactly the projection of a Souslin
// scheme: the A_s sets, the y-sequences, and the three claims of the two
// realization proofs (pairs / Ramsey and finite sums / Hindman).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ideal_lab/combinatorics.hpp"
#include "ideal_lab/convergence.hpp"
#include "ideal_lab/partition_regular.hpp"
#include "ideal_lab/souslin.hpp"

namespace ideal_lab {

enum class RealizationKind { Ramsey, Hindman };

const char* to_string(RealizationKind k);
RealizationKind parse_realization_kind(const std::string& s);
PartitionRegularMap rho_for(RealizationKind k);

inline constexpr std::size_t kDefaultResolutionDepth = 12;

/// Ramsey: f(i) = tree_seq(i) on ω.
struct ASetRamsey {
  TreeSeq s;
  /// {i,j} ∈ A_s ⇔ i<j ∧ s ⊆ f(i) ⊆ f(j).
  bool contains(Index pair) const;
};

/// Hindman: f(d_k) = tree_seq(k) for the increasing enumeration d_0 < d_1 < … of D.
class HindmanTree {
 public:
  explicit HindmanTree(VerySparseSet d) : d_(std::move(d)) {}

  const VerySparseSet& d() const { return d_; }
  /// f(element); element must lie in D.
  TreeSeq f(Nat element) const;
  /// f^{-1}(s) when it lies inside the finite prefix of D.
  std::optional<Nat> preimage(const TreeSeq& s) const;

 private:
  VerySparseSet d_;
};

struct ASetHindman {
  const HindmanTree* tree = nullptr;
  TreeSeq s;
  /// a ∈ A_s ⇔ a ∈ FS(D), α_D(a) = {k_0<…<k_m}, s ⊆ f(k_0) ⊆ … ⊆ f(k_m).
  /// Throws BoundError for a ≥ certified_bound.
  bool contains(Nat a) const;
};

struct RealizedSequence {
  RealizationKind kind = RealizationKind::Ramsey;
  SouslinScheme scheme = SouslinScheme::singleton(0);
  SequenceWindow window;
  std::size_t resolution_depth = kDefaultResolutionDepth;
  std::optional<HindmanTree> tree;  // Hindman only
  double base_point = 0;            // p_{0^∞} approximation
  double max_error = 0;             // largest resolve error among used points
  std::uint64_t in_a_empty = 0;     // window indices in A_∅
  std::vector<TreeSeq> f_cache;     // f(i) for every generator seen by the window

  Nat bound() const { return window.bound(); }
  PartitionRegularMap rho() const { return rho_for(kind); }
  /// Membership in A_s on this window.
  bool in_a(const TreeSeq& s, Index index) const;
  /// f of the generator that determines y_index for indices in A_∅.
  TreeSeq f_of(Nat generator) const;
};

/// p_{t⌢0^∞} approximated by resolve(t⌢0^depth).
BranchPoint point_after(const SouslinScheme& scheme, const TreeSeq& t, std::size_t depth);

/// Ramsey: window over pairs below `bound`. Hindman: `d` required, bound ≤
/// d.certified_bound (0 selects the certified bound).
RealizedSequence build_realized_sequence(RealizationKind kind, const SouslinScheme& scheme, std::size_t depth,
                                         Nat bound, const std::optional<VerySparseSet>& d = std::nullopt,
                                         const ExecPolicy& policy = {});

struct Claim1Result {
  TreeSeq branch;
  LimitWitness witness;
  std::vector<double> vacuous_eps;  // rungs with too few generators left in the window
};

/// F = preimages of the branch prefixes that fit in the window; the tail at ε
/// removes the prefixes shorter than the first level whose ball has diameter
/// below ε. η = p_{branch⌢0^∞}. Throws BoundError when no rung is checkable.
Claim1Result claim1_witness(const RealizedSequence& y, const TreeSeq& branch, const std::vector<double>& eps_ladder);

struct DescentCertificate {
  TreeSeq s;
  GenSet f;
  Nat n = 0;
  GenSet k;
  Nat pivot = 0;             // m (Ramsey) or e (Hindman) chosen by the recipe
  bool tie_broken = false;   // several pivots of minimal |f| existed
  bool verified = false;
  std::uint64_t checked = 0;
};

/// One step down the tree: ρ(F∖K) ⊆ A_{s⌢n}. Throws DomainError when
/// ρ(F) ⊄ A_s on the window and BoundError when F∖K is too small.
std::optional<DescentCertificate> descend(const RealizedSequence& y, const TreeSeq& s, const GenSet& f);
bool verify_descent(const RealizedSequence& y, DescentCertificate& c);

struct Claim3Search {
  std::size_t target_size = 0;  // 0: 4 for Ramsey, 3 for Hindman
  std::uint64_t node_budget = 0;
  std::size_t max_descent = 8;
};

struct Claim3Result {
  enum class Status { BasePoint, Branch, Unconstrained };
  Status status = Status::Unconstrained;
  double eta = 0;
  std::optional<LimitWitness> witness;
  std::optional<Index> escape;                 // BasePoint: index of the deepest tail outside A_∅
  IndexDomain domain = IndexDomain::Nat;
  std::vector<DescentCertificate> descents;    // Branch
  TreeSeq prefix;                              // Branch
  Ball ball;                                   // C_prefix, or the base point with error radius
  double distance = 0;                         // from η to the explanation
  double allowance = 0;                        // ε + resolution error
  bool consistent = false;
  SearchBounds bounds;

  bool accepted() const { return status != Status::Unconstrained; }
};

const char* to_string(Claim3Result::Status s);

/// Searches a limit witness for η, then explains it by the dichotomy of the
/// third claim. Hindman generator pools are restricted to FS(D).
Claim3Result claim3_refute(const RealizedSequence& y, double eta, const std::vector<double>& eps_ladder,
                           const Claim3Search& search = {});
/// The same explanation for a given witness.
Claim3Result claim3_explain(const RealizedSequence& y, const LimitWitness& w, std::size_t max_descent = 8);

}  // namespace ideal_lab
