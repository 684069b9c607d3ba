#pragma once

// Witness-based detection of ρ-limit, ρ-cluster and I_ρ-limit points on
// finite sequence windows, plus the layered sequences used to separate them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ideal_lab/combinatorics.hpp"
#include "ideal_lab/partition_regular.hpp"

namespace ideal_lab {

/// Finite view of x: Ψ → ℝ, total below `bound`. For the pair domain the
/// window is {i,j} with i<j<bound, stored in colex order.
class SequenceWindow {
 public:
  SequenceWindow() = default;
  SequenceWindow(IndexDomain domain, Nat bound);
  static SequenceWindow from_function(IndexDomain domain, Nat bound, const std::function<double(Index)>& fn);

  IndexDomain domain() const { return domain_; }
  Nat bound() const { return bound_; }
  std::size_t size() const { return values_.size(); }

  bool contains(Index s) const { return in_window(domain_, s, bound_) && (domain_ == IndexDomain::Nat || pair_lo(s) < pair_hi(s)); }
  /// Throws BoundError outside the window.
  double at(Index s) const;
  void set(Index s, double v);

  /// Storage slot <-> index.
  std::size_t slot_of(Index s) const;
  Index index_at(std::size_t slot) const;
  const std::vector<double>& values() const { return values_; }

 private:
  IndexDomain domain_ = IndexDomain::Nat;
  Nat bound_ = 0;
  std::vector<double> values_;
};

/// 2-adic valuation; ν₂(0) is undefined and throws DomainError.
unsigned nu2(Nat n);

/// x_0 = 1/3, x_n = 2^{-ν₂(n)}.
SequenceWindow nu2_sequence(Nat bound);

std::vector<double> default_eps_ladder();  // 2^-1 .. 2^-10
void check_eps_ladder(const std::vector<double>& ladder);

struct Tail {
  double eps = 0;
  GenSet k;
  std::uint64_t checked = 0;  // indices of ρ(F∖K) inside the window that were compared

  friend bool operator==(const Tail&, const Tail&) = default;
};

struct SearchBounds {
  std::size_t max_f = 0;     // |F| searched
  Nat max_element = 0;       // F ⊆ [0, max_element)
  std::size_t max_k = 0;     // largest |K| allowed
  Nat window = 0;
  std::uint64_t nodes = 0;
  bool exhausted = true;     // whole space explored (false: node budget hit)

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

struct LimitWitness {
  double eta = 0;
  GenSet f;
  std::vector<Tail> tails;
  bool verified = false;
  SearchBounds bounds;
};

struct ClusterWitness {
  double eta = 0;
  double eps = 0;
  GenSet f;
  Nat window = 0;
  bool verified = false;
};

template <class W>
struct SearchOutcome {
  std::optional<W> witness;
  SearchBounds bounds;

  bool found() const { return witness.has_value(); }
};

struct LimitSearch {
  std::size_t target_size = 6;
  Nat search_bound = 0;  // 0: the window bound
  std::size_t max_k = SIZE_MAX;
  std::uint64_t node_budget = 0;
  /// Candidate generators, strictly increasing; empty means [0, search_bound).
  std::vector<Nat> pool;
};

/// Least F (lexicographically) in diagonal normal form: rung r of the ladder
/// removes the first min(r, max_k) elements of F. Every tail comparison is
/// strict. Returned witnesses are re-verified index by index.
SearchOutcome<LimitWitness> find_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                               const std::vector<double>& eps_ladder, const LimitSearch& search);

/// For a fixed F, the least initial segment K of F per rung. nullopt when some
/// rung cannot be met while keeping enough generators.
std::optional<LimitWitness> tails_for_given_F(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                              const GenSet& f, const std::vector<double>& eps_ladder);

/// Index-by-index re-check; fills `checked` counts and sets `verified`.
bool verify_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, LimitWitness& w);

struct ClusterSearch {
  std::size_t target_size = 4;
  Nat search_bound = 0;  // 0: the window bound
};

SearchOutcome<ClusterWitness> find_cluster_witness(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                                   double eps, const ClusterSearch& search);
bool verify_cluster_witness(const PartitionRegularMap& rho, const SequenceWindow& x, ClusterWitness& w);

/// ClusterWitness carried by one rung of a limit witness: F∖K at that ε.
ClusterWitness cluster_from_rung(const LimitWitness& w, std::size_t rung, Nat window);

/// I_ρ-limit witness: ρ(F) ⊆ S where S = {s : |x_s − η| < ε_{r(s)}} and
/// r(s) = min(key(s), L−1), key being n for naturals and j for a pair {i,j}.
/// Along S the sequence converges to η in the ordinary sense: for rung r only
/// indices with key < r may miss ε_r.
struct IdealLimitWitness {
  double eta = 0;
  GenSet f;
  std::vector<double> eps_ladder;
  Nat window = 0;
  bool verified = false;
  SearchBounds bounds;
};

struct IdealSearch {
  std::size_t target_size = 3;
  Nat search_bound = 0;  // 0: the window bound
};

Nat convergence_key(IndexDomain d, Index s);
bool in_convergent_set(const SequenceWindow& x, double eta, const std::vector<double>& ladder, Index s);

SearchOutcome<IdealLimitWitness> find_ideal_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x,
                                                          double eta, const std::vector<double>& eps_ladder,
                                                          const IdealSearch& search);
bool verify_ideal_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, IdealLimitWitness& w);

/// Thins F (property (S)) and emits rung r with K_r = {e ∈ E : e < r}; rungs
/// whose F∖K_r is too small for ρ are dropped. Throws Error if the result
/// does not re-verify.
LimitWitness convert_ideal_to_rho_witness(const PartitionRegularMap& rho, const SequenceWindow& x,
                                          const IdealLimitWitness& w);

// ---------------------------------------------------------------------------
// Layered sequences

/// Decreasing family A_0 ⊇ A_1 ⊇ … ⊇ A_depth on a window.
struct LayeredFamily {
  IndexDomain domain = IndexDomain::Nat;
  std::size_t depth = 0;
  std::function<bool(std::size_t n, Index s)> member;
  std::string name;
};

/// x_s = y_0 off A_0, y_n on A_n∖A_{n+1} (n < depth), p on A_depth.
/// Requires |y| ≥ depth, y injective, |y_n − p| > 0 strictly decreasing.
SequenceWindow layered_sequence(const LayeredFamily& a, double p, const std::vector<double>& y, Nat bound);

/// B_k = {i : i ≡ k mod num_blocks}; A_n = pairs inside ∪_{k≥n} B_k.
LayeredFamily block_family_pairs(std::size_t num_blocks);
/// D_k = {5^{j·num_blocks+k}}; A_n = ∪_{k≥n} FS(D_k), decided by base-5 digits.
LayeredFamily block_family_fs(std::size_t num_blocks);

/// Finite form of the P⁺ = P^| ∧ P⁻ case split: T = {0} ∪ {n : A_n∖A_{n+1}
/// positive}. With T read as finite, the chain A_{k+1+n} (k = max T) has
/// only small differences; the subchain A_{t_n} has positive differences.
struct ChainSplit {
  std::vector<std::size_t> t;
  std::size_t tail_offset = 0;               // k + 1
  std::vector<std::size_t> minus_chain;      // indices k+1, k+2, … below depth
  std::vector<std::size_t> positive_chain;   // t_0, t_1, …
};
ChainSplit chain_split(const std::vector<bool>& difference_positive);

}  // namespace ideal_lab
