#pragma once

// Exact finite combinatorics: finite-sum sets, pair sets, very sparse
// generator sets and the prefix-monotone enumeration of finite sequences.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ideal_lab/parallel.hpp"

namespace ideal_lab {

using Nat = std::uint64_t;

/// Encoded member of an index domain. For IndexDomain::Pair the pair {i,j},
/// i<j, is packed as (i << 32) | j so that integer order is lexicographic order.
using Index = std::uint64_t;

enum class IndexDomain { Nat, Pair };

inline constexpr Nat kMaxPairVertex = (Nat{1} << 32) - 1;

constexpr Index pair_index(Nat i, Nat j) { return (i << 32) | j; }
constexpr Nat pair_lo(Index p) { return p >> 32; }
constexpr Nat pair_hi(Index p) { return p & 0xffffffffULL; }

const char* to_string(IndexDomain d);
std::string format_index(IndexDomain d, Index s);

/// Finite strictly increasing set of naturals.
class GenSet {
 public:
  GenSet() = default;
  GenSet(std::initializer_list<Nat> xs);
  /// Sorts and removes duplicates.
  explicit GenSet(std::vector<Nat> xs);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  Nat operator[](std::size_t i) const { return elems_[i]; }
  Nat front() const { return elems_.front(); }
  Nat back() const { return elems_.back(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const std::vector<Nat>& elements() const { return elems_; }
  std::span<const Nat> span() const { return elems_; }

  bool contains(Nat x) const;
  bool is_subset_of(const GenSet& other) const;
  bool intersects(const GenSet& other) const;
  /// Sum of elements; throws DomainError on overflow.
  Nat sum() const;

  GenSet without(const GenSet& k) const;
  GenSet with(Nat x) const;
  GenSet prefix(std::size_t n) const;
  /// Members selected by the bits of mask (bit i = i-th smallest element).
  GenSet select(std::uint64_t mask) const;

  std::string to_string() const;

  friend bool operator==(const GenSet&, const GenSet&) = default;
  friend auto operator<=>(const GenSet& a, const GenSet& b) { return a.elems_ <=> b.elems_; }

 private:
  std::vector<Nat> elems_;
};

/// Sorted, deduplicated set of encoded indices of one domain.
class IndexSet {
 public:
  explicit IndexSet(IndexDomain domain = IndexDomain::Nat) : domain_(domain) {}
  IndexSet(IndexDomain domain, std::vector<Index> members);

  IndexDomain domain() const { return domain_; }
  const std::vector<Index>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(Index s) const;
  bool is_subset_of(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexDomain domain_;
  std::vector<Index> members_;
};

/// { sum(a) : a nonempty subset of d } intersected with [0, bound).
IndexSet fs(const GenSet& d, Nat bound);
/// All unordered pairs {i,j}, i<j, of d.
IndexSet pairs(const GenSet& d);

/// Membership bitmap of fs(d, bound); bit s is set iff s is a finite sum.
boost::dynamic_bitset<> fs_bitmap(const GenSet& d, Nat bound);

// ---------------------------------------------------------------------------
// Very sparse sets

struct SupportCollision {
  Nat value = 0;
  GenSet first;
  GenSet second;
};

struct OverlapViolation {
  GenSet g;
  GenSet h;
  Nat total = 0;
};

struct CertificationReport {
  bool pass = false;
  std::uint64_t subsets_checked = 0;  // nonempty subsets scanned for (a)
  std::uint64_t pairs_checked = 0;    // (G,H) pairs with G∩H≠∅ scanned for (b)
  Nat window = 0;
  std::optional<SupportCollision> collision;  // least value with two supports
  std::optional<OverlapViolation> overlap;    // least (G,H) in (G,H)-lex order
};

/// Exhaustive check of unique supports (a) and overlap escape (b) over all
/// nonempty G,H ⊆ d. Failures are reported, never thrown.
CertificationReport certify_very_sparse(const GenSet& d, const ExecPolicy& policy = {});

inline constexpr std::size_t kMaxVerySparseSize = 14;
inline constexpr Nat kDefaultGrowthFactor = 4;

class VerySparseSet {
 public:
  /// Certifies d and builds the support decoder. Throws ConstructionError
  /// carrying the violation when certification fails.
  static VerySparseSet certify(const GenSet& d, const ExecPolicy& policy = {});

  const GenSet& elements() const { return elements_; }
  /// sum(elements) + 1; every finite sum is below it.
  Nat certified_bound() const { return bound_; }
  std::size_t size() const { return elements_.size(); }

  bool in_fs(Nat a) const;
  /// The unique support α_D(a). Throws NotRepresentableError when a ∉ FS(D).
  GenSet support(Nat a) const;
  /// Support as a bitmask over element positions, if representable.
  std::optional<std::uint32_t> support_mask(Nat a) const;
  /// All (sum, mask) pairs sorted by sum.
  const std::vector<std::pair<Nat, std::uint32_t>>& sums() const { return sums_; }
  std::size_t position_of(Nat element) const;

 private:
  VerySparseSet() = default;

  GenSet elements_;
  Nat bound_ = 0;
  std::vector<std::pair<Nat, std::uint32_t>> sums_;
};

/// Greedy d_0 = 1, d_{k+1} = growth_factor * (d_0 + ... + d_k) + 1, then certified.
VerySparseSet generate_very_sparse(std::size_t size, Nat growth_factor = kDefaultGrowthFactor,
                                   const ExecPolicy& policy = {});

GenSet support(const VerySparseSet& d, Nat a);

// ---------------------------------------------------------------------------
// Finite sequences and the stage enumeration

struct TreeSeq {
  std::vector<Nat> entries;

  TreeSeq() = default;
  TreeSeq(std::initializer_list<Nat> xs) : entries(xs) {}
  explicit TreeSeq(std::vector<Nat> xs) : entries(std::move(xs)) {}

  std::size_t length() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  Nat operator[](std::size_t i) const { return entries[i]; }

  bool is_prefix_of(const TreeSeq& t) const;
  TreeSeq extended(Nat n) const;
  TreeSeq prefix(std::size_t n) const;
  /// This sequence followed by n zeros.
  TreeSeq padded_zeros(std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const TreeSeq&, const TreeSeq&) = default;
  friend auto operator<=>(const TreeSeq& a, const TreeSeq& b) {
    if (a.length() != b.length()) return a.length() <=> b.length();
    return a.entries <=> b.entries;
  }
};

/// Bijection ω → ω^{<ω}. Stage k lists every sequence with length ≤ k and
/// entries ≤ k not listed earlier, ordered by (length, lex). Hence
/// s ⊆ t implies index(s) ≤ index(t).
class TreeBijection {
 public:
  static constexpr unsigned kMaxStage = 14;

  /// Stage that first lists s: max(|s|, max entry).
  static Nat stage_of(const TreeSeq& s);
  /// Number of sequences listed in stages 0..k.
  static Nat listed_through(unsigned k);

  Nat index_of(const TreeSeq& s) const;
  TreeSeq seq_at(Nat i) const;
};

Nat tree_index(const TreeBijection& f, const TreeSeq& s);
TreeSeq tree_seq(const TreeBijection& f, Nat i);

}  // namespace ideal_lab
