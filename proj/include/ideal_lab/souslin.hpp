#pragma once

// Souslin schemes on the real line: each finite sequence s gets a closed
// interval C_s, nested along prefixes and shrinking along branches.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ideal_lab/combinatorics.hpp"

namespace ideal_lab {

/// Closed interval [center − radius, center + radius].
struct Ball {
  double center = 0;
  double radius = 0;

  double lo() const { return center - radius; }
  double hi() const { return center + radius; }
  bool contains(double p, double slack = 0) const { return p >= lo() - slack && p <= hi() + slack; }
  bool contains(const Ball& b, double slack = 0) const { return b.lo() >= lo() - slack && b.hi() <= hi() + slack; }
  double distance(double p) const;  // 0 inside

  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Nesting comparisons tolerate this much floating-point drift.
inline constexpr double kNestingSlack = 1e-12;

enum class SchemeType { Singleton, Finite, Cantor, Rationals, Table };

const char* to_string(SchemeType t);

struct TableEntry {
  TreeSeq s;
  double lo = 0;
  double hi = 0;
};

class SouslinScheme {
 public:
  static SouslinScheme singleton(double c);
  static SouslinScheme finite_set(std::vector<double> points);
  static SouslinScheme cantor_middle_thirds();
  /// Rationals in [0,1] enumerated by denominator then numerator, reduced.
  static SouslinScheme rationals_in_unit_interval();
  /// Custom scheme from explicit intervals for every s with |s| ≤ depth and
  /// entries < width. Beyond depth the interval keeps its center and halves.
  static SouslinScheme table(std::size_t depth, std::size_t width, const std::vector<TableEntry>& entries);

  SchemeType type() const { return type_; }
  std::string name() const;
  const std::vector<double>& points() const { return points_; }
  std::size_t table_depth() const { return table_depth_; }
  std::size_t table_width() const { return table_width_; }
  const std::map<std::vector<Nat>, Ball>& table_balls() const { return table_; }

  /// Admitted children at s; 0 means unbounded.
  Nat branching(const TreeSeq& s) const;
  /// Bound on radii at length n.
  double shrink(std::size_t n) const;
  /// Entries at or beyond branching(prefix) collapse to 0.
  TreeSeq normalize(const TreeSeq& s, bool* collapsed = nullptr) const;
  /// C_s (after normalization).
  Ball assign(const TreeSeq& s) const;

  /// q_k of the rationals enumeration.
  static double rational_at(Nat k);

 private:
  SouslinScheme() = default;
  Ball assign_normalized(const TreeSeq& s) const;

  SchemeType type_ = SchemeType::Singleton;
  std::vector<double> points_;
  std::size_t table_depth_ = 0;
  std::size_t table_width_ = 0;
  std::map<std::vector<Nat>, Ball> table_;
};

struct BranchPoint {
  TreeSeq branch;
  double approx = 0;
  double error = 0;
  bool collapsed = false;
};

BranchPoint resolve(const SouslinScheme& scheme, const TreeSeq& branch);

struct SchemeViolation {
  std::string kind;  // "nesting", "shrink", "shrink-monotone"
  TreeSeq s;
  TreeSeq t;
  std::string detail;
};

struct SchemeReport {
  bool pass = false;
  std::size_t depth = 0;
  std::size_t width = 0;
  std::uint64_t nodes_checked = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<SchemeViolation> violation;
};

/// Exhaustive nesting / shrink check over all s with |s| ≤ depth and entries
/// < width; the first violation in (length, lex) order is reported.
SchemeReport validate(const SouslinScheme& scheme, std::size_t depth, std::size_t width);

/// Distance from p to the union of C_s over admissible s of length `depth`
/// (entries < width, or < branching where that is smaller). A lower bound on
/// the distance to the projection that tightens as depth grows.
double level_distance(const SouslinScheme& scheme, double p, std::size_t depth, std::size_t width);

}  // namespace ideal_lab
