#include "ideal_lab/souslin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

namespace {

constexpr Nat kMaxRationalIndex = 1'000'000;
constexpr std::uint64_t kMaxValidateNodes = 20'000'000;

double pow2(std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n)); }
double pow3(std::size_t n) { return std::pow(3.0, -static_cast<double>(n)); }

std::string describe(const Ball& b) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << b.lo() << ", " << b.hi() << ']';
  return os.str();
}

}  // namespace

double Ball::distance(double p) const {
  if (p < lo()) return lo() - p;
  if (p > hi()) return p - hi();
  return 0.0;
}

const char* to_string(SchemeType t) {
  switch (t) {
    case SchemeType::Singleton:
      return "singleton";
    case SchemeType::Finite:
      return "finite";
    case SchemeType::Cantor:
      return "cantor";
    case SchemeType::Rationals:
      return "rationals";
    case SchemeType::Table:
      return "table";
  }
  return "?";
}

SouslinScheme SouslinScheme::singleton(double c) {
  if (!std::isfinite(c)) throw DomainError("singleton scheme: point must be finite");
  SouslinScheme s;
  s.type_ = SchemeType::Singleton;
  s.points_ = {c};
  return s;
}

SouslinScheme SouslinScheme::finite_set(std::vector<double> points) {
  if (points.empty()) throw DomainError("finite scheme: need at least one point");
  for (double p : points)
    if (!std::isfinite(p)) throw DomainError("finite scheme: points must be finite");
  SouslinScheme s;
  s.type_ = SchemeType::Finite;
  s.points_ = std::move(points);
  return s;
}

SouslinScheme SouslinScheme::cantor_middle_thirds() {
  SouslinScheme s;
  s.type_ = SchemeType::Cantor;
  return s;
}

SouslinScheme SouslinScheme::rationals_in_unit_interval() {
  SouslinScheme s;
  s.type_ = SchemeType::Rationals;
  return s;
}

SouslinScheme SouslinScheme::table(std::size_t depth, std::size_t width, const std::vector<TableEntry>& entries) {
  if (width == 0) throw DomainError("table scheme: width must be at least 1");
  SouslinScheme s;
  s.type_ = SchemeType::Table;
  s.table_depth_ = depth;
  s.table_width_ = width;
  for (const auto& e : entries) {
    if (!std::isfinite(e.lo) || !std::isfinite(e.hi) || e.lo > e.hi)
      throw DomainError("table scheme: bad interval for " + e.s.to_string());
    if (e.s.length() > depth) throw DomainError("table scheme: entry " + e.s.to_string() + " deeper than declared depth");
    for (Nat v : e.s.entries)
      if (v >= width) throw DomainError("table scheme: entry " + e.s.to_string() + " exceeds declared width");
    s.table_[e.s.entries] = Ball{(e.lo + e.hi) / 2, (e.hi - e.lo) / 2};
  }
  // every admissible s must be present
  std::vector<std::vector<Nat>> level{{}};
  for (std::size_t len = 0; len <= depth; ++len) {
    std::vector<std::vector<Nat>> next;
    for (const auto& v : level) {
      if (!s.table_.count(v)) throw DomainError("table scheme: missing entry for " + TreeSeq(v).to_string());
      if (len < depth)
        for (Nat n = 0; n < width; ++n) {
          auto c = v;
          c.push_back(n);
          next.push_back(std::move(c));
        }
    }
    level = std::move(next);
  }
  return s;
}

std::string SouslinScheme::name() const {
  std::ostringstream os;
  os << to_string(type_);
  if (type_ == SchemeType::Singleton || type_ == SchemeType::Finite) {
    os << ':';
    for (std::size_t i = 0; i < points_.size(); ++i) os << (i ? "," : "") << points_[i];
  }
  return os.str();
}

double SouslinScheme::rational_at(Nat k) {
  if (k > kMaxRationalIndex) throw BoundError("rationals enumeration index too large");
  if (k == 0) return 0.0;
  if (k == 1) return 1.0;
  Nat seen = 2;
  for (Nat d = 2;; ++d)
    for (Nat p = 1; p < d; ++p) {
      if (std::gcd(p, d) != 1) continue;
      if (seen == k) return static_cast<double>(p) / static_cast<double>(d);
      ++seen;
    }
}

Nat SouslinScheme::branching(const TreeSeq& s) const {
  switch (type_) {
    case SchemeType::Singleton:
      return 1;
    case SchemeType::Finite:
      return s.empty() ? points_.size() : 1;
    case SchemeType::Cantor:
      return 2;
    case SchemeType::Rationals:
      return s.empty() ? 0 : 1;
    case SchemeType::Table:
      return s.length() < table_depth_ ? table_width_ : 1;
  }
  return 1;
}

double SouslinScheme::shrink(std::size_t n) const {
  switch (type_) {
    case SchemeType::Finite:
      if (n == 0) {
        auto [mn, mx] = std::minmax_element(points_.begin(), points_.end());
        return (*mx - *mn) / 2 + 1;
      }
      return pow2(n);
    case SchemeType::Cantor:
      return pow3(n);
    case SchemeType::Table: {
      const std::size_t level = std::min(n, table_depth_);
      double best = 0;
      for (const auto& [k, b] : table_)
        if (k.size() == level) best = std::max(best, b.radius);
      return best * pow2(n - level);
    }
    case SchemeType::Singleton:
    case SchemeType::Rationals:
      return pow2(n);
  }
  return pow2(n);
}

TreeSeq SouslinScheme::normalize(const TreeSeq& s, bool* collapsed) const {
  TreeSeq out;
  bool any = false;
  for (Nat v : s.entries) {
    const Nat b = branching(out);
    if (b != 0 && v >= b) {
      v = 0;
      any = true;
    }
    out.entries.push_back(v);
  }
  if (collapsed) *collapsed = any;
  return out;
}

Ball SouslinScheme::assign(const TreeSeq& s) const { return assign_normalized(normalize(s)); }

Ball SouslinScheme::assign_normalized(const TreeSeq& s) const {
  const std::size_t n = s.length();
  switch (type_) {
    case SchemeType::Singleton:
      return Ball{points_[0], pow2(n)};
    case SchemeType::Finite:
      if (n == 0) {
        auto [mn, mx] = std::minmax_element(points_.begin(), points_.end());
        return Ball{(*mn + *mx) / 2, (*mx - *mn) / 2 + 1};
      }
      return Ball{points_[static_cast<std::size_t>(s[0])], pow2(n)};
    case SchemeType::Cantor: {
      double left = 0;
      for (std::size_t k = 0; k < n; ++k) left += static_cast<double>(s[k]) * 2.0 * pow3(k + 1);
      const double len = pow3(n);
      return Ball{left + len / 2, len / 2};
    }
    case SchemeType::Rationals:
      if (n == 0) return Ball{0.5, 1.0};
      return Ball{rational_at(s[0]), pow2(n)};
    case SchemeType::Table: {
      const std::size_t level = std::min(n, table_depth_);
      const Ball& b = table_.at(s.prefix(level).entries);
      return Ball{b.center, b.radius * pow2(n - level)};
    }
  }
  return {};
}

BranchPoint resolve(const SouslinScheme& scheme, const TreeSeq& branch) {
  BranchPoint out;
  out.branch = scheme.normalize(branch, &out.collapsed);
  const Ball b = scheme.assign(out.branch);
  out.approx = b.center;
  out.error = b.radius;
  return out;
}

SchemeReport validate(const SouslinScheme& scheme, std::size_t depth, std::size_t width) {
  if (width == 0) throw DomainError("validate: width must be at least 1");
  SchemeReport report;
  report.depth = depth;
  report.width = width;
  double total = 1, level_count = 1;
  for (std::size_t l = 1; l <= depth; ++l) total += (level_count *= static_cast<double>(width));
  if (total > static_cast<double>(kMaxValidateNodes)) throw BoundError("validate: depth/width too large");

  for (std::size_t n = 0; n <= depth; ++n) {
    const double cur = scheme.shrink(n);
    const double next = scheme.shrink(n + 1);
    if (!(cur > 0) || !(next < cur)) {
      report.violation = SchemeViolation{"shrink-monotone", TreeSeq(std::vector<Nat>(n, 0)),
                                         TreeSeq(std::vector<Nat>(n + 1, 0)), "shrink must be positive and strictly decreasing"};
      return report;
    }
  }

  std::vector<TreeSeq> level{TreeSeq{}};
  for (std::size_t len = 0; len <= depth; ++len) {
    std::vector<TreeSeq> next;
    for (const auto& s : level) {
      ++report.nodes_checked;
      const Ball bs = scheme.assign(s);
      if (!(bs.radius <= scheme.shrink(len) + kNestingSlack)) {
        report.violation = SchemeViolation{"shrink", s, s, "radius exceeds shrink(" + std::to_string(len) + ")"};
        return report;
      }
      if (len == depth) continue;
      for (Nat c = 0; c < width; ++c) {
        TreeSeq t = s.extended(c);
        ++report.pairs_checked;
        const Ball bt = scheme.assign(t);
        if (!bs.contains(bt, kNestingSlack)) {
          report.violation = SchemeViolation{"nesting", s, t, describe(bt) + " not inside " + describe(bs)};
          return report;
        }
        next.push_back(std::move(t));
      }
    }
    level = std::move(next);
  }
  report.pass = true;
  return report;
}

double level_distance(const SouslinScheme& scheme, double p, std::size_t depth, std::size_t width) {
  if (width == 0) throw DomainError("level_distance: width must be at least 1");
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t visited = 0;
  // depth-first with pruning: a child lies inside its parent
  std::vector<TreeSeq> stack{TreeSeq{}};
  while (!stack.empty()) {
    TreeSeq s = std::move(stack.back());
    stack.pop_back();
    if (++visited > kMaxValidateNodes) throw BoundError("level_distance: depth/width too large");
    const Ball b = scheme.assign(s);
    const double dist = b.distance(p);
    if (dist >= best) continue;
    if (s.length() == depth) {
      best = dist;
      continue;
    }
    const Nat br = scheme.branching(s);
    const Nat kids = br == 0 ? width : std::min<Nat>(br, width);
    for (Nat c = kids; c-- > 0;) stack.push_back(s.extended(c));
  }
  return best;
}

}  // namespace ideal_lab
