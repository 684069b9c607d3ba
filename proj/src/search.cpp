#include "ideal_lab/search.hpp"

#include <algorithm>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

namespace {

constexpr std::size_t kMaxPairPool = 20000;

struct Budget {
  std::uint64_t limit = 0;
  std::uint64_t nodes = 0;
  bool hit = false;

  bool step() {
    ++nodes;
    if (limit != 0 && nodes > limit) hit = true;
    return !hit;
  }
};

class TierSlots {
 public:
  explicit TierSlots(const TieredProblem& p) {
    for (std::size_t pos = 0; pos < p.target_size; ++pos) {
      const std::size_t t = p.tier_of(pos);
      if (!tiers_.empty() && t < tiers_.back()) throw DomainError("tier_of must be nondecreasing");
      if (distinct_.empty() || distinct_.back() != t) distinct_.push_back(t);
      tiers_.push_back(t);
    }
  }
  std::size_t tier(std::size_t pos) const { return tiers_[pos]; }
  std::size_t slot(std::size_t pos) const {
    return static_cast<std::size_t>(std::lower_bound(distinct_.begin(), distinct_.end(), tiers_[pos]) -
                                    distinct_.begin());
  }
  const std::vector<std::size_t>& distinct() const { return distinct_; }

 private:
  std::vector<std::size_t> tiers_;
  std::vector<std::size_t> distinct_;
};

// FS and IDENT: elements are constrained as singletons, FS additionally
// constrains every sum with earlier elements.
class SumSearch {
 public:
  SumSearch(const TieredProblem& p, const TierSlots& slots) : p_(p), slots_(slots), budget_{p.node_budget} {
    const std::size_t n = p.pool.size();
    // next_ok[slot][i]: least j ≥ i whose pool element passes the singleton test at that slot's tier.
    next_ok_.resize(slots.distinct().size());
    for (std::size_t s = 0; s < next_ok_.size(); ++s) {
      auto& nx = next_ok_[s];
      nx.assign(n + 1, static_cast<std::uint32_t>(n));
      for (std::size_t i = n; i-- > 0;) {
        const Nat c = p.pool[i];
        const bool ok = c >= p.window || p.accept(c, slots.distinct()[s]);
        nx[i] = ok ? static_cast<std::uint32_t>(i) : nx[i + 1];
      }
    }
  }

  TieredResult run() {
    TieredResult r;
    if (rec(0, 0)) r.found = GenSet(chosen_);
    r.exhausted = !budget_.hit;
    r.nodes = budget_.nodes;
    return r;
  }

 private:
  // Can positions pos..target-1 still be filled from pool indices ≥ start?
  bool feasible(std::size_t pos, std::size_t start) const {
    if (!p_.nested_tiers) return true;
    const std::size_t n = p_.pool.size();
    for (std::size_t q = pos; q < p_.target_size; ++q) {
      const auto& nx = next_ok_[slots_.slot(q)];
      std::size_t i = start;
      for (std::size_t need = p_.target_size - q; need > 0; --need) {
        if (i >= n) return false;
        i = nx[i];
        if (i >= n) return false;
        ++i;
      }
    }
    return true;
  }

  bool rec(std::size_t pos, std::size_t start) {
    if (pos == p_.target_size) return true;
    if (!budget_.step()) return false;
    if (!feasible(pos, start)) return false;
    const std::size_t n = p_.pool.size();
    const auto& nx = next_ok_[slots_.slot(pos)];
    const std::size_t tier = slots_.tier(pos);
    for (std::size_t i = start < n ? nx[start] : n; i < n; i = nx[i + 1]) {
      if (n - i < p_.target_size - pos) break;
      const Nat c = p_.pool[i];
      const std::size_t mark = sums_.size();
      bool ok = true;
      if (p_.kind == RhoKind::FS) {
        for (std::size_t k = 0; k < mark; ++k) {
          const Nat v = sums_[k].first + c;
          if (v >= p_.window) continue;
          if (!p_.accept(v, sums_[k].second)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        if (p_.kind == RhoKind::FS) {
          for (std::size_t k = 0; k < mark; ++k) {
            const Nat v = sums_[k].first + c;
            if (v < p_.window) sums_.emplace_back(v, sums_[k].second);
          }
          if (c < p_.window) sums_.emplace_back(c, tier);
        }
        chosen_.push_back(c);
        if (rec(pos + 1, i + 1)) return true;
        chosen_.pop_back();
        sums_.resize(mark);
        if (budget_.hit) return false;
      }
    }
    return false;
  }

  const TieredProblem& p_;
  const TierSlots& slots_;
  Budget budget_;
  std::vector<std::vector<std::uint32_t>> next_ok_;
  std::vector<Nat> chosen_;
  std::vector<std::pair<Nat, std::size_t>> sums_;
};

class CliqueSearch {
 public:
  CliqueSearch(const TieredProblem& p, const TierSlots& slots) : p_(p), slots_(slots), budget_{p.node_budget} {
    const std::size_t n = p.pool.size();
    if (n > kMaxPairPool) throw BoundError("pair search pool too large");
    adj_.resize(slots.distinct().size());
    for (std::size_t s = 0; s < adj_.size(); ++s) {
      adj_[s].assign(n, boost::dynamic_bitset<>(n));
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          const Nat a = p.pool[u];
          const Nat b = p.pool[v];
          if (b >= p.window || p.accept(pair_index(a, b), slots.distinct()[s])) adj_[s][u].set(v);
        }
    }
  }

  TieredResult run() {
    TieredResult r;
    boost::dynamic_bitset<> all(p_.pool.size());
    all.set();
    if (p_.target_size == 0 || rec(0, all)) r.found = GenSet(chosen_);
    r.exhausted = !budget_.hit;
    r.nodes = budget_.nodes;
    return r;
  }

 private:
  bool rec(std::size_t pos, const boost::dynamic_bitset<>& cand) {
    if (pos == p_.target_size) return true;
    if (!budget_.step()) return false;
    if (cand.count() < p_.target_size - pos) return false;
    const auto& adj = adj_[slots_.slot(pos)];
    for (auto v = cand.find_first(); v != boost::dynamic_bitset<>::npos; v = cand.find_next(v)) {
      chosen_.push_back(p_.pool[v]);
      if (rec(pos + 1, cand & adj[v])) return true;
      chosen_.pop_back();
      if (budget_.hit) return false;
    }
    return false;
  }

  const TieredProblem& p_;
  const TierSlots& slots_;
  Budget budget_;
  std::vector<std::vector<boost::dynamic_bitset<>>> adj_;
  std::vector<Nat> chosen_;
};

}  // namespace

TieredResult tiered_search(const TieredProblem& problem) {
  if (problem.target_size == 0) throw DomainError("tiered_search: target size must be positive");
  if (!problem.accept || !problem.tier_of) throw DomainError("tiered_search: accept and tier_of are required");
  if (!std::is_sorted(problem.pool.begin(), problem.pool.end()) ||
      std::adjacent_find(problem.pool.begin(), problem.pool.end()) != problem.pool.end())
    throw DomainError("tiered_search: pool must be strictly increasing");
  if (problem.kind == RhoKind::Pairs && problem.target_size < 2)
    throw DomainError("tiered_search: pair search needs at least two generators");
  if (problem.pool.size() < problem.target_size) return {};

  const TierSlots slots(problem);
  if (problem.kind == RhoKind::Pairs) return CliqueSearch(problem, slots).run();
  return SumSearch(problem, slots).run();
}

}  // namespace ideal_lab
