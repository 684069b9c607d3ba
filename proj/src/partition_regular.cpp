#include "ideal_lab/partition_regular.hpp"

#include <algorithm>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

std::string PartitionRegularMap::name() const {
  switch (kind) {
    case RhoKind::FS:
      return "fs";
    case RhoKind::Pairs:
      return "pairs";
    case RhoKind::Ident:
      return "ident";
  }
  return "?";
}

PartitionRegularMap parse_rho(const std::string& name) {
  if (name == "fs" || name == "FS") return PartitionRegularMap::fs();
  if (name == "pairs" || name == "PAIRS" || name == "r") return PartitionRegularMap::pairs();
  if (name == "ident" || name == "IDENT") return PartitionRegularMap::ident();
  throw DomainError("unknown partition regular map '" + name + "'");
}

IndexSet apply(const PartitionRegularMap& rho, const GenSet& f, Nat bound) {
  if (f.size() < rho.min_generators())
    throw DomainError(rho.name() + " needs at least " + std::to_string(rho.min_generators()) + " generators");
  switch (rho.kind) {
    case RhoKind::FS:
      return fs(f, bound);
    case RhoKind::Pairs: {
      std::vector<Index> kept;
      for (Index p : pairs(f))
        if (pair_hi(p) < bound) kept.push_back(p);
      return IndexSet(IndexDomain::Pair, std::move(kept));
    }
    case RhoKind::Ident: {
      std::vector<Index> kept;
      for (Nat x : f)
        if (x < bound) kept.push_back(x);
      return IndexSet(IndexDomain::Nat, std::move(kept));
    }
  }
  return IndexSet();
}

bool rho_tail_subset(const PartitionRegularMap& rho, const GenSet& f, const GenSet& k, const IndexSet& b, Nat bound) {
  const GenSet rest = f.without(k);
  if (rest.size() < rho.min_generators())
    throw DomainError("rho_tail_subset: F\\K too small for " + rho.name());
  const IndexSet image = apply(rho, rest, bound);
  return std::all_of(image.begin(), image.end(), [&](Index s) { return b.contains(s); });
}

std::optional<PositivityWitness> positivity_search(const PartitionRegularMap& rho, const IndexPredicate& in_s,
                                                   std::size_t target_size, Nat search_bound, Nat window) {
  if (target_size < rho.min_generators())
    throw DomainError("positivity_search: target size too small for " + rho.name());
  TieredProblem problem;
  problem.kind = rho.kind;
  problem.target_size = target_size;
  problem.window = window;
  for (Nat c = rho.least_generator(); c < search_bound; ++c) problem.pool.push_back(c);
  problem.accept = [&](Index s, std::size_t) { return in_s(s); };
  problem.tier_of = [](std::size_t) { return std::size_t{0}; };
  problem.nested_tiers = true;
  auto result = tiered_search(problem);
  if (!result.found) return std::nullopt;
  return PositivityWitness{*result.found, window};
}

std::optional<PositivityWitness> positivity_search(const PartitionRegularMap& rho, const IndexSet& s,
                                                   std::size_t target_size, Nat search_bound, Nat window) {
  if (s.domain() != rho.target_domain()) throw DomainError("positivity_search: S lives in the wrong domain");
  return positivity_search(rho, [&](Index i) { return s.contains(i); }, target_size, search_bound, window);
}

bool verify_positivity(const PartitionRegularMap& rho, const PositivityWitness& w, const IndexPredicate& in_s) {
  if (w.f.size() < rho.min_generators()) return false;
  const IndexSet image = apply(rho, w.f, w.window);
  return std::all_of(image.begin(), image.end(), in_s);
}

std::optional<MonochromaticSet> check_axiom_R(const PartitionRegularMap& rho, const GenSet& f,
                                              const Coloring& coloring, std::size_t target_size, Nat bound) {
  if (target_size < rho.min_generators()) throw DomainError("check_axiom_R: target size too small");
  std::optional<MonochromaticSet> best;
  for (int color = 0; color <= 1; ++color) {
    TieredProblem problem;
    problem.kind = rho.kind;
    problem.target_size = target_size;
    problem.window = bound;
    problem.pool = f.elements();
    problem.accept = [&](Index s, std::size_t) { return coloring(s) == color; };
    problem.tier_of = [](std::size_t) { return std::size_t{0}; };
    problem.nested_tiers = true;
    auto result = tiered_search(problem);
    if (result.found && (!best || *result.found < best->e)) best = MonochromaticSet{*result.found, color};
  }
  return best;
}

GenSet thin_for_S(const PartitionRegularMap& rho, const GenSet& f) {
  if (f.empty()) throw DomainError("thin_for_S: F must be nonempty");
  if (rho.kind != RhoKind::FS) return f;
  std::vector<Nat> kept;
  Nat total = 0;
  for (Nat x : f) {
    if (kept.empty() || x > total) {
      kept.push_back(x);
      total += x;
    }
  }
  return GenSet(std::move(kept));
}

}  // namespace ideal_lab
