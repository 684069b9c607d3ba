#include "ideal_lab/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "ideal_lab/errors.hpp"
#include "ideal_lab/search.hpp"

namespace ideal_lab {

// ---------------------------------------------------------------------------
// SequenceWindow

SequenceWindow::SequenceWindow(IndexDomain domain, Nat bound) : domain_(domain), bound_(bound) {
  if (domain == IndexDomain::Nat) {
    values_.assign(static_cast<std::size_t>(bound), 0.0);
  } else {
    if (bound > kMaxPairVertex) throw BoundError("pair window bound too large");
    values_.assign(static_cast<std::size_t>(bound < 2 ? 0 : bound * (bound - 1) / 2), 0.0);
  }
}

SequenceWindow SequenceWindow::from_function(IndexDomain domain, Nat bound, const std::function<double(Index)>& fn) {
  SequenceWindow w(domain, bound);
  for (std::size_t slot = 0; slot < w.values_.size(); ++slot) w.values_[slot] = fn(w.index_at(slot));
  return w;
}

std::size_t SequenceWindow::slot_of(Index s) const {
  if (!contains(s)) throw BoundError("index " + format_index(domain_, s) + " outside the window");
  if (domain_ == IndexDomain::Nat) return static_cast<std::size_t>(s);
  const Nat i = pair_lo(s);
  const Nat j = pair_hi(s);
  return static_cast<std::size_t>(j * (j - 1) / 2 + i);
}

Index SequenceWindow::index_at(std::size_t slot) const {
  if (domain_ == IndexDomain::Nat) return slot;
  // largest j with j(j-1)/2 <= slot
  auto j = static_cast<Nat>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(slot))) / 2.0);
  while (j * (j - 1) / 2 > slot) --j;
  while ((j + 1) * j / 2 <= slot) ++j;
  return pair_index(slot - j * (j - 1) / 2, j);
}

double SequenceWindow::at(Index s) const { return values_[slot_of(s)]; }

void SequenceWindow::set(Index s, double v) { values_[slot_of(s)] = v; }

unsigned nu2(Nat n) {
  if (n == 0) throw DomainError("nu2(0) is undefined");
  return static_cast<unsigned>(__builtin_ctzll(n));
}

SequenceWindow nu2_sequence(Nat bound) {
  if (bound == 0) throw DomainError("nu2_sequence: bound must be at least 1");
  return SequenceWindow::from_function(IndexDomain::Nat, bound, [](Index n) {
    return n == 0 ? 1.0 / 3.0 : std::ldexp(1.0, -static_cast<int>(nu2(n)));
  });
}

std::vector<double> default_eps_ladder() {
  std::vector<double> out;
  for (int k = 1; k <= 10; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

void check_eps_ladder(const std::vector<double>& ladder) {
  if (ladder.empty()) throw DomainError("eps ladder must be nonempty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0) || !std::isfinite(ladder[i])) throw DomainError("eps ladder entries must be positive");
    if (i > 0 && !(ladder[i] < ladder[i - 1])) throw DomainError("eps ladder must be strictly decreasing");
  }
}

namespace {

bool close(const SequenceWindow& x, Index s, double eta, double eps) { return std::fabs(x.at(s) - eta) < eps; }

Nat effective_bound(Nat requested, const SequenceWindow& x) { return requested == 0 ? x.bound() : requested; }

void require_domain(const PartitionRegularMap& rho, const SequenceWindow& x) {
  if (rho.target_domain() != x.domain())
    throw DomainError(rho.name() + " produces " + to_string(rho.target_domain()) + " indices but the window is over " +
                      to_string(x.domain()));
}

std::vector<Nat> iota_pool(Nat from, Nat n) {
  std::vector<Nat> pool;
  for (Nat c = from; c < n; ++c) pool.push_back(c);
  return pool;
}

}  // namespace

// ---------------------------------------------------------------------------
// Limit witnesses

bool verify_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, LimitWitness& w) {
  require_domain(rho, x);
  w.verified = false;
  if (w.tails.empty()) return false;
  for (std::size_t r = 0; r < w.tails.size(); ++r) {
    Tail& t = w.tails[r];
    if (!(t.eps > 0) || (r > 0 && !(t.eps < w.tails[r - 1].eps))) return false;
    const GenSet rest = w.f.without(t.k);
    if (rest.size() < rho.min_generators()) return false;
    const IndexSet image = apply(rho, rest, x.bound());
    t.checked = image.size();
    for (Index s : image)
      if (!close(x, s, w.eta, t.eps)) return false;
  }
  w.verified = true;
  return true;
}

SearchOutcome<LimitWitness> find_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                               const std::vector<double>& eps_ladder, const LimitSearch& search) {
  require_domain(rho, x);
  check_eps_ladder(eps_ladder);
  const std::size_t m = search.target_size;
  const std::size_t rest_min = rho.min_generators();
  if (m < rest_min) throw DomainError("find_limit_witness: target size too small for " + rho.name());
  const std::size_t max_k = std::min(search.max_k, m - rest_min);
  const std::size_t top = eps_ladder.size() - 1;
  const Nat sb = effective_bound(search.search_bound, x);

  TieredProblem problem;
  problem.kind = rho.kind;
  problem.target_size = m;
  problem.window = x.bound();
  problem.pool = search.pool.empty() ? iota_pool(rho.least_generator(), sb) : search.pool;
  problem.accept = [&](Index s, std::size_t tier) { return close(x, s, eta, eps_ladder[tier]); };
  problem.tier_of = [&](std::size_t a) { return a >= max_k ? top : std::min(a, top); };
  problem.nested_tiers = true;
  problem.node_budget = search.node_budget;
  const auto result = tiered_search(problem);

  SearchOutcome<LimitWitness> out;
  out.bounds = SearchBounds{m, search.pool.empty() ? sb : search.pool.back() + 1, max_k, x.bound(), result.nodes,
                            result.exhausted};
  if (!result.found) return out;

  LimitWitness w;
  w.eta = eta;
  w.f = *result.found;
  w.bounds = out.bounds;
  for (std::size_t r = 0; r < eps_ladder.size(); ++r) w.tails.push_back(Tail{eps_ladder[r], w.f.prefix(std::min(r, max_k)), 0});
  if (!verify_limit_witness(rho, x, w)) throw Error("find_limit_witness: search result failed re-verification");
  out.witness = std::move(w);
  return out;
}

std::optional<LimitWitness> tails_for_given_F(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                              const GenSet& f, const std::vector<double>& eps_ladder) {
  require_domain(rho, x);
  check_eps_ladder(eps_ladder);
  if (f.size() < rho.min_generators()) throw DomainError("tails_for_given_F: F too small for " + rho.name());
  LimitWitness w;
  w.eta = eta;
  w.f = f;
  w.bounds = SearchBounds{f.size(), f.back() + 1, f.size() - rho.min_generators(), x.bound(), 0, true};
  std::size_t k = 0;  // tails only grow along a decreasing ladder
  for (double eps : eps_ladder) {
    for (;; ++k) {
      if (f.size() - k < rho.min_generators()) return std::nullopt;
      const IndexSet image = apply(rho, f.without(f.prefix(k)), x.bound());
      if (std::all_of(image.begin(), image.end(), [&](Index s) { return close(x, s, eta, eps); })) break;
    }
    w.tails.push_back(Tail{eps, f.prefix(k), 0});
  }
  if (!verify_limit_witness(rho, x, w)) throw Error("tails_for_given_F: result failed re-verification");
  return w;
}

// ---------------------------------------------------------------------------
// Cluster witnesses

bool verify_cluster_witness(const PartitionRegularMap& rho, const SequenceWindow& x, ClusterWitness& w) {
  require_domain(rho, x);
  w.verified = false;
  if (!(w.eps > 0) || w.f.size() < rho.min_generators()) return false;
  const IndexSet image = apply(rho, w.f, std::min(w.window, x.bound()));
  for (Index s : image)
    if (!close(x, s, w.eta, w.eps)) return false;
  w.verified = true;
  return true;
}

SearchOutcome<ClusterWitness> find_cluster_witness(const PartitionRegularMap& rho, const SequenceWindow& x, double eta,
                                                   double eps, const ClusterSearch& search) {
  require_domain(rho, x);
  if (!(eps > 0)) throw DomainError("find_cluster_witness: eps must be positive");
  const Nat sb = effective_bound(search.search_bound, x);
  auto found = positivity_search(rho, [&](Index s) { return close(x, s, eta, eps); }, search.target_size, sb, x.bound());
  SearchOutcome<ClusterWitness> out;
  out.bounds = SearchBounds{search.target_size, sb, 0, x.bound(), 0, true};
  if (!found) return out;
  ClusterWitness w{eta, eps, found->f, x.bound(), false};
  if (!verify_cluster_witness(rho, x, w)) throw Error("find_cluster_witness: search result failed re-verification");
  out.witness = std::move(w);
  return out;
}

ClusterWitness cluster_from_rung(const LimitWitness& w, std::size_t rung, Nat window) {
  if (rung >= w.tails.size()) throw DomainError("cluster_from_rung: no such rung");
  return ClusterWitness{w.eta, w.tails[rung].eps, w.f.without(w.tails[rung].k), window, false};
}

// ---------------------------------------------------------------------------
// I_ρ-limit witnesses

Nat convergence_key(IndexDomain d, Index s) { return d == IndexDomain::Nat ? s : pair_hi(s); }

bool in_convergent_set(const SequenceWindow& x, double eta, const std::vector<double>& ladder, Index s) {
  const Nat key = convergence_key(x.domain(), s);
  const std::size_t r = static_cast<std::size_t>(std::min<Nat>(key, ladder.size() - 1));
  return close(x, s, eta, ladder[r]);
}

bool verify_ideal_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x, IdealLimitWitness& w) {
  require_domain(rho, x);
  check_eps_ladder(w.eps_ladder);
  w.verified = false;
  if (w.f.size() < rho.min_generators()) return false;
  const IndexSet image = apply(rho, w.f, std::min(w.window, x.bound()));
  for (Index s : image)
    if (!in_convergent_set(x, w.eta, w.eps_ladder, s)) return false;
  w.verified = true;
  return true;
}

SearchOutcome<IdealLimitWitness> find_ideal_limit_witness(const PartitionRegularMap& rho, const SequenceWindow& x,
                                                          double eta, const std::vector<double>& eps_ladder,
                                                          const IdealSearch& search) {
  require_domain(rho, x);
  check_eps_ladder(eps_ladder);
  const Nat sb = effective_bound(search.search_bound, x);
  auto found = positivity_search(
      rho, [&](Index s) { return in_convergent_set(x, eta, eps_ladder, s); }, search.target_size, sb, x.bound());
  SearchOutcome<IdealLimitWitness> out;
  out.bounds = SearchBounds{search.target_size, sb, 0, x.bound(), 0, true};
  if (!found) return out;
  IdealLimitWitness w{eta, found->f, eps_ladder, x.bound(), false, out.bounds};
  if (!verify_ideal_limit_witness(rho, x, w)) throw Error("find_ideal_limit_witness: result failed re-verification");
  out.witness = std::move(w);
  return out;
}

LimitWitness convert_ideal_to_rho_witness(const PartitionRegularMap& rho, const SequenceWindow& x,
                                          const IdealLimitWitness& w) {
  IdealLimitWitness check = w;
  if (!verify_ideal_limit_witness(rho, x, check)) throw DomainError("convert_ideal_to_rho_witness: invalid input witness");
  LimitWitness out;
  out.eta = w.eta;
  out.f = thin_for_S(rho, w.f);
  out.bounds = w.bounds;
  for (std::size_t r = 0; r < w.eps_ladder.size(); ++r) {
    std::vector<Nat> k;
    for (Nat e : out.f)
      if (e < r) k.push_back(e);
    GenSet kset(std::move(k));
    if (out.f.size() - kset.size() < rho.min_generators()) continue;
    out.tails.push_back(Tail{w.eps_ladder[r], std::move(kset), 0});
  }
  if (!verify_limit_witness(rho, x, out)) throw Error("convert_ideal_to_rho_witness: converted witness failed re-verification");
  return out;
}

// ---------------------------------------------------------------------------
// Layered sequences

SequenceWindow layered_sequence(const LayeredFamily& a, double p, const std::vector<double>& y, Nat bound) {
  if (!a.member) throw DomainError("layered_sequence: family has no membership test");
  if (y.size() < std::max<std::size_t>(a.depth, 1)) throw DomainError("layered_sequence: need y_0 .. y_{depth-1}");
  for (std::size_t n = 0; n < y.size(); ++n) {
    const double delta = std::fabs(y[n] - p);
    if (!std::isfinite(y[n]) || !(delta > 0)) throw DomainError("layered_sequence: y_n must differ from p");
    if (n > 0 && !(delta < std::fabs(y[n - 1] - p))) throw DomainError("layered_sequence: |y_n - p| must strictly decrease");
    for (std::size_t m = 0; m < n; ++m)
      if (y[m] == y[n]) throw DomainError("layered_sequence: y must be injective");
  }
  return SequenceWindow::from_function(a.domain, bound, [&](Index s) {
    if (!a.member(0, s)) return y[0];
    std::size_t n = 0;
    while (n < a.depth && a.member(n + 1, s)) ++n;
    return n == a.depth ? p : y[n];
  });
}

LayeredFamily block_family_pairs(std::size_t num_blocks) {
  if (num_blocks == 0) throw DomainError("block_family_pairs: need at least one block");
  LayeredFamily f;
  f.domain = IndexDomain::Pair;
  f.depth = num_blocks;
  f.name = "pairs-blocks-" + std::to_string(num_blocks);
  f.member = [num_blocks](std::size_t n, Index s) {
    return pair_lo(s) % num_blocks >= n && pair_hi(s) % num_blocks >= n;
  };
  return f;
}

LayeredFamily block_family_fs(std::size_t num_blocks) {
  if (num_blocks == 0) throw DomainError("block_family_fs: need at least one block");
  LayeredFamily f;
  f.domain = IndexDomain::Nat;
  f.depth = num_blocks;
  f.name = "fs-blocks-" + std::to_string(num_blocks);
  f.member = [num_blocks](std::size_t n, Index a) {
    if (a == 0) return false;
    std::optional<std::size_t> block;
    for (std::size_t e = 0; a > 0; ++e, a /= 5) {
      const Nat digit = a % 5;
      if (digit > 1) return false;
      if (digit == 0) continue;
      if (block && *block != e % num_blocks) return false;
      block = e % num_blocks;
    }
    return *block >= n;
  };
  return f;
}

ChainSplit chain_split(const std::vector<bool>& difference_positive) {
  ChainSplit out;
  out.t.push_back(0);
  for (std::size_t n = 1; n < difference_positive.size(); ++n)
    if (difference_positive[n]) out.t.push_back(n);
  out.tail_offset = out.t.back() + 1;
  for (std::size_t n = out.tail_offset; n <= difference_positive.size(); ++n) out.minus_chain.push_back(n);
  out.positive_chain = out.t;
  return out;
}

}  // namespace ideal_lab
