#include "ideal_lab/realization.hpp"

#include <algorithm>
#include <cmath>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

namespace {

const TreeBijection kTree{};

bool chain(const TreeSeq& s, const std::vector<TreeSeq>& seqs) {
  const TreeSeq* prev = &s;
  for (const auto& t : seqs) {
    if (!prev->is_prefix_of(t)) return false;
    prev = &t;
  }
  return true;
}

std::vector<std::size_t> mask_positions(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; mask != 0; ++p, mask >>= 1)
    if (mask & 1U) out.push_back(p);
  return out;
}

}  // namespace

const char* to_string(RealizationKind k) { return k == RealizationKind::Ramsey ? "ramsey" : "hindman"; }

RealizationKind parse_realization_kind(const std::string& s) {
  if (s == "ramsey") return RealizationKind::Ramsey;
  if (s == "hindman") return RealizationKind::Hindman;
  throw DomainError("unknown realization kind '" + s + "' (expected ramsey|hindman)");
}

PartitionRegularMap rho_for(RealizationKind k) {
  return k == RealizationKind::Ramsey ? PartitionRegularMap::pairs() : PartitionRegularMap::fs();
}

const char* to_string(Claim3Result::Status s) {
  switch (s) {
    case Claim3Result::Status::BasePoint:
      return "base-point";
    case Claim3Result::Status::Branch:
      return "branch";
    case Claim3Result::Status::Unconstrained:
      return "unconstrained";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// A-sets

bool ASetRamsey::contains(Index pair) const {
  const Nat i = pair_lo(pair);
  const Nat j = pair_hi(pair);
  if (i >= j) return false;
  const TreeSeq fi = kTree.seq_at(i);
  return s.is_prefix_of(fi) && fi.is_prefix_of(kTree.seq_at(j));
}

TreeSeq HindmanTree::f(Nat element) const { return kTree.seq_at(d_.position_of(element)); }

std::optional<Nat> HindmanTree::preimage(const TreeSeq& s) const {
  if (TreeBijection::stage_of(s) > TreeBijection::kMaxStage) return std::nullopt;
  const Nat i = kTree.index_of(s);
  if (i >= d_.size()) return std::nullopt;
  return d_.elements()[static_cast<std::size_t>(i)];
}

bool ASetHindman::contains(Nat a) const {
  if (tree == nullptr) throw DomainError("ASetHindman: no tree attached");
  if (a >= tree->d().certified_bound())
    throw BoundError(std::to_string(a) + " beyond the certified bound " + std::to_string(tree->d().certified_bound()));
  const auto mask = tree->d().support_mask(a);
  if (!mask) return false;
  std::vector<TreeSeq> seqs;
  for (std::size_t p : mask_positions(*mask)) seqs.push_back(kTree.seq_at(p));
  return chain(s, seqs);
}

bool RealizedSequence::in_a(const TreeSeq& s, Index index) const {
  if (kind == RealizationKind::Ramsey) {
    const Nat i = pair_lo(index), j = pair_hi(index);
    if (i >= j) return false;
    if (j >= f_cache.size()) return ASetRamsey{s}.contains(index);
    return s.is_prefix_of(f_cache[i]) && f_cache[i].is_prefix_of(f_cache[j]);
  }
  if (index >= tree->d().certified_bound()) return ASetHindman{&*tree, s}.contains(index);
  const auto mask = tree->d().support_mask(index);
  if (!mask) return false;
  std::vector<TreeSeq> seqs;
  for (std::size_t p : mask_positions(*mask)) seqs.push_back(f_cache[p]);
  return chain(s, seqs);
}

TreeSeq RealizedSequence::f_of(Nat generator) const {
  if (kind == RealizationKind::Ramsey) return generator < f_cache.size() ? f_cache[generator] : kTree.seq_at(generator);
  return f_cache[tree->d().position_of(generator)];
}

// ---------------------------------------------------------------------------
// Construction

BranchPoint point_after(const SouslinScheme& scheme, const TreeSeq& t, std::size_t depth) {
  return resolve(scheme, t.padded_zeros(depth));
}

RealizedSequence build_realized_sequence(RealizationKind kind, const SouslinScheme& scheme, std::size_t depth,
                                         Nat bound, const std::optional<VerySparseSet>& d, const ExecPolicy& policy) {
  RealizedSequence y;
  y.kind = kind;
  y.scheme = scheme;
  y.resolution_depth = depth;
  const BranchPoint base = point_after(scheme, TreeSeq{}, depth);
  y.base_point = base.approx;
  double max_error = base.error;

  if (kind == RealizationKind::Ramsey) {
    if (bound < 2) throw BoundError("ramsey window needs bound >= 2");
    std::vector<TreeSeq> f(static_cast<std::size_t>(bound));
    std::vector<double> p(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      f[j] = kTree.seq_at(j);
      const BranchPoint bp = point_after(scheme, f[j], depth);
      p[j] = bp.approx;
      max_error = std::max(max_error, bp.error);
    }
    y.window = SequenceWindow(IndexDomain::Pair, bound);
    const std::size_t slots = y.window.size();
    std::vector<std::uint64_t> counts(64, 0);
    parallel_chunks(slots, policy, counts.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
      for (std::size_t slot = b; slot < e; ++slot) {
        const Index s = y.window.index_at(slot);
        const Nat i = pair_lo(s), j = pair_hi(s);
        const bool in = f[i].is_prefix_of(f[j]);
        counts[c] += in;
        y.window.set(s, in ? p[j] : base.approx);
      }
    });
    for (auto c : counts) y.in_a_empty += c;
    y.f_cache = std::move(f);
  } else {
    if (!d) throw DomainError("hindman realization needs a certified very sparse set");
    if (bound == 0) bound = d->certified_bound();
    if (bound > d->certified_bound())
      throw DomainError("hindman window " + std::to_string(bound) + " exceeds the certified bound " +
                        std::to_string(d->certified_bound()));
    y.tree.emplace(*d);
    const std::size_t n = d->size();
    std::vector<TreeSeq> f(n);
    std::vector<BranchPoint> p(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = kTree.seq_at(k);
      p[k] = point_after(scheme, f[k], depth);
    }
    y.window = SequenceWindow::from_function(IndexDomain::Nat, bound, [&](Index) { return base.approx; });
    for (const auto& [sum, mask] : d->sums()) {
      if (sum >= bound) break;
      const auto pos = mask_positions(mask);
      std::vector<TreeSeq> seqs;
      for (auto q : pos) seqs.push_back(f[q]);
      if (!chain(TreeSeq{}, seqs)) continue;
      y.window.set(sum, p[pos.back()].approx);
      max_error = std::max(max_error, p[pos.back()].error);
      ++y.in_a_empty;
    }
    y.f_cache = std::move(f);
  }
  y.max_error = max_error;
  return y;
}

// ---------------------------------------------------------------------------
// Claim 1

Claim1Result claim1_witness(const RealizedSequence& y, const TreeSeq& branch, const std::vector<double>& eps_ladder) {
  check_eps_ladder(eps_ladder);
  const PartitionRegularMap rho = y.rho();
  Claim1Result out;
  out.branch = y.scheme.normalize(branch);

  std::vector<Nat> gens;
  for (std::size_t n = 0; n <= out.branch.length(); ++n) {
    const TreeSeq t = out.branch.prefix(n);
    std::optional<Nat> g;
    if (y.kind == RealizationKind::Ramsey) {
      if (TreeBijection::stage_of(t) <= TreeBijection::kMaxStage) {
        const Nat i = kTree.index_of(t);
        if (i < y.bound()) g = i;
      }
    } else {
      g = y.tree->preimage(t);
      if (g && *g >= y.bound()) g.reset();
    }
    if (!g) break;
    gens.push_back(*g);
  }

  LimitWitness& w = out.witness;
  w.f = GenSet(gens);
  const TreeSeq full = out.branch.padded_zeros(y.resolution_depth);
  w.eta = y.scheme.assign(full).center;
  w.bounds = SearchBounds{w.f.size(), y.bound(), w.f.size(), y.bound(), 0, true};

  for (double eps : eps_ladder) {
    std::optional<std::size_t> level;
    for (std::size_t l = 0; l <= full.length(); ++l)
      if (2 * y.scheme.assign(full.prefix(l)).radius < eps) {
        level = l;
        break;
      }
    std::size_t cut = 0;
    if (level) cut = y.kind == RealizationKind::Ramsey ? (*level == 0 ? 0 : *level - 1) : *level;
    if (!level || cut > w.f.size() || w.f.size() - cut < rho.min_generators()) {
      out.vacuous_eps.push_back(eps);
      continue;
    }
    w.tails.push_back(Tail{eps, w.f.prefix(cut), 0});
  }
  if (w.tails.empty())
    throw BoundError("claim1: window too small to check any rung for branch " + out.branch.to_string());
  verify_limit_witness(rho, y.window, w);
  return out;
}

// ---------------------------------------------------------------------------
// Claim 2

bool verify_descent(const RealizedSequence& y, DescentCertificate& c) {
  c.verified = false;
  const PartitionRegularMap rho = y.rho();
  const GenSet rest = c.f.without(c.k);
  if (rest.size() < rho.min_generators()) return false;
  const TreeSeq child = c.s.extended(c.n);
  const IndexSet image = apply(rho, rest, y.bound());
  c.checked = image.size();
  for (Index s : image)
    if (!y.in_a(child, s)) return false;
  c.verified = true;
  return true;
}

std::optional<DescentCertificate> descend(const RealizedSequence& y, const TreeSeq& s, const GenSet& f) {
  const PartitionRegularMap rho = y.rho();
  if (f.size() < rho.min_generators()) throw BoundError("descend: " + rho.name() + " needs more generators");
  for (Index idx : apply(rho, f, y.bound()))
    if (!y.in_a(s, idx))
      throw DomainError("descend: " + format_index(rho.target_domain(), idx) + " is not in A_" + s.to_string());

  DescentCertificate c;
  c.s = s;
  c.f = f;
  const std::size_t depth = s.length();
  std::optional<Nat> pivot;
  std::size_t best_len = 0;
  auto consider = [&](Nat cand, const TreeSeq& fc) {
    if (!pivot || fc.length() < best_len) {
      pivot = cand;
      best_len = fc.length();
      c.tie_broken = false;
    } else if (fc.length() == best_len) {
      c.tie_broken = true;  // candidates arrive in increasing order, the least one stays
    }
  };

  if (y.kind == RealizationKind::Ramsey) {
    std::vector<Nat> k;
    if (TreeBijection::stage_of(s) <= TreeBijection::kMaxStage) k.push_back(kTree.index_of(s));
    c.k = GenSet(std::move(k));
    const GenSet rest = f.without(c.k);
    if (rest.size() < 2) throw BoundError("descend: F\\K has fewer than two elements");
    for (Nat i : rest) consider(i, y.f_of(i));
  } else {
    const auto& d = y.tree->d();
    for (Nat a : f)
      if (a >= y.bound() || !d.in_fs(a)) return std::nullopt;
    const std::optional<Nat> pre = y.tree->preimage(s);
    std::vector<Nat> k;
    if (pre)
      for (Nat a : f)
        if (d.support(a).contains(*pre)) k.push_back(a);
    c.k = GenSet(std::move(k));
    const GenSet rest = f.without(c.k);
    if (rest.empty()) throw BoundError("descend: F\\K is empty");
    std::vector<Nat> pool;
    for (Nat a : rest)
      for (Nat e : d.support(a)) pool.push_back(e);
    for (Nat e : GenSet(std::move(pool))) consider(e, y.f_of(e));
  }

  const TreeSeq fp = y.f_of(*pivot);
  if (fp.length() <= depth || !s.is_prefix_of(fp)) return std::nullopt;
  c.pivot = *pivot;
  c.n = fp[depth];
  if (!verify_descent(y, c)) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------------------
// Claim 3

Claim3Result claim3_explain(const RealizedSequence& y, const LimitWitness& w, std::size_t max_descent) {
  const PartitionRegularMap rho = y.rho();
  Claim3Result out;
  out.eta = w.eta;
  out.domain = rho.target_domain();
  out.witness = w;
  out.bounds = w.bounds;
  if (w.tails.empty()) throw DomainError("claim3: witness has no tails");
  const Tail& last = w.tails.back();
  GenSet cur = w.f.without(last.k);
  const IndexSet image = apply(rho, cur, y.bound());
  if (image.empty()) throw BoundError("claim3: deepest tail has no indices inside the window");

  for (Index s : image)
    if (!y.in_a(TreeSeq{}, s)) {
      out.status = Claim3Result::Status::BasePoint;
      out.escape = s;
      out.ball = Ball{y.base_point, y.max_error};
      out.distance = out.ball.distance(w.eta);
      out.allowance = last.eps + kNestingSlack;
      out.consistent = out.distance <= out.allowance;
      return out;
    }

  out.status = Claim3Result::Status::Branch;
  TreeSeq s;
  for (std::size_t step = 0; step < max_descent; ++step) {
    std::optional<DescentCertificate> c;
    try {
      c = descend(y, s, cur);
    } catch (const BoundError&) {
      break;
    }
    if (!c) break;
    const GenSet next = cur.without(c->k);
    if (apply(rho, next, y.bound()).empty()) break;
    s = s.extended(c->n);
    cur = next;
    out.descents.push_back(std::move(*c));
  }
  out.prefix = y.scheme.normalize(s);
  out.ball = y.scheme.assign(out.prefix);
  out.distance = out.ball.distance(w.eta);
  out.allowance = last.eps + y.max_error + kNestingSlack;
  out.consistent = out.distance <= out.allowance;
  return out;
}

Claim3Result claim3_refute(const RealizedSequence& y, double eta, const std::vector<double>& eps_ladder,
                           const Claim3Search& search) {
  LimitSearch ls;
  ls.target_size = search.target_size != 0 ? search.target_size : (y.kind == RealizationKind::Ramsey ? 4 : 3);
  ls.node_budget = search.node_budget;
  ls.search_bound = y.bound();
  if (y.kind == RealizationKind::Hindman) {
    for (const auto& [sum, mask] : y.tree->d().sums())
      if (sum < y.bound()) ls.pool.push_back(sum);
  }
  auto found = find_limit_witness(y.rho(), y.window, eta, eps_ladder, ls);
  if (!found.witness) {
    Claim3Result out;
    out.eta = eta;
    out.status = Claim3Result::Status::Unconstrained;
    out.bounds = found.bounds;
    return out;
  }
  return claim3_explain(y, *found.witness, search.max_descent);
}

}  // namespace ideal_lab
