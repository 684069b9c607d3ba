// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any
// failure. argv[1] is the ideal-lab executable (used by the determinism check).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "ideal_lab/convergence.hpp"
#include "ideal_lab/errors.hpp"
#include "ideal_lab/partition_regular.hpp"
#include "ideal_lab/realization.hpp"
#include "ideal_lab/souslin.hpp"
#include "ideal_lab/suites.hpp"

using namespace ideal_lab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "[PASS] " : "[FAIL] ") << id << ". " << title << " — " << o.detail;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << secs << " s";
  if (limit_s > 0) line << " / limit " << limit_s << " s";
  line << ")";
  std::cout << line.str() << std::endl;
}

ExecPolicy all_threads() { return ExecPolicy{std::max(1u, std::thread::hardware_concurrency())}; }

std::vector<TreeSeq> seqs_up_to(std::size_t max_len, Nat width) {
  std::vector<TreeSeq> out{TreeSeq{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].length() < max_len)
      for (Nat n = 0; n < width; ++n) out.push_back(out[i].extended(n));
  return out;
}

// ---------------------------------------------------------------------------

Outcome fs_identity() {
  std::vector<Nat> p;
  for (unsigned n = 0; n < 16; ++n) p.push_back(Nat{1} << n);
  const IndexSet got = fs(GenSet(p), 65536);
  std::vector<Index> expect;
  for (Index s = 1; s < 65536; ++s) expect.push_back(s);
  return {got.members() == expect, "|fs| = " + std::to_string(got.size())};
}

Outcome nu2_digits() {
  std::uint64_t checked = 0, bad = 0;
  for (Nat a = 1; a < 4096; ++a)
    for (Nat b = 1; b < 4096; ++b) {
      const unsigned va = nu2(a), vb = nu2(b), vs = nu2(a + b);
      if (va == vb && a != b) {
        ++checked;
        if (vs < va + 1) ++bad;
      }
      if (vb > va) {
        ++checked;
        if (vs != va) ++bad;
      }
    }
  return {bad == 0, std::to_string(checked) + " implications, " + std::to_string(bad) + " failures"};
}

Outcome nu2_tails() {
  const SequenceWindow x = nu2_sequence(65536);
  std::uint64_t checked = 0, bad = 0;
  for (unsigned k = 0; k <= 10; ++k) {
    std::vector<Nat> g;
    for (unsigned i = k; i < 16; ++i) g.push_back(Nat{1} << i);
    const double cap = std::ldexp(1.0, -static_cast<int>(k));
    for (Index n : fs(GenSet(g), 65536)) {
      ++checked;
      if (!(x.at(n) <= cap)) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked) + " values, " + std::to_string(bad) + " above 2^-k"};
}

Outcome nu2_negativity() {
  bool ok = true;
  std::uint64_t brute_pairs = 0;
  for (unsigned m = 0; m <= 10; ++m) {
    auto in_sm = [m](Index s) { return s != 0 && nu2(s) == m; };
    if (positivity_search(PartitionRegularMap::fs(), in_sm, 2, 2049, 4096)) ok = false;
    // exhaustive: no a < b ≤ 2048 with a, b, a+b all in S_m
    for (Nat a = 1; a <= 2048; ++a) {
      if (!in_sm(a)) continue;
      for (Nat b = a + 1; b <= 2048; ++b) {
        ++brute_pairs;
        if (in_sm(b) && in_sm(a + b)) ok = false;
      }
    }
  }
  return {ok, "m = 0..10 not found; exhaustive scan of " + std::to_string(brute_pairs) + " pairs agrees"};
}

Outcome sparse_certification() {
  const VerySparseSet d = generate_very_sparse(10, kDefaultGrowthFactor, all_threads());
  const CertificationReport r = certify_very_sparse(d.elements(), all_threads());
  return {r.pass, "D = " + d.elements().to_string() + ", " + std::to_string(r.pairs_checked) + " overlap pairs, " +
                      std::to_string(r.subsets_checked) + " subsets"};
}

Outcome a_set_invariants() {
  const auto seqs = seqs_up_to(2, 3);  // parents s; children s⌢n reach length 3
  std::uint64_t checks = 0, bad = 0;
  auto battery = [&](const std::function<bool(const TreeSeq&)>& in) {
    for (const auto& s : seqs) {
      const bool in_s = in(s);
      int hits = 0;
      for (Nat n = 0; n < 3; ++n) {
        const bool in_t = in(s.extended(n));
        checks += 2;
        if (in_t && !in_s) ++bad;
        hits += in_t;
      }
      if (hits > 1) ++bad;
    }
  };
  for (Nat j = 1; j < 300; ++j)
    for (Nat i = 0; i < j; ++i) battery([&](const TreeSeq& s) { return ASetRamsey{s}.contains(pair_index(i, j)); });

  const HindmanTree tree(generate_very_sparse(10, kDefaultGrowthFactor, all_threads()));
  const Nat bound = tree.d().certified_bound();
  for (Nat a = 0; a < bound; ++a) {
    if (!tree.d().in_fs(a)) {
      // outside FS(D) nothing may lie in A_∅, hence in no A_s
      ++checks;
      if (ASetHindman{&tree, TreeSeq{}}.contains(a)) ++bad;
      continue;
    }
    battery([&](const TreeSeq& s) { return ASetHindman{&tree, s}.contains(a); });
  }
  return {bad == 0, std::to_string(checks) + " checks (Ramsey bound 300, Hindman bound " + std::to_string(bound) +
                        "), " + std::to_string(bad) + " violations"};
}

// Exact distance to the Cantor set up to 3^-20.
double cantor_distance(double p) { return level_distance(SouslinScheme::cantor_middle_thirds(), p, 20, 2); }

Outcome round_trip(RealizationKind kind) {
  const auto scheme = SouslinScheme::cantor_middle_thirds();
  const ExecPolicy pol = all_threads();
  if (!validate(scheme, 6, 3).pass) return {false, "scheme validation failed"};

  std::optional<VerySparseSet> d;
  if (kind == RealizationKind::Hindman) d = generate_very_sparse(10, kDefaultGrowthFactor, pol);
  const RealizedSequence y = build_realized_sequence(kind, scheme, kDefaultResolutionDepth,
                                                     kind == RealizationKind::Ramsey ? 300 : 0, d, pol);
  const auto ladder = cantor_eps_ladder(5);

  // (a) five sampled 0/1 branches of length 6
  std::mt19937_64 rng(kind == RealizationKind::Ramsey ? 42 : 43);
  bool ok = true;
  std::size_t rungs = 0, vacuous = 0;
  for (int b = 0; b < 5; ++b) {
    TreeSeq branch;
    for (int i = 0; i < 6; ++i) branch = branch.extended(rng() & 1U);
    const Claim1Result r = claim1_witness(y, branch, ladder);
    ok = ok && r.witness.verified && !r.witness.tails.empty() &&
         r.witness.tails.size() + r.vacuous_eps.size() == ladder.size();
    rungs += r.witness.tails.size();
    vacuous += r.vacuous_eps.size();
    for (const auto& t : r.witness.tails)
      for (Index s : apply(y.rho(), r.witness.f.without(t.k), y.bound()))
        ok = ok && std::fabs(y.window.at(s) - r.witness.eta) < t.eps;
  }
  if (!ok) return {false, "claim1 re-verification failed"};

  // (b) 101-point grid
  const double step = 0.01;
  const double tol = ladder.back() + step;
  std::vector<char> accepted(101, 0), good(101, 1);
  parallel_chunks(101, pol, 101, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t g = b; g < e; ++g) {
      const double eta = static_cast<double>(g) * step;
      const Claim3Result r = claim3_refute(y, eta, ladder);
      if (!r.accepted()) continue;
      accepted[g] = 1;
      good[g] = r.consistent && cantor_distance(eta) <= tol;
    }
  });
  std::size_t n_acc = 0;
  std::string list;
  for (std::size_t g = 0; g < 101; ++g) {
    ok = ok && good[g];
    if (accepted[g]) {
      ++n_acc;
      list += (list.empty() ? "" : ",") + std::to_string(g);
    }
  }
  std::string detail = "claim1: " + std::to_string(rungs) + " rungs verified, " + std::to_string(vacuous) +
                       " beyond window; claim3 accepted " + std::to_string(n_acc) + "/101 (η·100 = " + list + ")";

  if (kind == RealizationKind::Hindman) {
    const RealizedSequence ys =
        build_realized_sequence(kind, SouslinScheme::singleton(0.5), kDefaultResolutionDepth, 0, d, pol);
    double dev = 0;
    for (double v : ys.window.values()) dev = std::max(dev, std::fabs(v - 0.5));
    ok = ok && dev <= std::ldexp(1.0, -12);
    std::ostringstream s;
    s << "; singleton deviation " << dev;
    detail += s.str();
  }
  return {ok && n_acc > 0, detail};
}

// Random windows carrying a planted I_ρ-convergent set ρ(G).
Outcome witness_chain() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> ladder;
  for (int r = 1; r <= 6; ++r) ladder.push_back(std::ldexp(1.0, -r));
  const std::size_t L = ladder.size();

  int fails = 0, rungs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const bool use_pairs = trial % 2 == 1;
    const auto rho = use_pairs ? PartitionRegularMap::pairs() : PartitionRegularMap::fs();
    const Nat bound = use_pairs ? 40 : 2048;
    const double eta = 0.2 + 0.6 * u01(rng);

    std::vector<Nat> g;
    if (use_pairs) {
      std::set<Nat> v;
      while (v.size() < 4) v.insert(rng() % bound);
      g.assign(v.begin(), v.end());
    } else {
      Nat sum = 0;
      for (int i = 0; i < 4; ++i) {
        g.push_back(2 * sum + 1 + rng() % 8);
        sum += g.back();
      }
    }
    const IndexSet planted = apply(rho, GenSet(g), bound);

    auto far = [&] { return eta + (rng() & 1U ? 1 : -1) * (0.5 + 0.5 * u01(rng)); };
    auto near = [&](Index s) {
      const double eps = ladder[std::min<Nat>(convergence_key(rho.target_domain(), s), L - 1)];
      return eta + (2 * u01(rng) - 1) * eps / 2;
    };
    const SequenceWindow x = SequenceWindow::from_function(rho.target_domain(), bound, [&](Index s) {
      if (planted.contains(s)) return near(s);
      return rng() % 10 == 0 ? near(s) : far();  // decoys
    });

    const auto found = find_ideal_limit_witness(rho, x, eta, ladder, IdealSearch{use_pairs ? 4u : 3u, use_pairs ? 40u : 256u});
    if (!found.found()) {
      ++fails;
      continue;
    }
    IdealLimitWitness iw = *found.witness;
    bool ok = verify_ideal_limit_witness(rho, x, iw);
    try {
      LimitWitness w = convert_ideal_to_rho_witness(rho, x, iw);
      ok = ok && verify_limit_witness(rho, x, w) && !w.tails.empty();
      for (const auto& t : w.tails)
        for (Index s : apply(rho, w.f.without(t.k), bound)) ok = ok && std::fabs(x.at(s) - w.eta) < t.eps;
      for (std::size_t r = 0; r < w.tails.size(); ++r) {
        ClusterWitness c = cluster_from_rung(w, r, bound);
        ok = ok && verify_cluster_witness(rho, x, c);
        for (Index s : apply(rho, c.f, bound)) ok = ok && std::fabs(x.at(s) - c.eta) < c.eps;
        ++rungs;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++fails;
  }
  return {fails == 0, "50 windows, " + std::to_string(rungs) + " cluster rungs, " + std::to_string(fails) + " failures"};
}

Outcome clique_oracle() {
  std::mt19937_64 rng(77);
  int agree = 0, with_clique = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::array<std::array<bool, 24>, 24> adj{};
    std::vector<Index> edges;
    for (Nat j = 1; j < 24; ++j)
      for (Nat i = 0; i < j; ++i)
        if (rng() & 1U) {
          adj[i][j] = adj[j][i] = true;
          edges.push_back(pair_index(i, j));
        }
    std::optional<GenSet> expect;
    for (Nat a = 0; a < 24 && !expect; ++a)
      for (Nat b = a + 1; b < 24 && !expect; ++b)
        if (adj[a][b])
          for (Nat c = b + 1; c < 24 && !expect; ++c)
            if (adj[a][c] && adj[b][c])
              for (Nat e = c + 1; e < 24 && !expect; ++e)
                if (adj[a][e] && adj[b][e] && adj[c][e]) expect = GenSet{a, b, c, e};
    std::sort(edges.begin(), edges.end());
    const auto got = positivity_search(PartitionRegularMap::pairs(), IndexSet(IndexDomain::Pair, edges), 4, 24, 24);
    with_clique += expect.has_value();
    if (got.has_value() == expect.has_value() && (!got || got->f == *expect)) ++agree;
  }
  return {agree == 20, std::to_string(agree) + "/20 agree (" + std::to_string(with_clique) + " with a 4-clique)"};
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  return {pclose(p), out};
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  std::vector<std::string> outs;
  for (int threads : {1, 1, 8, 8}) {
    const auto [rc, out] =
        capture("'" + cli + "' --threads " + std::to_string(threads) + " verify --suite thm42 --depth 4 --stable");
    if (rc != 0) return {false, "CLI exited with status " + std::to_string(rc)};
    outs.push_back(out);
  }
  const bool same = outs[0] == outs[1] && outs[2] == outs[3];
  const bool across = outs[0] == outs[2];
  return {same && across, std::to_string(outs[0].size()) + " bytes; repeat-identical " + (same ? "yes" : "no") +
                              ", identical across 1/8 threads " + (across ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  run(1, "FS identity", 1, fs_identity);
  run(2, "nu2 digit rules", 5, nu2_digits);
  run(3, "nu2 FS-limit tails", 5, nu2_tails);
  run(4, "nu2 negativity at scale", 60, nu2_negativity);
  run(5, "very sparse certification", 60, sparse_certification);
  run(6, "A-set invariants", 60, a_set_invariants);
  run(7, "pairs realization round trip", 120, [] { return round_trip(RealizationKind::Ramsey); });
  run(8, "finite-sums realization round trip", 120, [] { return round_trip(RealizationKind::Hindman); });
  run(9, "witness chain on planted windows", 0, witness_chain);
  run(10, "clique search oracle agreement", 30, clique_oracle);
  run(11, "determinism of verify", 0, [&] { return determinism(cli); });
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
