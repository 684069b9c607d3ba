#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ideal_lab/convergence.hpp"
#include "ideal_lab/errors.hpp"
#include "ideal_lab/partition_regular.hpp"

using namespace ideal_lab;

namespace {

std::set<Nat> subset_sums(const std::vector<Nat>& f) {
  std::set<Nat> out;
  for (std::uint64_t m = 1; m < (1ULL << f.size()); ++m) {
    Nat s = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (m >> i & 1U) s += f[i];
    out.insert(s);
  }
  return out;
}

// oracle: first target-size subset of [lo, hi) in lex order whose image lies in S
template <class Pred>
std::optional<GenSet> brute_positivity(const PartitionRegularMap& rho, Pred in_s, std::size_t t, Nat lo, Nat hi,
                                       Nat window) {
  std::vector<Nat> pick(t);
  for (std::size_t i = 0; i < t; ++i) pick[i] = lo + i;
  if (lo + t > hi) return std::nullopt;
  while (true) {
    bool ok = true;
    if (rho.kind == RhoKind::FS) {
      for (Nat s : subset_sums(pick))
        if (s < window && !in_s(s)) ok = false;
    } else {
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = a + 1; b < t; ++b)
          if (pick[b] < window && !in_s(pair_index(pick[a], pick[b]))) ok = false;
    }
    if (ok) return GenSet(pick);
    std::size_t i = t;
    while (i > 0 && pick[i - 1] == hi - t + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++pick[i - 1];
    for (std::size_t j = i; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

TEST(Apply, CanonicalMaps) {
  EXPECT_EQ(apply(PartitionRegularMap::pairs(), GenSet{0, 1, 2}, 10).members(),
            (std::vector<Index>{pair_index(0, 1), pair_index(0, 2), pair_index(1, 2)}));
  EXPECT_EQ(apply(PartitionRegularMap::fs(), GenSet{1, 2, 4}, 100).members(), (std::vector<Index>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(apply(PartitionRegularMap::fs(), GenSet{1, 5, 25}, 32).members(),
            (std::vector<Index>{1, 5, 6, 25, 26, 30, 31}));
  EXPECT_THROW(apply(PartitionRegularMap::pairs(), GenSet{3}, 10), DomainError);
  EXPECT_EQ(parse_rho("PAIRS"), PartitionRegularMap::pairs());
  EXPECT_THROW(parse_rho("nope"), DomainError);
}

TEST(Apply, RespectsWindows) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Nat> v;
    for (Nat x = 0; x < 30; ++x)
      if (rng() % 4 == 0) v.push_back(x);
    if (v.size() < 2) continue;
    const GenSet f(v);
    const Nat b1 = rng() % 40, b2 = b1 + rng() % 40;
    for (const auto rho : {PartitionRegularMap::fs(), PartitionRegularMap::pairs()}) {
      const IndexSet small = apply(rho, f, b1), big = apply(rho, f, b2);
      std::vector<Index> cut;
      for (Index s : big)
        if (in_window(rho.target_domain(), s, b1)) cut.push_back(s);
      EXPECT_EQ(small.members(), cut);
    }
  }
}

TEST(RhoTailSubset, PowersOfTwoAndReflexivity) {
  std::vector<Nat> p;
  for (unsigned i = 0; i < 16; ++i) p.push_back(Nat{1} << i);
  const GenSet f(p);
  std::vector<Index> b;
  for (Nat n = 1; n < 65536; ++n)
    if (nu2(n) >= 3) b.push_back(n);
  const auto rho = PartitionRegularMap::fs();
  EXPECT_TRUE(rho_tail_subset(rho, f, GenSet{1, 2, 4}, IndexSet(IndexDomain::Nat, b), 65536));
  EXPECT_FALSE(rho_tail_subset(rho, f, GenSet{1, 2}, IndexSet(IndexDomain::Nat, b), 65536));
  EXPECT_TRUE(rho_tail_subset(rho, f, GenSet{}, apply(rho, f, 65536), 65536));
  EXPECT_TRUE(rho_tail_subset(PartitionRegularMap::pairs(), GenSet{0, 1, 2, 3}, GenSet{0}, pairs(GenSet{1, 2, 3}), 10));
}

TEST(RhoTailSubset, MonotoneInKAndB) {
  std::mt19937_64 rng(9);
  const auto rho = PartitionRegularMap::fs();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Nat> v;
    for (Nat x = 1; x < 20; ++x)
      if (rng() % 3 == 0) v.push_back(x);
    if (v.size() < 3) continue;
    const GenSet f(v);
    std::vector<Index> b;
    for (Nat s = 0; s < 200; ++s)
      if (rng() % 4 != 0) b.push_back(s);
    const IndexSet bs(IndexDomain::Nat, b);
    std::vector<Index> bigger(b);
    bigger.push_back(200 + trial);
    const GenSet k = f.prefix(1), k2 = f.prefix(2);
    const bool base = rho_tail_subset(rho, f, k, bs, 200);
    if (base) {
      EXPECT_TRUE(rho_tail_subset(rho, f, k2, bs, 200));
      EXPECT_TRUE(rho_tail_subset(rho, f, k, IndexSet(IndexDomain::Nat, bigger), 200));
    }
  }
}

TEST(Positivity, SpecExamples) {
  const auto pr = PartitionRegularMap::pairs();
  const auto planted = positivity_search(pr, pairs(GenSet{0, 2, 4, 6}), 4, 8, 8);
  ASSERT_TRUE(planted);
  EXPECT_EQ(planted->f, (GenSet{0, 2, 4, 6}));

  std::vector<Index> evens;
  for (Nat n = 0; n < 1000; n += 2) evens.push_back(n);
  const auto ev = positivity_search(PartitionRegularMap::fs(), IndexSet(IndexDomain::Nat, evens), 5, 1000, 1000);
  ASSERT_TRUE(ev);
  EXPECT_EQ(ev->f, (GenSet{2, 4, 6, 8, 10}));
  EXPECT_TRUE(verify_positivity(PartitionRegularMap::fs(), *ev, [](Index s) { return s % 2 == 0; }));

  for (unsigned m = 0; m <= 6; ++m) {
    auto in_sm = [m](Index s) { return s != 0 && nu2(s) == m; };
    EXPECT_FALSE(positivity_search(PartitionRegularMap::fs(), in_sm, 2, 256, 512)) << m;
  }
}

TEST(Positivity, FsAgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(21);
  const auto rho = PartitionRegularMap::fs();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<bool> s(64);
    for (auto&& b : s) b = rng() % 5 != 0;
    auto in_s = [&](Index i) { return i < 64 && s[i]; };
    const std::size_t t = 2 + trial % 3;
    const auto expect = brute_positivity(rho, in_s, t, 1, 17, 64);
    const auto got = positivity_search(rho, in_s, t, 17, 64);
    ASSERT_EQ(got.has_value(), expect.has_value()) << trial;
    if (got) {
      EXPECT_EQ(got->f, *expect);
      EXPECT_TRUE(verify_positivity(rho, *got, in_s));
    }
  }
}

TEST(Positivity, PairsAgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(22);
  const auto rho = PartitionRegularMap::pairs();
  for (int trial = 0; trial < 30; ++trial) {
    std::set<Index> edges;
    for (Nat i = 0; i < 24; ++i)
      for (Nat j = i + 1; j < 24; ++j)
        if (rng() % 3 != 0) edges.insert(pair_index(i, j));
    auto in_s = [&](Index p) { return edges.count(p) == 1; };
    const auto expect = brute_positivity(rho, in_s, 4, 0, 24, 24);
    const auto got = positivity_search(rho, in_s, 4, 24, 24);
    ASSERT_EQ(got.has_value(), expect.has_value());
    if (got) EXPECT_EQ(got->f, *expect);
  }
}

TEST(AxiomR, RamseyThreeThree) {
  const GenSet six{0, 1, 2, 3, 4, 5};
  const auto edges = pairs(six).members();
  for (std::uint32_t m = 0; m < (1U << 15); m += 97) {
    auto color = [&](Index p) {
      return static_cast<int>(m >> (std::lower_bound(edges.begin(), edges.end(), p) - edges.begin()) & 1U);
    };
    const auto r = check_axiom_R(PartitionRegularMap::pairs(), six, color, 3, 6);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->e.size(), 3u);
    for (Index p : pairs(r->e)) EXPECT_EQ(color(p), r->color);
  }
}

TEST(AxiomR, ConstantColoringGivesPrefix) {
  const GenSet f{1, 5, 25, 125, 625};
  const auto r = check_axiom_R(PartitionRegularMap::fs(), f, [](Index) { return 1; }, 3, 1000);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->e, f.prefix(3));
  EXPECT_EQ(r->color, 1);
}

TEST(AxiomR, SupportParityAgreesWithOracle) {
  const GenSet f{1, 5, 25, 125, 625};
  auto parity = [](Index s) {
    int c = 0;
    for (; s; s /= 5) c += static_cast<int>(s % 5);
    return c & 1;
  };
  const auto r = check_axiom_R(PartitionRegularMap::fs(), f, parity, 2, 1000);
  // oracle over every 2-subset of F
  std::optional<GenSet> expect;
  for (std::size_t i = 0; i < f.size() && !expect; ++i)
    for (std::size_t j = i + 1; j < f.size() && !expect; ++j) {
      const int c = parity(f[i]);
      if (parity(f[j]) == c && parity(f[i] + f[j]) == c) expect = GenSet{f[i], f[j]};
    }
  ASSERT_EQ(r.has_value(), expect.has_value());
  if (r) EXPECT_EQ(r->e, *expect);
}

TEST(ThinForS, GreedyRuleAndUniqueSupports) {
  EXPECT_EQ(thin_for_S(PartitionRegularMap::fs(), GenSet{1, 2, 3, 4, 8, 20}), (GenSet{1, 2, 4, 8, 20}));
  EXPECT_EQ(thin_for_S(PartitionRegularMap::fs(), GenSet{1}), (GenSet{1}));
  EXPECT_EQ(thin_for_S(PartitionRegularMap::pairs(), GenSet{3, 4, 9}), (GenSet{3, 4, 9}));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Nat> v;
    for (Nat x = 1; x < 200; ++x)
      if (rng() % 10 == 0) v.push_back(x);
    if (v.empty()) continue;
    const GenSet e = thin_for_S(PartitionRegularMap::fs(), GenSet(v));
    // ∀a ∈ fs(E): a ∉ fs(E∖support(a))
    const std::size_t n = e.size();
    for (std::uint64_t m = 1; m < (1ULL << n); ++m) {
      const GenSet sup = e.select(m);
      const GenSet rest = e.without(sup);
      if (rest.empty()) continue;
      EXPECT_FALSE(fs(rest, sup.sum() + 1).contains(sup.sum()));
    }
  }
}
