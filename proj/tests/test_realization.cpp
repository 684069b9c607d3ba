#include <gtest/gtest.h>

#include <cmath>

#include "ideal_lab/errors.hpp"
#include "ideal_lab/realization.hpp"
#include "ideal_lab/suites.hpp"

using namespace ideal_lab;

namespace {

const TreeBijection kF{};

bool prefix(const std::vector<Nat>& a, const std::vector<Nat>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// oracle for Ramsey y straight from the case split
double ramsey_value(const SouslinScheme& sc, Nat i, Nat j, std::size_t depth) {
  const TreeSeq fi = kF.seq_at(i), fj = kF.seq_at(j);
  const TreeSeq t = prefix(fi.entries, fj.entries) ? fj : TreeSeq{};
  return sc.assign(t.padded_zeros(depth)).center;
}

class Realized : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cantor_ramsey = new RealizedSequence(
        build_realized_sequence(RealizationKind::Ramsey, SouslinScheme::cantor_middle_thirds(), 12, 300));
    cantor_hindman = new RealizedSequence(build_realized_sequence(
        RealizationKind::Hindman, SouslinScheme::cantor_middle_thirds(), 12, 0, generate_very_sparse(10)));
  }
  static void TearDownTestSuite() {
    delete cantor_ramsey;
    delete cantor_hindman;
  }
  static RealizedSequence* cantor_ramsey;
  static RealizedSequence* cantor_hindman;
};

RealizedSequence* Realized::cantor_ramsey = nullptr;
RealizedSequence* Realized::cantor_hindman = nullptr;

}  // namespace

TEST(ASets, RamseyExamples) {
  EXPECT_TRUE((ASetRamsey{TreeSeq{}}.contains(pair_index(1, 4))));
  EXPECT_FALSE((ASetRamsey{TreeSeq{}}.contains(pair_index(1, 2))));
  EXPECT_TRUE((ASetRamsey{TreeSeq{0}}.contains(pair_index(1, 4))));
  EXPECT_FALSE((ASetRamsey{TreeSeq{1}}.contains(pair_index(1, 4))));
}

TEST(ASets, HindmanInsideFiniteSums) {
  const HindmanTree tree(generate_very_sparse(6));
  const ASetHindman root{&tree, TreeSeq{}};
  for (Nat e : tree.d().elements()) EXPECT_TRUE(root.contains(e));
  for (Nat a = 0; a < tree.d().certified_bound(); ++a)
    if (root.contains(a)) EXPECT_TRUE(tree.d().in_fs(a));
  EXPECT_THROW(root.contains(tree.d().certified_bound()), BoundError);
  // 1 + 5: f = ⟨⟩ ⊆ ⟨0⟩, a chain
  EXPECT_TRUE(root.contains(6));
  // 5 + 25: ⟨0⟩ ⊄ ⟨1⟩
  EXPECT_FALSE(root.contains(30));
}

TEST(Build, SingletonIsConstant) {
  for (auto kind : {RealizationKind::Ramsey, RealizationKind::Hindman}) {
    const auto y = build_realized_sequence(kind, SouslinScheme::singleton(0.5), 12, kind == RealizationKind::Ramsey ? 200 : 4096,
                                           generate_very_sparse(7));
    for (double v : y.window.values()) EXPECT_NEAR(v, 0.5, std::ldexp(1.0, -12));
  }
  const auto h = build_realized_sequence(RealizationKind::Hindman, SouslinScheme::singleton(0.5), 12, 4096,
                                         generate_very_sparse(7));
  EXPECT_EQ(h.window.at(2), h.base_point);
}

TEST(Build, HindmanNeedsCertifiedCover) {
  const auto d = generate_very_sparse(5);
  EXPECT_THROW(build_realized_sequence(RealizationKind::Hindman, SouslinScheme::cantor_middle_thirds(), 12,
                                       d.certified_bound() + 1, d),
               DomainError);
  EXPECT_THROW(build_realized_sequence(RealizationKind::Hindman, SouslinScheme::cantor_middle_thirds(), 12, 10),
               DomainError);
}

TEST_F(Realized, RamseyValuesFollowCaseSplit) {
  const auto& y = *cantor_ramsey;
  for (std::size_t slot = 0; slot < y.window.size(); slot += 7) {
    const Index s = y.window.index_at(slot);
    EXPECT_EQ(y.window.at(s), ramsey_value(y.scheme, pair_lo(s), pair_hi(s), 12));
  }
  EXPECT_LE(y.max_error, std::pow(3.0, -12) / 2 + 1e-18);
}

TEST_F(Realized, ThreadCountDoesNotChangeWindow) {
  const auto y8 = build_realized_sequence(RealizationKind::Ramsey, SouslinScheme::cantor_middle_thirds(), 12, 300, {},
                                          ExecPolicy{8});
  EXPECT_EQ(y8.window.values(), cantor_ramsey->window.values());
  EXPECT_EQ(y8.in_a_empty, cantor_ramsey->in_a_empty);
}

TEST_F(Realized, Claim1OnCantorBranches) {
  const auto ladder = cantor_eps_ladder();
  for (const auto* y : {cantor_ramsey, cantor_hindman}) {
    const Claim1Result r = claim1_witness(*y, TreeSeq{0, 0, 0, 0, 0, 0}, ladder);
    EXPECT_TRUE(r.witness.verified);
    EXPECT_NEAR(r.witness.eta, 0.0, y->max_error);
    EXPECT_EQ(r.witness.tails.size() + r.vacuous_eps.size(), ladder.size());
    // independent re-check of each tail
    for (const auto& t : r.witness.tails)
      for (Index s : apply(y->rho(), r.witness.f.without(t.k), y->bound()))
        EXPECT_LT(std::fabs(y->window.at(s) - r.witness.eta), t.eps);
  }
}

TEST(Claim1, RationalsBranch) {
  const auto y = build_realized_sequence(RealizationKind::Ramsey, SouslinScheme::rationals_in_unit_interval(), 12, 300);
  const Claim1Result r = claim1_witness(y, TreeSeq{3, 0, 0}, default_eps_ladder());
  EXPECT_TRUE(r.witness.verified);
  EXPECT_EQ(r.witness.eta, 1.0 / 3);
}

TEST_F(Realized, DescendRecipe) {
  const auto& y = *cantor_ramsey;
  // preimages of the prefixes of 0^∞
  const GenSet f{0, 1, 4, 21, 156};
  const auto c = descend(y, TreeSeq{}, f);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->n, 0u);
  EXPECT_EQ(c->k, GenSet{0});
  EXPECT_TRUE(c->verified);
  for (Index s : pairs(f.without(c->k))) EXPECT_TRUE((ASetRamsey{TreeSeq{0}}.contains(s)));

  EXPECT_THROW(descend(y, TreeSeq{}, GenSet{4}), BoundError);
  EXPECT_THROW(descend(y, TreeSeq{1}, f), DomainError);
}

TEST_F(Realized, DescendHindman) {
  const auto& y = *cantor_hindman;
  const auto& d = y.tree->d().elements();
  // f(d_0)=⟨⟩, f(d_1)=⟨0⟩, f(d_4)=⟨0,0⟩
  const GenSet f{d[0], d[1], d[4]};
  const auto c = descend(y, TreeSeq{}, f);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->n, 0u);
  EXPECT_EQ(c->k, GenSet{d[0]});
  EXPECT_TRUE(c->verified);
}

TEST_F(Realized, Claim3OnCantor) {
  const auto ladder = cantor_eps_ladder();
  const auto mid = claim3_refute(*cantor_ramsey, 0.5, ladder);
  EXPECT_FALSE(mid.accepted());
  EXPECT_TRUE(mid.bounds.exhausted);

  const auto zero = claim3_refute(*cantor_ramsey, 0.0, ladder);
  ASSERT_TRUE(zero.accepted());
  EXPECT_TRUE(zero.consistent);

  const auto h = claim3_refute(*cantor_hindman, 0.67, ladder);
  ASSERT_TRUE(h.accepted());
  EXPECT_TRUE(h.consistent);
  EXPECT_LE(level_distance(cantor_hindman->scheme, 0.67, 5, 2), ladder.back() + 0.01);
}

TEST_F(Realized, Claim3RecoversPlantedBranch) {
  const auto ladder = cantor_eps_ladder();
  const Claim1Result c1 = claim1_witness(*cantor_ramsey, TreeSeq{1, 0, 1, 1}, ladder);
  const Claim3Result r = claim3_explain(*cantor_ramsey, c1.witness);
  ASSERT_EQ(r.status, Claim3Result::Status::Branch);
  EXPECT_TRUE(r.prefix.is_prefix_of(c1.branch));
  EXPECT_GE(r.prefix.length(), 1u);
  EXPECT_TRUE(r.consistent);
}
