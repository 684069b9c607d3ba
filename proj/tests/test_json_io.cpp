#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "ideal_lab/errors.hpp"
#include "ideal_lab/json_io.hpp"

using namespace ideal_lab;

TEST(Json, WitnessShapes) {
  const PositivityWitness w{GenSet{0, 2, 4}, 8};
  EXPECT_EQ(to_json(w).dump(), R"({"F":[0,2,4],"window":8})");
  const IndexSet p = pairs(GenSet{1, 3});
  EXPECT_EQ(to_json(p).dump(), R"({"domain":"pair","members":[[1,3]]})");

  const SequenceWindow x = nu2_sequence(4096);
  const auto r = find_limit_witness(PartitionRegularMap::fs(), x, 0.0, {0.5, 0.25}, LimitSearch{3});
  ASSERT_TRUE(r.found());
  const Json j = to_json(*r.witness);
  EXPECT_EQ(j["F"], Json::parse("[4,8,16]"));
  EXPECT_EQ(j["tails"][1]["K"], Json::parse("[4]"));
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_TRUE(j["bounds"]["exhausted"].get<bool>());

  LimitWitness back = limit_witness_from_json(j);
  EXPECT_TRUE(verify_limit_witness(PartitionRegularMap::fs(), x, back));
}

TEST(Json, SequenceRoundTrip) {
  for (const auto& x : {nu2_sequence(64), SequenceWindow::from_function(IndexDomain::Pair, 12, [](Index s) {
                          return 1.0 / static_cast<double>(pair_hi(s) + 1);
                        })}) {
    const SequenceWindow y = sequence_from_json(to_json(x));
    EXPECT_EQ(y.domain(), x.domain());
    EXPECT_EQ(y.bound(), x.bound());
    EXPECT_EQ(y.values(), x.values());
  }
}

TEST(Json, RealizedSequenceReadsBack) {
  const auto y = build_realized_sequence(RealizationKind::Hindman, SouslinScheme::cantor_middle_thirds(), 12, 4000,
                                         generate_very_sparse(7));
  const SequenceWindow x = sequence_from_json(to_json(y));
  EXPECT_EQ(x.values(), y.window.values());
  const Json j = to_json(y);
  EXPECT_EQ(j["kind"], "hindman");
  EXPECT_EQ(j["resolution_depth"], 12);
  EXPECT_EQ(j["scheme"]["type"], "cantor");
}

TEST(Json, RejectsMalformedSequences) {
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"domain":"nat","bound":3,"values":[[0,1.0],[1,2.0]]})")),
               DomainError);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"domain":"tree","bound":1,"values":[]})")), DomainError);
  EXPECT_THROW(sequence_from_json(Json::parse(R"({"domain":"pair","bound":3,"values":[[[2,1],0.5]]})")),
               DomainError);
  EXPECT_THROW(gen_set_from_json(Json::parse("[3,1]")), DomainError);
}

TEST(Json, SchemeSpecs) {
  EXPECT_EQ(parse_scheme_spec("singleton:0.5").points(), std::vector<double>{0.5});
  EXPECT_EQ(parse_scheme_spec("finite:0.1,0.9").points(), (std::vector<double>{0.1, 0.9}));
  EXPECT_EQ(parse_scheme_spec("cantor").type(), SchemeType::Cantor);
  EXPECT_EQ(parse_scheme_spec("rationals").type(), SchemeType::Rationals);
  EXPECT_THROW(parse_scheme_spec("singleton:abc"), DomainError);
  EXPECT_THROW(parse_scheme_spec("/nonexistent/scheme.json"), DomainError);

  const auto t = SouslinScheme::table(1, 2, {{TreeSeq{}, 0, 1}, {TreeSeq{0}, 0, 0.25}, {TreeSeq{1}, 0.5, 1}});
  const auto path = std::filesystem::temp_directory_path() / "ideal_lab_scheme_test.json";
  write_json_file(path.string(), to_json(t));
  const SouslinScheme back = parse_scheme_spec(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(back.type(), SchemeType::Table);
  EXPECT_EQ(back.assign(TreeSeq{1, 0}), t.assign(TreeSeq{1, 0}));
}

TEST(Json, CertificationReport) {
  const Json ok = to_json(certify_very_sparse(GenSet{1, 5, 25}));
  EXPECT_TRUE(ok["pass"].get<bool>());
  const Json bad = to_json(certify_very_sparse(GenSet{1, 2}));
  EXPECT_FALSE(bad["pass"].get<bool>());
  EXPECT_EQ(bad["overlap"]["total"], 2);
}
