#include "gabriel/cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <sstream>

using gabriel::cli::run;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.ends_with(".json")) a = std::string(GABRIEL_FIXTURE_DIR) + "/" + a;
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Outcome& o) { return json::parse(o.out); }

}  // namespace

TEST(Cli, CompareRoundTripsAtFive) {
  const auto o = invoke({"compare", "z_at_5.json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json r = report(o);
  EXPECT_EQ(r["result"]["modules"]["Z"]["summary"], "β∘θ = id, θ∘β = id at levels 1..4");
  EXPECT_EQ(r["result"]["modules"]["Z^2"]["levels"].size(), 4u);
  EXPECT_EQ(r["verdict"], "ok");
}

TEST(Cli, DepthFlagOverridesDocument) {
  const auto o = invoke({"compare", "z_at_5.json", "--depth", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json r = report(o);
  EXPECT_EQ(r["bounds"]["depth"], 2);
  EXPECT_EQ(r["result"]["modules"]["Z"]["summary"], "β∘θ = id, θ∘β = id at levels 1..2");
}

TEST(Cli, IntersectionFailureExitsOne) {
  const auto o = invoke({"check-axioms", "z_two_three.json"});
  EXPECT_EQ(o.code, 1);
  const json t2 = report(o)["result"]["axioms"]["T2"];
  EXPECT_EQ(t2["status"], "Failed");
  EXPECT_NE(t2["witness"][0].get<std::string>().find("(6)"), std::string::npos);
}

TEST(Cli, CorrigendumRegressionExitsZero) {
  const auto o = invoke({"regress-corrigendum"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(report(o)["result"]["t4_fails"]["status"], "Verified");
}

TEST(Cli, SaturationOfSix) {
  const auto o = invoke({"saturate", "z_saturate_six.json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json r = report(o)["result"];
  EXPECT_EQ(r["ideals"], json({"(6)", "(36)", "(216)", "(1296)"}));
  EXPECT_EQ(r["idempotent"]["status"], "Verified");
}

TEST(Cli, ParseErrorsCarryLocation) {
  const auto bad = invoke({"check-axioms", "bad_element.json"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("/topology/ideals/1/0"), std::string::npos) << bad.err;
  const auto unknown = invoke({"check-axioms", "unknown_field.json"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("/topology/colour"), std::string::npos) << unknown.err;
  EXPECT_EQ(invoke({"check-axioms", "missing.json"}).code, 2);
  EXPECT_EQ(invoke({"no-such-command"}).code, 2);
  EXPECT_EQ(invoke({"compare", "z_at_5.json", "--format", "yaml"}).code, 2);
}

TEST(Cli, ComputationErrorExitsThree) {
  const auto o = invoke({"compare", "torsion.json"});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("TorsionObstruction"), std::string::npos) << o.err;
}

TEST(Cli, ReportsAreDeterministic) {
  for (const char* cmd : {"quotient-ring", "complete", "delta"}) {
    const auto a = invoke({cmd, "z12.json", "--seed", "3"});
    const auto b = invoke({cmd, "z12.json", "--seed", "3"});
    ASSERT_EQ(a.code, 0) << cmd << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

TEST(Cli, TextFormat) {
  const auto o = invoke({"endo-ring", "quadratic.json", "--format", "text"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("bijective:\n    status: Verified"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("verdict: ok"), std::string::npos);
}

TEST(Cli, StronglyFlatExtension) {
  const auto o = invoke({"strongly-flat", "z_at_3_extension.json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json r = report(o)["result"];
  EXPECT_TRUE(r["extension"]["strongly_flat"].get<bool>());
  EXPECT_EQ(r["extension"]["quotients"][3]["quotient"], "Z/81");
  EXPECT_TRUE(r["modules"]["Z"]["strongly_flat"].get<bool>());
}

TEST(Cli, PerpAndUpperTriangular) {
  const auto perp = invoke({"perp", "z_six.json"});
  ASSERT_EQ(perp.code, 0) << perp.err;
  EXPECT_EQ(report(perp)["result"]["modules"]["Z/36"]["member"], true);
  EXPECT_EQ(report(perp)["result"]["modules"]["Z"]["member"], false);
  const auto ut = invoke({"quotient-ring", "ut2.json"});
  ASSERT_EQ(ut.code, 0) << ut.err;
  EXPECT_EQ(report(ut)["result"]["perfect"]["status"], "Verified");
}
