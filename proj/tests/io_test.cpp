#include <gtest/gtest.h>

#include "generators.hpp"

namespace cik {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_model(text, "m.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(ModelJson, LoadsFixture) {
  auto doc = load_model(std::filesystem::path(CIK_TEST_DATA_DIR) / "chain_n1.json");
  EXPECT_EQ(doc.frame.world_count(), 3u);
  EXPECT_EQ(doc.frame.agent(0).name, "a");
  EXPECT_EQ(doc.frame.agent(0).tolerance, 1u);
  EXPECT_EQ(doc.frame.agent(0).basis.size(), 3u);
  EXPECT_EQ(doc.valuation.at("p"), doc.frame.worlds().parse_set("x,z"));
}

TEST(ModelJson, ValuationIsOptional) {
  auto doc = parse_model(R"({"worlds": ["u"], "agents": [{"name": "a", "tolerance": 0, "basis": [["u"]]}]})");
  EXPECT_TRUE(doc.valuation.empty());
}

TEST(ModelJson, UnknownWorldsAreListedTogether) {
  const std::string msg = error_of(R"({"worlds": ["x", "y"],
    "agents": [{"name": "a", "tolerance": 0, "basis": [["x", "y"], ["q"]]}],
    "valuation": {"p": ["r"]}})");
  EXPECT_NE(msg.find("m.json"), std::string::npos) << msg;
  EXPECT_NE(msg.find("q"), std::string::npos) << msg;
  EXPECT_NE(msg.find("r"), std::string::npos) << msg;
  EXPECT_NE(msg.find("agents[0].basis[1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("valuation.p"), std::string::npos) << msg;
}

TEST(ModelJson, SchemaProblems) {
  for (const char* text : {
           "{",
           "[]",
           R"({"agents": []})",
           R"({"worlds": ["x"], "agents": []})",
           R"({"worlds": ["x"], "agents": [{"name": "a", "basis": [["x"]]}]})",
           R"({"worlds": ["x"], "agents": [{"name": "a", "tolerance": -1, "basis": [["x"]]}]})",
           R"({"worlds": ["x", "x"], "agents": [{"name": "a", "tolerance": 0, "basis": [["x"]]}]})",
           R"({"worlds": ["x"], "agents": [{"name": "a", "tolerance": 0, "basis": [["x"], ["x"]]}]})",
           R"({"worlds": ["x", "y"], "agents": [{"name": "a", "tolerance": 0, "basis": [["x"]]}]})",
           R"({"worlds": ["x"], "agents": [{"name": "a", "tolerance": 0, "basis": [["x"]]}], "valuation": {"C": ["x"]}})",
       }) {
    EXPECT_FALSE(error_of(text).empty()) << text;
  }
  EXPECT_NE(error_of("{").find("at byte"), std::string::npos);
  const std::string msg = error_of(R"({"worlds": ["x", "y", "z"],
    "agents": [{"name": "a", "tolerance": 0, "basis": [["x", "y"], ["y", "z"], ["x", "z"]]}]})");
  EXPECT_NE(msg.find("directed"), std::string::npos) << msg;
  EXPECT_THROW(load_model("/nonexistent/file.json"), InputError);
}

TEST(ModelJson, RoundTrip) {
  testing::Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    Frame f = testing::random_frame(rng);
    Valuation v{{"p", testing::random_set(rng, f.worlds())}, {"q", testing::random_set(rng, f.worlds())}};
    const std::string text = model_to_json(f, v);
    auto doc = parse_model(text);
    ASSERT_EQ(model_to_json(doc.frame, doc.valuation), text);
    ASSERT_EQ(doc.frame.agent_count(), f.agent_count());
    for (std::size_t i = 0; i < f.agent_count(); ++i) {
      EXPECT_EQ(doc.frame.agent(i).tolerance, f.agent(i).tolerance);
      EXPECT_EQ(doc.frame.agent(i).basis.size(), f.agent(i).basis.size());
    }
  }
}

}  // namespace
}  // namespace cik
