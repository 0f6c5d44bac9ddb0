#include <doctest.h>

#include <json.hpp>

#include "sandlab/trace_io.hpp"
#include "support.hpp"

using namespace sandlab;
using sandlab::test::C;

TEST_CASE("trace document from an orbit") {
  const auto doc = make_trace_document(orbit(C("8,1,5"), RuleSpec::gk()));
  CHECK(doc.kind == "gk");
  CHECK(doc.neighborhood == std::vector<Cell>{-1, 1});
  CHECK(doc.distribution == std::vector<Count>{1, 1});
  CHECK(doc.theta == 2);
  REQUIRE(doc.steps.size() == 7);
  CHECK(doc.steps[1].values == std::vector<Count>{7, 2, 4, 1});
  CHECK(doc.steps[1].total == 14);
  CHECK(doc.equilibrium);
  CHECK(doc.transient_time == 6u);
  CHECK_FALSE(doc.step_cap_reached);
}

TEST_CASE("json schema and round trip") {
  const auto doc = make_trace_document(orbit(C("6"), RuleSpec::fp()));
  const std::string text = trace_to_json(doc);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["rule"]["kind"] == "fp");
  CHECK(j["rule"]["theta"] == 2);
  CHECK(j["steps"].size() == 9);
  CHECK(j["steps"][8]["offset"] == -3);
  CHECK(j["steps"][8]["values"] == nlohmann::json({1, 1, 1, 0, 1, 1, 1}));
  CHECK(j["transient_time"] == 8);
  CHECK(j["equilibrium"] == true);
  CHECK(j["step_cap_reached"] == false);
  CHECK(trace_from_json(text) == doc);

  const auto capped = make_trace_document(orbit(C("6"), RuleSpec::fp(), 2));
  const auto jc = nlohmann::json::parse(trace_to_json(capped));
  CHECK(jc["transient_time"].is_null());
  CHECK(trace_from_json(trace_to_json(capped, -1)) == capped);
}

TEST_CASE("malformed json") {
  CHECK_THROWS_AS(trace_from_json("{"), Error);
  CHECK_THROWS_AS(trace_from_json(R"({"rule":{}})"), Error);
}

TEST_CASE("table rows") {
  const auto table = trace_to_table(make_trace_document(orbit(C("6"), RuleSpec::fp())));
  CHECK(table.find("t=0  0,0,0,0|6,0,0,0,0  N=6\n") == 0);
  CHECK(table.find("t=8  0,1,1,1|0,1,1,1,0  N=6\n") != std::string::npos);

  const auto h = trace_to_table(make_trace_document(orbit(test::H("-6|6"), RuleSpec::height_diff())));
  CHECK(h.find("t=1  0,-5|4,1,0,0  sum=0") != std::string::npos);

  const auto z = trace_to_table(make_trace_document(orbit(Configuration{}, RuleSpec::gk())));
  CHECK(z == "t=0  0|0,0  N=0\n");
}

TEST_CASE("digraph DOT") {
  const auto d = explore_digraph(C("2"), RulesetPolicy::only(RuleMask::vertical()));
  const std::string dot = digraph_to_dot(d);
  CHECK(dot.rfind("digraph sandlab {", 0) == 0);
  CHECK(dot.find("\"2\" -> \"1,1\" [label=\"VRd@0\"];") != std::string::npos);
  CHECK(dot.find("\"1|1\" [shape=doublecircle];") != std::string::npos);
  CHECK(dot.back() == '\n');
}

TEST_CASE("digraph JSON") {
  const auto d = explore_digraph(C("5,4,2,1"), RulesetPolicy::only({MoveRule::kVRd}));
  const auto j = nlohmann::json::parse(digraph_to_json(d));
  CHECK(j["nodes"].size() == 10);
  CHECK(j["edges"].size() == 12);
  CHECK(j["equilibria"].size() == 1);
  CHECK(j["rules"] == "vr_d");
  CHECK(j["root"] == "5,4,2,1");
  CHECK(j["edges"][0]["rule"] == "VRd");
}
