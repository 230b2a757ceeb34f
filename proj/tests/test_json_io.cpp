// Copyright 2026 The pyth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <complex>
#include <numbers>

#include "pyth/json_io.hpp"
#include "pyth/quantum_graphs.hpp"

namespace pyth {
namespace {

Graph l5() {
  return build_graph({"1", "2", "3"}, {{"11", "1", "1"}, {"21", "1", "2"}, {"22", "2", "2"},
                                       {"31", "1", "3"}, {"33", "3", "3"}});
}

TEST(GraphJson, RoundTrip) {
  for (const Graph& g : {l5(), sphere_even_graph(3), lens_graph_coprime({2, 3, {1, 1}})}) {
    Json j = graph_to_json(g);
    EXPECT_EQ(graph_from_json(Json::parse(j.dump())), g);
    EXPECT_EQ(graph_to_json(graph_from_json(j)).dump(), j.dump());
  }
}

TEST(GraphJson, LensProvenanceSurvives) {
  auto g = lens_graph_coprime({2, 3, {1, 1}});
  auto back = graph_from_json(graph_to_json(g));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) EXPECT_EQ(back.edge(e).provenance, g.edge(e).provenance);
}

TEST(GraphJson, SchemaErrorsCarryPointers) {
  try {
    graph_from_json(Json::parse(R"({"vertices":["1"],"edges":[{"id":"a","source":"1"}]})"));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/edges/0/range");
  }
  EXPECT_THROW(graph_from_json(Json::parse(R"({"vertices":"1","edges":[]})")), SchemaError);
  EXPECT_THROW(graph_from_json(Json::parse(R"({"vertices":["1"],"edges":[{"id":"a","source":"1","range":"9"}]})")),
               Error);
}

TEST(ModuleJson, RoundTripIsEntrywiseEqual) {
  auto g = share(l5());
  auto m = random_module(g, {2, 1, 3}, 7);
  auto back = module_from_json(Json::parse(module_to_json(m).dump()));
  EXPECT_EQ(back.dims(), m.dims());
  for (EdgeIndex e = 0; e < g->edge_count(); ++e) EXPECT_EQ(back.op(e), m.op(e));
}

TEST(ModuleJson, ShapeErrorNamesTheEdge) {
  auto g = l5();
  Json j{{"graph", graph_to_json(g)},
         {"dims", {{"1", 1}, {"2", 1}}},
         {"ops", {{"11", matrix_to_json(ComplexMatrix::Ones(1, 1))},
                  {"21", matrix_to_json(ComplexMatrix::Zero(2, 2))},
                  {"22", matrix_to_json(ComplexMatrix::Ones(1, 1))}}}};
  try {
    module_from_json(j);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/ops/21");
    EXPECT_NE(std::string(e.what()).find("'21'"), std::string::npos);
  }
}

TEST(ModuleJson, MissingAndUnknownEntries) {
  auto g = l5();
  Json j{{"graph", graph_to_json(g)}, {"dims", {{"2", 1}}}, {"ops", {{"22", Json::array({Json::array({1.0})})}}}};
  auto m = module_from_json(j);
  EXPECT_EQ(m.dims(), (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(m.op(2)(0, 0), Complex(1.0));

  Json unknown = j;
  unknown["ops"]["99"] = Json::array();
  EXPECT_THROW(module_from_json(unknown), SchemaError);
  Json missing = j;
  missing["dims"]["1"] = 1;
  EXPECT_THROW(module_from_json(missing), SchemaError);
}

TEST(SpectrumJson, RoundTrip) {
  for (const Graph& g : {sphere_odd_graph(3), sphere_even_graph(2)}) {
    auto s = classify(g);
    EXPECT_EQ(spectrum_from_json(spectrum_to_json(s)), s);
  }
  auto j = spectrum_to_json(classify(sphere_odd_graph(2)));
  EXPECT_EQ(j.dump(), R"({"circles":["1","2"],"class":"loop-graph","points":[]})");
}

TEST(LiftJson, RoundTripAndBasisCheck) {
  auto g = share(sphere_odd_graph(2));
  TruncatedLift t(random_module(g, {1, 2}, 3), 2);
  Json j = lift_to_json(t);
  auto back = lift_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.level(), 2u);
  for (std::size_t k = 0; k <= back.top_level(); ++k) EXPECT_EQ(back.dimension(k), t.dimension(k));
  EXPECT_EQ(j["levels"].size(), 4u);
  EXPECT_EQ(j["levels"][3].count("embedding"), 0u);

  Json broken = j;
  broken["levels"][1]["basis"][0]["fiber"] = 5;
  EXPECT_THROW(lift_from_json(broken), SchemaError);
}

TEST(ComplexText, Parse) {
  EXPECT_EQ(parse_complex("0.6+0.8i"), Complex(0.6, 0.8));
  EXPECT_EQ(parse_complex("-1"), Complex(-1.0, 0.0));
  EXPECT_EQ(parse_complex("i"), Complex(0.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(parse_complex("2.5i"), Complex(0.0, 2.5));
  EXPECT_EQ(parse_complex("1e-3-2i"), Complex(1e-3, -2.0));
  EXPECT_EQ(parse_complex("1 - i"), Complex(1.0, -1.0));
  EXPECT_NEAR(std::abs(parse_complex("exp(1/8)") - std::polar(1.0, std::numbers::pi / 4)), 0.0, 1e-15);
  for (const char* bad : {"", "abc", "1+", "exp(1)", "exp(1/0)", "1+2j"}) EXPECT_THROW(parse_complex(bad), Error) << bad;
  const Complex z(0.1, -1.0 / 3.0);
  EXPECT_EQ(parse_complex(format_complex(z)), z);
}

}  // namespace
}  // namespace pyth
