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

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "pyth/quantum_graphs.hpp"

namespace pyth {
namespace {

std::vector<std::string> ids(const Graph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(e.id);
  return out;
}

TEST(SphereOdd, SmallCases) {
  Graph l1 = sphere_odd_graph(1);
  EXPECT_EQ(l1.vertex_count(), 1u);
  EXPECT_EQ(ids(l1), (std::vector<std::string>{"11"}));

  Graph l5 = sphere_odd_graph(3);
  EXPECT_EQ(ids(l5), (std::vector<std::string>{"11", "21", "22", "31", "32", "33"}));
  EXPECT_EQ(l5.edge(l5.edge_index("32")).source, "2");
  EXPECT_EQ(l5.edge(l5.edge_index("32")).range, "3");

  EXPECT_EQ(sphere_odd_graph(4).edge_count(), oracle::odd_sphere_pairs(4).size());
  EXPECT_EQ(sphere_odd_graph(4).edge_count(), 10u);
  EXPECT_THROW(sphere_odd_graph(0), GraphError);
}

TEST(SphereOdd, TwoDigitLabelsStayUnique) {
  Graph g = sphere_odd_graph(11);
  EXPECT_EQ(g.edge_count(), 66u);
  EXPECT_TRUE(g.find_edge("11,1"));
  EXPECT_TRUE(g.find_edge("1,1") == std::nullopt);
  EXPECT_TRUE(g.find_edge("11"));
}

TEST(SphereOdd, IsomorphicToOppositeByReversal) {
  for (std::size_t n = 1; n <= 5; ++n) {
    Graph g = sphere_odd_graph(n);
    auto iso = is_isomorphic(g, opposite(g));
    ASSERT_TRUE(iso) << n;
    for (VertexIndex i = 0; i < n; ++i) EXPECT_EQ((*iso)[i], n - 1 - i);
  }
}

TEST(SphereEven, Shapes) {
  Graph g3 = sphere_even_graph(3);
  EXPECT_EQ(g3.vertex_count(), 5u);
  EXPECT_EQ(g3.edge_count(), 12u);

  Graph g1 = sphere_even_graph(1);
  EXPECT_EQ(g1.vertex_count(), 3u);
  EXPECT_EQ(ids(g1), (std::vector<std::string>{"11", "12", "13"}));
  EXPECT_EQ(g1.edge(g1.edge_index("12")).source, "2");
  EXPECT_EQ(g1.edge(g1.edge_index("12")).range, "1");

  for (std::size_t n = 1; n <= 6; ++n) {
    Graph g = sphere_even_graph(n);
    EXPECT_EQ(g.edge_count(), n + n * (n - 1) / 2 + 2 * n);
    EXPECT_TRUE(g.incoming(n).empty());
    EXPECT_TRUE(g.incoming(n + 1).empty());
  }
}

TEST(Projective, Shapes) {
  Graph p1 = projective_graph(1);
  EXPECT_EQ(p1.vertex_count(), 1u);
  EXPECT_EQ(p1.edge_count(), 1u);

  Graph p3 = projective_graph(3);
  EXPECT_EQ(p3.vertex_count(), 3u);
  std::size_t composable = 0;
  for (auto [j, i] : oracle::odd_sphere_pairs(3))
    for (auto [l, k] : oracle::odd_sphere_pairs(3)) composable += (k == j);
  EXPECT_EQ(p3.edge_count(), composable);
  EXPECT_EQ(p3.edge_count(), 10u);

  for (std::size_t n = 1; n <= 6; ++n) {
    auto loops = loop_structure(projective_graph(n));
    EXPECT_EQ(loops.loops_per_vertex, std::vector<std::size_t>(n, 1));
    EXPECT_TRUE(loops.loops_removed_acyclic);
  }
}

TEST(Lens, SmallExample) {
  Graph g = lens_graph_coprime({2, 3, {1, 1}});
  auto loops = loop_structure(g);
  EXPECT_EQ(loops.loops_per_vertex, (std::vector<std::size_t>{1, 1}));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!g.is_loop(e)) continue;
    const auto& prov = g.edge(e).provenance;
    ASSERT_EQ(prov.size(), 1u);
    EXPECT_EQ(prov.front(), g.edge(e).source + g.edge(e).source + "@1");
  }
  auto mult = multiplicity_matrix(g);
  EXPECT_GE(mult[0][1], 1u);
  EXPECT_EQ(mult[1][0], 0u);
}

TEST(Lens, CoprimalityError) {
  try {
    lens_graph_coprime({2, 4, {2, 1}});
    FAIL() << "expected a coprimality error";
  } catch (const CoprimalityError& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  EXPECT_THROW(lens_graph_coprime({2, 3, {1}}), GraphError);
}

TEST(Lens, LiteralReadingAdmitsSecondLoop) {
  Graph literal = lens_graph_coprime({2, 3, {1, 1}}, LensAdmissibility::distinct_ranges);
  auto loops = loop_structure(literal);
  EXPECT_GT(loops.loops_per_vertex[0], 1u);
  EXPECT_TRUE(literal.find_edge("11@0.11@2.11@1"));
  EXPECT_FALSE(validate_quantum_graph(literal, QuantumFamily::lens).passed());
}

TEST(Lens, MatchesRawEnumeration) {
  struct Case {
    int n, p;
    std::vector<int> m;
  };
  for (const Case& c : {Case{2, 3, {1, 1}}, Case{2, 5, {1, 2}}, Case{3, 4, {1, 3, 1}},
                        Case{3, 5, {2, 3, 4}}, Case{2, 7, {3, 5}}}) {
    LensParams params{static_cast<std::size_t>(c.n), c.p, {}};
    for (int w : c.m) params.weights.push_back(w);
    Graph g = lens_graph_coprime(params);
    auto expected = oracle::lens_admissible_paths(c.n, c.p, c.m);
    std::multiset<std::tuple<std::string, std::string, std::vector<std::string>>> a, b;
    for (const auto& e : g.edges()) a.insert({e.source, e.range, e.provenance});
    for (const auto& e : expected)
      b.insert({std::to_string(e.from), std::to_string(e.to), e.traversal});
    EXPECT_EQ(a, b) << "n=" << c.n << " p=" << c.p;
  }
}

TEST(Lens, ValidatorPassesAcrossParameters) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (long p = 2; p <= 7; ++p) {
      std::vector<long> w;
      for (std::size_t i = 0; i < n; ++i) {
        long m = static_cast<long>(1 + (3 * i + 1) % static_cast<std::size_t>(p));
        while (std::gcd(m, p) != 1) ++m;
        w.push_back(m);
      }
      Graph g = lens_graph_coprime({n, p, w});
      auto report = validate_quantum_graph(g, QuantumFamily::lens);
      EXPECT_TRUE(report.passed()) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Lens, EqualWeightsDeterministic) {
  Graph a = lens_graph_coprime({3, 5, {1, 1, 1}});
  Graph b = lens_graph_coprime({3, 5, {1, 1, 1}});
  EXPECT_EQ(a, b);
  // Any unit weight vector with equal entries gives the same edge counts.
  Graph c = lens_graph_coprime({3, 5, {2, 2, 2}});
  EXPECT_EQ(multiplicity_matrix(a), multiplicity_matrix(c));
}

TEST(Lens, PathLengthBounded) {
  LensParams params{3, 4, {1, 3, 1}};
  Graph g = lens_graph_coprime(params);
  for (const auto& e : g.edges())
    EXPECT_LE(e.provenance.size(), params.n * static_cast<std::size_t>(params.p));
}

TEST(Validator, FamilyGraphsPass) {
  EXPECT_TRUE(validate_quantum_graph(sphere_odd_graph(4), QuantumFamily::sphere_odd).passed());
  EXPECT_TRUE(validate_quantum_graph(projective_graph(4), QuantumFamily::projective).passed());
  EXPECT_TRUE(validate_quantum_graph(sphere_even_graph(4), QuantumFamily::sphere_even).passed());
  EXPECT_TRUE(validate_quantum_graph(lens_graph_coprime({2, 3, {1, 1}}), QuantumFamily::lens).passed());
}

TEST(Validator, DoubleLoopFails) {
  Graph g = build_graph({"1", "2"}, {{"a", "1", "1"}, {"b", "1", "1"}, {"c", "1", "2"}, {"d", "2", "2"}});
  auto report = validate_quantum_graph(g, QuantumFamily::sphere_odd);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.checks[0].name, "one loop per vertex");
  EXPECT_FALSE(report.checks[0].passed);
  EXPECT_TRUE(report.checks[1].passed);
}

TEST(Validator, EvenSphereAsOddFails) {
  EXPECT_FALSE(validate_quantum_graph(sphere_even_graph(2), QuantumFamily::sphere_odd).passed());
  EXPECT_FALSE(validate_quantum_graph(opposite(sphere_even_graph(2)), QuantumFamily::sphere_even).passed());
}

}  // namespace
}  // namespace pyth
