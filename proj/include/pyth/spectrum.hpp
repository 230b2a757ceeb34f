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

#pragma once

// Spectrum of the Cuntz-Krieger algebra for graphs whose only cycles are
// single loops.
//
// Supported class: every vertex carries at most one loop, loopless vertices
// receive no edges, and removing the loops leaves an acyclic graph. There the
// irreducible representations are, up to equivalence, exactly the lifts of
// the one-dimensional modules: a circle M_{v,z} (|z| = 1) at each looped
// vertex v and an isolated point M_v at each loopless source v.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pyth/errors.hpp"
#include "pyth/graph.hpp"
#include "pyth/module.hpp"

namespace pyth {

enum class GraphClass {
  // Every vertex has exactly one loop; no other cycles.
  loop_graph,
  // As above, except that some loopless vertices receive no edges.
  loop_graph_with_sources,
  unsupported,
};

inline std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::loop_graph: return "loop-graph";
    case GraphClass::loop_graph_with_sources: return "loop-graph-with-sources";
    case GraphClass::unsupported: return "unsupported";
  }
  return "unsupported";
}

struct HypothesisReport {
  GraphClass verdict = GraphClass::unsupported;
  std::vector<std::string> diagnostics;
  // Set for graphs with sources that are not shaped like the even-sphere
  // graph (two sources, each feeding every looped vertex once, looped
  // vertices totally ordered by single edges).
  bool by_analogy = false;
};

namespace detail {

inline bool even_sphere_shaped(const Graph& g, const std::vector<std::size_t>& loops) {
  std::vector<VertexIndex> looped, sources;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    (loops[v] == 1 ? looped : sources).push_back(v);
  if (sources.size() != 2) return false;
  const auto mult = multiplicity_matrix(g);
  for (VertexIndex s : sources)
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
      if (mult[s][v] != (loops[v] == 1 ? 1u : 0u)) return false;
  for (std::size_t a = 0; a < looped.size(); ++a)
    for (std::size_t b = a + 1; b < looped.size(); ++b)
      if (mult[looped[a]][looped[b]] + mult[looped[b]][looped[a]] != 1) return false;
  return true;
}

}  // namespace detail

inline HypothesisReport check_hypotheses(const Graph& g) {
  HypothesisReport report;
  const auto loops = loop_structure(g);
  bool supported = true;
  bool sources = false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t count = loops.loops_per_vertex[v];
    if (count > 1) {
      supported = false;
      report.diagnostics.push_back("vertex " + g.vertex(v) + " carries " +
                                   std::to_string(count) + " loops");
    } else if (count == 0) {
      if (g.incoming(v).empty()) {
        sources = true;
      } else {
        supported = false;
        report.diagnostics.push_back("loopless vertex " + g.vertex(v) +
                                     " receives edge " +
                                     g.edge(g.incoming(v).front()).id);
      }
    }
  }
  if (!loops.loops_removed_acyclic) {
    supported = false;
    std::string cycle;
    for (VertexIndex v : loops.cycle) cycle += (cycle.empty() ? "" : " -> ") + g.vertex(v);
    report.diagnostics.push_back("cycle other than a loop: " + cycle);
  }
  if (!supported) {
    report.verdict = GraphClass::unsupported;
  } else if (sources) {
    report.verdict = GraphClass::loop_graph_with_sources;
    report.by_analogy = !detail::even_sphere_shaped(g, loops.loops_per_vertex);
  } else {
    report.verdict = GraphClass::loop_graph;
  }
  return report;
}

struct SpectrumDescription {
  GraphClass graph_class = GraphClass::loop_graph;
  // One circle {M_{v,z} : |z| = 1} per looped vertex.
  std::vector<std::string> circles;
  // One isolated representation M_v per loopless source.
  std::vector<std::string> points;
  bool by_analogy = false;

  friend bool operator==(const SpectrumDescription&, const SpectrumDescription&) = default;
};

inline SpectrumDescription classify(const Graph& g) {
  const auto report = check_hypotheses(g);
  if (report.verdict == GraphClass::unsupported) {
    std::string why;
    for (const auto& d : report.diagnostics) why += (why.empty() ? "" : "; ") + d;
    throw UnsupportedGraph("graph is outside the supported class: " + why);
  }
  SpectrumDescription out;
  out.graph_class = report.verdict;
  out.by_analogy = report.by_analogy;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (unique_loop(g, v))
      out.circles.push_back(g.vertex(v));
    else
      out.points.push_back(g.vertex(v));
  }
  return out;
}

/// A point of the spectrum: a looped vertex with a phase, or a source.
struct SpectrumComponent {
  VertexIndex vertex = 0;
  std::optional<Complex> phase;  // set for circle components
};

inline PythagoreanModule representative_module(const GraphPtr& g,
                                               const SpectrumComponent& c) {
  const auto spectrum = classify(*g);
  if (c.vertex >= g->vertex_count()) throw ModuleError("vertex index out of range");
  const std::string& label = g->vertex(c.vertex);
  auto listed = [&](const std::vector<std::string>& list) {
    return std::find(list.begin(), list.end(), label) != list.end();
  };
  if (c.phase) {
    if (!listed(spectrum.circles))
      throw ModuleError("vertex " + label + " is not a circle of the spectrum");
    return one_dim_module(g, c.vertex, *c.phase);
  }
  if (!listed(spectrum.points))
    throw ModuleError("vertex " + label + " is not an isolated point of the spectrum");
  return isolated_module(g, c.vertex);
}

}  // namespace pyth
