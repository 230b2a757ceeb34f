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

// Graphs attached to quantum spheres, projective spaces and lens spaces.
// Vertices are labelled "1".."N" in order; an edge from i to j is named by
// its range followed by its source ("ji"), with a comma between the two
// labels once either has more than one digit.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "pyth/errors.hpp"
#include "pyth/graph.hpp"

namespace pyth {

namespace detail {

inline std::string pair_id(std::size_t range, std::size_t source) {
  std::string r = std::to_string(range);
  std::string s = std::to_string(source);
  if (r.size() == 1 && s.size() == 1) return r + s;
  return r + "," + s;
}

inline std::vector<std::string> numbered_vertices(std::size_t count) {
  std::vector<std::string> v;
  v.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) v.push_back(std::to_string(i));
  return v;
}

}  // namespace detail

/// Vertices 1..n, one edge ji: i -> j for every 1 <= i <= j <= n.
inline Graph sphere_odd_graph(std::size_t n) {
  if (n == 0) throw GraphError("sphere_odd_graph needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 1; i <= j; ++i)
      edges.push_back(
          Edge{detail::pair_id(j, i), std::to_string(i), std::to_string(j)});
  return Graph(detail::numbered_vertices(n), std::move(edges));
}

/// Vertices 1..n+2: a loop at each i <= n, an edge i -> j for i < j <= n,
/// and edges n+1 -> i, n+2 -> i for every i <= n.
inline Graph sphere_even_graph(std::size_t n) {
  if (n == 0) throw GraphError("sphere_even_graph needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 1; i <= j; ++i)
      edges.push_back(
          Edge{detail::pair_id(j, i), std::to_string(i), std::to_string(j)});
    for (std::size_t extra : {n + 1, n + 2})
      edges.push_back(Edge{detail::pair_id(j, extra), std::to_string(extra),
                           std::to_string(j)});
  }
  return Graph(detail::numbered_vertices(n + 2), std::move(edges));
}

/// Edges are the length-two paths of the odd sphere graph.
inline Graph projective_graph(std::size_t n) {
  return power_graph(sphere_odd_graph(n), 2);
}

struct LensParams {
  std::size_t n = 1;
  long p = 2;
  std::vector<long> weights;  // m_1..m_n
};

/// How the "distinct edges have distinct (range vertex, level)" condition on
/// admissible paths is read.
enum class LensAdmissibility {
  // No vertex of the skew product is visited twice, the start included.
  no_revisit,
  // Only the ranges of the traversed edges are required to be distinct.
  distinct_ranges,
};

inline void check_lens_params(const LensParams& params) {
  if (params.n == 0) throw GraphError("lens graph needs n >= 1");
  if (params.p < 2) throw GraphError("lens graph needs p >= 2");
  if (params.weights.size() != params.n)
    throw GraphError("lens graph needs exactly n weights");
  for (std::size_t i = 0; i < params.n; ++i) {
    if (params.weights[i] <= 0) throw GraphError("lens weights must be positive");
    if (std::gcd(params.weights[i], params.p) != 1)
      throw CoprimalityError(i, params.weights[i], params.p);
  }
}

/// Contraction of the skew product of the odd sphere graph along admissible
/// paths. Each admissible path from (i,0) becomes one edge i -> j whose id
/// lists the skew-product edges right to left and whose provenance lists them
/// in traversal order. A path is admissible when either it is a single edge
/// (necessarily at level m_i), or it ends with an edge at level 0, every edge
/// strictly between the first and the last sits at a nonzero level, and the
/// distinctness condition selected by `rule` holds.
inline Graph lens_graph_coprime(
    const LensParams& params,
    LensAdmissibility rule = LensAdmissibility::no_revisit) {
  check_lens_params(params);
  const Graph base = sphere_odd_graph(params.n);
  const long p = params.p;
  const Graph skew = skew_product(base, p, params.weights);
  // skew_product lays out vertex (v, c) at v*p + c and edge (e, c) at e*p + c.
  auto level_of_edge = [&](EdgeIndex f) { return static_cast<long>(f % p); };
  auto base_vertex = [&](VertexIndex x) { return x / static_cast<VertexIndex>(p); };

  struct Found {
    VertexIndex from, to;
    std::vector<EdgeIndex> traversal;
  };
  std::vector<Found> found;
  std::vector<bool> visited(skew.vertex_count(), false);
  std::vector<EdgeIndex> trail;

  std::function<void(VertexIndex, VertexIndex)> extend = [&](VertexIndex from,
                                                             VertexIndex at) {
    for (EdgeIndex f : skew.outgoing(at)) {
      VertexIndex next = skew.range(f);
      if (visited[next]) continue;
      trail.push_back(f);
      if (level_of_edge(f) == 0) {
        found.push_back({from, base_vertex(next), trail});
      } else {
        visited[next] = true;
        extend(from, next);
        visited[next] = false;
      }
      trail.pop_back();
    }
  };

  for (VertexIndex i = 0; i < params.n; ++i) {
    const VertexIndex start = i * static_cast<VertexIndex>(p);
    for (EdgeIndex first : skew.outgoing(start)) {
      VertexIndex after = skew.range(first);
      trail.assign(1, first);
      found.push_back({i, base_vertex(after), trail});
      if (rule == LensAdmissibility::no_revisit) visited[start] = true;
      visited[after] = true;
      extend(i, after);
      visited[after] = false;
      visited[start] = false;
    }
  }
  trail.clear();

  std::sort(found.begin(), found.end(), [&](const Found& a, const Found& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return std::lexicographical_compare(
        a.traversal.begin(), a.traversal.end(), b.traversal.begin(),
        b.traversal.end(), [&](EdgeIndex x, EdgeIndex y) {
          return skew.edge(x).id < skew.edge(y).id;
        });
  });

  std::vector<Edge> edges;
  edges.reserve(found.size());
  for (const Found& f : found) {
    Path path = Path::from_edges(skew, f.traversal);
    edges.push_back(Edge{display(skew, path, "."), base.vertex(f.from),
                         base.vertex(f.to), edge_ids(skew, path)});
  }
  return Graph(base.vertices(), std::move(edges));
}

enum class QuantumFamily { sphere_odd, sphere_even, projective, lens };

struct QuantumGraphCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct QuantumGraphReport {
  QuantumFamily family;
  std::vector<QuantumGraphCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const QuantumGraphCheck& c) { return c.passed; });
  }
};

/// Structural checks for a graph of the given family. Vertex positions stand
/// for 1..N. Even-sphere graphs reserve the last two positions for the
/// loopless sources.
inline QuantumGraphReport validate_quantum_graph(const Graph& g,
                                                 QuantumFamily family) {
  QuantumGraphReport report{family, {}};
  const auto loops = loop_structure(g);
  const auto mult = multiplicity_matrix(g);
  const std::size_t total = g.vertex_count();
  const bool even = family == QuantumFamily::sphere_even;
  if (even && total < 3) {
    report.checks.push_back({"shape", false, "even-sphere graph needs n+2 >= 3 vertices"});
    return report;
  }
  const std::size_t looped = even ? total - 2 : total;

  {
    QuantumGraphCheck c{"one loop per vertex", true, ""};
    for (VertexIndex v = 0; v < total; ++v) {
      std::size_t want = v < looped ? 1 : 0;
      if (loops.loops_per_vertex[v] != want) {
        c.passed = false;
        c.detail += "vertex " + g.vertex(v) + " has " +
                    std::to_string(loops.loops_per_vertex[v]) + " loops; ";
      }
    }
    report.checks.push_back(std::move(c));
  }
  {
    QuantumGraphCheck c{"loops-removed acyclic", loops.loops_removed_acyclic, ""};
    for (VertexIndex v : loops.cycle) c.detail += g.vertex(v) + " ";
    report.checks.push_back(std::move(c));
  }
  {
    QuantumGraphCheck c{"edge i->j iff i<=j", true, ""};
    for (VertexIndex i = 0; i < looped; ++i) {
      for (VertexIndex j = 0; j < looped; ++j) {
        bool present = mult[i][j] > 0;
        if (present != (i <= j)) {
          c.passed = false;
          c.detail += g.vertex(i) + "->" + g.vertex(j) +
                      (present ? " present; " : " missing; ");
        }
      }
    }
    report.checks.push_back(std::move(c));
  }
  if (even) {
    QuantumGraphCheck c{"sources feed every looped vertex once", true, ""};
    for (VertexIndex s = looped; s < total; ++s) {
      if (!g.incoming(s).empty()) {
        c.passed = false;
        c.detail += "vertex " + g.vertex(s) + " receives edges; ";
      }
      for (VertexIndex j = 0; j < total; ++j) {
        std::size_t want = j < looped ? 1 : 0;
        if (mult[s][j] != want) {
          c.passed = false;
          c.detail += g.vertex(s) + "->" + g.vertex(j) + " count " +
                      std::to_string(mult[s][j]) + "; ";
        }
      }
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

inline std::string to_string(QuantumFamily f) {
  switch (f) {
    case QuantumFamily::sphere_odd: return "sphere-odd";
    case QuantumFamily::sphere_even: return "sphere-even";
    case QuantumFamily::projective: return "projective";
    case QuantumFamily::lens: return "lens";
  }
  return "unknown";
}

}  // namespace pyth
