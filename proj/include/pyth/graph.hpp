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

// Finite directed multigraphs and their paths.
//
// Paths are stored in traversal order (the edge leaving the source comes
// first) and displayed right to left, so the path that first follows `21`
// and then `22` is written `22·21`. Composition follows the same
// convention: compose(λ, μ) traverses μ first and requires s(λ) = r(μ).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pyth/errors.hpp"

namespace pyth {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  std::string source;
  std::string range;
  // Underlying edge ids (traversal order) when this edge stands for a path
  // of another graph. Empty for plain edges.
  std::vector<std::string> provenance{};

  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty()) throw GraphError("graph has no vertices");
    for (VertexIndex v = 0; v < vertices_.size(); ++v) {
      if (vertices_[v].empty()) throw GraphError("empty vertex label");
      if (!vertex_lookup_.emplace(vertices_[v], v).second)
        throw GraphError("duplicate vertex '" + vertices_[v] + "'");
    }
    incoming_.resize(vertices_.size());
    outgoing_.resize(vertices_.size());
    source_.reserve(edges_.size());
    range_.reserve(edges_.size());
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      const Edge& edge = edges_[e];
      if (edge.id.empty()) throw GraphError("empty edge id");
      if (!edge_lookup_.emplace(edge.id, e).second)
        throw GraphError("duplicate edge '" + edge.id + "'");
      auto s = find_vertex(edge.source);
      auto r = find_vertex(edge.range);
      if (!s || !r) {
        throw GraphError("edge '" + edge.id + "' has dangling endpoint '" +
                         (s ? edge.range : edge.source) + "'");
      }
      source_.push_back(*s);
      range_.push_back(*r);
      outgoing_[*s].push_back(e);
      incoming_[*r].push_back(e);
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::string& vertex(VertexIndex v) const { return vertices_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  VertexIndex source(EdgeIndex e) const { return source_.at(e); }
  VertexIndex range(EdgeIndex e) const { return range_.at(e); }

  std::optional<VertexIndex> find_vertex(std::string_view label) const {
    auto it = vertex_lookup_.find(std::string(label));
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<EdgeIndex> find_edge(std::string_view id) const {
    auto it = edge_lookup_.find(std::string(id));
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
  }

  VertexIndex vertex_index(std::string_view label) const {
    if (auto v = find_vertex(label)) return *v;
    throw GraphError("unknown vertex '" + std::string(label) + "'");
  }

  EdgeIndex edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw GraphError("unknown edge '" + std::string(id) + "'");
  }

  /// Edges with range `v`, in declaration order.
  const std::vector<EdgeIndex>& incoming(VertexIndex v) const {
    return incoming_.at(v);
  }
  /// Edges with source `v`, in declaration order.
  const std::vector<EdgeIndex>& outgoing(VertexIndex v) const {
    return outgoing_.at(v);
  }

  bool is_loop(EdgeIndex e) const { return source(e) == range(e); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<VertexIndex> source_;
  std::vector<VertexIndex> range_;
  std::vector<std::vector<EdgeIndex>> incoming_;
  std::vector<std::vector<EdgeIndex>> outgoing_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

inline Graph build_graph(std::vector<std::string> vertices,
                         std::vector<Edge> edges) {
  return Graph(std::move(vertices), std::move(edges));
}

class Path {
 public:
  static Path vertex(const Graph& g, VertexIndex v) {
    if (v >= g.vertex_count()) throw GraphError("vertex index out of range");
    return Path(v, v, {});
  }

  static Path edge(const Graph& g, EdgeIndex e) {
    return Path(g.source(e), g.range(e), {e});
  }

  /// Builds a path from edges listed in traversal order.
  static Path from_edges(const Graph& g, std::vector<EdgeIndex> traversal) {
    if (traversal.empty())
      throw CompositionError("use Path::vertex for length-zero paths");
    for (std::size_t k = 0; k + 1 < traversal.size(); ++k) {
      if (g.range(traversal[k]) != g.source(traversal[k + 1])) {
        throw CompositionError("edges '" + g.edge(traversal[k]).id + "' and '" +
                               g.edge(traversal[k + 1]).id +
                               "' do not compose");
      }
    }
    VertexIndex s = g.source(traversal.front());
    VertexIndex r = g.range(traversal.back());
    return Path(s, r, std::move(traversal));
  }

  static Path from_ids(const Graph& g, const std::vector<std::string>& ids) {
    std::vector<EdgeIndex> traversal;
    traversal.reserve(ids.size());
    for (const auto& id : ids) traversal.push_back(g.edge_index(id));
    return from_edges(g, std::move(traversal));
  }

  VertexIndex source() const noexcept { return source_; }
  VertexIndex range() const noexcept { return range_; }
  std::size_t length() const noexcept { return edges_.size(); }
  /// Edges in traversal order.
  const std::vector<EdgeIndex>& edges() const noexcept { return edges_; }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  Path(VertexIndex s, VertexIndex r, std::vector<EdgeIndex> edges)
      : source_(s), range_(r), edges_(std::move(edges)) {}

  friend Path compose_paths(const Path&, const Path&);

  VertexIndex source_;
  VertexIndex range_;
  std::vector<EdgeIndex> edges_;
};

/// The path λμ for λ = left, μ = right: traverses μ, then λ.
inline Path compose_paths(const Path& left, const Path& right) {
  if (left.source() != right.range())
    throw CompositionError("source of left path differs from range of right");
  std::vector<EdgeIndex> edges = right.edges();
  edges.insert(edges.end(), left.edges().begin(), left.edges().end());
  return Path(right.source(), left.range(), std::move(edges));
}

/// Edge ids in traversal order.
inline std::vector<std::string> edge_ids(const Graph& g, const Path& p) {
  std::vector<std::string> ids;
  ids.reserve(p.length());
  for (EdgeIndex e : p.edges()) ids.push_back(g.edge(e).id);
  return ids;
}

/// Right-to-left rendering, e.g. "22·21"; a vertex path renders as its label.
inline std::string display(const Graph& g, const Path& p,
                           std::string_view separator = "·") {
  if (p.length() == 0) return g.vertex(p.source());
  std::string out;
  for (auto it = p.edges().rbegin(); it != p.edges().rend(); ++it) {
    if (!out.empty()) out += separator;
    out += g.edge(*it).id;
  }
  return out;
}

/// Lexicographic order on traversal edge-id sequences; vertex paths order by
/// vertex position and precede every nonempty path.
inline bool canonical_less(const Graph& g, const Path& a, const Path& b) {
  if (a.length() == 0 || b.length() == 0) {
    if (a.length() != 0) return false;
    if (b.length() != 0) return true;
    return a.source() < b.source();
  }
  return std::lexicographical_compare(
      a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
      [&](EdgeIndex x, EdgeIndex y) { return g.edge(x).id < g.edge(y).id; });
}

inline void sort_canonical(const Graph& g, std::vector<Path>& paths) {
  std::sort(paths.begin(), paths.end(), [&](const Path& a, const Path& b) {
    return canonical_less(g, a, b);
  });
}

enum class PathEnd { source, range };

/// All paths of exactly `length` edges whose source (or range) is `v`.
inline std::vector<Path> enumerate_paths(const Graph& g, std::size_t length,
                                         PathEnd end, VertexIndex v) {
  if (v >= g.vertex_count()) throw GraphError("vertex index out of range");
  std::vector<Path> out;
  if (length == 0) {
    out.push_back(Path::vertex(g, v));
    return out;
  }
  // Sequences are grown away from the fixed end and reversed at the end when
  // growing from the range side.
  std::vector<EdgeIndex> stack;
  std::function<void(VertexIndex)> grow = [&](VertexIndex at) {
    if (stack.size() == length) {
      std::vector<EdgeIndex> traversal = stack;
      if (end == PathEnd::range) std::reverse(traversal.begin(), traversal.end());
      out.push_back(Path::from_edges(g, std::move(traversal)));
      return;
    }
    const auto& next = end == PathEnd::source ? g.outgoing(at) : g.incoming(at);
    for (EdgeIndex e : next) {
      stack.push_back(e);
      grow(end == PathEnd::source ? g.range(e) : g.source(e));
      stack.pop_back();
    }
  };
  grow(v);
  sort_canonical(g, out);
  return out;
}

/// All paths of length exactly `length`.
inline std::vector<Path> enumerate_paths(const Graph& g, std::size_t length) {
  std::vector<Path> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    auto part = enumerate_paths(g, length, PathEnd::source, v);
    out.insert(out.end(), part.begin(), part.end());
  }
  sort_canonical(g, out);
  return out;
}

/// Paths with range `v` that have length `m`, together with the shorter ones
/// that cannot be extended because their source receives no edges.
inline std::vector<Path> maximal_paths(const Graph& g, VertexIndex v,
                                       std::size_t m) {
  if (v >= g.vertex_count()) throw GraphError("vertex index out of range");
  std::vector<Path> out;
  std::vector<EdgeIndex> reversed;  // range end first
  std::function<void(VertexIndex)> grow = [&](VertexIndex at) {
    if (reversed.size() == m || g.incoming(at).empty()) {
      if (reversed.empty()) {
        out.push_back(Path::vertex(g, at));
      } else {
        out.push_back(Path::from_edges(
            g, std::vector<EdgeIndex>(reversed.rbegin(), reversed.rend())));
      }
      return;
    }
    for (EdgeIndex e : g.incoming(at)) {
      reversed.push_back(e);
      grow(g.source(e));
      reversed.pop_back();
    }
  };
  grow(v);
  sort_canonical(g, out);
  return out;
}

struct LoopReport {
  std::vector<std::size_t> loops_per_vertex;
  bool loops_removed_acyclic = true;
  // A cycle (vertex sequence along edge direction) witnessing failure.
  std::vector<VertexIndex> cycle;
};

inline LoopReport loop_structure(const Graph& g) {
  LoopReport report;
  report.loops_per_vertex.assign(g.vertex_count(), 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) ++report.loops_per_vertex[g.source(e)];

  enum class Mark { unseen, active, done };
  std::vector<Mark> mark(g.vertex_count(), Mark::unseen);
  std::vector<VertexIndex> trail;
  std::function<bool(VertexIndex)> dfs = [&](VertexIndex v) {
    mark[v] = Mark::active;
    trail.push_back(v);
    for (EdgeIndex e : g.outgoing(v)) {
      if (g.is_loop(e)) continue;
      VertexIndex w = g.range(e);
      if (mark[w] == Mark::active) {
        auto start = std::find(trail.begin(), trail.end(), w);
        report.cycle.assign(start, trail.end());
        report.cycle.push_back(w);
        return true;
      }
      if (mark[w] == Mark::unseen && dfs(w)) return true;
    }
    trail.pop_back();
    mark[v] = Mark::done;
    return false;
  };
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (mark[v] == Mark::unseen && dfs(v)) {
      report.loops_removed_acyclic = false;
      break;
    }
  }
  return report;
}

/// Same vertices and edge ids, every edge reversed.
inline Graph opposite(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) std::swap(e.source, e.range);
  return Graph(g.vertices(), std::move(edges));
}

/// One edge per path of length `k`, with id the path's ids joined by "."
/// in right-to-left order.
inline Graph power_graph(const Graph& g, std::size_t k) {
  if (k == 0) throw GraphError("power_graph needs k >= 1");
  std::vector<Edge> edges;
  for (const Path& p : enumerate_paths(g, k)) {
    edges.push_back(Edge{display(g, p, "."), g.vertex(p.source()),
                         g.vertex(p.range()),
                         k == 1 ? std::vector<std::string>{} : edge_ids(g, p)});
  }
  return Graph(g.vertices(), std::move(edges));
}

inline long mod_floor(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

inline std::string level_label(const std::string& base, long level) {
  return base + "@" + std::to_string(level);
}

/// Skew product over Z_p: vertices v@c, edges e@c running from
/// s(e)@(c - w(s(e))) to r(e)@c. `weights` is indexed by vertex position.
inline Graph skew_product(const Graph& g, long p, std::span<const long> weights) {
  if (p < 2) throw GraphError("skew_product needs p >= 2");
  if (weights.size() != g.vertex_count())
    throw GraphError("skew_product needs one weight per vertex");
  std::vector<std::string> vertices;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    for (long c = 0; c < p; ++c) vertices.push_back(level_label(g.vertex(v), c));
  std::vector<Edge> edges;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    VertexIndex s = g.source(e);
    for (long c = 0; c < p; ++c) {
      edges.push_back(Edge{level_label(g.edge(e).id, c),
                           level_label(g.vertex(s), mod_floor(c - weights[s], p)),
                           level_label(g.vertex(g.range(e)), c)});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

/// Number of edges from `s` to `r`, as a dense matrix indexed [s][r].
inline std::vector<std::vector<std::size_t>> multiplicity_matrix(const Graph& g) {
  std::vector<std::vector<std::size_t>> m(
      g.vertex_count(), std::vector<std::size_t>(g.vertex_count(), 0));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) ++m[g.source(e)][g.range(e)];
  return m;
}

inline constexpr std::size_t kIsomorphismVertexBound = 9;

/// Brute-force search for a vertex bijection (position in `a` to position in
/// `b`) preserving edge multiplicities. Permutations are tried in
/// lexicographic order, so the first match is reported.
inline std::optional<std::vector<VertexIndex>> is_isomorphic(const Graph& a,
                                                             const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return std::nullopt;
  if (a.vertex_count() > kIsomorphismVertexBound)
    throw GraphError("isomorphism search is limited to " +
                     std::to_string(kIsomorphismVertexBound) + " vertices");
  const auto ma = multiplicity_matrix(a);
  const auto mb = multiplicity_matrix(b);
  std::vector<VertexIndex> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (VertexIndex i = 0; ok && i < perm.size(); ++i)
      for (VertexIndex j = 0; ok && j < perm.size(); ++j)
        ok = ma[i][j] == mb[perm[i]][perm[j]];
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Graphviz rendering with vertex labels and edge-id labels.
inline std::string to_dot(const Graph& g, std::string_view name = "L") {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (const auto& v : g.vertices()) os << "  " << quote(v) << ";\n";
  for (const auto& e : g.edges()) {
    os << "  " << quote(e.source) << " -> " << quote(e.range)
       << " [label=" << quote(e.id) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pyth
