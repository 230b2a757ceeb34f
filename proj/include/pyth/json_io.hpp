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

// JSON codecs for graphs, modules, spectra and truncated lifts, plus the
// textual complex-number syntax used on the command line.
//
//   graph:    {"vertices":["1","2"],
//              "edges":[{"id":"21","source":"1","range":"2"}, ...]}
//   module:   {"graph":{...},"dims":{"1":2,...},
//              "ops":{"21":[[[re,im],...],...],...}}      (row-major)
//   spectrum: {"class":"loop-graph","circles":["1"],"points":[]}

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pyth/errors.hpp"
#include "pyth/graph.hpp"
#include "pyth/lift.hpp"
#include "pyth/linalg.hpp"
#include "pyth/module.hpp"
#include "pyth/spectrum.hpp"

namespace pyth {

using Json = nlohmann::json;

namespace detail {

inline std::string escape_pointer(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

inline const Json& field(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at.empty() ? "/" : at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at + "/" + escape_pointer(key), "missing field");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

inline bool is_count(const Json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

inline double number_at(const Json& j, const std::string& at) {
  if (!j.is_number()) throw SchemaError(at, "expected a number");
  return j.get<double>();
}

}  // namespace detail

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    Json item{{"id", e.id}, {"source", e.source}, {"range", e.range}};
    if (!e.provenance.empty()) item["provenance"] = e.provenance;
    edges.push_back(std::move(item));
  }
  return Json{{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j, const std::string& at = "") {
  const Json& vs = detail::field(j, "vertices", at);
  if (!vs.is_array()) throw SchemaError(at + "/vertices", "expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    vertices.push_back(detail::string_at(vs[i], at + "/vertices/" + std::to_string(i)));
  const Json& es = detail::field(j, "edges", at);
  if (!es.is_array()) throw SchemaError(at + "/edges", "expected an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string here = at + "/edges/" + std::to_string(i);
    Edge e{detail::string_at(detail::field(es[i], "id", here), here + "/id"),
           detail::string_at(detail::field(es[i], "source", here), here + "/source"),
           detail::string_at(detail::field(es[i], "range", here), here + "/range")};
    if (auto it = es[i].find("provenance"); it != es[i].end()) {
      if (!it->is_array()) throw SchemaError(here + "/provenance", "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k)
        e.provenance.push_back(
            detail::string_at((*it)[k], here + "/provenance/" + std::to_string(k)));
    }
    edges.push_back(std::move(e));
  }
  try {
    return Graph(std::move(vertices), std::move(edges));
  } catch (const GraphError& err) {
    throw SchemaError(at.empty() ? "/" : at, err.what());
  }
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const Json& j, const std::string& at) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(at, "expected [re, im]");
  return {detail::number_at(j[0], at + "/0"), detail::number_at(j[1], at + "/1")};
}

inline ComplexMatrix matrix_from_json(const Json& j, Eigen::Index rows,
                                      Eigen::Index cols, const std::string& at,
                                      const std::string& what) {
  if (!j.is_array()) throw SchemaError(at, "expected an array of rows");
  auto shape_error = [&](const std::string& got) {
    return SchemaError(at, what + " expects a " + std::to_string(rows) + "x" +
                               std::to_string(cols) + " matrix, got " + got);
  };
  if (static_cast<Eigen::Index>(j.size()) != rows)
    throw shape_error(std::to_string(j.size()) + " rows");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string here = at + "/" + std::to_string(i);
    if (!row.is_array()) throw SchemaError(here, "expected a row array");
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw shape_error(std::to_string(row.size()) + " entries in row " + std::to_string(i));
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], here + "/" + std::to_string(k));
  }
  return m;
}

inline Json module_to_json(const PythagoreanModule& m) {
  const Graph& g = m.graph();
  Json dims = Json::object();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) dims[g.vertex(v)] = m.dim(v);
  Json ops = Json::object();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) ops[g.edge(e).id] = matrix_to_json(m.op(e));
  return Json{{"graph", graph_to_json(g)}, {"dims", std::move(dims)}, {"ops", std::move(ops)}};
}

/// Vertices missing from "dims" have dimension zero; edges missing from "ops"
/// are allowed only when their matrix is empty.
inline PythagoreanModule module_from_json(const Json& j, const std::string& at = "") {
  auto g = share(graph_from_json(detail::field(j, "graph", at), at + "/graph"));
  const Json& dj = detail::field(j, "dims", at);
  if (!dj.is_object()) throw SchemaError(at + "/dims", "expected an object");
  std::vector<std::size_t> dims(g->vertex_count(), 0);
  for (auto it = dj.begin(); it != dj.end(); ++it) {
    const std::string here = at + "/dims/" + detail::escape_pointer(it.key());
    auto v = g->find_vertex(it.key());
    if (!v) throw SchemaError(here, "unknown vertex '" + it.key() + "'");
    if (!detail::is_count(*it)) throw SchemaError(here, "expected a nonnegative integer");
    dims[*v] = it->get<std::size_t>();
  }
  const Json& oj = detail::field(j, "ops", at);
  if (!oj.is_object()) throw SchemaError(at + "/ops", "expected an object");
  for (auto it = oj.begin(); it != oj.end(); ++it) {
    if (!g->find_edge(it.key()))
      throw SchemaError(at + "/ops/" + detail::escape_pointer(it.key()),
                        "unknown edge '" + it.key() + "'");
  }
  std::vector<ComplexMatrix> ops;
  for (EdgeIndex e = 0; e < g->edge_count(); ++e) {
    const std::string& id = g->edge(e).id;
    const auto rows = static_cast<Eigen::Index>(dims[g->source(e)]);
    const auto cols = static_cast<Eigen::Index>(dims[g->range(e)]);
    const std::string here = at + "/ops/" + detail::escape_pointer(id);
    auto it = oj.find(id);
    if (it == oj.end()) {
      if (rows * cols != 0) throw SchemaError(here, "missing matrix for edge '" + id + "'");
      ops.push_back(ComplexMatrix::Zero(rows, cols));
      continue;
    }
    ops.push_back(matrix_from_json(*it, rows, cols, here, "edge '" + id + "'"));
  }
  return PythagoreanModule(std::move(g), std::move(dims), std::move(ops));
}

inline Json spectrum_to_json(const SpectrumDescription& s) {
  Json j{{"class", to_string(s.graph_class)}, {"circles", s.circles}, {"points", s.points}};
  if (s.by_analogy) j["by_analogy"] = true;
  return j;
}

inline SpectrumDescription spectrum_from_json(const Json& j, const std::string& at = "") {
  SpectrumDescription s;
  const std::string cls = detail::string_at(detail::field(j, "class", at), at + "/class");
  if (cls == "loop-graph") s.graph_class = GraphClass::loop_graph;
  else if (cls == "loop-graph-with-sources") s.graph_class = GraphClass::loop_graph_with_sources;
  else throw SchemaError(at + "/class", "unknown class '" + cls + "'");
  for (const char* key : {"circles", "points"}) {
    const Json& list = detail::field(j, key, at);
    if (!list.is_array()) throw SchemaError(at + "/" + key, "expected an array");
    auto& target = std::string(key) == "circles" ? s.circles : s.points;
    for (std::size_t i = 0; i < list.size(); ++i)
      target.push_back(detail::string_at(list[i], at + "/" + key + "/" + std::to_string(i)));
  }
  if (auto it = j.find("by_analogy"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError(at + "/by_analogy", "expected a boolean");
    s.by_analogy = it->get<bool>();
  }
  return s;
}

inline Json basis_to_json(const Graph& g, const LevelBasis& basis) {
  Json entries = Json::array();
  for (const BasisEntry& b : basis.entries()) {
    entries.push_back(Json{{"path", edge_ids(g, b.path)},
                           {"source", g.vertex(b.path.source())},
                           {"range", g.vertex(b.path.range())},
                           {"display", display(g, b.path)},
                           {"fiber", b.fiber}});
  }
  return entries;
}

/// Module, working level, the bases of W_0 .. W_{m+1}, the embeddings
/// between consecutive levels, and the generators leaving W_m.
inline Json lift_to_json(const TruncatedLift& t) {
  const Graph& g = t.graph();
  Json levels = Json::array();
  for (std::size_t k = 0; k <= t.top_level(); ++k) {
    Json level{{"level", k}, {"basis", basis_to_json(g, t.basis(k))}};
    if (k < t.top_level()) level["embedding"] = matrix_to_json(embedding_matrix(t, k));
    levels.push_back(std::move(level));
  }
  const auto gens = generator_matrices(t);
  Json raising = Json::object();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) raising[g.edge(e).id] = matrix_to_json(gens.raising[e]);
  Json projections = Json::object();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::size_t> kept;
    for (Eigen::Index i = 0; i < gens.projections[v].rows(); ++i)
      if (gens.projections[v](i, i) != Complex{0.0, 0.0}) kept.push_back(static_cast<std::size_t>(i));
    projections[g.vertex(v)] = kept;
  }
  return Json{{"module", module_to_json(t.module())},
              {"level", t.level()},
              {"levels", std::move(levels)},
              {"generators", Json{{"from_level", t.level()},
                                  {"raising", std::move(raising)},
                                  {"projection_support", std::move(projections)}}}};
}

/// Rebuilds the lift from its module and level. When a basis listing is
/// present it must agree with the rebuilt one.
inline TruncatedLift lift_from_json(const Json& j, const std::string& at = "") {
  auto module = module_from_json(detail::field(j, "module", at), at + "/module");
  const Json& lj = detail::field(j, "level", at);
  if (!detail::is_count(lj)) throw SchemaError(at + "/level", "expected a nonnegative integer");
  TruncatedLift t(std::move(module), lj.get<std::size_t>());
  if (auto it = j.find("levels"); it != j.end()) {
    if (!it->is_array() || it->size() != t.top_level() + 1)
      throw SchemaError(at + "/levels", "expected one entry per materialized level");
    for (std::size_t k = 0; k <= t.top_level(); ++k) {
      const std::string here = at + "/levels/" + std::to_string(k);
      if (detail::field((*it)[k], "basis", here) != basis_to_json(t.graph(), t.basis(k)))
        throw SchemaError(here + "/basis", "basis listing does not match the module");
    }
  }
  return t;
}

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" with decimal floats, or
/// "exp(k/n)" for e^{2πik/n}.
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  auto fail = [&]() { return Error("cannot parse complex number '" + std::string(text) + "'"); };
  auto parse_real = [&](const std::string& part) {
    if (part.empty()) throw fail();
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size()) throw fail();
    return v;
  };
  if (s.empty()) throw fail();
  if (s.rfind("exp(", 0) == 0 && s.back() == ')') {
    const std::string body = s.substr(4, s.size() - 5);
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw fail();
    const double k = parse_real(body.substr(0, slash));
    const double n = parse_real(body.substr(slash + 1));
    if (n == 0.0) throw fail();
    return std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  }
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.pop_back();
  // Split before the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imaginary = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };
  if (split == std::string::npos) return {0.0, imaginary(s)};
  return {parse_real(s.substr(0, split)), imaginary(s.substr(split))};
}

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace pyth
