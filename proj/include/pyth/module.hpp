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

// Finite-dimensional Pythagorean modules over a graph.
//
// A module assigns a space H_v = C^{dims[v]} to every vertex and a matrix
// A_g : H_{r(g)} -> H_{s(g)} (shape dims[s(g)] x dims[r(g)]) to every edge.
// At every vertex w that receives at least one edge, the matrices of the
// edges arriving at w stack into an isometry:
//
//     sum_{g : r(g) = w} A_g^* A_g = 1_{H_w}.
//
// Vertices that receive no edge carry no condition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "pyth/errors.hpp"
#include "pyth/graph.hpp"
#include "pyth/linalg.hpp"

namespace pyth {

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr share(Graph g) {
  return std::make_shared<const Graph>(std::move(g));
}

class PythagoreanModule {
 public:
  PythagoreanModule(GraphPtr graph, std::vector<std::size_t> dims,
                    std::vector<ComplexMatrix> ops)
      : graph_(std::move(graph)), dims_(std::move(dims)), ops_(std::move(ops)) {
    if (!graph_) throw ModuleError("module needs a graph");
    if (dims_.size() != graph_->vertex_count())
      throw ModuleError("module needs one dimension per vertex");
    if (ops_.size() != graph_->edge_count())
      throw ModuleError("module needs one matrix per edge");
    for (EdgeIndex e = 0; e < ops_.size(); ++e) {
      const auto rows = static_cast<Eigen::Index>(dims_[graph_->source(e)]);
      const auto cols = static_cast<Eigen::Index>(dims_[graph_->range(e)]);
      if (ops_[e].rows() != rows || ops_[e].cols() != cols) {
        throw ModuleError("edge '" + graph_->edge(e).id + "' has a " +
                          std::to_string(ops_[e].rows()) + "x" +
                          std::to_string(ops_[e].cols()) + " matrix, expected " +
                          std::to_string(rows) + "x" + std::to_string(cols));
      }
    }
    offsets_.reserve(dims_.size());
    std::size_t running = 0;
    for (std::size_t d : dims_) {
      offsets_.push_back(running);
      running += d;
    }
    total_ = running;
  }

  const Graph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(VertexIndex v) const { return dims_.at(v); }
  std::size_t total_dim() const noexcept { return total_; }
  /// First coordinate of H_v inside the total space.
  std::size_t offset(VertexIndex v) const { return offsets_.at(v); }

  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  const ComplexMatrix& op(EdgeIndex e) const { return ops_.at(e); }

 private:
  GraphPtr graph_;
  std::vector<std::size_t> dims_;
  std::vector<ComplexMatrix> ops_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

inline bool same_graph(const PythagoreanModule& a, const PythagoreanModule& b) {
  return a.graph_ptr() == b.graph_ptr() || a.graph() == b.graph();
}

struct ModuleReport {
  // Residual per vertex; empty when the vertex is exempt (no incoming edge or
  // zero dimension).
  std::vector<std::optional<double>> residuals;
  double max_residual = 0.0;
  bool passed = true;
};

inline ComplexMatrix isometry_defect(const PythagoreanModule& m, VertexIndex w) {
  const auto d = static_cast<Eigen::Index>(m.dim(w));
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (EdgeIndex g : m.graph().incoming(w)) sum += m.op(g).adjoint() * m.op(g);
  return sum - ComplexMatrix::Identity(d, d);
}

inline ModuleReport validate_module(const PythagoreanModule& m,
                                    double tol = kDefaultTolerance) {
  ModuleReport report;
  report.residuals.resize(m.graph().vertex_count());
  for (VertexIndex w = 0; w < m.graph().vertex_count(); ++w) {
    if (m.graph().incoming(w).empty() || m.dim(w) == 0) continue;
    const double r = frobenius(isometry_defect(m, w));
    report.residuals[w] = r;
    report.max_residual = std::max(report.max_residual, r);
  }
  report.passed = report.max_residual <= tol;
  return report;
}

namespace detail {

inline std::vector<ComplexMatrix> zero_ops(const Graph& g,
                                           const std::vector<std::size_t>& dims) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    ops.push_back(ComplexMatrix::Zero(static_cast<Eigen::Index>(dims[g.source(e)]),
                                      static_cast<Eigen::Index>(dims[g.range(e)])));
  }
  return ops;
}

}  // namespace detail

/// The loop at `v` (which must be its only loop), or nothing.
inline std::optional<EdgeIndex> unique_loop(const Graph& g, VertexIndex v) {
  std::optional<EdgeIndex> found;
  for (EdgeIndex e : g.outgoing(v)) {
    if (!g.is_loop(e)) continue;
    if (found) return std::nullopt;
    found = e;
  }
  return found;
}

/// H = H_v = C with the loop at v acting by z and every other edge by 0.
inline PythagoreanModule one_dim_module(GraphPtr g, VertexIndex v, Complex z) {
  if (v >= g->vertex_count()) throw ModuleError("vertex index out of range");
  auto loop = unique_loop(*g, v);
  if (!loop)
    throw ModuleError("vertex '" + g->vertex(v) + "' does not carry exactly one loop");
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw ModuleError("loop scalar must have modulus one");
  std::vector<std::size_t> dims(g->vertex_count(), 0);
  dims[v] = 1;
  auto ops = detail::zero_ops(*g, dims);
  ops[*loop](0, 0) = z;
  return PythagoreanModule(std::move(g), std::move(dims), std::move(ops));
}

/// H = H_v = C with every edge acting by 0; v must receive no edges.
inline PythagoreanModule isolated_module(GraphPtr g, VertexIndex v) {
  if (v >= g->vertex_count()) throw ModuleError("vertex index out of range");
  if (!g->incoming(v).empty()) {
    throw ModuleError("vertex '" + g->vertex(v) + "' receives edge '" +
                      g->edge(g->incoming(v).front()).id +
                      "'; zero operators cannot form an isometry there");
  }
  std::vector<std::size_t> dims(g->vertex_count(), 0);
  dims[v] = 1;
  auto ops = detail::zero_ops(*g, dims);
  return PythagoreanModule(std::move(g), std::move(dims), std::move(ops));
}

/// Block-diagonal sum; at each vertex the summand `a` comes first.
inline PythagoreanModule direct_sum(const PythagoreanModule& a,
                                    const PythagoreanModule& b) {
  if (!same_graph(a, b)) throw ModuleError("direct_sum of modules over different graphs");
  const Graph& g = a.graph();
  std::vector<std::size_t> dims(g.vertex_count());
  for (VertexIndex v = 0; v < dims.size(); ++v) dims[v] = a.dim(v) + b.dim(v);
  std::vector<ComplexMatrix> ops;
  ops.reserve(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const ComplexMatrix& x = a.op(e);
    const ComplexMatrix& y = b.op(e);
    ComplexMatrix m = ComplexMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    m.topLeftCorner(x.rows(), x.cols()) = x;
    m.bottomRightCorner(y.rows(), y.cols()) = y;
    ops.push_back(std::move(m));
  }
  return PythagoreanModule(a.graph_ptr(), std::move(dims), std::move(ops));
}

/// Seeded random module: at every receiving vertex w, a complex Gaussian
/// matrix with one row block per incoming edge is orthonormalized by QR and
/// split back into the blocks A_g.
inline PythagoreanModule random_module(GraphPtr g, std::vector<std::size_t> dims,
                                       std::uint64_t seed) {
  if (dims.size() != g->vertex_count())
    throw ModuleError("random_module needs one dimension per vertex");
  GaussianSource rng(seed);
  auto ops = detail::zero_ops(*g, dims);
  for (VertexIndex w = 0; w < g->vertex_count(); ++w) {
    const auto& in = g->incoming(w);
    if (in.empty() || dims[w] == 0) continue;
    Eigen::Index rows = 0;
    for (EdgeIndex e : in) rows += static_cast<Eigen::Index>(dims[g->source(e)]);
    const auto cols = static_cast<Eigen::Index>(dims[w]);
    if (rows < cols) {
      throw ModuleError("vertex '" + g->vertex(w) + "' has dimension " +
                        std::to_string(cols) + " but its incoming edges only reach " +
                        std::to_string(rows) + " dimensions; no isometry exists");
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(rng.matrix(rows, cols));
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    Eigen::Index at = 0;
    for (EdgeIndex e : in) {
      const auto h = static_cast<Eigen::Index>(dims[g->source(e)]);
      ops[e] = q.middleRows(at, h);
      at += h;
    }
  }
  return PythagoreanModule(std::move(g), std::move(dims), std::move(ops));
}

/// A_λ : H_{r(λ)} -> H_{s(λ)}, the product of the edge matrices in traversal
/// order, so that A_{λμ} = A_μ A_λ.
inline ComplexMatrix path_operator(const PythagoreanModule& m, const Path& p) {
  const auto d = static_cast<Eigen::Index>(m.dim(p.source()));
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  for (EdgeIndex e : p.edges()) out = (out * m.op(e)).eval();
  return out;
}

/// Embeds the graded data of a module into d x d matrices on the total space:
/// one projection per vertex of positive dimension, then one matrix per edge.
inline std::vector<ComplexMatrix> generator_set(const PythagoreanModule& m) {
  const auto d = static_cast<Eigen::Index>(m.total_dim());
  const Graph& g = m.graph();
  std::vector<ComplexMatrix> gens;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (m.dim(v) == 0) continue;
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    const auto o = static_cast<Eigen::Index>(m.offset(v));
    const auto k = static_cast<Eigen::Index>(m.dim(v));
    p.block(o, o, k, k).setIdentity();
    gens.push_back(std::move(p));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const ComplexMatrix& a = m.op(e);
    if (a.size() == 0) continue;
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    x.block(static_cast<Eigen::Index>(m.offset(g.source(e))),
            static_cast<Eigen::Index>(m.offset(g.range(e))), a.rows(), a.cols()) = a;
    gens.push_back(std::move(x));
  }
  return gens;
}

/// A linear map between two modules, one block per vertex of shape
/// target.dims[v] x source.dims[v].
struct GradedMap {
  std::vector<ComplexMatrix> blocks;
};

inline GradedMap identity_map(const PythagoreanModule& m) {
  GradedMap id;
  for (std::size_t d : m.dims()) {
    const auto k = static_cast<Eigen::Index>(d);
    id.blocks.push_back(ComplexMatrix::Identity(k, k));
  }
  return id;
}

/// Largest Frobenius residual of θ_{s(g)} A_g - A'_g θ_{r(g)} over all edges.
inline double intertwiner_residual(const PythagoreanModule& from,
                                   const PythagoreanModule& to,
                                   const GradedMap& theta) {
  const Graph& g = from.graph();
  if (theta.blocks.size() != g.vertex_count())
    throw ModuleError("graded map needs one block per vertex");
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (theta.blocks[v].rows() != static_cast<Eigen::Index>(to.dim(v)) ||
        theta.blocks[v].cols() != static_cast<Eigen::Index>(from.dim(v)))
      throw ModuleError("graded map block at vertex '" + g.vertex(v) + "' has the wrong shape");
  }
  double worst = 0.0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const ComplexMatrix lhs = theta.blocks[g.source(e)] * from.op(e);
    const ComplexMatrix rhs = to.op(e) * theta.blocks[g.range(e)];
    worst = std::max(worst, frobenius(lhs - rhs));
  }
  return worst;
}

struct IntertwinerSpace {
  std::vector<GradedMap> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Basis of all graded θ : from -> to with θ_{s(g)} A_g = A'_g θ_{r(g)} for
/// every edge g, read off the kernel of the stacked linear system.
inline IntertwinerSpace intertwiner_space(const PythagoreanModule& from,
                                          const PythagoreanModule& to) {
  if (!same_graph(from, to)) throw ModuleError("modules live on different graphs");
  const Graph& g = from.graph();
  // Unknowns: vec(θ_v) (column-major) for each vertex in order.
  std::vector<Eigen::Index> col_offset(g.vertex_count());
  Eigen::Index unknowns = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    col_offset[v] = unknowns;
    unknowns += static_cast<Eigen::Index>(to.dim(v) * from.dim(v));
  }
  Eigen::Index equations = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    equations += static_cast<Eigen::Index>(to.dim(g.source(e)) * from.dim(g.range(e)));

  ComplexMatrix system = ComplexMatrix::Zero(equations, unknowns);
  Eigen::Index row = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const VertexIndex s = g.source(e);
    const VertexIndex r = g.range(e);
    const auto ts = static_cast<Eigen::Index>(to.dim(s));    // rows of θ_s
    const auto fs = static_cast<Eigen::Index>(from.dim(s));  // cols of θ_s
    const auto tr = static_cast<Eigen::Index>(to.dim(r));
    const auto fr = static_cast<Eigen::Index>(from.dim(r));
    const ComplexMatrix& a = from.op(e);  // fs x fr
    const ComplexMatrix& b = to.op(e);    // ts x tr
    // Equation entry (i, j) of θ_s A - B θ_r, i < ts, j < fr, stored at
    // row + j*ts + i. θ_s(i, k) sits at col_offset[s] + k*ts + i.
    for (Eigen::Index j = 0; j < fr; ++j) {
      for (Eigen::Index i = 0; i < ts; ++i) {
        const Eigen::Index eq = row + j * ts + i;
        for (Eigen::Index k = 0; k < fs; ++k)
          system(eq, col_offset[s] + k * ts + i) += a(k, j);
        for (Eigen::Index k = 0; k < tr; ++k)
          system(eq, col_offset[r] + j * tr + k) -= b(i, k);
      }
    }
    row += ts * fr;
  }

  const ComplexMatrix kernel = nullspace(system);
  IntertwinerSpace space;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    GradedMap theta;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      const auto rows = static_cast<Eigen::Index>(to.dim(v));
      const auto cols = static_cast<Eigen::Index>(from.dim(v));
      ComplexMatrix block(rows, cols);
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
          block(i, j) = kernel(col_offset[v] + j * rows + i, c);
      theta.blocks.push_back(std::move(block));
    }
    space.basis.push_back(std::move(theta));
  }
  return space;
}

/// Dimension of the algebra generated by the projections and edge matrices
/// (with the identity), computed by closing the span under left
/// multiplication by generators.
inline std::size_t generated_algebra_dimension(const PythagoreanModule& m) {
  const auto d = static_cast<Eigen::Index>(m.total_dim());
  if (d == 0) throw ModuleError("module has dimension zero");
  const auto gens = generator_set(m);
  SpanBuilder span(d * d);
  std::vector<ComplexMatrix> frontier;
  auto offer = [&](const ComplexMatrix& x) {
    if (span.add(x.reshaped())) frontier.push_back(x);
  };
  offer(ComplexMatrix::Identity(d, d));
  while (!frontier.empty() && span.size() < static_cast<std::size_t>(d * d)) {
    std::vector<ComplexMatrix> current;
    current.swap(frontier);
    for (const auto& x : current)
      for (const auto& gen : gens) offer(gen * x);
  }
  return span.size();
}

/// Burnside: irreducible iff the generated algebra is all of M_d(C).
inline bool is_irreducible(const PythagoreanModule& m) {
  const std::size_t d = m.total_dim();
  return generated_algebra_dimension(m) == d * d;
}

/// Dimension of the smallest submodule containing `x`.
inline std::size_t cyclic_span_dimension(const PythagoreanModule& m,
                                         const ComplexVector& x) {
  const auto d = static_cast<Eigen::Index>(m.total_dim());
  if (x.size() != d) throw ModuleError("vector has the wrong length");
  const auto gens = generator_set(m);
  SpanBuilder span(d);
  std::vector<ComplexVector> frontier;
  auto offer = [&](const ComplexVector& y) {
    if (span.add(y)) frontier.push_back(y);
  };
  offer(x);
  while (!frontier.empty() && span.size() < static_cast<std::size_t>(d)) {
    std::vector<ComplexVector> current;
    current.swap(frontier);
    for (const auto& y : current)
      for (const auto& gen : gens) offer(gen * y);
  }
  return span.size();
}

/// Dimension of {X : X and X^* commute with every generator}, the commutant
/// of the *-algebra generated by the module.
inline std::size_t star_commutant_dimension(const PythagoreanModule& m) {
  const auto d = static_cast<Eigen::Index>(m.total_dim());
  if (d == 0) throw ModuleError("module has dimension zero");
  auto gens = generator_set(m);
  const std::size_t base = gens.size();
  for (std::size_t i = 0; i < base; ++i) gens.push_back(gens[i].adjoint());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix system(static_cast<Eigen::Index>(gens.size()) * d * d, d * d);
  Eigen::Index row = 0;
  for (const auto& gen : gens) {
    // vec(XG - GX) = (G^T ⊗ I - I ⊗ G) vec(X)
    system.middleRows(row, d * d) =
        Eigen::kroneckerProduct(gen.transpose(), id) - Eigen::kroneckerProduct(id, gen);
    row += d * d;
  }
  return static_cast<std::size_t>(nullspace(system).cols());
}

/// No splitting into two mutually orthogonal nonzero submodules.
inline bool is_indecomposable(const PythagoreanModule& m) {
  return star_commutant_dimension(m) == 1;
}

enum class Equivalence { equivalent, inequivalent, undetermined };

struct EquivalenceVerdict {
  Equivalence kind = Equivalence::undetermined;
  std::optional<GradedMap> certificate;
};

inline bool is_invertible(const GradedMap& theta) {
  for (const auto& block : theta.blocks) {
    if (block.rows() != block.cols()) return false;
    if (block.size() == 0) continue;
    Eigen::JacobiSVD<ComplexMatrix> svd(block);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-8 * std::max(1.0, sv(0))) return false;
  }
  return true;
}

namespace detail {

// Scales a graded map so its largest entry (first in vertex order) is one.
inline GradedMap normalized(GradedMap theta) {
  Complex pivot{0.0, 0.0};
  for (const auto& block : theta.blocks) {
    for (Eigen::Index j = 0; j < block.cols(); ++j)
      for (Eigen::Index i = 0; i < block.rows(); ++i)
        if (std::abs(block(i, j)) > std::abs(pivot) + 1e-12) pivot = block(i, j);
  }
  if (pivot != Complex{0.0, 0.0})
    for (auto& block : theta.blocks) block /= pivot;
  return theta;
}

}  // namespace detail

/// Searches for an invertible intertwiner among random combinations of a
/// basis of Hom(a, b).
inline EquivalenceVerdict are_equivalent(const PythagoreanModule& a,
                                         const PythagoreanModule& b) {
  if (!same_graph(a, b)) throw ModuleError("modules live on different graphs");
  if (a.dims() != b.dims()) return {Equivalence::inequivalent, std::nullopt};
  if (a.total_dim() == 0) return {Equivalence::equivalent, identity_map(a)};
  const auto forward = intertwiner_space(a, b);
  if (forward.dimension() == 0 || intertwiner_space(b, a).dimension() == 0)
    return {Equivalence::inequivalent, std::nullopt};

  GaussianSource rng(0x5eedULL);
  for (int draw = 0; draw < 20; ++draw) {
    GradedMap theta;
    for (const auto& block : forward.basis.front().blocks)
      theta.blocks.push_back(ComplexMatrix::Zero(block.rows(), block.cols()));
    for (const auto& basis : forward.basis) {
      const Complex c = rng.complex_normal();
      for (std::size_t v = 0; v < theta.blocks.size(); ++v)
        theta.blocks[v] += c * basis.blocks[v];
    }
    if (is_invertible(theta))
      return {Equivalence::equivalent, detail::normalized(std::move(theta))};
  }
  if (is_irreducible(a) && is_irreducible(b))
    return {Equivalence::equivalent, detail::normalized(forward.basis.front())};
  return {Equivalence::undetermined, std::nullopt};
}

}  // namespace pyth
