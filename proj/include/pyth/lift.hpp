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

// Finite slices of the representation lifted from a Pythagorean module.
//
// The lifted space is spanned by classes [λ, ξ] of a path λ and a vector
// ξ ∈ H_{s(λ)}, subject to
//
//     [λ, ξ] = sum_{μ : r(μ) = s(λ)} [λμ, A_μ ξ].
//
// Level W_k is spanned by the classes over maximal paths of length <= k
// (length k, or shorter with a source that receives no edges). Those classes
// with ξ running over the standard basis of H_{s(λ)} form an orthonormal
// basis of W_k, and W_k sits isometrically in W_{k+1} by expanding every
// length-k path one step. The generator x_e maps W_k into W_{k+1} by
// prepending e at the range end, which sends basis vectors to basis vectors.
//
// A TruncatedLift at level m materializes the bases of W_0 .. W_{m+1} so that
// every operator leaving W_m has a home.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pyth/errors.hpp"
#include "pyth/graph.hpp"
#include "pyth/linalg.hpp"
#include "pyth/module.hpp"

namespace pyth {

struct BasisEntry {
  Path path;
  std::size_t fiber = 0;
};

/// Ordered basis of one level: vertex order, then canonical path order, then
/// fiber index.
class LevelBasis {
 public:
  LevelBasis(const PythagoreanModule& m, std::size_t level) : level_(level) {
    const Graph& g = m.graph();
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      for (Path& p : maximal_paths(g, v, level)) {
        const std::size_t d = m.dim(p.source());
        if (d == 0) continue;
        first_.emplace(p, entries_.size());
        for (std::size_t b = 0; b < d; ++b) entries_.push_back({p, b});
      }
    }
  }

  std::size_t level() const noexcept { return level_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<BasisEntry>& entries() const noexcept { return entries_; }
  const BasisEntry& operator[](std::size_t i) const { return entries_.at(i); }

  /// Index of (p, 0), if p is a basis path of this level.
  std::optional<std::size_t> find(const Path& p) const {
    auto it = first_.find(p);
    if (it == first_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t level_;
  std::vector<BasisEntry> entries_;
  std::map<Path, std::size_t> first_;
};

enum class ModuleCheck { validate, skip };

class TruncatedLift {
 public:
  TruncatedLift(PythagoreanModule module, std::size_t level,
                ModuleCheck check = ModuleCheck::validate,
                double tol = kDefaultTolerance)
      : module_(std::move(module)), level_(level) {
    if (check == ModuleCheck::validate) {
      auto report = validate_module(module_, tol);
      if (!report.passed) {
        throw ModuleError("cannot lift an invalid module (residual " +
                          std::to_string(report.max_residual) + ")");
      }
    }
    levels_.reserve(level + 2);
    for (std::size_t k = 0; k <= level + 1; ++k) levels_.emplace_back(module_, k);
  }

  const PythagoreanModule& module() const noexcept { return module_; }
  const Graph& graph() const noexcept { return module_.graph(); }
  /// Working level m.
  std::size_t level() const noexcept { return level_; }
  /// Highest materialized level, m + 1.
  std::size_t top_level() const noexcept { return level_ + 1; }

  const LevelBasis& basis(std::size_t k) const {
    if (k > top_level())
      throw LevelError("level " + std::to_string(k) + " is not materialized (top " +
                       std::to_string(top_level()) + ")");
    return levels_[k];
  }
  const LevelBasis& basis() const { return levels_[level_]; }

  Eigen::Index dimension(std::size_t k) const {
    return static_cast<Eigen::Index>(basis(k).size());
  }
  Eigen::Index dimension() const { return dimension(level_); }

 private:
  PythagoreanModule module_;
  std::size_t level_;
  std::vector<LevelBasis> levels_;
};

inline TruncatedLift lift(PythagoreanModule m, std::size_t level) {
  return TruncatedLift(std::move(m), level);
}

struct LiftVector {
  std::size_t level = 0;
  ComplexVector coefficients;
};

namespace detail {

inline void require_step(const TruncatedLift& t, std::size_t k) {
  if (k >= t.top_level())
    throw LevelError("no level above " + std::to_string(k) + " is materialized");
}

}  // namespace detail

/// Isometric inclusion W_k -> W_{k+1}.
inline ComplexMatrix embedding_matrix(const TruncatedLift& t, std::size_t k) {
  detail::require_step(t, k);
  const Graph& g = t.graph();
  const PythagoreanModule& m = t.module();
  const LevelBasis& from = t.basis(k);
  const LevelBasis& to = t.basis(k + 1);
  ComplexMatrix j = ComplexMatrix::Zero(to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    const BasisEntry& entry = from[col];
    const Path& lambda = entry.path;
    const auto& incoming = g.incoming(lambda.source());
    if (lambda.length() < k || incoming.empty()) {
      j(static_cast<Eigen::Index>(*to.find(lambda) + entry.fiber),
        static_cast<Eigen::Index>(col)) = 1.0;
      continue;
    }
    for (EdgeIndex mu : incoming) {
      const ComplexMatrix& a = m.op(mu);
      if (a.rows() == 0) continue;
      const std::size_t row0 = *to.find(compose_paths(lambda, Path::edge(g, mu)));
      for (Eigen::Index b = 0; b < a.rows(); ++b)
        j(static_cast<Eigen::Index>(row0) + b, static_cast<Eigen::Index>(col)) =
            a(b, static_cast<Eigen::Index>(entry.fiber));
    }
  }
  return j;
}

/// The generator x_e as a map W_k -> W_{k+1}: (μ, b) -> (eμ, b) when
/// s(e) = r(μ), zero otherwise.
inline ComplexMatrix raising_matrix(const TruncatedLift& t, EdgeIndex e,
                                    std::size_t k) {
  detail::require_step(t, k);
  const Graph& g = t.graph();
  const LevelBasis& from = t.basis(k);
  const LevelBasis& to = t.basis(k + 1);
  ComplexMatrix x = ComplexMatrix::Zero(to.size(), from.size());
  const Path edge = Path::edge(g, e);
  for (std::size_t col = 0; col < from.size(); ++col) {
    const BasisEntry& entry = from[col];
    if (entry.path.range() != g.source(e)) continue;
    const std::size_t row = *to.find(compose_paths(edge, entry.path)) + entry.fiber;
    x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return x;
}

/// The projection x_v on W_k: keeps basis entries whose path has range v.
inline ComplexMatrix projection_matrix(const TruncatedLift& t, VertexIndex v,
                                       std::size_t k) {
  const LevelBasis& basis = t.basis(k);
  ComplexMatrix p = ComplexMatrix::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].path.range() == v) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  return p;
}

inline LiftVector embed_vector(const TruncatedLift& t, const LiftVector& x) {
  if (x.coefficients.size() != t.dimension(x.level))
    throw LevelError("vector does not match the basis of its level");
  return {x.level + 1, embedding_matrix(t, x.level) * x.coefficients};
}

/// Coordinates of the class [λ, ξ] in W_k, k >= |λ|.
inline LiftVector reduce_class(const TruncatedLift& t, const Path& lambda,
                               const ComplexVector& xi, std::size_t k) {
  if (k < lambda.length())
    throw LevelError("level " + std::to_string(k) + " is below the path length " +
                     std::to_string(lambda.length()));
  const LevelBasis& basis = t.basis(k);
  const Graph& g = t.graph();
  const PythagoreanModule& m = t.module();
  if (xi.size() != static_cast<Eigen::Index>(m.dim(lambda.source())))
    throw ModuleError("vector does not match the fiber at the path source");
  LiftVector out{k, ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()))};
  std::function<void(const Path&, const ComplexVector&)> expand =
      [&](const Path& p, const ComplexVector& v) {
        if (v.size() == 0) return;
        const auto& incoming = g.incoming(p.source());
        if (p.length() == k || incoming.empty()) {
          out.coefficients.segment(static_cast<Eigen::Index>(*basis.find(p)), v.size()) += v;
          return;
        }
        for (EdgeIndex mu : incoming)
          expand(compose_paths(p, Path::edge(g, mu)), m.op(mu) * v);
      };
  expand(lambda, xi);
  return out;
}

struct GeneratorMatrices {
  std::size_t level = 0;
  // x_e : W_m -> W_{m+1}, per edge.
  std::vector<ComplexMatrix> raising;
  // x_v on W_m, per vertex.
  std::vector<ComplexMatrix> projections;
};

inline GeneratorMatrices generator_matrices(const TruncatedLift& t) {
  GeneratorMatrices out;
  out.level = t.level();
  for (EdgeIndex e = 0; e < t.graph().edge_count(); ++e)
    out.raising.push_back(raising_matrix(t, e, t.level()));
  for (VertexIndex v = 0; v < t.graph().vertex_count(); ++v)
    out.projections.push_back(projection_matrix(t, v, t.level()));
  return out;
}

/// Largest Frobenius residuals of the Cuntz-Krieger relations on a lift.
struct CkReport {
  // Vertex projections on W_m.
  double projection_idempotence = 0.0;
  double projection_orthogonality = 0.0;
  double projection_completeness = 0.0;
  // x_e^* x_e = x_{s(e)} on W_m.
  double source_projection = 0.0;
  // sum_{r(e)=w} x_e x_e^* = x_w on W_{m+1}, receiving vertices only.
  double range_projection = 0.0;
  // The same relation compressed to W_m through the embedding W_m -> W_{m+1};
  // this is where the module's isometry condition shows up.
  double range_projection_embedded = 0.0;
  // |J^* J - 1| for the embedding J : W_m -> W_{m+1}.
  double embedding_isometry = 0.0;

  double max() const {
    return std::max({projection_idempotence, projection_orthogonality,
                     projection_completeness, source_projection, range_projection,
                     range_projection_embedded, embedding_isometry});
  }
  bool passed(double tol = kDefaultTolerance) const { return max() <= tol; }
};

inline CkReport ck_residuals(const TruncatedLift& t) {
  const Graph& g = t.graph();
  const std::size_t m = t.level();
  const auto dm = t.dimension(m);
  const auto dn = t.dimension(m + 1);
  CkReport r;

  std::vector<ComplexMatrix> p_m, p_n;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    p_m.push_back(projection_matrix(t, v, m));
    p_n.push_back(projection_matrix(t, v, m + 1));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dm, dm);
  for (VertexIndex v = 0; v < p_m.size(); ++v) {
    sum += p_m[v];
    r.projection_idempotence = std::max(
        r.projection_idempotence,
        std::max(frobenius(p_m[v] * p_m[v] - p_m[v]), frobenius(p_m[v].adjoint() - p_m[v])));
    for (VertexIndex w = v + 1; w < p_m.size(); ++w)
      r.projection_orthogonality =
          std::max(r.projection_orthogonality, frobenius(p_m[v] * p_m[w]));
  }
  r.projection_completeness = frobenius(sum - ComplexMatrix::Identity(dm, dm));

  std::vector<ComplexMatrix> raise;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    raise.push_back(raising_matrix(t, e, m));
    r.source_projection = std::max(
        r.source_projection,
        frobenius(raise[e].adjoint() * raise[e] - p_m[g.source(e)]));
  }

  const ComplexMatrix j = embedding_matrix(t, m);
  r.embedding_isometry = frobenius(j.adjoint() * j - ComplexMatrix::Identity(dm, dm));
  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    if (g.incoming(w).empty()) continue;
    ComplexMatrix range = ComplexMatrix::Zero(dn, dn);
    for (EdgeIndex e : g.incoming(w)) range += raise[e] * raise[e].adjoint();
    r.range_projection = std::max(r.range_projection, frobenius(range - p_n[w]));
    r.range_projection_embedded =
        std::max(r.range_projection_embedded,
                 frobenius(j.adjoint() * range * j - p_m[w]));
  }
  return r;
}

struct WordSymbol {
  enum class Kind { edge, edge_adjoint, vertex };
  Kind kind = Kind::vertex;
  std::size_t index = 0;  // edge or vertex index

  static WordSymbol x(EdgeIndex e) { return {Kind::edge, e}; }
  static WordSymbol x_star(EdgeIndex e) { return {Kind::edge_adjoint, e}; }
  static WordSymbol p(VertexIndex v) { return {Kind::vertex, v}; }
};

struct LevelledOperator {
  std::size_t from_level = 0;
  std::size_t to_level = 0;
  ComplexMatrix matrix;
};

/// The product of a word of generators, written left to right as in the
/// algebra (the rightmost symbol acts first), starting on W_{start}. x_e
/// raises the level by one and x_e^* lowers it.
inline LevelledOperator word_operator(const TruncatedLift& t,
                                      const std::vector<WordSymbol>& word,
                                      std::size_t start) {
  const auto d0 = t.dimension(start);
  LevelledOperator op{start, start, ComplexMatrix::Identity(d0, d0)};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (it->kind) {
      case WordSymbol::Kind::vertex:
        op.matrix = projection_matrix(t, it->index, op.to_level) * op.matrix;
        break;
      case WordSymbol::Kind::edge:
        if (op.to_level >= t.top_level())
          throw LevelError("word climbs above level " + std::to_string(t.top_level()));
        op.matrix = raising_matrix(t, it->index, op.to_level) * op.matrix;
        ++op.to_level;
        break;
      case WordSymbol::Kind::edge_adjoint:
        if (op.to_level == 0) throw LevelError("word drops below level 0");
        --op.to_level;
        op.matrix = raising_matrix(t, it->index, op.to_level).adjoint() * op.matrix;
        break;
    }
  }
  return op;
}

/// Π(θ) on W_k: [μ, η] -> [μ, θ_{s(μ)} η].
inline ComplexMatrix lift_intertwiner(const TruncatedLift& from,
                                      const TruncatedLift& to,
                                      const GradedMap& theta, std::size_t k,
                                      double tol = kDefaultTolerance) {
  const double residual = intertwiner_residual(from.module(), to.module(), theta);
  if (residual > tol)
    throw ModuleError("map is not an intertwiner (residual " + std::to_string(residual) + ")");
  const LevelBasis& src = from.basis(k);
  const LevelBasis& dst = to.basis(k);
  ComplexMatrix out = ComplexMatrix::Zero(dst.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col) {
    const BasisEntry& entry = src[col];
    auto row0 = dst.find(entry.path);
    if (!row0) continue;
    const ComplexMatrix& block = theta.blocks[entry.path.source()];
    for (Eigen::Index b = 0; b < block.rows(); ++b)
      out(static_cast<Eigen::Index>(*row0) + b, static_cast<Eigen::Index>(col)) =
          block(b, static_cast<Eigen::Index>(entry.fiber));
  }
  return out;
}

struct LoopAction {
  // Compression of x_ℓ to the classes [v, ξ], ξ ∈ H_v.
  ComplexMatrix compression;
  std::vector<Complex> eigenvalues;
  // |x_ℓ R_m - R_{m+1} C| where R_k lists the classes [v, e_b] in W_k; zero
  // when those classes span an x_ℓ-invariant subspace.
  double invariance_residual = 0.0;
};

/// How the unique loop at v acts on the classes [v, ξ] at the working level.
inline LoopAction loop_action(const TruncatedLift& t, VertexIndex v) {
  const Graph& g = t.graph();
  auto loop = unique_loop(g, v);
  if (!loop) throw ModuleError("vertex '" + g.vertex(v) + "' does not carry exactly one loop");
  const auto d = static_cast<Eigen::Index>(t.module().dim(v));
  if (d == 0) throw ModuleError("module vanishes at vertex '" + g.vertex(v) + "'");
  const std::size_t m = t.level();
  const Path at = Path::vertex(g, v);
  ComplexMatrix low(t.dimension(m), d), high(t.dimension(m + 1), d);
  for (Eigen::Index b = 0; b < d; ++b) {
    ComplexVector xi = ComplexVector::Unit(d, b);
    low.col(b) = reduce_class(t, at, xi, m).coefficients;
    high.col(b) = reduce_class(t, at, xi, m + 1).coefficients;
  }
  const ComplexMatrix image = raising_matrix(t, *loop, m) * low;
  LoopAction out;
  out.compression = high.adjoint() * image;
  out.invariance_residual = frobenius(image - high * out.compression);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(out.compression);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    out.eigenvalues.push_back(solver.eigenvalues()(i));
  return out;
}

}  // namespace pyth
