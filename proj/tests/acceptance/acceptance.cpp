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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "pyth/pyth.hpp"

namespace {

using namespace pyth;

Complex root8(int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0); }

std::vector<std::string> labels(std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t i = from; i <= to; ++i) out.push_back(std::to_string(i));
  return out;
}

// Collects the first few failure messages of one criterion.
struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  std::string summary;

  void require(bool condition, const std::string& why) {
    if (condition) return;
    ok = false;
    if (notes.size() < 3) notes.push_back(why);
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_limit;  // seconds; zero for none
  std::function<void(Outcome&)> body;
};

std::vector<std::size_t> random_dims(std::mt19937& rng, std::size_t count, std::size_t max) {
  std::vector<std::size_t> dims(count);
  do {
    for (auto& d : dims) d = rng() % (max + 1);
  } while (std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; }));
  return dims;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

void odd_spheres(Outcome& out) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto s = classify(sphere_odd_graph(n));
    out.require(s.circles == labels(1, n), "circles of S^" + std::to_string(2 * n - 1));
    out.require(s.points.empty(), "points of S^" + std::to_string(2 * n - 1));
  }
  out.summary = "n = 1..6";
}

void even_spheres(Outcome& out) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto s = classify(sphere_even_graph(n));
    out.require(s.circles == labels(1, n), "circles for n = " + std::to_string(n));
    out.require(s.points == labels(n + 1, n + 2), "points for n = " + std::to_string(n));
  }
  out.summary = "n = 1..6";
}

void projective(Outcome& out) {
  for (std::size_t n = 1; n <= 5; ++n)
    out.require(classify(projective_graph(n)).circles.size() == n, "circles for n = " + std::to_string(n));
  const auto g = projective_graph(3);
  const std::size_t oracle = oracle::all_paths(sphere_odd_graph(3), 2).size();
  out.require(g.edge_count() == 10 && oracle == 10,
              "edges " + std::to_string(g.edge_count()) + ", length-2 paths " + std::to_string(oracle));
  out.summary = "projective(3) has " + std::to_string(g.edge_count()) + " edges";
}

const std::vector<LensParams> kLensCases{{2, 3, {1, 1}}, {2, 5, {1, 2}}, {3, 4, {1, 3, 1}}};

void lens(Outcome& out) {
  std::ostringstream edges;
  for (const auto& params : kLensCases) {
    const auto g = lens_graph_coprime(params);
    const auto report = validate_quantum_graph(g, QuantumFamily::lens);
    for (const auto& c : report.checks)
      out.require(c.passed, "p = " + std::to_string(params.p) + ": " + c.name);
    out.require(classify(g).circles.size() == params.n, "circle count for p = " + std::to_string(params.p));
    edges << (edges.tellp() ? "/" : "") << g.edge_count();
  }
  out.summary = "edge counts " + edges.str();
}

void module_validity(Outcome& out) {
  auto g = share(sphere_odd_graph(3));
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto report = validate_module(random_module(g, random_dims(rng, 3, 3), seed), 1e-10);
    worst = std::max(worst, report.max_residual);
    out.require(report.passed, "seed " + std::to_string(seed));
  }
  out.summary = "max residual " + sci(worst);
}

std::vector<PythagoreanModule> ck_modules() {
  auto g = share(sphere_odd_graph(3));
  std::mt19937 rng(606);
  std::vector<PythagoreanModule> out;
  for (std::uint64_t seed = 0; seed < 20; ++seed) out.push_back(random_module(g, random_dims(rng, 3, 3), 1000 + seed));
  return out;
}

void ck_relations(Outcome& out) {
  double worst = 0.0;
  for (const auto& m : ck_modules()) {
    auto r = ck_residuals(TruncatedLift(m, 3));
    worst = std::max(worst, r.max());
    out.require(r.passed(1e-9), "residual " + sci(r.max()));
  }
  out.summary = "max residual " + sci(worst);
}

void embedding_isometry(Outcome& out) {
  GaussianSource rng(77);
  double worst = 0.0;
  for (const auto& m : ck_modules()) {
    TruncatedLift t(m, 3);
    std::vector<ComplexMatrix> j;
    for (std::size_t k = 0; k <= 3; ++k) j.push_back(embedding_matrix(t, k));
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t k = static_cast<std::size_t>(trial % 4);
      ComplexVector x = rng.matrix(t.dimension(k), 1).col(0);
      const double dev = std::abs(embed_vector(t, {k, x}).coefficients.norm() - x.norm());
      worst = std::max(worst, dev);
      out.require(dev <= 1e-11, "deviation " + sci(dev));
    }
  }
  out.summary = "max deviation " + sci(worst);
}

void eigenvalues(Outcome& out) {
  double worst = 0.0, closest = 1e9;
  for (const Graph& graph : {sphere_odd_graph(3), sphere_even_graph(3)}) {
    auto g = share(graph);
    for (VertexIndex v = 0; v < g->vertex_count(); ++v) {
      auto loop = unique_loop(*g, v);
      if (!loop) continue;
      std::vector<Complex> found;
      for (int k = 0; k < 8; ++k) {
        const Complex z = root8(k);
        TruncatedLift t(one_dim_module(g, v, z), 3);
        const ComplexVector one = ComplexVector::Ones(1);
        const auto low = reduce_class(t, Path::vertex(*g, v), one, 3);
        const auto high = reduce_class(t, Path::vertex(*g, v), one, 4);
        const ComplexVector image = raising_matrix(t, *loop, 3) * low.coefficients;
        const Complex lambda = high.coefficients.dot(image);
        const double residual = (image - lambda * high.coefficients).norm();
        const double err = std::abs(lambda - std::conj(z));
        worst = std::max({worst, residual, err});
        out.require(residual <= 1e-10 && err <= 1e-10, "vertex " + g->vertex(v) + ", k = " + std::to_string(k));
        found.push_back(lambda);
      }
      for (std::size_t a = 0; a < found.size(); ++a)
        for (std::size_t b = a + 1; b < found.size(); ++b) closest = std::min(closest, std::abs(found[a] - found[b]));
    }
  }
  out.require(closest >= 0.7, "closest eigenvalues " + sci(closest));
  out.summary = "max error " + sci(worst) + ", min separation " + std::to_string(closest).substr(0, 5);
}

void completeness(Outcome& out) {
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 4; ++n) {
    graphs.push_back(sphere_odd_graph(n));
    graphs.push_back(sphere_even_graph(n));
  }
  for (const auto& params : kLensCases) graphs.push_back(lens_graph_coprime(params));
  for (const auto& graph : graphs) {
    auto g = share(graph);
    const auto found = oracle::one_dim_search(g);
    const auto s = classify(*g);
    out.require(found.circles == s.circles && found.points == s.points && found.other.empty(),
                std::to_string(g->vertex_count()) + "-vertex graph");
  }
  out.summary = std::to_string(graphs.size()) + " graphs";
}

void structure(Outcome& out) {
  auto g = share(sphere_odd_graph(3));
  std::mt19937 rng(10);
  GaussianSource vectors(11);
  std::vector<PythagoreanModule> modules;
  for (std::uint64_t seed = 0; seed < 50; ++seed) modules.push_back(random_module(g, random_dims(rng, 3, 3), 500 + seed));
  const std::size_t random_count = modules.size();
  // Known irreducibles keep the implications from holding vacuously.
  for (VertexIndex v = 0; v < 3; ++v) modules.push_back(one_dim_module(g, v, root8(static_cast<int>(v))));
  std::size_t irreducible = 0;
  for (const auto& m : modules) {
    if (!is_irreducible(m)) continue;
    ++irreducible;
    out.require(is_indecomposable(m), "irreducible but decomposable");
    for (int k = 0; k < 10; ++k) {
      ComplexVector x = vectors.matrix(static_cast<Eigen::Index>(m.total_dim()), 1).col(0);
      out.require(cyclic_span_dimension(m, x) == m.total_dim(), "orbit does not span");
    }
  }
  out.summary = std::to_string(random_count) + " random + 3 constructed, " + std::to_string(irreducible) + " irreducible";
}

void intertwiners(Outcome& out) {
  auto g = share(sphere_odd_graph(4));
  std::vector<PythagoreanModule> reps;
  for (VertexIndex v = 0; v < 4; ++v)
    for (int k = 0; k < 8; ++k) reps.push_back(one_dim_module(g, v, root8(k)));
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      const std::size_t dim = intertwiner_space(reps[a], reps[b]).dimension();
      out.require(dim == (a == b ? 1u : 0u), "dim Hom for pair " + std::to_string(a) + "," + std::to_string(b));
      if (a != b) {
        out.require(are_equivalent(reps[a], reps[b]).kind == Equivalence::inequivalent, "equivalence verdict");
        ++pairs;
      }
    }
  out.summary = std::to_string(pairs) + " distinct pairs";
}

void opposites(Outcome& out) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto g = sphere_odd_graph(n);
    const auto map = is_isomorphic(g, opposite(g));
    bool reversal = map.has_value();
    if (map)
      for (VertexIndex i = 0; i < n; ++i) reversal = reversal && (*map)[i] == n - 1 - i;
    out.require(reversal, "n = " + std::to_string(n));
  }
  out.summary = "n = 1..5, i -> n+1-i";
}

void additivity(Outcome& out) {
  auto g = share(sphere_odd_graph(3));
  std::mt19937 rng(13);
  for (std::uint64_t pair = 0; pair < 10; ++pair) {
    const auto d1 = random_dims(rng, 3, 2), d2 = random_dims(rng, 3, 2);
    auto m1 = random_module(g, d1, 300 + 2 * pair);
    auto m2 = random_module(g, d2, 301 + 2 * pair);
    const std::size_t m = pair % 4;
    TruncatedLift t(direct_sum(m1, m2), m), t1(m1, m), t2(m2, m);
    for (std::size_t k = 0; k <= m + 1; ++k)
      out.require(t.dimension(k) == t1.dimension(k) + t2.dimension(k), "dimension at level " + std::to_string(k));
    auto side = [&](std::size_t k) {
      std::vector<int> s;
      for (const auto& e : t.basis(k).entries()) s.push_back(e.fiber < d1[e.path.source()] ? 0 : 1);
      return s;
    };
    const auto lo = side(m), hi = side(m + 1);
    auto block_diagonal = [&](const ComplexMatrix& x, const std::vector<int>& rows, const std::vector<int>& cols) {
      for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (Eigen::Index c = 0; c < x.cols(); ++c)
          if (rows[static_cast<std::size_t>(r)] != cols[static_cast<std::size_t>(c)] && x(r, c) != Complex(0.0))
            return false;
      return true;
    };
    const auto gens = generator_matrices(t);
    for (const auto& x : gens.raising) out.require(block_diagonal(x, hi, lo), "raising matrix mixes summands");
    for (const auto& p : gens.projections) out.require(block_diagonal(p, lo, lo), "projection mixes summands");
    out.require(block_diagonal(embedding_matrix(t, m), hi, lo), "embedding mixes summands");
  }
  out.summary = "10 pairs, m = 0..3";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "odd spheres: n circles, no points", 1.0, odd_spheres},
      {2, "even spheres: n circles, points n+1 and n+2", 1.0, even_spheres},
      {3, "projective spaces: n circles, 10 edges at n = 3", 1.0, projective},
      {4, "coprime lens graphs validate and give n circles", 5.0, lens},
      {5, "random modules are valid", 0.0, module_validity},
      {6, "truncated Cuntz-Krieger relations hold at level 3", 10.0, ck_relations},
      {7, "embeddings are isometries", 0.0, embedding_isometry},
      {8, "loop eigenvalue is conj(z) and separates phases", 0.0, eigenvalues},
      {9, "one-dimensional search reproduces the classification", 0.0, completeness},
      {10, "irreducible implies cyclic and indecomposable", 0.0, structure},
      {11, "Hom dimensions are Kronecker deltas", 0.0, intertwiners},
      {12, "odd sphere graphs are isomorphic to their opposites", 0.0, opposites},
      {13, "lifts are additive and block diagonal", 0.0, additivity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0) out.require(seconds < c.time_limit, "took " + std::to_string(seconds) + " s");
    std::printf("%s  [%2d] %s (%s; %.3f s)\n", out.ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                out.summary.c_str(), seconds);
    for (const auto& note : out.notes) std::printf("        %s\n", note.c_str());
    if (!out.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
