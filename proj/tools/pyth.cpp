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

// Command-line front end. Exit codes: 0 success, 1 a well-formed check
// failed, 2 usage or data error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifdef PYTH_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "pyth/pyth.hpp"

namespace {

using pyth::Json;

enum Exit : int { kOk = 0, kCheckFailed = 1, kDataError = 2 };

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pyth::Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw pyth::Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw pyth::Error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

pyth::VertexIndex vertex_arg(const pyth::Graph& g, const std::string& label) {
  auto v = g.find_vertex(label);
  if (!v) throw pyth::Error("unknown vertex '" + label + "'");
  return *v;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// ---- graph -----------------------------------------------------------------

struct GraphMake {
  std::string family;
  std::size_t n = 1;
  long p = 2;
  std::vector<long> weights;
  std::string admissibility = "no-revisit";
  std::string out, dot;
};

int graph_make(const GraphMake& a, const Options&) {
  pyth::Graph g = [&] {
    if (a.family == "sphere-odd") return pyth::sphere_odd_graph(a.n);
    if (a.family == "sphere-even") return pyth::sphere_even_graph(a.n);
    if (a.family == "projective") return pyth::projective_graph(a.n);
    const auto rule = a.admissibility == "literal" ? pyth::LensAdmissibility::distinct_ranges
                                                   : pyth::LensAdmissibility::no_revisit;
    return pyth::lens_graph_coprime({a.n, a.p, a.weights}, rule);
  }();
  write_json(a.out, pyth::graph_to_json(g));
  if (!a.dot.empty()) write_text(a.dot, pyth::to_dot(g));
  return kOk;
}

struct GraphCheck {
  std::string file, family;
};

int graph_check(const GraphCheck& a, const Options& o) {
  const pyth::Graph g = pyth::graph_from_json(read_json(a.file));
  if (!a.family.empty()) {
    static const std::map<std::string, pyth::QuantumFamily> families{
        {"sphere-odd", pyth::QuantumFamily::sphere_odd},
        {"sphere-even", pyth::QuantumFamily::sphere_even},
        {"projective", pyth::QuantumFamily::projective},
        {"lens", pyth::QuantumFamily::lens}};
    const auto report = pyth::validate_quantum_graph(g, families.at(a.family));
    if (o.json()) {
      Json checks = Json::array();
      for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      std::cout << Json{{"family", a.family}, {"passed", report.passed()}, {"checks", checks}}.dump(2) << "\n";
    } else {
      for (const auto& c : report.checks)
        std::cout << (c.passed ? "ok    " : "FAIL  ") << c.name
                  << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    return report.passed() ? kOk : kCheckFailed;
  }
  const auto report = pyth::check_hypotheses(g);
  const bool ok = report.verdict != pyth::GraphClass::unsupported;
  if (o.json()) {
    std::cout << Json{{"vertices", g.vertex_count()},
                      {"edges", g.edge_count()},
                      {"class", pyth::to_string(report.verdict)},
                      {"diagnostics", report.diagnostics}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << g.vertex_count() << " vertices, " << g.edge_count() << " edges, class "
              << pyth::to_string(report.verdict) << "\n";
    for (const auto& d : report.diagnostics) std::cout << "  " << d << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

// ---- module ----------------------------------------------------------------

struct ModuleMake {
  std::string graph, vertex, z, out;
};

int module_make(const ModuleMake& a, const Options&) {
  auto g = pyth::share(pyth::graph_from_json(read_json(a.graph)));
  const auto v = vertex_arg(*g, a.vertex);
  auto m = a.z.empty() ? pyth::isolated_module(g, v) : pyth::one_dim_module(g, v, pyth::parse_complex(a.z));
  write_json(a.out, pyth::module_to_json(m));
  return kOk;
}

struct ModuleRandom {
  std::string graph, out;
  std::vector<std::size_t> dims;
  std::uint64_t seed = 0;
};

int module_random(const ModuleRandom& a, const Options&) {
  auto g = pyth::share(pyth::graph_from_json(read_json(a.graph)));
  write_json(a.out, pyth::module_to_json(pyth::random_module(g, a.dims, a.seed)));
  return kOk;
}

struct ModuleScale {
  std::string module, edge, factor = "1", out;
};

int module_scale(const ModuleScale& a, const Options&) {
  auto m = pyth::module_from_json(read_json(a.module));
  auto ops = m.ops();
  ops[m.graph().edge_index(a.edge)] *= pyth::parse_complex(a.factor);
  write_json(a.out, pyth::module_to_json(pyth::PythagoreanModule(m.graph_ptr(), m.dims(), ops)));
  return kOk;
}

struct ModuleCheck {
  std::string module;
  double tol = pyth::kDefaultTolerance;
};

int module_check(const ModuleCheck& a, const Options& o) {
  auto m = pyth::module_from_json(read_json(a.module));
  const auto report = pyth::validate_module(m, a.tol);
  const pyth::Graph& g = m.graph();
  if (o.json()) {
    Json res = Json::object();
    for (pyth::VertexIndex v = 0; v < g.vertex_count(); ++v)
      res[g.vertex(v)] = report.residuals[v] ? Json(*report.residuals[v]) : Json(nullptr);
    std::cout << Json{{"passed", report.passed}, {"max_residual", report.max_residual}, {"residuals", res}}.dump(2)
              << "\n";
  } else {
    for (pyth::VertexIndex v = 0; v < g.vertex_count(); ++v)
      std::cout << "vertex " << g.vertex(v) << ": "
                << (report.residuals[v] ? fmt(*report.residuals[v]) : std::string("exempt")) << "\n";
    std::cout << (report.passed ? "valid" : "invalid") << " (max residual " << fmt(report.max_residual)
              << ", tolerance " << fmt(a.tol) << ")\n";
  }
  return report.passed ? kOk : kCheckFailed;
}

struct ModuleOne {
  std::string module;
};

int module_irreducible(const ModuleOne& a, const Options& o) {
  auto m = pyth::module_from_json(read_json(a.module));
  const bool irr = pyth::is_irreducible(m);
  const bool ind = pyth::is_indecomposable(m);
  if (o.json())
    std::cout << Json{{"irreducible", irr},
                      {"indecomposable", ind},
                      {"algebra_dimension", pyth::generated_algebra_dimension(m)},
                      {"total_dimension", m.total_dim()}}
                     .dump(2)
              << "\n";
  else
    std::cout << (irr ? "irreducible" : "reducible") << ", " << (ind ? "indecomposable" : "decomposable") << "\n";
  return irr ? kOk : kCheckFailed;
}

struct ModulePair {
  std::string first, second;
};

int module_intertwiners(const ModulePair& a, const Options& o) {
  auto m1 = pyth::module_from_json(read_json(a.first));
  auto m2 = pyth::module_from_json(read_json(a.second));
  const auto space = pyth::intertwiner_space(m1, m2);
  if (o.json()) {
    Json basis = Json::array();
    for (const auto& theta : space.basis) {
      Json blocks = Json::object();
      for (pyth::VertexIndex v = 0; v < m1.graph().vertex_count(); ++v)
        blocks[m1.graph().vertex(v)] = pyth::matrix_to_json(theta.blocks[v]);
      basis.push_back(blocks);
    }
    std::cout << Json{{"dimension", space.dimension()}, {"basis", basis}}.dump(2) << "\n";
  } else {
    std::cout << "dim Hom = " << space.dimension() << "\n";
  }
  return kOk;
}

int module_equivalent(const ModulePair& a, const Options& o) {
  auto m1 = pyth::module_from_json(read_json(a.first));
  auto m2 = pyth::module_from_json(read_json(a.second));
  const auto verdict = pyth::are_equivalent(m1, m2);
  const char* word = verdict.kind == pyth::Equivalence::equivalent     ? "equivalent"
                     : verdict.kind == pyth::Equivalence::inequivalent ? "inequivalent"
                                                                       : "undetermined";
  if (o.json()) {
    Json j{{"verdict", word}};
    if (verdict.certificate) {
      Json blocks = Json::object();
      for (pyth::VertexIndex v = 0; v < m1.graph().vertex_count(); ++v)
        blocks[m1.graph().vertex(v)] = pyth::matrix_to_json(verdict.certificate->blocks[v]);
      j["certificate"] = blocks;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << word << "\n";
  }
  return verdict.kind == pyth::Equivalence::equivalent ? kOk : kCheckFailed;
}

// ---- lift ------------------------------------------------------------------

struct LiftArgs {
  std::string module, vertex, out;
  std::size_t level = 0;
  double tol = pyth::kDefaultTolerance;
};

int lift_build(const LiftArgs& a, const Options&) {
  pyth::TruncatedLift t(pyth::module_from_json(read_json(a.module)), a.level);
  write_json(a.out, pyth::lift_to_json(t));
  return kOk;
}

int lift_check(const LiftArgs& a, const Options& o) {
  auto m = pyth::module_from_json(read_json(a.module));
  pyth::TruncatedLift t(m, a.level, pyth::ModuleCheck::skip);
  const auto r = pyth::ck_residuals(t);
  const bool ok = r.passed(a.tol);
  const std::vector<std::pair<const char*, double>> rows{
      {"projection_idempotence", r.projection_idempotence},
      {"projection_orthogonality", r.projection_orthogonality},
      {"projection_completeness", r.projection_completeness},
      {"source_projection", r.source_projection},
      {"range_projection", r.range_projection},
      {"range_projection_embedded", r.range_projection_embedded},
      {"embedding_isometry", r.embedding_isometry}};
  if (o.json()) {
    Json j{{"level", a.level}, {"dimension", t.dimension()}, {"passed", ok}, {"max", r.max()}};
    for (const auto& [name, value] : rows) j["residuals"][name] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "level " << a.level << ", dim W = " << t.dimension() << "\n";
    for (const auto& [name, value] : rows) std::cout << "  " << name << ": " << fmt(value) << "\n";
    std::cout << (ok ? "relations hold" : "relations fail") << " (tolerance " << fmt(a.tol) << ")\n";
  }
  return ok ? kOk : kCheckFailed;
}

int lift_eigen(const LiftArgs& a, const Options& o) {
  pyth::TruncatedLift t(pyth::module_from_json(read_json(a.module)), a.level);
  const auto v = vertex_arg(t.graph(), a.vertex);
  const auto action = pyth::loop_action(t, v);
  const bool ok = action.invariance_residual <= a.tol;
  if (o.json()) {
    Json eig = Json::array();
    for (auto z : action.eigenvalues) eig.push_back(pyth::format_complex(z));
    std::cout << Json{{"vertex", a.vertex},
                      {"level", a.level},
                      {"eigenvalues", eig},
                      {"compression", pyth::matrix_to_json(action.compression)},
                      {"invariance_residual", action.invariance_residual}}
                     .dump(2)
              << "\n";
  } else {
    for (auto z : action.eigenvalues) std::cout << pyth::format_complex(z) << "\n";
    std::cout << "invariance residual " << fmt(action.invariance_residual) << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

// ---- spectrum --------------------------------------------------------------

int classify_cmd(const std::string& file, const Options&) {
  const pyth::Graph g = pyth::graph_from_json(read_json(file));
  std::cout << pyth::spectrum_to_json(pyth::classify(g)).dump() << "\n";
  return kOk;
}

int spectrum_module(const ModuleMake& a, const Options&) {
  auto g = pyth::share(pyth::graph_from_json(read_json(a.graph)));
  pyth::SpectrumComponent c{vertex_arg(*g, a.vertex), std::nullopt};
  if (!a.z.empty()) c.phase = pyth::parse_complex(a.z);
  write_json(a.out, pyth::module_to_json(pyth::representative_module(g, c)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-space graphs, Pythagorean modules and their lifts"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::function<int()> action;

  // graph
  auto* graph = app.add_subcommand("graph", "Build and check graphs")->require_subcommand(1);
  GraphMake gm;
  auto* make = graph->add_subcommand("make", "Build a family graph as JSON");
  make->add_option("family", gm.family)->required()->check(
      CLI::IsMember({"sphere-odd", "sphere-even", "projective", "lens"}));
  make->add_option("--n", gm.n, "Number of looped vertices")->check(CLI::PositiveNumber);
  make->add_option("--p", gm.p, "Lens order");
  make->add_option("--weights", gm.weights, "Lens weights m_1..m_n")->delimiter(',');
  make->add_option("--admissibility", gm.admissibility, "Lens admissibility reading")
      ->check(CLI::IsMember({"no-revisit", "literal"}));
  make->add_option("--out", gm.out, "Output file (default stdout)");
  make->add_option("--dot", gm.dot, "Also write Graphviz DOT here");
  make->callback([&] { action = [&] { return graph_make(gm, opts); }; });

  GraphCheck gc;
  auto* gcheck = graph->add_subcommand("check", "Structural report; with --family, the family checks");
  gcheck->add_option("graph", gc.file)->required();
  gcheck->add_option("--family", gc.family)->check(
      CLI::IsMember({"sphere-odd", "sphere-even", "projective", "lens"}));
  gcheck->callback([&] { action = [&] { return graph_check(gc, opts); }; });

  // module
  auto* module = app.add_subcommand("module", "Pythagorean modules")->require_subcommand(1);
  ModuleMake mm;
  auto* mmake = module->add_subcommand("make", "One-dimensional module at a vertex (isolated without --z)");
  mmake->add_option("graph", mm.graph)->required();
  mmake->add_option("--vertex", mm.vertex)->required();
  mmake->add_option("--z", mm.z, "Loop scalar, e.g. 0.6+0.8i or exp(1/8)");
  mmake->add_option("--out", mm.out);
  mmake->callback([&] { action = [&] { return module_make(mm, opts); }; });

  ModuleRandom mr;
  auto* mrand = module->add_subcommand("random", "Seeded random module");
  mrand->add_option("graph", mr.graph)->required();
  mrand->add_option("--dims", mr.dims, "Dimensions in vertex order")->delimiter(',')->required();
  mrand->add_option("--seed", mr.seed)->capture_default_str();
  mrand->add_option("--out", mr.out);
  mrand->callback([&] { action = [&] { return module_random(mr, opts); }; });

  ModuleScale ms;
  auto* mscale = module->add_subcommand("scale", "Multiply one edge operator by a scalar");
  mscale->add_option("module", ms.module)->required();
  mscale->add_option("--edge", ms.edge)->required();
  mscale->add_option("--factor", ms.factor)->required();
  mscale->add_option("--out", ms.out);
  mscale->callback([&] { action = [&] { return module_scale(ms, opts); }; });

  ModuleCheck mc;
  auto* mcheck = module->add_subcommand("check", "Per-vertex isometry residuals");
  mcheck->add_option("module", mc.module)->required();
  mcheck->add_option("--tol", mc.tol)->capture_default_str();
  mcheck->callback([&] { action = [&] { return module_check(mc, opts); }; });

  ModuleOne mi;
  auto* mirr = module->add_subcommand("irreducible", "Irreducibility and indecomposability");
  mirr->add_option("module", mi.module)->required();
  mirr->callback([&] { action = [&] { return module_irreducible(mi, opts); }; });

  ModulePair mp;
  auto* mint = module->add_subcommand("intertwiners", "Basis of Hom(M1, M2)");
  mint->add_option("first", mp.first)->required();
  mint->add_option("second", mp.second)->required();
  mint->callback([&] { action = [&] { return module_intertwiners(mp, opts); }; });

  auto* meq = module->add_subcommand("equivalent", "Decide whether two modules are equivalent");
  meq->add_option("first", mp.first)->required();
  meq->add_option("second", mp.second)->required();
  meq->callback([&] { action = [&] { return module_equivalent(mp, opts); }; });

  // lift
  auto* lift = app.add_subcommand("lift", "Truncated lifted representations")->require_subcommand(1);
  LiftArgs la;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--module", la.module)->required();
    sub->add_option("--level", la.level)->required();
    sub->add_option("--tol", la.tol)->capture_default_str();
  };
  auto* lbuild = lift->add_subcommand("build", "Basis listing and generator matrices");
  common(lbuild);
  lbuild->add_option("--out", la.out);
  lbuild->callback([&] { action = [&] { return lift_build(la, opts); }; });
  auto* lcheck = lift->add_subcommand("check", "Cuntz-Krieger relation residuals");
  common(lcheck);
  lcheck->callback([&] { action = [&] { return lift_check(la, opts); }; });
  auto* leigen = lift->add_subcommand("eigen", "Action of the loop at a vertex on its classes");
  common(leigen);
  leigen->add_option("--vertex", la.vertex)->required();
  leigen->callback([&] { action = [&] { return lift_eigen(la, opts); }; });

  // classify / spectrum
  std::string classify_file;
  auto* cls = app.add_subcommand("classify", "Spectrum description of a graph");
  cls->add_option("graph", classify_file)->required();
  cls->callback([&] { action = [&] { return classify_cmd(classify_file, opts); }; });

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum representatives")->require_subcommand(1);
  ModuleMake sm;
  auto* smod = spectrum->add_subcommand("module", "Representative module of a spectrum component");
  smod->add_option("graph", sm.graph)->required();
  smod->add_option("--vertex", sm.vertex)->required();
  smod->add_option("--z", sm.z, "Phase for a circle component");
  smod->add_option("--out", sm.out);
  smod->callback([&] { action = [&] { return spectrum_module(sm, opts); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDataError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opts.json()) std::cout << Json{{"error", e.what()}}.dump() << "\n";
    return kDataError;
  }
}
