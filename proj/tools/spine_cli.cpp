#include "spine/coords.hpp"
#include "spine/flips.hpp"
#include "spine/forms.hpp"
#include "spine/fuzz.hpp"
#include "spine/paths.hpp"
#include "spine/ribbon.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace spine;

namespace {

struct Options {
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  int trials = 100;
  int trial = -1;
  std::string suite;
  std::string format = "text";
  std::string graph;
  std::string path;
  std::string edge;
  std::string output;
  std::string subset;
  std::string mode = "auto";
  bool printed = false;
};

bool tsv(const Options& o) { return o.format == "tsv"; }

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit_graph(const FatGraph& g, const Options& o) {
  std::string text = format_graph(g);
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.output);
  f << text;
}

std::string tokens_str(const FatGraph& g, const std::vector<int>& edges) {
  std::vector<std::string> names;
  for (int e : edges) names.push_back(g.edge(e).name);
  return join(names);
}

int cmd_validate(const Options& o) {
  auto g = load_graph(o.graph);
  auto r = validate(g);
  if (tsv(o)) {
    for (auto& c : r.checks) std::cout << (c.passed ? "PASS" : "FAIL") << '\t' << c.name << '\t' << c.detail << '\n';
  } else {
    std::cout << r.str();
    std::cout << (r.ok() ? "valid" : "invalid") << '\n';
  }
  return r.ok() ? 0 : 1;
}

int cmd_windows(const Options& o) {
  auto g = load_graph(o.graph);
  auto ws = windows(g);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto& w = ws[i];
    std::string cusp = g.vertices()[w.start_cusp].id;
    std::string toks = tokens_str(g, w.coordinate_tokens());
    if (tsv(o))
      std::cout << i << '\t' << w.hole << '\t' << cusp << '\t' << toks << '\n';
    else
      std::cout << "window " << i << " (hole " << w.hole << ", cusp " << cusp << "): " << toks << '\n';
  }
  return 0;
}

int cmd_dual_arcs(const Options& o) {
  auto g = load_graph(o.graph);
  for (int e : g.coordinate_edges()) {
    auto arc = dual_arc(g, e);
    auto word = to_word(g, arc).str();
    auto lam = lambda_formal(g, arc).str();
    if (tsv(o))
      std::cout << g.edge(e).name << '\t' << word << '\t' << lam << '\n';
    else
      std::cout << g.edge(e).name << ": " << word << "  lambda = " << lam << '\n';
  }
  return 0;
}

int cmd_lambda(const Options& o) {
  auto g = load_graph(o.graph);
  auto p = resolve(g, PathWord::parse(o.path));
  auto mw = compile(g, p);
  auto formal = lambda_formal(g, p);
  auto value = lambda_numeric(g, p, CoordinatePoint::from_graph(g));
  if (tsv(o)) {
    std::cout << to_word(g, p).str() << '\t' << mw.str() << '\t' << formal.str() << '\t' << value.str() << '\n';
  } else {
    std::cout << "path: " << to_word(g, p).str() << '\n';
    std::cout << "word: " << mw.str() << '\n';
    std::cout << "matrix: " << str(evaluate_formal(mw)) << '\n';
    std::cout << "lambda: " << formal.str() << '\n';
    std::cout << "value: " << value.str() << '\n';
  }
  return 0;
}

int cmd_geodesic(const Options& o) {
  auto g = load_graph(o.graph);
  auto p = resolve(g, PathWord::parse(o.path));
  auto formal = geodesic_formal(g, p);
  auto num = geodesic_numeric(g, p, CoordinatePoint::from_graph(g));
  auto raw = std::visit([](auto& v) { return v.str(); }, formal.raw_trace);
  if (tsv(o)) {
    std::cout << to_word(g, p).str() << '\t' << formal.str() << '\t' << raw << '\t' << num.str() << '\n';
  } else {
    std::cout << "path: " << to_word(g, p).str() << '\n';
    std::cout << "word: " << compile(g, p).str() << '\n';
    std::cout << "G: " << formal.str() << '\n';
    std::cout << "raw trace: " << raw << '\n';
    std::cout << "value: " << num.str() << '\n';
  }
  return 0;
}

int cmd_lambda_from_shear(const Options& o) {
  auto g = load_graph(o.graph);
  auto l = lambda_of_dual_arcs(g, CoordinatePoint::from_graph(g));
  store_lambdas(g, l);
  emit_graph(g, o);
  return 0;
}

int cmd_shear_from_lambda(const Options& o) {
  auto g = load_graph(o.graph);
  auto p = shear_from_lambda(g, read_lambdas(g));
  store_point(g, p);
  emit_graph(g, o);
  return 0;
}

int cmd_flip(const Options& o) {
  auto g = load_graph(o.graph);
  auto r = flip(g, g.edge_index(o.edge), CoordinatePoint::from_graph(g));
  store_point(r.graph, r.point);
  emit_graph(r.graph, o);
  return 0;
}

int cmd_verify_flip_identities(const Options& o) {
  auto reports = verify_flip_matrix_identities();
  bool ok = true;
  auto show = [&](const IdentityReport& r, bool graded) {
    if (tsv(o)) {
      std::cout << r.name << '\t' << (r.holds ? "holds" : "fails") << '\t' << r.sign << '\t' << r.u_degree << '\t'
                << r.statement << '\n';
      return;
    }
    if (graded)
      std::cout << (r.holds ? "PASS " : "FAIL ");
    else
      std::cout << (r.holds ? "holds " : "fails ");
    std::cout << r.name << ": " << r.statement;
    if (r.holds)
      std::cout << "  [" << (r.sign > 0 ? "+" : "-") << ", u-degree " << r.u_degree << "]";
    else
      std::cout << "  [residual " << r.residual << "]";
    std::cout << '\n';
  };
  for (auto& r : reports) {
    show(r, true);
    ok = ok && r.holds;
  }
  if (o.printed) {
    if (!tsv(o)) std::cout << "printed index placement, for comparison:\n";
    for (auto& r : printed_identity_forms()) show(r, false);
  }
  return ok ? 0 : 1;
}

int cmd_forms(const Options& o) {
  auto g = load_graph(o.graph);
  auto sep = tsv(o) ? "\t" : " ";
  auto dump = [&](const char* title, const CoordinateIndexedMatrix& m) {
    std::cout << "[" << title << "]\n";
    std::cout << "labels";
    for (auto& l : m.labels) std::cout << sep << l;
    std::cout << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::cout << m.labels[i];
      for (std::size_t j = 0; j < m.size(); ++j) std::cout << sep << to_string(m.m[i][j]);
      std::cout << '\n';
    }
  };
  dump("poisson", poisson_matrix(g));
  dump("window", window_form_matrix(g));
  dump("penner", penner_form_matrix(g));
  auto c = center_vectors(g);
  std::cout << "[center]\n";
  std::cout << "labels";
  for (auto& l : c.labels) std::cout << sep << l;
  std::cout << '\n';
  for (std::size_t k = 0; k < c.vectors.size(); ++k) {
    std::cout << "c" << k;
    for (auto& x : c.vectors[k]) std::cout << sep << to_string(x);
    std::cout << '\n';
  }
  for (auto& w : c.casimir_loops) std::cout << "omega" << sep << w << '\n';
  return 0;
}

int cmd_verify_inverse(const Options& o) {
  auto g = load_graph(o.graph);
  auto P = poisson_matrix(g);
  auto M = window_form_matrix(g);
  InverseCheck r;
  std::string used;
  std::vector<std::string> subset = split(o.subset);
  std::string mode = o.mode;
  if (!subset.empty()) {
    mode = "subset";
  } else if (mode == "auto" || mode == "inner") {
    for (int e : g.coordinate_edges())
      if (g.edge(e).kind == EdgeKind::Inner) subset.push_back(g.edge(e).name);
    if (subset.empty() && mode == "auto") mode = "leaf";
    else mode = "inner";
  } else if (mode == "all") {
    subset = P.labels;
  } else if (mode != "leaf") {
    throw std::invalid_argument("unknown mode " + mode);
  }
  if (mode == "leaf") {
    r = verify_inverse_on_leaf(M, P);
    used = "leaf: P M P = c P";
  } else {
    r = verify_inverse(M, P, subset);
    used = join(subset);
  }
  if (tsv(o)) {
    std::cout << mode << '\t' << used << '\t' << to_string(r.c) << '\t' << to_string(r.residual) << '\t'
              << r.dimension << '\n';
  } else {
    std::cout << "mode: " << mode << " (" << used << ")\n";
    std::cout << "dimension: " << r.dimension << '\n';
    std::cout << "c = " << to_string(r.c) << '\n';
    std::cout << "residual = " << to_string(r.residual) << '\n';
    std::cout << "scalar: " << (r.scalar ? "yes" : "no") << '\n';
  }
  return r.scalar ? 0 : 1;
}

int cmd_fuzz(const Options& o) {
  FuzzConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.tolerance = o.tolerance;
  if (o.trial >= 0) cfg.only_trial = o.trial;
  if (!o.suite.empty()) {
    cfg.suites = split(o.suite);
    for (auto& s : cfg.suites)
      if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
        throw std::invalid_argument("unknown suite " + s);
  }
  auto rep = run_fuzz(cfg);
  std::cout << (tsv(o) ? rep.tsv() : rep.text());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spine: fat-graph coordinates, flips and forms"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tolerance", o.tolerance, "numeric tolerance");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--trials", o.trials, "number of fuzz trials");
  app.add_option("--trial", o.trial, "run a single fuzz trial (reproducer)");
  app.add_option("--suite", o.suite, "comma-separated suite names");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "tsv"}));
  app.fallthrough();

  auto graph_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("graph", o.graph, "graph file")->required()->check(CLI::ExistingFile);
    return c;
  };
  auto* validate_c = graph_cmd("validate", "check the ribbon-graph axioms");
  auto* windows_c = graph_cmd("windows", "window orders of edges per hole");
  auto* dual_c = graph_cmd("dual-arcs", "dual arc of each edge and its lambda-length");
  auto* lambda_c = graph_cmd("lambda", "lambda-length of an arc");
  lambda_c->add_option("path", o.path, "comma-separated edge tokens")->required();
  auto* geo_c = graph_cmd("geodesic", "geodesic function of a closed path");
  geo_c->add_option("path", o.path, "comma-separated edge tokens")->required();
  auto* lfs_c = graph_cmd("lambda-from-shear", "write lambda values computed from shear coordinates");
  lfs_c->add_option("-o,--output", o.output, "output file (default stdout)");
  auto* sfl_c = graph_cmd("shear-from-lambda", "write shear coordinates computed from lambda values");
  sfl_c->add_option("-o,--output", o.output, "output file (default stdout)");
  auto* flip_c = graph_cmd("flip", "flip an edge");
  flip_c->add_option("edge", o.edge, "edge name")->required();
  flip_c->add_option("-o,--output", o.output, "output file (default stdout)");
  auto* vfi_c = app.add_subcommand("verify-flip-identities", "check the flip matrix identities");
  vfi_c->add_flag("--printed", o.printed, "also report the identities with the printed index placement");
  auto* forms_c = graph_cmd("forms", "Poisson, window and Penner matrices plus center");
  auto* vi_c = graph_cmd("verify-inverse", "window form times Poisson bivector");
  vi_c->add_option("--subset", o.subset, "comma-separated coordinate labels");
  vi_c->add_option("--mode", o.mode, "auto | inner | leaf | all")
      ->check(CLI::IsMember({"auto", "inner", "leaf", "all"}));
  auto* fuzz_c = app.add_subcommand("fuzz", "randomized property suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_c->parsed()) return cmd_validate(o);
    if (windows_c->parsed()) return cmd_windows(o);
    if (dual_c->parsed()) return cmd_dual_arcs(o);
    if (lambda_c->parsed()) return cmd_lambda(o);
    if (geo_c->parsed()) return cmd_geodesic(o);
    if (lfs_c->parsed()) return cmd_lambda_from_shear(o);
    if (sfl_c->parsed()) return cmd_shear_from_lambda(o);
    if (flip_c->parsed()) return cmd_flip(o);
    if (vfi_c->parsed()) return cmd_verify_flip_identities(o);
    if (forms_c->parsed()) return cmd_forms(o);
    if (vi_c->parsed()) return cmd_verify_inverse(o);
    if (fuzz_c->parsed()) return cmd_fuzz(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
