#include "spine/fuzz.hpp"

#include "spine/flips.hpp"
#include "spine/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace spine {

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  // splitmix64 over (seed, trial)
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(trial) + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

std::optional<FatGraph> try_census(Rng& rng, SurfaceType t) {
  const int E = t.expected_edges();
  const int V3 = 4 * t.g - 4 + 2 * t.s() + t.n;
  std::vector<HalfEdge> halves;
  std::vector<Vertex> verts;
  auto new_half = [&]() {
    halves.push_back({"h" + std::to_string(halves.size() + 1), -1, -1});
    return static_cast<int>(halves.size() - 1);
  };
  std::vector<int> free;
  std::vector<char> is_cusp_half;
  std::vector<std::array<int, 2>> loops;
  for (int i = 0; i < t.so; ++i) {
    int s = new_half(), x = new_half(), y = new_half();
    verts.push_back({"u" + std::to_string(i + 1), {s, x, y}});
    free.push_back(s);
    loops.push_back({x, y});
  }
  for (int i = 0; i < V3 - t.so; ++i) {
    int a = new_half(), b = new_half(), c = new_half();
    verts.push_back({"v" + std::to_string(i + 1), {a, b, c}});
    free.insert(free.end(), {a, b, c});
  }
  is_cusp_half.assign(halves.size() + t.n, 0);
  for (int i = 0; i < t.n; ++i) {
    int k = new_half();
    verts.push_back({"c" + std::to_string(i + 1), {k}});
    free.push_back(k);
    is_cusp_half[k] = 1;
  }
  if (static_cast<int>(free.size()) != 2 * (E - t.so)) return std::nullopt;

  for (int attempt = 0; attempt < 200; ++attempt) {
    auto f = free;
    for (std::size_t i = f.size(); i > 1; --i) std::swap(f[i - 1], f[rng.below(i)]);
    bool ok = true;
    for (std::size_t i = 0; i < f.size(); i += 2) ok = ok && !(is_cusp_half[f[i]] && is_cusp_half[f[i + 1]]);
    if (!ok) continue;
    std::vector<Edge> edges;
    int np = 0, ni = 0;
    for (std::size_t i = 0; i < f.size(); i += 2) {
      Edge e;
      int a = f[i], b = f[i + 1];
      if (is_cusp_half[a] || is_cusp_half[b]) {
        e.kind = EdgeKind::Pending;
        e.name = "p" + std::to_string(++np);
        if (!is_cusp_half[a]) std::swap(a, b);  // cusp half first
      } else {
        e.kind = EdgeKind::Inner;
        e.name = "e" + std::to_string(++ni);
      }
      e.halves = {a, b};
      edges.push_back(e);
    }
    for (std::size_t i = 0; i < loops.size(); ++i)
      edges.push_back({"w" + std::to_string(i + 1), EdgeKind::Loop, loops[i], std::nullopt});
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
      auto rank = [](EdgeKind k) { return k == EdgeKind::Pending ? 0 : k == EdgeKind::Inner ? 1 : 2; };
      return rank(x.kind) < rank(y.kind);
    });
    FatGraph g(t, halves, verts, edges);
    if (validate(g).ok()) return g;
  }
  return std::nullopt;
}

}  // namespace

FatGraph random_graph(Rng& rng, const GraphBounds& b) {
  for (;;) {
    SurfaceType t;
    t.g = static_cast<int>(rng.below(b.max_genus + 1));
    t.n = 1 + static_cast<int>(rng.below(b.max_cusps));
    t.sh = 1 + static_cast<int>(rng.below(std::min(t.n, b.max_holes)));
    t.so = static_cast<int>(rng.below(b.max_holes - t.sh + 1));
    int V3 = 4 * t.g - 4 + 2 * t.s() + t.n;
    if (V3 < 1 || V3 < t.so || t.expected_edges() < 1) continue;
    if (auto g = try_census(rng, t)) return *g;
  }
}

CoordinatePoint random_exact_point(const FatGraph& g, Rng& rng) {
  CoordinatePoint p;
  for (auto& e : g.edges()) {
    if (e.kind == EdgeKind::Loop) {
      Rational r(static_cast<long>(rng.below(5) + 2), static_cast<long>(rng.below(2) + 1));
      if (r < 1) r = 1 / r;
      Omega o;
      o.exact = Rational(r + 1 / r);
      o.value = to_double(*o.exact);
      o.source = "omega=" + to_string(*o.exact);
      p.omega[e.name] = o;
    } else {
      p.t[e.name] = Positive::exact(Rational(static_cast<long>(rng.below(6) + 1), static_cast<long>(rng.below(6) + 1)));
    }
  }
  return p;
}

std::string graph_signature(const FatGraph& g) {
  std::vector<std::string> words;
  for (auto& v : g.vertices()) {
    std::vector<std::string> names;
    for (int h : v.halves) names.push_back(g.edge(g.edge_of(h)).name);
    std::vector<std::string> best = names;
    for (std::size_t r = 1; r < names.size(); ++r) {
      std::rotate(names.begin(), names.begin() + 1, names.end());
      best = std::min(best, names);
    }
    std::string w;
    for (auto& n : best) w += n + " ";
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  std::string s;
  for (auto& w : words) s += "(" + w + ")";
  return s;
}

namespace {

bool same_squares(const CoordinatePoint& a, const CoordinatePoint& b) {
  if (a.t.size() != b.t.size()) return false;
  for (auto& [k, v] : a.t) {
    auto it = b.t.find(k);
    if (it == b.t.end() || !v.square || !it->second.square || *v.square != *it->second.square) return false;
  }
  return true;
}

bool close(double x, double y, double tol) { return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)}); }

struct Trial {
  int index;
  std::uint64_t seed;
  FatGraph g;
  Rng rng;
};

using SuiteFn = std::function<void(Trial&, SuiteResult&, const FuzzConfig&)>;

void fail(SuiteResult& r, const Trial& t, const std::string& what) {
  ++r.failures;
  if (r.counterexamples.size() < 20)
    r.counterexamples.push_back("trial " + std::to_string(t.index) + " (graph seed " + std::to_string(t.seed) + "): " + what);
}

std::string census(const FatGraph& g) {
  auto& ty = g.type();
  return "g=" + std::to_string(ty.g) + " sh=" + std::to_string(ty.sh) + " so=" + std::to_string(ty.so) +
         " n=" + std::to_string(ty.n);
}

void suite_monomiality(Trial& t, SuiteResult& r, const FuzzConfig&) {
  for (int e : t.g.coordinate_edges()) {
    ++r.checked;
    HalfPath arc = dual_arc(t.g, e);
    LaurentPoly lam = lambda_formal(t.g, arc);
    LaurentPoly expect(1);
    for (auto& [name, k] : coordinate_counts(t.g, arc)) expect *= LaurentPoly::variable(t_symbol(name), k);
    bool omega_free = true;
    for (int l : t.g.loop_edges()) omega_free = omega_free && !lam.depends_on(t.g.edge(l).name);
    if (!(lam == expect) || !omega_free)
      fail(r, t, "dual arc of " + t.g.edge(e).name + " gives " + lam.str() + ", expected " + expect.str());
  }
}

void suite_positivity(Trial& t, SuiteResult& r, const FuzzConfig& cfg) {
  for (int k = 0; k < cfg.arcs_per_graph; ++k) {
    auto p = random_path(t.g, t.rng, 16);
    if (!p) continue;
    ++r.checked;
    ++r.tally["arc words"];
    auto M = evaluate_formal(compile(t.g, *p));
    for (auto* x : {&M.a, &M.b, &M.c, &M.d})
      if (!positivity_check(*x)) {
        fail(r, t, "arc " + to_word(t.g, *p).str() + " has entry " + x->str());
        break;
      }
    // reversing the path flips every loop token and must keep the lambda-length
    if (lambda_formal(t.g, reverse_path(t.g, *p)) != sign_normalized(M.b))
      fail(r, t, "arc " + to_word(t.g, *p).str() + " changes lambda-length when reversed");
  }
  for (int k = 0; k < cfg.closed_per_graph; ++k) {
    auto p = random_path(t.g, t.rng, 16, true);
    if (!p) continue;
    ++r.checked;
    ++r.tally["closed words"];
    auto tr = evaluate_formal(compile(t.g, *p)).trace();
    if (!positivity_check(tr)) fail(r, t, "closed " + to_word(t.g, *p).str() + " has trace " + tr.str());
    auto back = evaluate_formal(compile(t.g, reverse_path(t.g, *p))).trace();
    if (sign_normalized(back) != sign_normalized(tr))
      fail(r, t, "closed " + to_word(t.g, *p).str() + " changes trace when reversed");
  }
}

std::vector<int> flippable(const FatGraph& g) {
  std::vector<int> out;
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (!inner_flip_refusal(g, static_cast<int>(e)) || !loop_flip_refusal(g, static_cast<int>(e)))
      out.push_back(static_cast<int>(e));
  return out;
}

void suite_involution(Trial& t, SuiteResult& r, const FuzzConfig&) {
  CoordinatePoint p = random_exact_point(t.g, t.rng);
  for (int e : flippable(t.g)) {
    ++r.checked;
    auto once = flip(t.g, e, p);
    auto twice = flip(once.graph, e, once.point);
    if (graph_signature(twice.graph) != graph_signature(t.g) || !same_squares(twice.point, p))
      fail(r, t, "double flip of " + t.g.edge(e).name + " does not restore the graph and point");
  }
}

void suite_ptolemy(Trial& t, SuiteResult& r, const FuzzConfig&) {
  CoordinatePoint p = random_exact_point(t.g, t.rng);
  LambdaAssignment lam = lambda_of_dual_arcs(t.g, p);
  for (int e : flippable(t.g)) {
    ++r.checked;
    auto f = flip(t.g, e, p);
    MutationKind kind = f.record.loop_adjacent ? MutationKind::Generalized : MutationKind::Ptolemy;
    std::optional<Omega> w;
    if (f.record.loop_adjacent) {
      int hu = f.record.h_other;
      for (int x : t.g.vertices()[t.g.vertex_of(hu)].halves)
        if (t.g.kind_of_half(x) == EdgeKind::Loop) w = p.omega_at(t.g.edge(t.g.edge_of(x)).name);
    }
    LambdaAssignment mutated = mutate_lambda(t.g, lam, e, kind, w);
    LambdaAssignment direct = lambda_of_dual_arcs(f.graph, f.point);
    bool ok = true;
    for (auto& [k, v] : direct) ok = ok && v.square && mutated.at(k).square && *v.square == *mutated.at(k).square;
    CoordinatePoint back = shear_from_lambda(f.graph, mutated);
    back.omega = f.point.omega;
    ok = ok && same_squares(back, f.point);
    if (!ok) fail(r, t, "mutation/flip mismatch at " + t.g.edge(e).name);
  }
}

void suite_roundtrip(Trial& t, SuiteResult& r, const FuzzConfig&) {
  ++r.checked;
  CoordinatePoint p = random_exact_point(t.g, t.rng);
  CoordinatePoint back = shear_from_lambda(t.g, lambda_of_dual_arcs(t.g, p));
  if (!same_squares(back, p)) fail(r, t, "shear_from_lambda(lambda_of_dual_arcs) is not the identity");
}

void suite_center(Trial& t, SuiteResult& r, const FuzzConfig&) {
  ++r.checked;
  auto P = poisson_matrix(t.g);
  if (!center_annihilates(P, center_vectors(t.g))) fail(r, t, "center vector outside the kernel");
}

void suite_proportionality(Trial& t, SuiteResult& r, const FuzzConfig&) {
  ++r.checked;
  auto k = proportionality(penner_form_matrix(t.g), window_form_matrix(t.g));
  if (!k) fail(r, t, "Penner form is not proportional to the window form");
  else if (*k == 0) ++r.tally["both zero"];
  else ++r.tally["kappa=" + to_string(*k)];
}

void suite_inversion(Trial& t, SuiteResult& r, const FuzzConfig&) {
  ++r.checked;
  auto P = poisson_matrix(t.g);
  auto chk = verify_inverse_on_leaf(window_form_matrix(t.g), P);
  if (chk.scalar) {
    ++r.tally["c=" + to_string(chk.c)];
    return;
  }
  // exploratory: tabulated with a reproducer, not counted as a failure
  ++r.tally["not scalar"];
  if (r.counterexamples.size() < 10)
    r.counterexamples.push_back("trial " + std::to_string(t.index) + " (graph seed " + std::to_string(t.seed) +
                                "): not scalar on the leaf, residual " + to_string(chk.residual) + ", census " +
                                census(t.g));
}

void suite_invariance(Trial& t, SuiteResult& r, const FuzzConfig& cfg) {
  auto cand = flippable(t.g);
  if (cand.empty()) return;
  int e = cand[t.rng.below(cand.size())];
  CoordinatePoint p = random_exact_point(t.g, t.rng);
  auto f = flip(t.g, e, p);
  for (int k = 0; k < cfg.arcs_per_graph + cfg.closed_per_graph; ++k) {
    auto path = random_path(t.g, t.rng, 16, k >= cfg.arcs_per_graph, 3);
    if (!path) continue;
    ++r.checked;
    HalfPath moved = transport(t.g, f.record, *path);
    auto M0 = evaluate_real(compile(t.g, *path), p);
    auto M1 = evaluate_real(compile(f.graph, moved), f.point);
    bool ok = (close(M0.a, M1.a, cfg.tolerance) && close(M0.b, M1.b, cfg.tolerance) && close(M0.c, M1.c, cfg.tolerance) &&
               close(M0.d, M1.d, cfg.tolerance)) ||
              (close(M0.a, -M1.a, cfg.tolerance) && close(M0.b, -M1.b, cfg.tolerance) &&
               close(M0.c, -M1.c, cfg.tolerance) && close(M0.d, -M1.d, cfg.tolerance));
    if (!ok)
      fail(r, t, "path " + to_word(t.g, *path).str() + " changes under the flip of " + t.g.edge(e).name + " (now " +
                     to_word(f.graph, moved).str() + ")");
  }
}

void suite_windows(Trial& t, SuiteResult& r, const FuzzConfig&) {
  ++r.checked;
  std::map<int, int> mult;
  bool ends = true;
  for (auto& w : windows(t.g)) {
    auto toks = w.coordinate_tokens();
    ends = ends && t.g.edge(toks.front()).kind == EdgeKind::Pending && t.g.edge(toks.back()).kind == EdgeKind::Pending;
    for (int e : toks) ++mult[e];
  }
  bool two = true;
  for (int e : t.g.coordinate_edges()) two = two && mult[e] == 2;
  if (!ends) fail(r, t, "window does not start and end on pending edges");
  ++r.tally[two ? "every edge multiplicity 2" : "some edge multiplicity != 2"];
}

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> t{
      {"monomiality", suite_monomiality}, {"positivity", suite_positivity}, {"involution", suite_involution},
      {"ptolemy", suite_ptolemy},         {"roundtrip", suite_roundtrip},   {"center", suite_center},
      {"proportionality", suite_proportionality}, {"inversion", suite_inversion}, {"invariance", suite_invariance},
      {"windows", suite_windows}};
  return t;
}

}  // namespace

bool FuzzReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](auto& s) { return s.failures == 0; });
}

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  FuzzReport rep;
  rep.config = cfg;
  for (auto& name : cfg.suites) {
    if (!suite_table().count(name)) throw std::invalid_argument("unknown suite " + name);
    rep.suites.push_back({name, 0, 0, {}, {}});
  }
  for (int i = 0; i < cfg.trials; ++i) {
    if (cfg.only_trial && *cfg.only_trial != i) continue;
    std::uint64_t s = trial_seed(cfg.seed, i);
    Rng graph_rng(s);
    FatGraph g = random_graph(graph_rng, cfg.bounds);
    for (std::size_t k = 0; k < cfg.suites.size(); ++k) {
      // each suite draws from its own stream so selections do not interact
      Trial t{i, s, g, Rng(trial_seed(s, static_cast<int>(k) + 1))};
      try {
        suite_table().at(cfg.suites[k])(t, rep.suites[k], cfg);
      } catch (const std::exception& ex) {
        fail(rep.suites[k], t, std::string("exception: ") + ex.what());
      }
    }
  }
  return rep;
}

std::string FuzzReport::text() const {
  std::ostringstream out;
  out << "fuzz seed=" << config.seed << " trials=" << config.trials << "\n";
  for (auto& s : suites) {
    out << "suite " << s.name << ": checked " << s.checked << ", failures " << s.failures << "\n";
    for (auto& [k, v] : s.tally) out << "  " << k << ": " << v << "\n";
    for (auto& c : s.counterexamples) out << "  counterexample " << c << "\n";
  }
  out << (ok() ? "all suites passed\n" : "FAILURES\n");
  return out.str();
}

std::string FuzzReport::tsv() const {
  std::ostringstream out;
  out << "suite\tchecked\tfailures\n";
  for (auto& s : suites) out << s.name << "\t" << s.checked << "\t" << s.failures << "\n";
  for (auto& s : suites)
    for (auto& [k, v] : s.tally) out << "tally\t" << s.name << "\t" << k << "\t" << v << "\n";
  for (auto& s : suites)
    for (auto& c : s.counterexamples) out << "counterexample\t" << s.name << "\t" << c << "\n";
  return out.str();
}

}  // namespace spine
