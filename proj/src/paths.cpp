#include "spine/paths.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spine {

PathWord PathWord::parse(const std::string& text) {
  PathWord w;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw PathError("empty token in path '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    PathToken t;
    if (tok.size() > 1 && (tok.back() == '+' || tok.back() == '-')) {
      t.sign = tok.back();
      tok.pop_back();
    } else if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "−") == 0) {
      t.sign = '-';
      tok.resize(tok.size() - 3);
    }
    t.edge = tok;
    w.tokens.push_back(t);
  }
  if (w.tokens.empty()) throw PathError("empty path");
  return w;
}

std::string PathWord::str() const {
  std::string s;
  for (auto& t : tokens) {
    if (!s.empty()) s += ',';
    s += t.edge;
    if (t.sign) s += t.sign;
  }
  return s;
}

HalfPath resolve(const FatGraph& g, const PathWord& w) {
  auto edge_named = [&](const std::string& n) {
    auto e = g.find_edge(n);
    if (!e) throw PathError("unknown edge " + n);
    return *e;
  };
  const auto& toks = w.tokens;
  int e0 = edge_named(toks[0].edge);
  if (g.edge(e0).kind != EdgeKind::Pending) throw PathError("path must start on a pending edge, got " + toks[0].edge);
  if (toks[0].sign) throw PathError("pending token " + toks[0].edge + " cannot carry a sign");
  auto [c0, c1] = g.edge(e0).halves;
  HalfPath p;
  p.exits.push_back(g.at_cusp(c0) ? c0 : c1);
  int h = g.mate(p.exits.back());
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (g.at_cusp(h)) throw PathError("path reaches a cusp before token " + std::to_string(i + 1) + " (" + t.edge + ")");
    int e = edge_named(t.edge);
    const Edge& ed = g.edge(e);
    int v = g.vertex_of(h);
    int x = -1;
    if (ed.kind == EdgeKind::Loop) {
      if (!t.sign) throw PathError("loop token " + t.edge + " needs a direction (+ or -)");
      if (g.vertex_of(ed.halves[0]) != v) throw PathError("loop " + t.edge + " is not adjacent to the previous token");
      int stem = loop_stem_half(g, v);
      x = t.sign == '+' ? g.sigma(stem) : g.sigma_inv(stem);
      if (x == h) throw PathError("loop token " + t.edge + t.sign + " backtracks");
    } else {
      if (t.sign) throw PathError("token " + t.edge + " is not a loop and cannot carry a sign");
      int cands[2] = {g.sigma(h), g.sigma_inv(h)};
      int found = 0;
      for (int c : cands)
        if (g.edge_of(c) == e) {
          if (found && c == x) continue;
          x = c;
          ++found;
        }
      if (found == 0) throw PathError("tokens " + toks[i - 1].edge + " and " + t.edge + " are not adjacent without backtracking");
      if (found == 2) throw PathError("token " + t.edge + " is ambiguous at vertex " + g.vertices()[v].id);
    }
    p.exits.push_back(x);
    h = g.mate(x);
  }
  if (!g.at_cusp(h)) throw PathError("path must end on a pending edge, got " + toks.back().edge);
  return p;
}

PathWord to_word(const FatGraph& g, const HalfPath& p) {
  PathWord w;
  for (int x : p.exits) {
    PathToken t{g.edge(g.edge_of(x)).name, 0};
    if (g.kind_of_half(x) == EdgeKind::Loop) t.sign = loop_sign(g, x);
    w.tokens.push_back(t);
  }
  return w;
}

void check_path(const FatGraph& g, const HalfPath& p) {
  if (p.exits.empty()) throw PathError("empty path");
  if (!g.at_cusp(p.exits.front())) throw PathError("path must start at a cusp");
  for (std::size_t i = 1; i < p.exits.size(); ++i) {
    int h = g.mate(p.exits[i - 1]), x = p.exits[i];
    if (g.at_cusp(h)) throw PathError("path passes through a cusp");
    if (g.vertex_of(x) != g.vertex_of(h)) throw PathError("consecutive traversals do not share a vertex");
    if (x == h) throw PathError("path backtracks along " + g.edge(g.edge_of(x)).name);
  }
  if (!g.at_cusp(g.mate(p.exits.back()))) throw PathError("path must end at a cusp");
}

bool is_closed(const FatGraph& g, const HalfPath& p) {
  return g.vertex_of(p.exits.front()) == g.vertex_of(g.mate(p.exits.back()));
}

std::string MatrixWord::str() const {
  std::string s;
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    if (!s.empty()) s += " * ";
    switch (it->kind) {
      case AtomKind::X: s += "X(" + it->symbol + ")"; break;
      case AtomKind::R: s += "R"; break;
      case AtomKind::L: s += "L"; break;
      case AtomKind::F: s += "F(" + it->symbol + ")"; break;
      case AtomKind::FInvNeg: s += "-F(" + it->symbol + ")^-1"; break;
    }
  }
  return s;
}

MatrixWord compile(const FatGraph& g, const HalfPath& p) {
  check_path(g, p);
  MatrixWord w;
  for (std::size_t i = 0; i < p.exits.size(); ++i) {
    int x = p.exits[i];
    if (i > 0) {
      int h = g.mate(p.exits[i - 1]);
      if (!g.is_loop_vertex(g.vertex_of(h))) w.atoms.push_back({x == g.sigma(h) ? AtomKind::L : AtomKind::R, ""});
    }
    const Edge& ed = g.edge(g.edge_of(x));
    if (ed.kind == EdgeKind::Loop) w.atoms.push_back({loop_sign(g, x) == '+' ? AtomKind::F : AtomKind::FInvNeg, ed.name});
    else w.atoms.push_back({AtomKind::X, ed.name});
  }
  return w;
}

MatrixWord compile(const FatGraph& g, const PathWord& w) { return compile(g, resolve(g, w)); }

std::string t_symbol(const std::string& edge) { return "t_" + edge; }

namespace {

template <class T, class TV, class WV>
Mat2<T> evaluate_with(const MatrixWord& w, TV t_of, WV w_of) {
  const T one(1), zero(0);
  Mat2<T> P{one, zero, zero, one};
  for (auto& a : w.atoms) {
    Mat2<T> M;
    switch (a.kind) {
      case AtomKind::X: {
        auto [t, tinv] = t_of(a.symbol);
        M = {zero, -t, tinv, zero};
        break;
      }
      case AtomKind::R: M = {one, one, -one, zero}; break;
      case AtomKind::L: M = {zero, one, -one, -one}; break;
      case AtomKind::F: M = {zero, one, -one, -w_of(a.symbol)}; break;
      case AtomKind::FInvNeg: M = {w_of(a.symbol), one, -one, zero}; break;
    }
    P = M * P;
  }
  return P;
}

}  // namespace

Mat2<LaurentPoly> evaluate_formal(const MatrixWord& w) {
  return evaluate_with<LaurentPoly>(
      w,
      [](const std::string& s) {
        return std::pair{LaurentPoly::variable(t_symbol(s)), LaurentPoly::variable(t_symbol(s), -1)};
      },
      [](const std::string& s) { return LaurentPoly::variable(s); });
}

bool word_is_exact(const MatrixWord& w, const CoordinatePoint& p) {
  for (auto& a : w.atoms) {
    if (a.kind == AtomKind::X && !p.at(a.symbol).exact_value()) return false;
    if ((a.kind == AtomKind::F || a.kind == AtomKind::FInvNeg) && !p.omega_at(a.symbol).exact) return false;
  }
  return true;
}

Mat2<Rational> evaluate_exact(const MatrixWord& w, const CoordinatePoint& p) {
  return evaluate_with<Rational>(
      w,
      [&](const std::string& s) {
        auto t = p.at(s).exact_value();
        if (!t) throw std::domain_error("coordinate of " + s + " has no rational half-exponential");
        return std::pair{*t, Rational(1 / *t)};
      },
      [&](const std::string& s) {
        auto& o = p.omega_at(s);
        if (!o.exact) throw std::domain_error("weight of loop " + s + " is not rational");
        return *o.exact;
      });
}

Mat2<double> evaluate_real(const MatrixWord& w, const CoordinatePoint& p) {
  return evaluate_with<double>(
      w, [&](const std::string& s) { return std::pair{p.at(s).value, 1.0 / p.at(s).value}; },
      [&](const std::string& s) { return p.omega_at(s).value; });
}

std::string Number::str() const {
  if (exact) return to_string(*exact);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

LaurentPoly sign_normalized(const LaurentPoly& p) { return p.leading_coefficient() < 0 ? -p : p; }

namespace {

Number abs_entry(const MatrixWord& w, const CoordinatePoint& pt, bool trace) {
  Number n;
  if (word_is_exact(w, pt)) {
    auto M = evaluate_exact(w, pt);
    Rational v = trace ? M.trace() : M.b;
    n.exact = v;
    n.value = to_double(v);
  } else {
    auto M = evaluate_real(w, pt);
    n.value = trace ? M.trace() : M.b;
  }
  return n;
}

Number absolute(Number n) {
  n.value = std::fabs(n.value);
  if (n.exact && *n.exact < 0) n.exact = Rational(-*n.exact);
  return n;
}

}  // namespace

LaurentPoly lambda_formal(const FatGraph& g, const HalfPath& p) {
  return sign_normalized(evaluate_formal(compile(g, p)).b);
}

Number lambda_numeric(const FatGraph& g, const HalfPath& p, const CoordinatePoint& pt) {
  return absolute(abs_entry(compile(g, p), pt, false));
}

GeodesicFunction geodesic_formal(const FatGraph& g, const HalfPath& p) {
  check_path(g, p);
  if (!is_closed(g, p)) throw PathError("geodesic function needs a path returning to its starting cusp");
  LaurentPoly tr = evaluate_formal(compile(g, p)).trace();
  return {sign_normalized(tr), tr, to_word(g, p)};
}

GeodesicFunction geodesic_numeric(const FatGraph& g, const HalfPath& p, const CoordinatePoint& pt) {
  check_path(g, p);
  if (!is_closed(g, p)) throw PathError("geodesic function needs a path returning to its starting cusp");
  Number raw = abs_entry(compile(g, p), pt, true);
  return {absolute(raw), raw, to_word(g, p)};
}

std::string GeodesicFunction::str() const {
  return std::visit([](auto& v) { return v.str(); }, value);
}

bool positivity_check(const LaurentPoly& p) { return p.sign_definite(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t x = eng_();
    if (x < limit) return x % n;
  }
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

int max_winding(const FatGraph& g, const HalfPath& p) {
  std::vector<int> x = p.exits;
  bool cyclic = is_closed(g, p);
  if (cyclic) {
    std::size_t lo = 0, hi = x.size();
    while (hi - lo >= 2 && x[hi - 1] == g.mate(x[lo])) ++lo, --hi;
    x = std::vector<int>(x.begin() + lo, x.begin() + hi);
  }
  auto is_loop = [&](int h) { return g.kind_of_half(h) == EdgeKind::Loop; };
  int best = 0, run = 0;
  for (int h : x) {
    run = is_loop(h) ? run + 1 : 0;
    best = std::max(best, run);
  }
  if (cyclic && !x.empty() && is_loop(x.front()) && is_loop(x.back())) {
    if (std::all_of(x.begin(), x.end(), is_loop)) return static_cast<int>(x.size());
    std::size_t head = 0, tail = 0;
    while (is_loop(x[head])) ++head;
    while (is_loop(x[x.size() - 1 - tail])) ++tail;
    best = std::max(best, static_cast<int>(head + tail));
  }
  return best;
}

std::optional<HalfPath> random_path(const FatGraph& g, Rng& rng, std::size_t max_len, bool closed, int winding_cap,
                                    int attempts) {
  std::vector<int> cusps;
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    if (g.vertices()[v].is_cusp()) cusps.push_back(g.vertices()[v].halves[0]);
  if (cusps.empty()) return std::nullopt;
  for (int a = 0; a < attempts; ++a) {
    HalfPath p;
    p.exits.push_back(cusps[rng.below(cusps.size())]);
    int h = g.mate(p.exits.back());
    while (!g.at_cusp(h) && p.exits.size() <= max_len) {
      int v = g.vertex_of(h);
      if (g.is_loop_vertex(v)) {
        int stem = loop_stem_half(g, v);
        int x = rng.below(2) ? g.sigma(stem) : g.sigma_inv(stem);
        int wound = 0;
        do p.exits.push_back(x);
        while (++wound < winding_cap && rng.below(3) == 0);
        p.exits.push_back(stem);
      } else {
        p.exits.push_back(rng.below(2) ? g.sigma(h) : g.sigma_inv(h));
      }
      h = g.mate(p.exits.back());
    }
    if (!g.at_cusp(h) || p.exits.size() > max_len) continue;
    if (closed && g.vertex_of(h) != g.vertex_of(p.exits.front())) continue;
    if (closed && max_winding(g, p) > winding_cap) continue;
    return p;
  }
  return std::nullopt;
}

}  // namespace spine
