#include "spine/flips.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace spine {

namespace {

Positive sqrt_of(const Positive& x) {
  Positive r{std::sqrt(x.value), std::nullopt};
  if (auto v = x.exact_value()) r.square = *v;
  return r;
}

// 1 + w*E + E^2 for positive E, kept exact when possible
Positive quadratic(const Positive& E, const Omega& w) {
  auto e = E.exact_value();
  if (e && w.exact) return Positive::exact(1 + *w.exact * *e + *e * *e);
  return Positive::real(1 + w.value * E.value + E.value * E.value);
}

const FlipSlot* slot_for(const FlipRecord& r, const std::string& name) {
  for (auto& s : r.slots)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

std::optional<std::string> inner_flip_refusal(const FatGraph& g, int e) {
  const Edge& ed = g.edge(e);
  if (ed.kind == EdgeKind::Pending) return "pending edges cannot be flipped";
  if (ed.kind == EdgeKind::Loop) return "loops cannot be flipped";
  auto [h, hp] = ed.halves;
  if (g.vertex_of(h) == g.vertex_of(hp)) return "both ends of " + ed.name + " lie at one vertex";
  if (g.is_loop_vertex(g.vertex_of(h)) || g.is_loop_vertex(g.vertex_of(hp)))
    return "edge " + ed.name + " is incident to a loop vertex; use the loop-adjacent flip";
  return std::nullopt;
}

std::optional<std::string> loop_flip_refusal(const FatGraph& g, int e) {
  const Edge& ed = g.edge(e);
  if (ed.kind != EdgeKind::Inner) return "edge " + ed.name + " is " + std::string(kind_name(ed.kind)) + ", not inner";
  auto [h, hp] = ed.halves;
  bool lx = g.is_loop_vertex(g.vertex_of(h)), ly = g.is_loop_vertex(g.vertex_of(hp));
  if (lx == ly) return "edge " + ed.name + " is not incident to exactly one loop";
  return std::nullopt;
}

FlipResult flip_inner(const FatGraph& g, int e, const CoordinatePoint& p) {
  if (auto why = inner_flip_refusal(g, e)) throw FlipError("cannot flip " + g.edge(e).name + ": " + *why);
  const Edge& ed = g.edge(e);
  auto [h, hp] = ed.halves;
  InnerSlots s = inner_slots(g, e);
  FlipRecord rec;
  rec.edge = ed.name;
  rec.h = h;
  rec.h_other = hp;
  auto ename = [&](int half) { return g.edge(g.edge_of(half)).name; };
  rec.slots = {{"A", s.a, ename(s.a)}, {"B", s.b, ename(s.b)}, {"C", s.c, ename(s.c)}, {"D", s.d, ename(s.d)}};
  rec.before = p;

  const Positive tz = p.at(ed.name);
  const Positive E = tz * tz;
  const Positive grow = sqrt_of(Positive{} + E);  // e^{phi(Z)/2}
  CoordinatePoint q = p;
  for (auto& sl : rec.slots) {
    Positive& t = q.t.at(sl.edge);
    if (sl.name == "A" || sl.name == "C") t = t * grow;
    else t = t * tz / grow;
  }
  q.t.at(ed.name) = tz.inverse();
  rec.after = q;

  FatGraph out = g;
  out.set_rotation(g.vertex_of(h), {h, s.d, s.a});
  out.set_rotation(g.vertex_of(hp), {hp, s.b, s.c});
  return {std::move(out), std::move(q), std::move(rec)};
}

FlipResult flip_loop_adjacent(const FatGraph& g, int e, const CoordinatePoint& p) {
  if (auto why = loop_flip_refusal(g, e)) throw FlipError("cannot flip " + g.edge(e).name + ": " + *why);
  const Edge& ed = g.edge(e);
  auto [h, hu] = ed.halves;
  if (g.is_loop_vertex(g.vertex_of(h))) std::swap(h, hu);
  int loop = -1;
  for (int x : g.vertices()[g.vertex_of(hu)].halves)
    if (g.kind_of_half(x) == EdgeKind::Loop) loop = g.edge_of(x);
  int a = g.sigma(h), b = g.sigma_inv(h);
  FlipRecord rec;
  rec.edge = ed.name;
  rec.loop_adjacent = true;
  rec.h = h;
  rec.h_other = hu;
  rec.slots = {{"A", a, g.edge(g.edge_of(a)).name}, {"B", b, g.edge(g.edge_of(b)).name}};
  rec.before = p;

  const Omega& w = p.omega_at(g.edge(loop).name);
  const Positive tz = p.at(ed.name);
  const Positive E = tz * tz;
  const Positive grow = sqrt_of(quadratic(E, w));
  CoordinatePoint q = p;
  Positive& ta = q.t.at(rec.slots[0].edge);
  ta = ta * grow;
  Positive& tb = q.t.at(rec.slots[1].edge);
  tb = tb * E / grow;
  q.t.at(ed.name) = tz.inverse();
  rec.after = q;

  FatGraph out = g;
  out.set_rotation(g.vertex_of(h), {h, b, a});
  return {std::move(out), std::move(q), std::move(rec)};
}

FlipResult flip(const FatGraph& g, int e, const CoordinatePoint& p) {
  auto inner = inner_flip_refusal(g, e);
  if (!inner) return flip_inner(g, e, p);
  if (!loop_flip_refusal(g, e)) return flip_loop_adjacent(g, e, p);
  throw FlipError("cannot flip " + g.edge(e).name + ": " + *inner);
}

LambdaAssignment mutate_lambda(const FatGraph& g, const LambdaAssignment& l, int e, MutationKind kind,
                               const std::optional<Omega>& omega) {
  const Edge& ed = g.edge(e);
  if (ed.kind == EdgeKind::Pending) throw FlipError("pending edges cannot be mutated");
  if (ed.kind == EdgeKind::Loop) throw FlipError("loops cannot be mutated");
  for (auto& [k, v] : l)
    if (!(v.value > 0)) throw std::domain_error("lambda of " + k + " is not positive");
  auto lam = [&](int h) { return lambda_of_half(g, l, h); };
  Positive le = l.at(ed.name);
  Positive num;
  if (kind == MutationKind::Ptolemy) {
    auto s = inner_slots(g, e);
    num = lam(s.a) * lam(s.c) + lam(s.b) * lam(s.d);
  } else {
    auto [h, hu] = ed.halves;
    if (g.is_loop_vertex(g.vertex_of(h))) std::swap(h, hu);
    Omega w;
    if (omega) {
      w = *omega;
    } else {
      for (int x : g.vertices()[g.vertex_of(hu)].halves)
        if (g.kind_of_half(x) == EdgeKind::Loop) {
          auto& le2 = g.edge(g.edge_of(x));
          w = le2.value ? parse_omega(*le2.value) : Omega{};
        }
    }
    Positive la = lam(g.sigma(h)), lb = lam(g.sigma_inv(h));
    auto xa = la.exact_value(), xb = lb.exact_value();
    if (xa && xb && w.exact) num = Positive::exact(*xa * *xa + *w.exact * *xa * *xb + *xb * *xb);
    else num = Positive::real(la.value * la.value + w.value * la.value * lb.value + lb.value * lb.value);
  }
  LambdaAssignment out = l;
  out[ed.name] = num / le;
  return out;
}

HalfPath transport(const FatGraph& g, const FlipRecord& rec, const HalfPath& p) {
  std::map<std::string, int> slot;
  for (auto& s : rec.slots) slot[s.name] = s.half;
  HalfPath out;
  const auto& ex = p.exits;
  out.exits.push_back(ex[0]);
  std::size_t i = 0;
  if (!rec.loop_adjacent) {
    const int h = rec.h, hp = rec.h_other;
    const std::set<int> outer{slot["A"], slot["B"], slot["C"], slot["D"]};
    // after the flip A, D sit with h and B, C with h'
    auto side = [&](int x) { return (x == slot["A"] || x == slot["D"]) ? h : hp; };
    while (i + 1 < ex.size()) {
      int arr = g.mate(ex[i]);
      if (!outer.count(arr)) {
        out.exits.push_back(ex[++i]);
        continue;
      }
      std::size_t j = i + 1;
      while (ex[j] == h || ex[j] == hp) ++j;
      int y = ex[j];
      if (side(arr) != side(y)) out.exits.push_back(side(arr));
      out.exits.push_back(y);
      i = j;
    }
    return out;
  }
  const int h = rec.h, hu = rec.h_other, A = slot["A"], B = slot["B"];
  const int stem_next = g.sigma(hu), stem_prev = g.sigma_inv(hu);
  while (i + 1 < ex.size()) {
    int arr = g.mate(ex[i]);
    if (arr != A && arr != B) {
      out.exits.push_back(ex[++i]);
      continue;
    }
    std::size_t j = i + 1;
    int wind = 0;
    if (ex[j] == h) {
      ++j;
      while (ex[j] == stem_next || ex[j] == stem_prev) {
        wind += ex[j] == stem_next ? 1 : -1;
        ++j;
      }
      ++j;  // back along the stem
    }
    int y = ex[j];
    if (arr == A && y == B) ++wind;
    else if (arr == B && y == A) --wind;
    if (wind != 0) {
      out.exits.push_back(h);
      for (int k = 0; k < std::abs(wind); ++k) out.exits.push_back(wind > 0 ? stem_next : stem_prev);
      out.exits.push_back(hu);
    }
    out.exits.push_back(y);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- identities

namespace {

using SM = Mat2<SqrtElement>;

struct Ctx {
  SqrtRingPtr ring;
  std::map<std::string, SqrtElement> t;  // "A", "~A", ...
  SqrtElement w;
};

SqrtElement base(const Ctx& c, const LaurentPoly& p) { return SqrtElement(c.ring, p); }

SM word_matrix(const Ctx& c, const std::string& text) {
  SqrtElement one = base(c, 1), zero = base(c, 0);
  SM P{one, zero, zero, one};
  std::istringstream in(text);
  for (std::string tok; in >> tok;) {
    SM M;
    if (tok == "R") M = {one, one, -one, zero};
    else if (tok == "L") M = {zero, one, -one, -one};
    else if (tok == "F") M = {zero, one, -one, -c.w};
    else if (tok == "Fm") M = {c.w, one, -one, zero};
    else {
      std::string sym = tok.substr(2, tok.size() - 3);  // X(..)
      const SqrtElement& t = c.t.at(sym);
      M = {zero, -t, t.inverse(), zero};
    }
    P = P * M;
  }
  return P;
}

std::string pretty(const std::string& side) {
  std::string s;
  std::istringstream in(side);
  for (std::string tok; in >> tok;) {
    if (!s.empty()) s += " ";
    if (tok == "Fm") tok = "(-F^-1)";
    else if (tok[0] == 'X') {
      std::string sym = tok.substr(2, tok.size() - 3);
      tok = "X_" + (sym[0] == '~' ? sym.substr(1) + "~" : sym);
    }
    s += tok;
  }
  return s;
}

IdentityReport check(const Ctx& c, const std::string& name, const std::string& lhs, const std::string& rhs,
                     const std::map<std::string, double>& zero_point) {
  IdentityReport r;
  r.name = name;
  r.statement = pretty(lhs) + " = " + pretty(rhs);
  SM L = word_matrix(c, lhs), R = word_matrix(c, rhs);
  for (const SM* m : {&L, &R})
    for (auto* x : {&m->a, &m->b, &m->c, &m->d}) r.u_degree = std::max(r.u_degree, x->u_degree());
  if (L == R) r.sign = 1;
  else if (L == -R) r.sign = -1;
  r.holds = r.sign != 0;
  SM D = r.sign == -1 ? SM{L.a + R.a, L.b + R.b, L.c + R.c, L.d + R.d} : SM{L.a - R.a, L.b - R.b, L.c - R.c, L.d - R.d};
  r.residual = str(D);
  auto ev = [&](const SM& m) {
    return std::array<double, 4>{m.a.evaluate(zero_point), m.b.evaluate(zero_point), m.c.evaluate(zero_point),
                                 m.d.evaluate(zero_point)};
  };
  auto l = ev(L), rr = ev(R);
  bool plus = true, minus = true;
  for (int k = 0; k < 4; ++k) {
    plus = plus && std::fabs(l[k] - rr[k]) < 1e-12;
    minus = minus && std::fabs(l[k] + rr[k]) < 1e-12;
  }
  r.numeric_holds = plus || minus;
  return r;
}

Ctx inner_ctx() {
  auto tZ = LaurentPoly::variable("t_Z");
  LaurentPoly r = 1 + tZ * tZ;
  Ctx c;
  c.ring = std::make_shared<SqrtRing>(std::vector<SqrtGenerator>{{"u", r}});
  SqrtElement u = SqrtElement::generator(c.ring, "u");
  SqrtElement rinv = SqrtElement(c.ring, 1) * u.inverse() * u.inverse();
  for (std::string s : {"A", "B", "C", "D", "Z"}) c.t[s] = base(c, LaurentPoly::variable("t_" + s));
  c.t["~A"] = c.t["A"] * u;
  c.t["~C"] = c.t["C"] * u;
  c.t["~B"] = c.t["B"] * c.t["Z"] * u * rinv;
  c.t["~D"] = c.t["D"] * c.t["Z"] * u * rinv;
  c.t["~Z"] = base(c, LaurentPoly::variable("t_Z", -1));
  c.w = base(c, 0);
  return c;
}

Ctx loop_ctx() {
  auto tZ = LaurentPoly::variable("t_Z");
  auto w = LaurentPoly::variable("w");
  LaurentPoly r = 1 + w * tZ * tZ + tZ.pow(4);
  Ctx c;
  c.ring = std::make_shared<SqrtRing>(std::vector<SqrtGenerator>{{"v", r}});
  SqrtElement v = SqrtElement::generator(c.ring, "v");
  for (std::string s : {"A", "B", "Z"}) c.t[s] = base(c, LaurentPoly::variable("t_" + s));
  c.t["~A"] = c.t["A"] * v;
  c.t["~B"] = c.t["B"] * c.t["Z"] * c.t["Z"] * v.inverse();
  c.t["~Z"] = base(c, LaurentPoly::variable("t_Z", -1));
  c.w = base(c, w);
  return c;
}

const std::map<std::string, double> kZero{{"t_A", 1}, {"t_B", 1}, {"t_C", 1}, {"t_D", 1}, {"t_Z", 1}, {"w", 2}};

}  // namespace

std::vector<IdentityReport> verify_flip_matrix_identities() {
  Ctx ic = inner_ctx(), lc = loop_ctx();
  return {
      check(ic, "inner-1", "X(D) R X(Z) R X(A)", "X(~D) R X(~A)", kZero),
      check(ic, "inner-2", "X(D) R X(Z) L X(B)", "X(~D) L X(~Z) R X(~B)", kZero),
      check(ic, "inner-3", "X(D) L X(C)", "X(~D) L X(~Z) L X(~C)", kZero),
      check(lc, "loop-1", "X(B) L X(A)", "X(~B) L X(~Z) F X(~Z) L X(~A)", kZero),
      check(lc, "loop-2", "X(A) R X(B)", "X(~A) R X(~Z) Fm X(~Z) R X(~B)", kZero),
      check(lc, "loop-3", "X(B) R X(Z) Fm X(Z) R X(A)", "X(~B) R X(~A)", kZero),
      check(lc, "loop-4", "X(A) L X(Z) F X(Z) L X(B)", "X(~A) L X(~B)", kZero),
  };
}

std::vector<IdentityReport> printed_identity_forms() {
  Ctx ic = inner_ctx();
  return {
      check(ic, "printed-1", "X(D) R X(Z) R X(A)", "X(~A) R X(~D)", kZero),
      check(ic, "printed-2", "X(D) R X(Z) L X(B)", "X(~D) L X(~Z) R X(~B)", kZero),
      check(ic, "printed-3", "X(C) L X(D)", "X(~C) L X(~Z) L X(~D)", kZero),
  };
}

}  // namespace spine
