#include "spine/coords.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace spine {

Positive Positive::exact(const Rational& x) {
  if (x <= 0) throw std::domain_error("non-positive value " + to_string(x));
  return {to_double(x), Rational(x * x)};
}

Positive Positive::from_square(const Rational& s) {
  if (s <= 0) throw std::domain_error("non-positive value " + to_string(s));
  return {std::sqrt(to_double(s)), s};
}

Positive Positive::real(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw std::domain_error("non-positive value " + std::to_string(x));
  return {x, std::nullopt};
}

std::optional<Rational> Positive::exact_value() const {
  if (!square) return std::nullopt;
  return rational_sqrt(*square);
}

Positive Positive::inverse() const {
  Positive r{1.0 / value, std::nullopt};
  if (square) r.square = Rational(1 / *square);
  return r;
}

double Positive::log() const {
  if (square) return std::log(to_double(*square)) / 2;
  return std::log(value);
}

Positive operator*(const Positive& a, const Positive& b) {
  Positive r{a.value * b.value, std::nullopt};
  if (a.square && b.square) {
    r.square = Rational(*a.square * *b.square);
    r.value = std::sqrt(to_double(*r.square));
  }
  return r;
}

Positive operator+(const Positive& a, const Positive& b) {
  auto x = a.exact_value(), y = b.exact_value();
  if (x && y) return Positive::exact(*x + *y);
  return Positive::real(a.value + b.value);
}

Positive pow(const Positive& x, int k) {
  Positive r;
  Positive base = k < 0 ? x.inverse() : x;
  for (int i = 0; i < std::abs(k); ++i) r = r * base;
  return r;
}

namespace {

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Positive parse_coordinate(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && s[0] == '-' && s.find("log") != std::string::npos) {
    neg = true;
    s.erase(0, 1);
  }
  auto lp = s.find("log");
  if (lp != std::string::npos) {
    std::string pre = s.substr(0, lp), arg = s.substr(lp + 3);
    if (pre != "" && pre != "2") throw std::invalid_argument("bad coordinate value " + text);
    if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')') arg = arg.substr(1, arg.size() - 2);
    Rational r = parse_rational(arg);
    if (r <= 0) throw std::invalid_argument("log of non-positive value in " + text);
    Positive t = pre == "2" ? Positive::exact(r) : Positive::from_square(r);
    return neg ? t.inverse() : t;
  }
  Rational y;
  try {
    y = parse_rational(s);
  } catch (const std::invalid_argument&) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coordinate value " + text);
    }
    if (used != s.size()) throw std::invalid_argument("bad coordinate value " + text);
    return Positive::real(std::exp(d / 2));
  }
  if (y == 0) return Positive{};
  return Positive::real(std::exp(to_double(y) / 2));
}

std::string format_coordinate(const Positive& t) {
  if (t.square) {
    if (*t.square == 1) return "0";
    if (auto x = t.exact_value()) return "2log(" + to_string(*x) + ")";
    return "log(" + to_string(*t.square) + ")";
  }
  return fmt_real(2 * std::log(t.value));
}

Positive parse_positive(const std::string& text) {
  if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') return Positive::from_square(parse_rational(text.substr(5, text.size() - 6)));
  try {
    return Positive::exact(parse_rational(text));
  } catch (const std::invalid_argument&) {
    std::size_t used = 0;
    double d = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad positive value " + text);
    return Positive::real(d);
  }
}

std::string format_positive(const Positive& x) {
  if (auto v = x.exact_value()) return to_string(*v);
  if (x.square) return "sqrt(" + to_string(*x.square) + ")";
  return fmt_real(x.value);
}

Omega parse_omega(const EdgeValue& v) {
  Omega o;
  o.source = v.key + "=" + v.text;
  if (v.key == "omega") {
    try {
      Rational r = parse_rational(v.text);
      o.exact = r;
      o.value = to_double(r);
    } catch (const std::invalid_argument&) {
      o.exact.reset();
      o.value = std::stod(v.text);
    }
  } else if (v.key == "perimeter") {
    Positive t = parse_coordinate(v.text);  // e^{P/2}
    if (t.value < 1 - 1e-15 || (t.square && *t.square < 1)) throw std::invalid_argument("negative perimeter " + v.text);
    Positive w = t + t.inverse();
    o.exact = w.exact_value();
    o.value = w.value;
  } else if (v.key == "orbifold") {
    int p = std::stoi(v.text);
    if (p < 2) throw std::invalid_argument("orbifold order must be at least 2: " + v.text);
    if (p == 2) o.exact = Rational(0);
    else if (p == 3) o.exact = Rational(1);
    else o.exact.reset();
    o.value = o.exact ? to_double(*o.exact) : 2 * std::cos(std::numbers::pi / p);
  } else {
    throw std::invalid_argument("not a loop weight: " + v.key);
  }
  return o;
}

CoordinatePoint CoordinatePoint::from_graph(const FatGraph& g) {
  CoordinatePoint p;
  for (auto& e : g.edges()) {
    if (e.kind == EdgeKind::Loop) {
      p.omega[e.name] = e.value ? parse_omega(*e.value) : Omega{};
    } else {
      bool coord = e.value && e.value->key != "lambda";
      p.t[e.name] = coord ? parse_coordinate(e.value->text) : Positive{};
    }
  }
  return p;
}

CoordinatePoint CoordinatePoint::from_logs(const FatGraph& g, const std::vector<double>& y,
                                           const std::map<std::string, Omega>& omega) {
  auto labels = g.coordinate_labels();
  if (y.size() != labels.size()) throw std::invalid_argument("coordinate vector has wrong length");
  CoordinatePoint p;
  for (std::size_t i = 0; i < y.size(); ++i) p.t[labels[i]] = Positive::real(std::exp(y[i] / 2));
  p.omega = omega;
  return p;
}

std::vector<double> CoordinatePoint::logs(const FatGraph& g) const {
  std::vector<double> out;
  for (auto& l : g.coordinate_labels()) out.push_back(2 * at(l).log());
  return out;
}

bool CoordinatePoint::exact() const {
  for (auto& [k, v] : t)
    if (!v.exact_value()) return false;
  return true;
}

const Positive& CoordinatePoint::at(const std::string& edge) const {
  auto it = t.find(edge);
  if (it == t.end()) throw std::out_of_range("no coordinate for edge " + edge);
  return it->second;
}

const Omega& CoordinatePoint::omega_at(const std::string& loop) const {
  auto it = omega.find(loop);
  if (it == omega.end()) throw std::out_of_range("no weight for loop " + loop);
  return it->second;
}

void store_point(FatGraph& g, const CoordinatePoint& p) {
  for (auto& e : g.mutable_edges()) {
    if (e.kind == EdgeKind::Loop) continue;
    e.value = EdgeValue{e.kind == EdgeKind::Inner ? "Z" : "pi", format_coordinate(p.at(e.name))};
  }
}

LambdaAssignment read_lambdas(const FatGraph& g) {
  LambdaAssignment l;
  for (auto& e : g.edges()) {
    if (e.kind == EdgeKind::Loop) continue;
    if (!e.value || e.value->key != "lambda") throw std::invalid_argument("edge " + e.name + " has no lambda= value");
    l[e.name] = parse_positive(e.value->text);
  }
  return l;
}

void store_lambdas(FatGraph& g, const LambdaAssignment& l) {
  for (auto& e : g.mutable_edges()) {
    if (e.kind == EdgeKind::Loop) continue;
    e.value = EdgeValue{"lambda", format_positive(l.at(e.name))};
  }
}

std::map<std::string, int> coordinate_counts(const FatGraph& g, const HalfPath& p) {
  std::map<std::string, int> out;
  for (int x : p.exits)
    if (g.kind_of_half(x) != EdgeKind::Loop) ++out[g.edge(g.edge_of(x)).name];
  return out;
}

LambdaAssignment lambda_of_dual_arcs(const FatGraph& g, const CoordinatePoint& p) {
  LambdaAssignment l;
  for (int e : g.coordinate_edges()) {
    Positive lam;
    for (auto& [name, k] : coordinate_counts(g, dual_arc(g, e))) lam = lam * pow(p.at(name), k);
    l[g.edge(e).name] = lam;
  }
  return l;
}

InnerSlots inner_slots(const FatGraph& g, int edge) {
  auto [h, hp] = g.edge(edge).halves;
  return {g.sigma(h), g.sigma_inv(h), g.sigma(hp), g.sigma_inv(hp)};
}

Positive lambda_of_half(const FatGraph& g, const LambdaAssignment& l, int h) {
  if (g.kind_of_half(h) == EdgeKind::Loop) return Positive{};
  auto it = l.find(g.edge(g.edge_of(h)).name);
  if (it == l.end()) throw std::out_of_range("no lambda for edge " + g.edge(g.edge_of(h)).name);
  return it->second;
}

CoordinatePoint shear_from_lambda(const FatGraph& g, const LambdaAssignment& l) {
  for (auto& [k, v] : l)
    if (!(v.value > 0) || (v.square && *v.square <= 0)) throw std::domain_error("lambda of " + k + " is not positive");
  CoordinatePoint p;
  auto lam = [&](int h) { return lambda_of_half(g, l, h); };
  for (int e : g.coordinate_edges()) {
    const Edge& ed = g.edge(e);
    Positive ey;  // e^Y
    if (ed.kind == EdgeKind::Inner) {
      auto s = inner_slots(g, e);
      ey = lam(s.a) * lam(s.c) / (lam(s.b) * lam(s.d));
    } else {
      int q = g.at_cusp(ed.halves[0]) ? ed.halves[1] : ed.halves[0];
      ey = lam(q) * lam(g.sigma(q)) / lam(g.sigma_inv(q));
    }
    Positive t{std::sqrt(ey.value), std::nullopt};
    if (auto x = ey.exact_value()) t.square = *x;
    p.t[ed.name] = t;
  }
  for (int e : g.loop_edges()) {
    const Edge& ed = g.edge(e);
    p.omega[ed.name] = ed.value ? parse_omega(*ed.value) : Omega{};
  }
  return p;
}

}  // namespace spine
