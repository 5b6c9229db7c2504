#include "spine/coords.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace spine;

namespace {

FatGraph fixture(const std::string& name) { return load_graph(std::string(SPINE_FIXTURES) + "/" + name + ".graph"); }

Rational q(long n, long d = 1) { return Rational(n) / d; }

}  // namespace

TEST_CASE("coordinate grammar") {
  auto t = parse_coordinate("0");
  CHECK(t.square == q(1));
  CHECK(parse_coordinate("log(4)").square == q(4));
  CHECK(parse_coordinate("log(4)").exact_value() == q(2));
  CHECK(parse_coordinate("2log(3)").exact_value() == q(3));
  CHECK(parse_coordinate("-2log(3)").exact_value() == q(1, 3));
  CHECK(parse_coordinate("-log(2)").square == q(1, 2));
  auto r = parse_coordinate("1.5");
  CHECK_FALSE(r.square.has_value());
  CHECK(r.value == doctest::Approx(std::exp(0.75)));
  CHECK_THROWS(parse_coordinate("log(-1)"));
  CHECK_THROWS(parse_coordinate("log(x)"));

  for (auto s : {"0", "log(2)", "2log(3/5)", "log(7/2)"}) CHECK(format_coordinate(parse_coordinate(s)) == format_coordinate(parse_coordinate(format_coordinate(parse_coordinate(s)))));
  CHECK(format_coordinate(Positive::exact(q(3))) == "2log(3)");
  CHECK(format_coordinate(Positive::from_square(q(2))) == "log(2)");
  CHECK(format_coordinate(Positive::exact(q(1))) == "0");
}

TEST_CASE("positive arithmetic keeps squares exact") {
  auto a = Positive::from_square(q(2));
  auto b = a * a;
  CHECK(b.exact_value() == q(2));
  CHECK((a / a).exact_value() == q(1));
  CHECK(pow(a, 4).exact_value() == q(4));
  auto s = Positive::exact(q(1, 2)) + Positive::exact(q(3, 2));
  CHECK(s.exact_value() == q(2));
  auto irr = a + Positive::exact(q(1));
  CHECK_FALSE(irr.square.has_value());
  CHECK(irr.value == doctest::Approx(std::sqrt(2.0) + 1));
}

TEST_CASE("lambda grammar") {
  CHECK(parse_positive("3/2").exact_value() == q(3, 2));
  CHECK(parse_positive("sqrt(2)").square == q(2));
  CHECK(format_positive(parse_positive("sqrt(2)")) == "sqrt(2)");
  CHECK(format_positive(parse_positive("5")) == "5");
  CHECK_THROWS(parse_positive("-1"));
  CHECK_THROWS(parse_positive("0"));
}

TEST_CASE("loop weights") {
  CHECK(parse_omega({"omega", "3"}).exact == q(3));
  auto p = parse_omega({"perimeter", "2log(2)"});
  CHECK(p.exact == q(5, 2));
  CHECK(parse_omega({"orbifold", "2"}).exact == q(0));
  CHECK(parse_omega({"orbifold", "3"}).exact == q(1));
  auto o5 = parse_omega({"orbifold", "5"});
  CHECK_FALSE(o5.exact.has_value());
  CHECK(o5.value == doctest::Approx(2 * std::cos(M_PI / 5)));
  CHECK_THROWS(parse_omega({"orbifold", "1"}));
  auto g = fixture("sigma_0_2_1");
  CHECK(CoordinatePoint::from_graph(g).omega_at("w").exact == q(2));
}

TEST_CASE("lambda lengths of dual arcs") {
  auto t3 = fixture("t3");
  for (auto& [e, l] : lambda_of_dual_arcs(t3, CoordinatePoint::from_graph(t3))) CHECK(l.exact_value() == q(1));

  auto g = fixture("sigma_0_1_4");
  auto p = CoordinatePoint::from_graph(g);
  for (auto& [e, l] : lambda_of_dual_arcs(g, p)) CHECK(l.exact_value() == q(1));
  p.t["e"] = parse_coordinate("2log(3)");
  CHECK(lambda_of_dual_arcs(g, p).at("e").exact_value() == q(3));
}

TEST_CASE("shear from lambda") {
  auto g = fixture("sigma_0_1_4");
  LambdaAssignment ones;
  for (auto& l : g.coordinate_labels()) ones[l] = Positive::exact(q(1));
  auto p = shear_from_lambda(g, ones);
  for (auto& l : g.coordinate_labels()) CHECK(p.at(l).square == q(1));

  // e^Z = la lc / (lb ld) with A..D the sigma-neighbours of e's halves
  auto s = inner_slots(g, g.edge_index("e"));
  LambdaAssignment l = ones;
  l[g.edge(g.edge_of(s.a)).name] = Positive::exact(q(2));
  l[g.edge(g.edge_of(s.b)).name] = Positive::exact(q(1));
  l[g.edge(g.edge_of(s.c)).name] = Positive::exact(q(3));
  l[g.edge(g.edge_of(s.d)).name] = Positive::exact(q(1));
  CHECK(shear_from_lambda(g, l).at("e").square == q(6));

  // pending edge p3 of T3: e^pi = l(p3) l(sigma) / l(sigma^-1)
  auto t3 = fixture("t3");
  int h3 = t3.half_index("h3");
  LambdaAssignment lt;
  lt["p3"] = Positive::exact(q(2));
  lt[t3.edge(t3.edge_of(t3.sigma(h3))).name] = Positive::exact(q(3));
  lt[t3.edge(t3.edge_of(t3.sigma_inv(h3))).name] = Positive::exact(q(4));
  CHECK(shear_from_lambda(t3, lt).at("p3").square == q(3, 2));
}

TEST_CASE("round trip on fixtures") {
  for (auto name : {"t3", "sigma_0_1_4", "sigma_0_2_1", "sigma_0_3_1", "sigma_0_5_1"}) {
    CAPTURE(name);
    auto g = fixture(name);
    auto p = CoordinatePoint::from_graph(g);
    int k = 2;
    for (auto& l : g.coordinate_labels()) p.t[l] = Positive::exact(q(k++, 3));
    auto back = shear_from_lambda(g, lambda_of_dual_arcs(g, p));
    for (auto& l : g.coordinate_labels()) CHECK(back.at(l).square == p.at(l).square);
  }
}

TEST_CASE("value fields survive a file round trip") {
  auto g = fixture("sigma_0_3_1");
  auto p = CoordinatePoint::from_graph(g);
  p.t["a1"] = Positive::exact(q(5, 2));
  store_point(g, p);
  auto back = CoordinatePoint::from_graph(parse_graph(format_graph(g)));
  CHECK(back.at("a1").exact_value() == q(5, 2));

  auto l = lambda_of_dual_arcs(g, p);
  store_lambdas(g, l);
  auto lb = read_lambdas(parse_graph(format_graph(g)));
  for (auto& [e, v] : l) CHECK(lb.at(e).square == v.square);
}

TEST_CASE("lambda of a loop half is one") {
  auto g = fixture("sigma_0_2_1");
  LambdaAssignment l{{"pi", Positive::exact(q(7))}};
  auto w = g.edge(g.edge_index("w"));
  CHECK(lambda_of_half(g, l, w.halves[0]).exact_value() == q(1));
}

TEST_CASE("coordinate multiplicities") {
  auto g = fixture("sigma_0_5_1");
  auto c = coordinate_counts(g, dual_arc(g, g.edge_index("a1")));
  CHECK(c.at("pi") == 2);
  CHECK(c.at("a1") == 2);
  CHECK(c.count("w1") == 0);
}
