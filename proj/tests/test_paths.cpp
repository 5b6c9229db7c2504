#include "spine/paths.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace spine;

namespace {

FatGraph fixture(const std::string& name) { return load_graph(std::string(SPINE_FIXTURES) + "/" + name + ".graph"); }

LaurentPoly var(const char* n, int e = 1) { return LaurentPoly::variable(n, e); }

HalfPath path(const FatGraph& g, const char* w) { return resolve(g, PathWord::parse(w)); }

}  // namespace

TEST_CASE("path words") {
  auto w = PathWord::parse("pi,a1,w1+,a1,pi");
  REQUIRE(w.tokens.size() == 5);
  CHECK(w.tokens[2] == PathToken{"w1", '+'});
  CHECK(w.str() == "pi,a1,w1+,a1,pi");
  auto g = fixture("sigma_0_3_1");
  CHECK(to_word(g, resolve(g, w)) == w);
}

TEST_CASE("path errors") {
  auto g = fixture("sigma_0_3_1");
  CHECK_THROWS_AS(path(g, "pi,zz,pi"), PathError);      // unknown edge
  CHECK_THROWS_AS(path(g, "a1,w1+,a1,pi"), PathError);  // must start at a cusp
  CHECK_THROWS_AS(path(g, "pi,a1,w1,a1,pi"), PathError);  // loop needs a direction
  CHECK_THROWS_AS(path(g, "pi,b1,a1,pi"), PathError);   // not adjacent
  CHECK_THROWS_AS(path(g, "pi,a1,a1,pi"), PathError);   // backtracking
  CHECK_THROWS_AS(path(g, "pi,a1,w1+,a1"), PathError);  // ends inside
  CHECK_NOTHROW(path(g, "pi,a1,w1-,w1-,a1,pi"));
}

TEST_CASE("compile") {
  auto t3 = fixture("t3");
  auto w = compile(t3, path(t3, "p1,p2"));
  REQUIRE(w.atoms.size() == 3);
  CHECK(w.atoms[1].kind != AtomKind::X);
  CHECK(w.str().rfind("X(p2) * ", 0) == 0);

  auto s = fixture("sigma_0_2_1");
  auto lw = compile(s, path(s, "pi,w+,pi"));
  CHECK(lw.str() == "X(pi) * F(w) * X(pi)");

  auto s4 = fixture("sigma_0_1_4");
  auto d = compile(s4, dual_arc(s4, s4.edge_index("e")));
  REQUIRE(d.atoms.size() == 5);
  CHECK(d.atoms[2].symbol == "e");
}

TEST_CASE("formal evaluation") {
  MatrixWord x{{{AtomKind::X, "y"}}};
  auto m = evaluate_formal(x);
  CHECK(m.a == LaurentPoly(0));
  CHECK(m.b == -var("t_y"));
  CHECK(m.c == var("t_y", -1));

  // X(pi) L F R X(pi), atoms listed in path order
  MatrixWord w{{{AtomKind::X, "pi"}, {AtomKind::R, ""}, {AtomKind::F, "w"}, {AtomKind::L, ""}, {AtomKind::X, "pi"}}};
  auto f = evaluate_formal(w);
  auto t2 = var("t_pi", 2);
  CHECK(f.a == LaurentPoly(-1));
  CHECK(f.b == t2 * (LaurentPoly(2) - var("w")));
  CHECK(f.c == -var("t_pi", -2));
  CHECK(f.d == LaurentPoly(1) - var("w"));
  CHECK(f.trace() == -var("w"));

  auto t3 = fixture("t3");
  auto up = evaluate_formal(compile(t3, path(t3, "p1,p2"))).b;
  CHECK(sign_normalized(up) == var("t_p1") * var("t_p2"));
}

TEST_CASE("exact and real evaluation agree") {
  auto g = fixture("sigma_0_3_1");
  auto p = CoordinatePoint::from_graph(g);
  p.t["a1"] = Positive::exact(Rational(3) / 2);
  auto w = compile(g, path(g, "pi,a1,w1+,a1,b1,w2-,b1,pi"));
  REQUIRE(word_is_exact(w, p));
  auto e = evaluate_exact(w, p);
  auto r = evaluate_real(w, p);
  CHECK(to_double(e.a) == doctest::Approx(r.a));
  CHECK(to_double(e.b) == doctest::Approx(r.b));
  CHECK(to_double(e.c) == doctest::Approx(r.c));
  CHECK(to_double(e.d) == doctest::Approx(r.d));
  CHECK(e.det() == Rational(1));
}

TEST_CASE("lambda lengths") {
  auto t3 = fixture("t3");
  auto a = path(t3, "p1,p2");
  CHECK(lambda_formal(t3, a) == var("t_p1") * var("t_p2"));
  CHECK(lambda_numeric(t3, a, CoordinatePoint::from_graph(t3)).exact == Rational(1));

  auto g = fixture("sigma_0_1_4");
  auto lam = lambda_formal(g, dual_arc(g, g.edge_index("e")));
  CHECK(lam.is_monomial());
  CHECK(lam.degree_in("t_e") == 1);
  CHECK(lam.leading_coefficient() == 1);
}

TEST_CASE("geodesic functions") {
  auto s = fixture("sigma_0_2_1");
  auto G = geodesic_formal(s, path(s, "pi,w+,pi"));
  CHECK(std::get<LaurentPoly>(G.value) == var("w"));
  CHECK(std::get<LaurentPoly>(G.raw_trace) == var("w"));
  CHECK_THROWS_AS(geodesic_formal(fixture("t3"), path(fixture("t3"), "p1,p2")), PathError);

  auto g3 = fixture("sigma_0_3_1");
  auto p = path(g3, "pi,a1,w1+,a1,pi");
  auto num = geodesic_numeric(g3, p, CoordinatePoint::from_graph(g3));
  auto m = evaluate_real(compile(g3, p), CoordinatePoint::from_graph(g3));
  CHECK(std::get<Number>(num.value).value == doctest::Approx(std::abs(m.a + m.d)));
  CHECK(std::get<Number>(num.value).value > 0);

  auto g5 = fixture("sigma_0_5_1");
  auto two = geodesic_formal(g5, path(g5, "pi,a1,w1+,a1,b1,a2,w2+,a2,b1,pi"));
  auto poly = std::get<LaurentPoly>(two.value);
  CHECK(positivity_check(poly));
  CHECK(poly.depends_on("w1"));
  CHECK(poly.depends_on("w2"));
  CHECK(poly.depends_on("t_a1"));
}

TEST_CASE("positivity check") {
  auto t = var("t");
  CHECK(positivity_check(t * t + LaurentPoly(2) + var("t", -2)));
  CHECK_FALSE(positivity_check(t - var("t", -1)));
}

TEST_CASE("winding") {
  auto g = fixture("sigma_0_3_1");
  CHECK(max_winding(g, path(g, "pi,a1,w1+,a1,pi")) == 1);
  CHECK(max_winding(g, path(g, "pi,a1,w1+,w1+,a1,pi")) == 2);
  // cyclic reduction joins the two visits
  CHECK(max_winding(g, path(g, "pi,a1,w1+,a1,b1,w2+,b1,a1,w1+,a1,pi")) == 2);
  CHECK(max_winding(g, path(g, "pi,a1,w1+,a1,b1,w2+,b1,pi")) == 1);
}

TEST_CASE("random paths are deterministic and valid") {
  auto g = fixture("sigma_0_5_1");
  Rng a(42), b(42);
  for (int i = 0; i < 20; ++i) {
    auto p = random_path(g, a, 30, i % 2 == 1);
    auto q = random_path(g, b, 30, i % 2 == 1);
    REQUIRE(p.has_value());
    REQUIRE(q.has_value());
    CHECK(p->exits == q->exits);
    CHECK_NOTHROW(check_path(g, *p));
    // one cusp: arcs are closed too, so only closed requests bound the cyclic winding
    if (i % 2) CHECK(max_winding(g, *p) <= 1);
    CHECK(is_closed(g, *p));
  }
}
