#include "spine/flips.hpp"
#include "spine/fuzz.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace spine;

namespace {

FatGraph fixture(const std::string& name) { return load_graph(std::string(SPINE_FIXTURES) + "/" + name + ".graph"); }

Rational q(long n, long d = 1) { return Rational(n) / d; }

std::string slot_edge(const FlipRecord& r, const std::string& name) {
  for (auto& s : r.slots)
    if (s.name == name) return s.edge;
  return "";
}

bool same_up_to_sign(const Mat2<double>& x, const Mat2<double>& y, double tol = 1e-9) {
  auto close = [&](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); };
  return (close(x.a, y.a) && close(x.b, y.b) && close(x.c, y.c) && close(x.d, y.d)) ||
         (close(x.a, -y.a) && close(x.b, -y.b) && close(x.c, -y.c) && close(x.d, -y.d));
}

}  // namespace

TEST_CASE("inner flip at the origin") {
  auto g = fixture("sigma_0_1_4");
  auto r = flip_inner(g, g.edge_index("e"), CoordinatePoint::from_graph(g));
  CHECK(r.point.at(slot_edge(r.record, "A")).square == q(2));
  CHECK(r.point.at(slot_edge(r.record, "B")).square == q(1, 2));
  CHECK(r.point.at(slot_edge(r.record, "C")).square == q(2));
  CHECK(r.point.at(slot_edge(r.record, "D")).square == q(1, 2));
  CHECK(r.point.at("e").square == q(1));
  CHECK(validate(r.graph).ok());
}

TEST_CASE("inner flip is an involution") {
  auto g = fixture("sigma_0_1_4");
  auto p = CoordinatePoint::from_graph(g);
  p.t["e"] = Positive::exact(q(3, 2));
  p.t["p1"] = Positive::exact(q(2));
  p.t["p4"] = Positive::exact(q(1, 5));
  auto once = flip(g, g.edge_index("e"), p);
  auto twice = flip(once.graph, once.graph.edge_index("e"), once.point);
  CHECK(graph_signature(twice.graph) == graph_signature(g));
  for (auto& l : g.coordinate_labels()) CHECK(twice.point.at(l).square == p.at(l).square);
}

TEST_CASE("flip agrees with Ptolemy mutation") {
  auto g = fixture("sigma_0_1_4");
  Rng rng(3);
  for (int k = 0; k < 25; ++k) {
    auto p = random_exact_point(g, rng);
    int e = g.edge_index("e");
    auto r = flip(g, e, p);
    auto mutated = mutate_lambda(g, lambda_of_dual_arcs(g, p), e, MutationKind::Ptolemy);
    auto back = shear_from_lambda(r.graph, mutated);
    for (auto& l : g.coordinate_labels()) {
      REQUIRE(back.at(l).square.has_value());
      CHECK(*back.at(l).square == *r.point.at(l).square);
    }
  }
}

TEST_CASE("loop-adjacent flip") {
  auto g = fixture("sigma_0_3_1");
  int e = g.edge_index("a1");
  CHECK(inner_flip_refusal(g, e).has_value());
  CHECK_FALSE(loop_flip_refusal(g, e).has_value());
  auto p = CoordinatePoint::from_graph(g);
  auto r = flip_loop_adjacent(g, e, p);
  auto A = slot_edge(r.record, "A");
  CHECK(r.point.at(A).square == q(4));  // A + 2 log 2
  CHECK(r.point.at("a1").square == q(1));
  CHECK(validate(r.graph).ok());

  p.omega["w1"] = Omega{3.0, q(3), "test"};
  auto r3 = flip_loop_adjacent(g, e, p);
  CHECK(r3.point.at(A).square == q(5));  // 2 + omega

  auto twice = flip(r3.graph, r3.graph.edge_index("a1"), r3.point);
  CHECK(graph_signature(twice.graph) == graph_signature(g));
  for (auto& l : g.coordinate_labels()) CHECK(twice.point.at(l).square == p.at(l).square);
}

TEST_CASE("refusals") {
  auto t3 = fixture("t3");
  CHECK_THROWS_AS(flip(t3, t3.edge_index("p1"), CoordinatePoint::from_graph(t3)), FlipError);
  auto g = fixture("sigma_0_3_1");
  CHECK_THROWS_AS(flip(g, g.edge_index("w1"), CoordinatePoint::from_graph(g)), FlipError);
  CHECK_THROWS_AS(flip_inner(g, g.edge_index("a1"), CoordinatePoint::from_graph(g)), FlipError);
  auto s = fixture("sigma_0_1_4");
  CHECK_THROWS_AS(flip_loop_adjacent(s, s.edge_index("e"), CoordinatePoint::from_graph(s)), FlipError);
}

TEST_CASE("lambda mutations") {
  auto g = fixture("sigma_0_1_4");
  int e = g.edge_index("e");
  LambdaAssignment ones;
  for (auto& l : g.coordinate_labels()) ones[l] = Positive::exact(q(1));
  CHECK(mutate_lambda(g, ones, e, MutationKind::Ptolemy).at("e").exact_value() == q(2));

  auto s = inner_slots(g, e);
  LambdaAssignment l = ones;
  l[g.edge(g.edge_of(s.a)).name] = Positive::exact(q(1));
  l[g.edge(g.edge_of(s.b)).name] = Positive::exact(q(2));
  l[g.edge(g.edge_of(s.c)).name] = Positive::exact(q(3));
  l[g.edge(g.edge_of(s.d)).name] = Positive::exact(q(4));
  l["e"] = Positive::exact(q(2));
  CHECK(mutate_lambda(g, l, e, MutationKind::Ptolemy).at("e").exact_value() == q(11, 2));

  auto h = fixture("sigma_0_3_1");
  LambdaAssignment hl;
  for (auto& x : h.coordinate_labels()) hl[x] = Positive::exact(q(1));
  CHECK(mutate_lambda(h, hl, h.edge_index("a1"), MutationKind::Generalized).at("a1").exact_value() == q(4));
  CHECK_THROWS_AS(mutate_lambda(h, hl, h.edge_index("pi"), MutationKind::Ptolemy), FlipError);
}

TEST_CASE("flip matrix identities") {
  auto reps = verify_flip_matrix_identities();
  REQUIRE(reps.size() == 7);
  for (auto& r : reps) {
    CAPTURE(r.name);
    CHECK(r.holds);
    CHECK(r.numeric_holds);
    CHECK(r.u_degree == 0);
  }
  auto printed = printed_identity_forms();
  REQUIRE(printed.size() == 3);
  CHECK_FALSE(printed[0].holds);
  CHECK_FALSE(printed[2].holds);
}

TEST_CASE("transport keeps path matrices") {
  for (auto [name, edge] : {std::pair{"sigma_0_5_1", "b1"}, std::pair{"sigma_0_5_1", "a2"},
                            std::pair{"sigma_0_3_1", "b1"}, std::pair{"sigma_0_1_4", "e"}}) {
    CAPTURE(name);
    CAPTURE(edge);
    auto g = fixture(name);
    Rng rng(11);
    auto p = random_exact_point(g, rng);
    auto r = flip(g, g.edge_index(edge), p);
    for (int k = 0; k < 30; ++k) {
      auto path = random_path(g, rng, 24, k % 2 == 1, 3);
      if (!path) continue;
      auto moved = transport(g, r.record, *path);
      CHECK_NOTHROW(check_path(r.graph, moved));
      CHECK(same_up_to_sign(evaluate_real(compile(g, *path), p), evaluate_real(compile(r.graph, moved), r.point)));
    }
  }
}
