#include "spine/ribbon.hpp"

#include <doctest.h>

#include <string>

using namespace spine;

namespace {

FatGraph fixture(const std::string& name) { return load_graph(std::string(SPINE_FIXTURES) + "/" + name + ".graph"); }

std::string tokens(const FatGraph& g, const Window& w) {
  std::string s;
  for (int e : w.coordinate_tokens()) s += (s.empty() ? "" : ",") + g.edge(e).name;
  return s;
}

const char* t3_text = R"(surface g=0 sh=1 so=0 n=3
vertex v ccw: h1 h2 h3
cusp c1 half: k1
cusp c2 half: k2
cusp c3 half: k3
edge p1 pending k1 h1
edge p2 pending k2 h2
edge p3 pending k3 h3
)";

}  // namespace

TEST_CASE("parse T3") {
  auto g = parse_graph(t3_text);
  CHECK(g.edges().size() == 3);
  CHECK(g.vertices().size() == 4);
  CHECK(validate(g).ok());
  CHECK(format_graph(parse_graph(format_graph(g))) == format_graph(g));
}

TEST_CASE("parse the five-holed disc") {
  auto g = fixture("sigma_0_5_1");
  CHECK(g.edges().size() == 11);
  CHECK(g.type().expected_edges() == 11);
  CHECK(g.loop_edges().size() == 4);
  CHECK(g.coordinate_labels() == std::vector<std::string>{"pi", "a1", "b1", "a2", "b2", "a3", "b3"});
}

TEST_CASE("parse errors") {
  std::string dup = t3_text;
  dup.replace(dup.find("edge p3 pending k3 h3"), 21, "edge p3 pending k3 h2");
  CHECK_THROWS_AS(parse_graph(dup), ParseError);

  std::string unknown = t3_text;
  unknown.replace(unknown.find("h3\n"), 2, "hx");
  CHECK_THROWS_AS(parse_graph(unknown), ParseError);

  try {
    parse_graph(std::string(t3_text) + "bogus line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
  }
}

TEST_CASE("validation") {
  for (auto name : {"t3", "sigma_0_1_4", "sigma_0_2_1", "sigma_0_3_1", "sigma_0_5_1"}) {
    CAPTURE(name);
    CHECK(validate(fixture(name)).ok());
  }
  std::string wrong = t3_text;
  wrong.replace(wrong.find("g=0"), 3, "g=1");
  auto r = validate(parse_graph(wrong));
  CHECK_FALSE(r.ok());
  bool edge_count_failed = false;
  for (auto& c : r.checks)
    if (c.name.find("edge count") != std::string::npos) edge_count_failed = !c.passed;
  CHECK(edge_count_failed);
}

TEST_CASE("rotation") {
  auto g = parse_graph(t3_text);
  int h1 = g.half_index("h1"), h2 = g.half_index("h2"), h3 = g.half_index("h3");
  CHECK(g.sigma(h1) == h2);
  CHECK(g.sigma(h3) == h1);
  CHECK(g.sigma_inv(h1) == h3);
  CHECK(g.mate(h1) == g.half_index("k1"));
  CHECK(g.at_cusp(g.half_index("k2")));
}

TEST_CASE("faces") {
  auto g = fixture("sigma_0_5_1");
  auto fs = faces(g);
  CHECK(fs.size() == 5);
  int monogons = 0;
  for (auto& f : fs) monogons += f.monogon;
  CHECK(monogons == 4);
}

TEST_CASE("windows") {
  auto g = fixture("sigma_0_5_1");
  auto ws = windows(g);
  REQUIRE(ws.size() == 1);
  CHECK(tokens(g, ws[0]) == "pi,a1,a1,b1,a2,a2,b2,a3,a3,b3,b3,b2,b1,pi");

  auto t3 = fixture("t3");
  auto wt = windows(t3);
  REQUIRE(wt.size() == 3);
  CHECK(tokens(t3, wt[0]) == "p1,p2");
  CHECK(tokens(t3, wt[1]) == "p2,p3");
  CHECK(tokens(t3, wt[2]) == "p3,p1");

  auto s3 = fixture("sigma_0_3_1");
  CHECK(tokens(s3, windows(s3).at(0)) == "pi,a1,a1,b1,b1,pi");
}

TEST_CASE("no windows without cusps") {
  auto g = parse_graph(R"(surface g=0 sh=0 so=3 n=0
vertex u ccw: a b c
vertex v ccw: d f e
edge x inner a d
edge y inner b e
edge z inner c f
)");
  CHECK_THROWS_AS(windows(g), GraphError);
}

TEST_CASE("dual arcs") {
  auto g = fixture("t3");
  auto arc = dual_arc(g, g.edge_index("p3"));
  // enters through p3's cusp and leaves through p2
  REQUIRE(arc.exits.size() == 2);
  CHECK(g.edge_of(arc.exits[0]) == g.edge_index("p3"));
  CHECK(g.edge_of(arc.exits[1]) == g.edge_index("p2"));

  auto s = fixture("sigma_0_1_4");
  auto e = dual_arc(s, s.edge_index("e"));
  REQUIRE(e.exits.size() == 3);
  CHECK(s.edge(s.edge_of(e.exits[1])).name == "e");
  CHECK(s.edge(s.edge_of(e.exits[0])).kind == EdgeKind::Pending);
  CHECK(s.edge(s.edge_of(e.exits[2])).kind == EdgeKind::Pending);

  CHECK_THROWS(dual_arc(fixture("sigma_0_2_1"), fixture("sigma_0_2_1").edge_index("w")));
}

TEST_CASE("reverse path") {
  auto g = fixture("sigma_0_5_1");
  auto arc = dual_arc(g, g.edge_index("b2"));
  auto back = reverse_path(g, reverse_path(g, arc));
  CHECK(back.exits == arc.exits);
}
