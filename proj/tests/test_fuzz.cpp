#include "spine/fuzz.hpp"

#include <doctest.h>

#include <string>

using namespace spine;

TEST_CASE("random graphs validate and respect bounds") {
  Rng rng(5);
  GraphBounds b;
  for (int i = 0; i < 40; ++i) {
    auto g = random_graph(rng, b);
    CHECK(validate(g).ok());
    CHECK(g.type().g <= b.max_genus);
    CHECK(g.type().s() <= b.max_holes);
    CHECK(g.type().n <= b.max_cusps);
    CHECK(g.type().n >= 1);
  }
}

TEST_CASE("generation is deterministic") {
  Rng a(99), b(99);
  for (int i = 0; i < 10; ++i) CHECK(format_graph(random_graph(a)) == format_graph(random_graph(b)));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 3) == trial_seed(1, 3));
}

TEST_CASE("signature ignores half-edge names") {
  auto g = parse_graph(R"(surface g=0 sh=1 so=0 n=3
vertex v ccw: h1 h2 h3
cusp c1 half: k1
cusp c2 half: k2
cusp c3 half: k3
edge p1 pending k1 h1
edge p2 pending k2 h2
edge p3 pending k3 h3
)");
  auto h = parse_graph(R"(surface g=0 sh=1 so=0 n=3
vertex v ccw: x3 x1 x2
cusp c1 half: y1
cusp c2 half: y2
cusp c3 half: y3
edge p1 pending y1 x1
edge p2 pending y2 x2
edge p3 pending y3 x3
)");
  CHECK(graph_signature(g) == graph_signature(h));
}

TEST_CASE("exact points") {
  Rng rng(1);
  auto g = random_graph(rng);
  auto p = random_exact_point(g, rng);
  CHECK(p.exact());
  for (auto& [w, o] : p.omega) CHECK(o.value >= 2.0);
}

TEST_CASE("suites pass on a small run") {
  FuzzConfig cfg;
  cfg.seed = 1;
  cfg.trials = 15;
  auto rep = run_fuzz(cfg);
  CHECK(rep.ok());
  CHECK(rep.suites.size() == all_suites().size());
  for (auto& s : rep.suites) {
    CAPTURE(s.name);
    CHECK(s.checked > 0);
  }
  CHECK(run_fuzz(cfg).text() == rep.text());
  CHECK(rep.tsv().rfind("suite\tchecked\tfailures", 0) == 0);
}

TEST_CASE("single trial reproduces") {
  FuzzConfig cfg;
  cfg.seed = 8;
  cfg.trials = 10;
  cfg.only_trial = 4;
  cfg.suites = {"monomiality"};
  auto rep = run_fuzz(cfg);
  CHECK(rep.ok());
  CHECK(rep.suites.at(0).checked > 0);
  cfg.suites = {"nope"};
  CHECK_THROWS(run_fuzz(cfg));
}
