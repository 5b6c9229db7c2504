#include "spine/forms.hpp"
#include "spine/paths.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace spine;

namespace {

FatGraph fixture(const std::string& name) { return load_graph(std::string(SPINE_FIXTURES) + "/" + name + ".graph"); }

using IMat = std::vector<std::vector<int>>;

const std::vector<std::string> ab{"a1", "b1", "a2", "b2", "a3", "b3"};

const IMat omega_paper{{0, 1, 0, 0, 0, 0},  {-1, 0, 1, -1, 0, 0}, {0, -1, 0, 1, 0, 0},
                       {0, 1, -1, 0, 1, -1}, {0, 0, 0, -1, 0, 1},  {0, 0, 0, 1, -1, 0}};

const IMat Omega_paper{{0, 1, 1, 1, 1, 1},  {-1, 0, 0, 0, 0, 0},  {-1, 0, 0, 1, 1, 1},
                       {-1, 0, -1, 0, 0, 0}, {-1, 0, -1, 0, 0, 1}, {-1, 0, -1, 0, -1, 0}};

bool equals(const CoordinateIndexedMatrix& m, const IMat& x, int scale = 1) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (m.m[i][j] != Rational(scale * x[i][j])) return false;
  return true;
}

const IMat cyc{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

}  // namespace

TEST_CASE("Poisson bivector") {
  auto g = fixture("sigma_0_5_1");
  auto P = poisson_matrix(g);
  CHECK(P.convention == MatrixConvention::Bivector);
  CHECK(P.antisymmetric());
  CHECK(P.integral());
  CHECK(equals(P.restrict_to(ab), omega_paper));

  CHECK(equals(poisson_matrix(fixture("t3")), cyc));

  auto s = poisson_matrix(fixture("sigma_0_2_1"));
  REQUIRE(s.size() == 1);
  CHECK(s.m[0][0] == 0);
}

TEST_CASE("window form") {
  auto g = fixture("sigma_0_5_1");
  auto M = window_form_matrix(g);
  CHECK(M.antisymmetric());
  for (auto& l : M.labels) CHECK(M.at("pi", l) == 0);
  CHECK(equals(M.restrict_to(ab), Omega_paper, 4));

  CHECK(equals(window_form_matrix(fixture("t3")), cyc));

  auto s3 = window_form_matrix(fixture("sigma_0_3_1"));
  CHECK(s3.at("a1", "b1") == 4);
  CHECK(s3.at("pi", "a1") == 0);
}

TEST_CASE("Penner form") {
  auto t3 = penner_form_matrix(fixture("t3"));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(t3.m[i][j] == Rational(cyc[i][j]) / 4);

  for (auto name : {"t3", "sigma_0_1_4", "sigma_0_2_1", "sigma_0_3_1", "sigma_0_5_1"}) {
    CAPTURE(name);
    auto g = fixture(name);
    auto k = proportionality(penner_form_matrix(g), window_form_matrix(g));
    REQUIRE(k.has_value());
    if (std::string(name) != "sigma_0_2_1") CHECK(*k == Rational(1) / 4);
  }
  auto P5 = penner_form_matrix(fixture("sigma_0_5_1"));
  CHECK(equals(P5.restrict_to(ab), Omega_paper));
}

TEST_CASE("proportionality") {
  CoordinateIndexedMatrix a({"x", "y"}, MatrixConvention::Form), b({"x", "y"}, MatrixConvention::Form);
  a.m = {{0, 2}, {-2, 0}};
  b.m = {{0, 4}, {-4, 0}};
  CHECK(proportionality(a, b) == Rational(1) / 2);
  b.m = {{0, 0}, {0, 0}};
  CHECK_FALSE(proportionality(a, b).has_value());
}

TEST_CASE("center") {
  auto g = fixture("sigma_0_5_1");
  auto c = center_vectors(g);
  REQUIRE(c.vectors.size() == 1);
  for (auto& x : c.vectors[0]) CHECK(x == 2);
  CHECK(c.casimir_loops.size() == 4);
  CHECK(center_annihilates(poisson_matrix(g), c));

  auto t3 = fixture("t3");
  auto ct = center_vectors(t3);
  REQUIRE(ct.vectors.size() == 1);
  CHECK(ct.vectors[0] == std::vector<Integer>{2, 2, 2});
  CHECK(center_annihilates(poisson_matrix(t3), ct));

  auto s2 = center_vectors(fixture("sigma_0_2_1"));
  CHECK(s2.casimir_loops == std::vector<std::string>{"w"});

  for (auto name : {"sigma_0_1_4", "sigma_0_3_1"}) {
    auto f = fixture(name);
    CHECK(center_annihilates(poisson_matrix(f), center_vectors(f)));
  }
}

TEST_CASE("inversion") {
  auto g = fixture("sigma_0_5_1");
  auto r = verify_inverse(window_form_matrix(g), poisson_matrix(g), ab);
  CHECK(r.c == -4);
  CHECK(r.residual == 0);
  CHECK(r.scalar);

  auto s3 = fixture("sigma_0_3_1");
  auto r3 = verify_inverse(window_form_matrix(s3), poisson_matrix(s3), {"a1", "b1"});
  CHECK(r3.c == -4);
  CHECK(r3.residual == 0);

  auto t3 = fixture("t3");
  auto rt = verify_inverse_on_leaf(window_form_matrix(t3), poisson_matrix(t3));
  CHECK(rt.c == -3);
  CHECK(rt.residual == 0);
  CHECK(rt.dimension == 2);
  CHECK(image_basis(poisson_matrix(t3)).size() == 2);

  auto leaf5 = verify_inverse_on_leaf(window_form_matrix(g), poisson_matrix(g));
  CHECK(leaf5.c == -4);
  CHECK(leaf5.scalar);
}

TEST_CASE("numeric bracket") {
  auto g = fixture("sigma_0_5_1");
  auto P = poisson_matrix(g);
  std::vector<double> y(P.size(), 0.3);
  auto coord = [](std::size_t i) { return [i](const std::vector<double>& x) { return x[i]; }; };
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j)
      CHECK(poisson_bracket_numeric(coord(i), coord(j), y, P) == doctest::Approx(to_double(P.m[i][j])).epsilon(1e-6));

  auto s3 = fixture("sigma_0_3_1");
  auto P3 = poisson_matrix(s3);
  auto c = center_vectors(s3).vectors.at(0);
  auto center = [c](const std::vector<double>& x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += to_double(Rational(c[i])) * x[i];
    return s;
  };
  auto w = compile(s3, resolve(s3, PathWord::parse("pi,a1,w1+,a1,b1,w2-,b1,pi")));
  auto base = CoordinatePoint::from_graph(s3);
  auto G = [&](const std::vector<double>& x) {
    auto m = evaluate_real(w, CoordinatePoint::from_logs(s3, x, base.omega));
    return std::abs(m.a + m.d);
  };
  std::vector<double> y3{0.2, -0.4, 0.7};
  CHECK(std::abs(poisson_bracket_numeric(center, G, y3, P3)) < 1e-6);
}
