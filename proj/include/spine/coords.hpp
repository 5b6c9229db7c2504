#pragma once

#include "spine/algebra.hpp"
#include "spine/ribbon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spine {

// A positive real x, carried exactly through its square when x^2 is rational.
// Half-exponentials t = e^{Y/2} and lambda-lengths are both of this kind:
// products keep the square exact, sums only stay exact for rational x.
struct Positive {
  double value = 1.0;
  std::optional<Rational> square = Rational(1);

  static Positive exact(const Rational& x);
  static Positive from_square(const Rational& s);
  static Positive real(double x);

  std::optional<Rational> exact_value() const;
  Positive inverse() const;
  double log() const;

  friend Positive operator*(const Positive& a, const Positive& b);
  friend Positive operator/(const Positive& a, const Positive& b) { return a * b.inverse(); }
  friend Positive operator+(const Positive& a, const Positive& b);
};

Positive pow(const Positive& x, int k);

// Coordinate value grammar (Y is the shear coordinate, t = e^{Y/2}):
//   <real>         Y itself, e.g. 0, -1.25, 3/2
//   log(r)         e^Y = r   (r a positive rational)
//   2log(r)        e^{Y/2} = r
// with an optional leading '-' on the log forms.
Positive parse_coordinate(const std::string& text);
std::string format_coordinate(const Positive& t);

// Positive value grammar for lambda-lengths: <rational> | sqrt(<rational>) | <real>
Positive parse_positive(const std::string& text);
std::string format_positive(const Positive& x);

struct Omega {
  double value = 2.0;
  std::optional<Rational> exact = Rational(2);
  std::string source = "default";
};

Omega parse_omega(const EdgeValue& v);

struct CoordinatePoint {
  std::map<std::string, Positive> t;  // non-loop edges: e^{Y/2}
  std::map<std::string, Omega> omega;  // loops

  static CoordinatePoint from_graph(const FatGraph& g);
  static CoordinatePoint from_logs(const FatGraph& g, const std::vector<double>& y,
                                   const std::map<std::string, Omega>& omega);

  // Y values in coordinate-label order.
  std::vector<double> logs(const FatGraph& g) const;
  bool exact() const;  // every t rational
  const Positive& at(const std::string& edge) const;
  const Omega& omega_at(const std::string& loop) const;
};

// Writes the point into the value fields of the graph's edges.
void store_point(FatGraph& g, const CoordinatePoint& p);

using LambdaAssignment = std::map<std::string, Positive>;

LambdaAssignment read_lambdas(const FatGraph& g);
void store_lambdas(FatGraph& g, const LambdaAssignment& l);

// Coordinate multiplicities along a path (loops carry none).
std::map<std::string, int> coordinate_counts(const FatGraph& g, const HalfPath& p);

LambdaAssignment lambda_of_dual_arcs(const FatGraph& g, const CoordinatePoint& p);

// Cross-ratio neighbours of an inner edge with halves h, h':
// A = sigma(h), B = sigma^-1(h), C = sigma(h'), D = sigma^-1(h').
struct InnerSlots {
  int a, b, c, d;  // half-edges
};
InnerSlots inner_slots(const FatGraph& g, int edge);

// lambda of the arc dual to the edge carrying half h; loop halves give 1
Positive lambda_of_half(const FatGraph& g, const LambdaAssignment& l, int h);

CoordinatePoint shear_from_lambda(const FatGraph& g, const LambdaAssignment& l);

}  // namespace spine
