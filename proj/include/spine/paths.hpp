#pragma once

#include "spine/algebra.hpp"
#include "spine/coords.hpp"
#include "spine/ribbon.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace spine {

class PathError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathToken {
  std::string edge;
  char sign = 0;  // '+' / '-' on loop tokens
  friend bool operator==(const PathToken&, const PathToken&) = default;
};

// Comma-separated token list, e.g. "pi,a1,w1+,a1,pi".
struct PathWord {
  std::vector<PathToken> tokens;
  static PathWord parse(const std::string& text);
  std::string str() const;
  friend bool operator==(const PathWord&, const PathWord&) = default;
};

HalfPath resolve(const FatGraph& g, const PathWord& w);
PathWord to_word(const FatGraph& g, const HalfPath& p);
void check_path(const FatGraph& g, const HalfPath& p);  // throws PathError
bool is_closed(const FatGraph& g, const HalfPath& p);
// Longest run of consecutive windings around one loop; closed paths are
// cyclically reduced first, so runs may wrap around.
int max_winding(const FatGraph& g, const HalfPath& p);

enum class AtomKind { X, R, L, F, FInvNeg };

struct Atom {
  AtomKind kind;
  std::string symbol;  // edge name for X, loop name for F / -F^-1
};

// Atoms in path order; the matrix is  atoms.back() * ... * atoms.front().
struct MatrixWord {
  std::vector<Atom> atoms;
  std::string str() const;  // printed in product order
};

MatrixWord compile(const FatGraph& g, const HalfPath& p);
MatrixWord compile(const FatGraph& g, const PathWord& w);

std::string t_symbol(const std::string& edge);

Mat2<LaurentPoly> evaluate_formal(const MatrixWord& w);
// Exact evaluation; requires every t and omega used to be rational.
Mat2<Rational> evaluate_exact(const MatrixWord& w, const CoordinatePoint& p);
Mat2<double> evaluate_real(const MatrixWord& w, const CoordinatePoint& p);
bool word_is_exact(const MatrixWord& w, const CoordinatePoint& p);

struct Number {
  double value = 0;
  std::optional<Rational> exact;
  std::string str() const;
};

LaurentPoly sign_normalized(const LaurentPoly& p);

LaurentPoly lambda_formal(const FatGraph& g, const HalfPath& p);
Number lambda_numeric(const FatGraph& g, const HalfPath& p, const CoordinatePoint& pt);

struct GeodesicFunction {
  std::variant<LaurentPoly, Number> value;
  std::variant<LaurentPoly, Number> raw_trace;
  PathWord source;
  std::string str() const;
};

GeodesicFunction geodesic_formal(const FatGraph& g, const HalfPath& p);
GeodesicFunction geodesic_numeric(const FatGraph& g, const HalfPath& p, const CoordinatePoint& pt);

bool positivity_check(const LaurentPoly& p);

// Deterministic generator: the raw engine output is consumed directly so that
// sequences do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n);
  double uniform();  // [0,1)
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Random backtracking-free path from a cusp to a cusp.  With `closed`, the
// path must return to its starting cusp.  Each visit to a loop winds around
// it between 1 and `winding_cap` times.  Returns nullopt after repeated
// failure to stay under `max_len` traversals.
std::optional<HalfPath> random_path(const FatGraph& g, Rng& rng, std::size_t max_len, bool closed = false,
                                    int winding_cap = 1, int attempts = 200);

}  // namespace spine
