#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spine {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);  // "3", "-2/5", "0.25"
std::optional<Rational> rational_sqrt(const Rational& x);
double to_double(const Rational& x);

// Variables are interned process-wide; ids are only used internally, all
// printing and ordering goes through names so output never depends on
// interning order.
int intern_symbol(std::string_view name);
const std::string& symbol_name(int id);

// sorted by symbol id, exponents nonzero
using Monomial = std::vector<std::pair<int, int>>;

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(Integer c);

  static LaurentPoly variable(std::string_view name, int exponent = 1);
  static LaurentPoly monomial(Integer coeff, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::map<Monomial, Integer>& terms() const { return terms_; }

  // Terms in canonical print order (leading term first).
  std::vector<std::pair<Monomial, Integer>> canonical_terms() const;
  Integer leading_coefficient() const;
  // Coefficients all of one sign (zero counts as sign-definite).
  bool sign_definite() const;
  bool depends_on(std::string_view name) const;
  int degree_in(std::string_view name) const;  // max exponent

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly pow(int k) const;  // negative k only for monomials
  // Exact quotient if `d` divides this polynomial in the Laurent ring.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

  Rational evaluate(const std::map<std::string, Rational>& values) const;
  double evaluate(const std::map<std::string, double>& values) const;

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Integer& c);
  std::map<Monomial, Integer> terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

// Extension of the Laurent ring by square roots u_k, u_k^2 = r_k.  Elements
// are  sum_S c_S u^S / prod_k r_k^{d_k}  with S ranging over subsets of the
// generators (u-degree at most one in each generator).
struct SqrtGenerator {
  std::string name;
  LaurentPoly square;
};

class SqrtRing {
 public:
  explicit SqrtRing(std::vector<SqrtGenerator> gens);
  const std::vector<SqrtGenerator>& generators() const { return gens_; }
  std::size_t index_of(std::string_view name) const;  // throws if undeclared

 private:
  std::vector<SqrtGenerator> gens_;
};

using SqrtRingPtr = std::shared_ptr<const SqrtRing>;

class SqrtElement {
 public:
  SqrtElement() = default;
  SqrtElement(SqrtRingPtr ring, LaurentPoly base);
  static SqrtElement generator(SqrtRingPtr ring, std::string_view name);

  const SqrtRingPtr& ring() const { return ring_; }
  const std::map<std::uint32_t, LaurentPoly>& numerator() const { return num_; }
  const std::vector<int>& denominator_exponents() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  // Largest number of generators appearing in one term of the reduced form.
  int u_degree() const;
  // In the base ring (no surviving u and no denominator)?
  std::optional<LaurentPoly> as_base() const;

  SqrtElement operator-() const;
  friend SqrtElement operator+(const SqrtElement& a, const SqrtElement& b);
  friend SqrtElement operator-(const SqrtElement& a, const SqrtElement& b) { return a + (-b); }
  friend SqrtElement operator*(const SqrtElement& a, const SqrtElement& b);
  friend bool operator==(const SqrtElement& a, const SqrtElement& b);

  // Inverse of a unit of the form  (monomial) u^S / r^d.
  SqrtElement inverse() const;

  // Positive square roots are taken for the generators.
  double evaluate(const std::map<std::string, double>& values) const;

  std::string str() const;

 private:
  void reduce();
  SqrtRingPtr ring_;
  std::map<std::uint32_t, LaurentPoly> num_;
  std::vector<int> den_;
};

SqrtElement sqrt_reduce(SqrtElement x);

// 2x2 matrices; rows (a b; c d).  The ring only needs +, -, * and ==.
template <class T>
struct Mat2 {
  T a, b, c, d;

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

template <class T>
Mat2<T> mat2_mul(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y;
}

std::string str(const Mat2<LaurentPoly>& m);
std::string str(const Mat2<Rational>& m);
std::string str(const Mat2<SqrtElement>& m);

}  // namespace spine
