#pragma once

#include "spine/algebra.hpp"
#include "spine/ribbon.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spine {

enum class MatrixConvention { Bivector, Form };

// Antisymmetric matrix indexed by coordinate labels.  Bivector: entry (i,j)
// is {Y_i, Y_j}.  Form: the 2-form  sum_{i<j} M_ij dY_i ^ dY_j.
struct CoordinateIndexedMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> m;
  MatrixConvention convention = MatrixConvention::Form;

  CoordinateIndexedMatrix() = default;
  CoordinateIndexedMatrix(std::vector<std::string> labels, MatrixConvention c);

  std::size_t size() const { return labels.size(); }
  std::size_t index(const std::string& label) const;
  const Rational& at(const std::string& i, const std::string& j) const;
  bool antisymmetric() const;
  bool integral() const;
  CoordinateIndexedMatrix restrict_to(const std::vector<std::string>& sub) const;
  std::string str() const;  // line-oriented
};

CoordinateIndexedMatrix poisson_matrix(const FatGraph& g);
CoordinateIndexedMatrix window_form_matrix(const FatGraph& g);
CoordinateIndexedMatrix penner_form_matrix(const FatGraph& g);

struct CenterBasis {
  std::vector<std::string> labels;
  std::vector<std::vector<Integer>> vectors;  // one per hole with cusps
  std::vector<std::string> casimir_loops;     // omega of each monogon
  std::string str() const;
};

CenterBasis center_vectors(const FatGraph& g);
// P * v == 0 for every center vector
bool center_annihilates(const CoordinateIndexedMatrix& P, const CenterBasis& c);

// If a == kappa * b exactly, return kappa (0 when both vanish); nullopt when
// the two are not proportional.
std::optional<Rational> proportionality(const CoordinateIndexedMatrix& a, const CoordinateIndexedMatrix& b);

struct InverseCheck {
  Rational c;
  Rational residual;  // max-norm of F P - c on the subspace
  bool scalar = false;
  std::size_t dimension = 0;
};

// F * P restricted to a coordinate subset.
InverseCheck verify_inverse(const CoordinateIndexedMatrix& F, const CoordinateIndexedMatrix& P,
                            const std::vector<std::string>& subset);
// Inverse on the symplectic leaf: P F P = c P, i.e. F P = c modulo the
// kernel of P.  `dimension` is the rank of P.
InverseCheck verify_inverse_on_leaf(const CoordinateIndexedMatrix& F, const CoordinateIndexedMatrix& P);
// A basis of the column space of P.
std::vector<std::vector<Rational>> image_basis(const CoordinateIndexedMatrix& P);

using ScalarFunction = std::function<double(const std::vector<double>&)>;

// grad f . P . grad g by central differences with step h.
double poisson_bracket_numeric(const ScalarFunction& f, const ScalarFunction& g, const std::vector<double>& y,
                               const CoordinateIndexedMatrix& P, double h = 1e-6);

}  // namespace spine
