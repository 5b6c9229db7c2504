#include "spine/forms.hpp"

#include "spine/coords.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spine {

CoordinateIndexedMatrix::CoordinateIndexedMatrix(std::vector<std::string> l, MatrixConvention c)
    : labels(std::move(l)), m(labels.size(), std::vector<Rational>(labels.size())), convention(c) {}

std::size_t CoordinateIndexedMatrix::index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw std::out_of_range("no coordinate " + label);
}

const Rational& CoordinateIndexedMatrix::at(const std::string& i, const std::string& j) const {
  return m[index(i)][index(j)];
}

bool CoordinateIndexedMatrix::antisymmetric() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (m[i][j] != -m[j][i]) return false;
  return true;
}

bool CoordinateIndexedMatrix::integral() const {
  for (auto& row : m)
    for (auto& x : row)
      if (denominator(x) != 1) return false;
  return true;
}

CoordinateIndexedMatrix CoordinateIndexedMatrix::restrict_to(const std::vector<std::string>& sub) const {
  CoordinateIndexedMatrix r(sub, convention);
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = 0; j < sub.size(); ++j) r.m[i][j] = at(sub[i], sub[j]);
  return r;
}

std::string CoordinateIndexedMatrix::str() const {
  std::ostringstream out;
  out << "labels";
  for (auto& l : labels) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out << labels[i];
    for (auto& x : m[i]) out << " " << to_string(x);
    out << "\n";
  }
  return out.str();
}

namespace {

void add_pair(CoordinateIndexedMatrix& M, std::size_t i, std::size_t j, const Rational& v) {
  M.m[i][j] += v;
  M.m[j][i] -= v;
}

std::map<int, std::size_t> label_index(const FatGraph& g) {
  std::map<int, std::size_t> ix;
  auto ce = g.coordinate_edges();
  for (std::size_t i = 0; i < ce.size(); ++i) ix[ce[i]] = i;
  return ix;
}

}  // namespace

CoordinateIndexedMatrix poisson_matrix(const FatGraph& g) {
  CoordinateIndexedMatrix P(g.coordinate_labels(), MatrixConvention::Bivector);
  auto ix = label_index(g);
  for (auto& v : g.vertices()) {
    if (v.is_cusp()) continue;
    std::vector<std::size_t> slots;
    for (int h : v.halves)
      if (g.kind_of_half(h) != EdgeKind::Loop) slots.push_back(ix.at(g.edge_of(h)));
    if (slots.size() < 2) continue;
    // with two slots the cyclic sum cancels, matching a loop vertex's bracket
    for (std::size_t k = 0; k < slots.size(); ++k) add_pair(P, slots[k], slots[(k + 1) % slots.size()], 1);
  }
  return P;
}

CoordinateIndexedMatrix window_form_matrix(const FatGraph& g) {
  CoordinateIndexedMatrix M(g.coordinate_labels(), MatrixConvention::Form);
  auto ix = label_index(g);
  for (auto& w : windows(g)) {
    auto toks = w.coordinate_tokens();
    for (std::size_t p = 0; p < toks.size(); ++p)
      for (std::size_t q = p + 1; q < toks.size(); ++q) add_pair(M, ix.at(toks[p]), ix.at(toks[q]), 1);
  }
  return M;
}

CoordinateIndexedMatrix penner_form_matrix(const FatGraph& g) {
  if (g.type().n == 0) throw GraphError("surface has no cusps");
  auto labels = g.coordinate_labels();
  CoordinateIndexedMatrix M(labels, MatrixConvention::Form);
  auto ix = label_index(g);
  // d log lambda of each dual arc, as twice-scaled integer vectors
  std::map<int, std::vector<int>> dlog;
  for (int e : g.coordinate_edges()) {
    std::vector<int> v(labels.size(), 0);
    for (auto& [name, k] : coordinate_counts(g, dual_arc(g, e))) v[ix.at(g.edge_index(name))] = k;
    dlog[e] = std::move(v);
  }
  const Rational quarter(1, 4);
  for (auto& vert : g.vertices()) {
    if (vert.is_cusp()) continue;
    // a loop vertex's triangle has two identical sides; its cyclic sum vanishes
    if (g.is_loop_vertex(static_cast<int>(&vert - g.vertices().data()))) continue;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& a = dlog.at(g.edge_of(vert.halves[k]));
      const auto& b = dlog.at(g.edge_of(vert.halves[(k + 1) % 3]));
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < labels.size(); ++j)
          if (b[j]) add_pair(M, i, j, quarter * a[i] * b[j]);
      }
    }
  }
  return M;
}

std::string CenterBasis::str() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    out << "center hole" << k;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (vectors[k][i] != 0) out << " " << labels[i] << ":" << vectors[k][i];
    out << "\n";
  }
  for (auto& w : casimir_loops) out << "casimir " << w << "\n";
  return out.str();
}

CenterBasis center_vectors(const FatGraph& g) {
  CenterBasis c;
  c.labels = g.coordinate_labels();
  auto ix = label_index(g);
  for (auto& f : faces(g)) {
    if (f.monogon) {
      c.casimir_loops.push_back(g.edge(g.edge_of(f.exits[0])).name);
      continue;
    }
    std::vector<Integer> v(c.labels.size(), 0);
    for (int x : f.exits)
      if (g.kind_of_half(x) != EdgeKind::Loop) v[ix.at(g.edge_of(x))] += 1;
    c.vectors.push_back(std::move(v));
  }
  return c;
}

bool center_annihilates(const CoordinateIndexedMatrix& P, const CenterBasis& c) {
  for (auto& v : c.vectors)
    for (std::size_t i = 0; i < P.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < P.size(); ++j) s += P.m[i][j] * Rational(v[j]);
      if (s != 0) return false;
    }
  return true;
}

std::optional<Rational> proportionality(const CoordinateIndexedMatrix& a, const CoordinateIndexedMatrix& b) {
  if (a.labels != b.labels) throw std::invalid_argument("label mismatch");
  std::optional<Rational> k;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (b.m[i][j] == 0) {
        if (a.m[i][j] != 0) return std::nullopt;
        continue;
      }
      Rational r = a.m[i][j] / b.m[i][j];
      if (k && *k != r) return std::nullopt;
      k = r;
    }
  if (!k) return Rational(0);  // both zero
  return k;
}

namespace {

using RMat = std::vector<std::vector<Rational>>;

RMat mul(const RMat& x, const RMat& y) {
  std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size(), k = y.size();
  RMat r(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (x[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += x[i][l] * y[l][j];
    }
  return r;
}

}  // namespace

InverseCheck verify_inverse(const CoordinateIndexedMatrix& F, const CoordinateIndexedMatrix& P,
                            const std::vector<std::string>& subset) {
  if (F.labels != P.labels) throw std::invalid_argument("dimension mismatch between form and bivector");
  auto Fs = F.restrict_to(subset), Ps = P.restrict_to(subset);
  RMat prod = mul(Fs.m, Ps.m);
  InverseCheck r;
  r.dimension = subset.size();
  Rational tr = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) tr += prod[i][i];
  r.c = subset.empty() ? Rational(0) : Rational(tr / static_cast<long>(subset.size()));
  r.residual = 0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) {
      Rational d = abs(prod[i][j] - (i == j ? r.c : Rational(0)));
      if (d > r.residual) r.residual = d;
    }
  r.scalar = r.residual == 0;
  return r;
}

std::vector<std::vector<Rational>> image_basis(const CoordinateIndexedMatrix& P) {
  std::size_t n = P.size();
  std::vector<std::vector<Rational>> basis, reduced;  // reduced: echelon copies
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = P.m[i][j];
    std::vector<Rational> w = col;
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      Rational f = w[pivots[k]] / reduced[k][pivots[k]];
      if (f != 0)
        for (std::size_t i = 0; i < n; ++i) w[i] -= f * reduced[k][i];
    }
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    reduced.push_back(w);
    pivots.push_back(piv);
    basis.push_back(col);
  }
  return basis;
}

InverseCheck verify_inverse_on_leaf(const CoordinateIndexedMatrix& F, const CoordinateIndexedMatrix& P) {
  if (F.labels != P.labels) throw std::invalid_argument("dimension mismatch between form and bivector");
  std::size_t n = F.size();
  RMat PFP = mul(mul(P.m, F.m), P.m);
  InverseCheck r;
  r.dimension = image_basis(P).size();
  // least-squares scalar: <PFP, P> / <P, P>
  Rational num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num += PFP[i][j] * P.m[i][j];
      den += P.m[i][j] * P.m[i][j];
    }
  r.c = den == 0 ? Rational(0) : Rational(num / den);
  r.residual = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational d = abs(PFP[i][j] - r.c * P.m[i][j]);
      if (d > r.residual) r.residual = d;
    }
  r.scalar = r.residual == 0;
  return r;
}

double poisson_bracket_numeric(const ScalarFunction& f, const ScalarFunction& g, const std::vector<double>& y,
                               const CoordinateIndexedMatrix& P, double h) {
  if (y.size() != P.size()) throw std::invalid_argument("point has wrong dimension");
  auto grad = [&](const ScalarFunction& fn) {
    std::vector<double> d(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      double step = h * std::max(1.0, std::fabs(y[i]));
      auto yp = y, ym = y;
      yp[i] += step;
      ym[i] -= step;
      double a = fn(yp), b = fn(ym);
      if (!std::isfinite(a) || !std::isfinite(b)) throw std::domain_error("non-finite function value");
      d[i] = (a - b) / (2 * step);
    }
    return d;
  };
  auto df = grad(f), dg = grad(g);
  double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (P.m[i][j] != 0) s += df[i] * to_double(P.m[i][j]) * dg[j];
  return s;
}

}  // namespace spine
