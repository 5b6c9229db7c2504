#include "spine/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace spine {

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw std::invalid_argument("not a rational: " + std::string(text));
    Integer den{std::string(d)};
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    r = Rational(Integer{std::string(n)}, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw std::invalid_argument("not a rational: " + std::string(text));
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(fp.size()));
    Integer whole{ip.empty() ? std::string("0") : std::string(ip)};
    Integer frac{fp.empty() ? std::string("0") : std::string(fp)};
    r = Rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("not a rational: " + std::string(text));
    r = Rational(Integer{std::string(s)});
  }
  return neg ? Rational(-r) : r;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  Integer n = numerator(x), d = denominator(x);
  Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

// ---------------------------------------------------------------- symbols

namespace {

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, int> ids;
};

SymbolTable& symbols() {
  static SymbolTable t;
  return t;
}

}  // namespace

int intern_symbol(std::string_view name) {
  auto& t = symbols();
  std::lock_guard lock(t.mu);
  auto [it, fresh] = t.ids.try_emplace(std::string(name), static_cast<int>(t.names.size()));
  if (fresh) t.names.emplace_back(name);
  return it->second;
}

const std::string& symbol_name(int id) {
  auto& t = symbols();
  std::lock_guard lock(t.mu);
  return t.names.at(static_cast<std::size_t>(id));
}

// ---------------------------------------------------------------- monomials

namespace {

Monomial mono_mul(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(y[j++]);
    } else {
      int e = x[i].second + y[j].second;
      if (e != 0) out.emplace_back(x[i].first, e);
      ++i, ++j;
    }
  }
  return out;
}

Monomial mono_inv(Monomial m) {
  for (auto& [v, e] : m) e = -e;
  return m;
}

int exponent_of(const Monomial& m, int var) {
  for (auto& [v, e] : m)
    if (v == var) return e;
  return 0;
}

// Lex order by symbol id; a group order on exponent vectors.
int lex_cmp(const Monomial& x, const Monomial& y) {
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    int vx = i < x.size() ? x[i].first : INT32_MAX;
    int vy = j < y.size() ? y[j].first : INT32_MAX;
    int v = std::min(vx, vy);
    int ex = vx == v ? x[i].second : 0;
    int ey = vy == v ? y[j].second : 0;
    if (ex != ey) return ex < ey ? -1 : 1;
    if (vx == v) ++i;
    if (vy == v) ++j;
  }
  return 0;
}

// Dense exponent vector over `names` (sorted by name).
std::vector<int> dense(const Monomial& m, const std::vector<std::pair<std::string, int>>& names) {
  std::vector<int> out;
  out.reserve(names.size());
  for (auto& [n, id] : names) out.push_back(exponent_of(m, id));
  return out;
}

std::string mono_str(const Monomial& m) {
  std::vector<std::pair<std::string, int>> f;
  for (auto& [v, e] : m) f.emplace_back(symbol_name(v), e);
  std::sort(f.begin(), f.end());
  std::string s;
  for (auto& [n, e] : f) {
    if (!s.empty()) s += '*';
    s += n;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.emplace(Monomial{}, Integer(c));
}

LaurentPoly::LaurentPoly(Integer c) {
  if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

LaurentPoly LaurentPoly::variable(std::string_view name, int exponent) {
  LaurentPoly p;
  if (exponent == 0) return LaurentPoly(1);
  p.terms_.emplace(Monomial{{intern_symbol(name), exponent}}, Integer(1));
  return p;
}

LaurentPoly LaurentPoly::monomial(Integer coeff, Monomial m) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.emplace(std::move(m), std::move(coeff));
  return p;
}

void LaurentPoly::add_term(const Monomial& m, const Integer& c) {
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) {
    if (!is_monomial()) throw std::domain_error("negative power of a non-monomial Laurent polynomial");
    auto& [m, c] = *terms_.begin();
    if (c != 1 && c != -1) throw std::domain_error("negative power of a non-unit monomial");
    return monomial(c, mono_inv(m)).pow(-k);
  }
  LaurentPoly r(1), base = *this;
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

std::vector<std::pair<Monomial, Integer>> LaurentPoly::canonical_terms() const {
  std::vector<std::pair<std::string, int>> names;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m) names.emplace_back(symbol_name(v), v);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<std::pair<std::vector<int>, const std::pair<const Monomial, Integer>*>> keyed;
  for (auto& t : terms_) keyed.emplace_back(dense(t.first, names), &t);
  std::sort(keyed.begin(), keyed.end(), [](auto& x, auto& y) { return x.first > y.first; });
  std::vector<std::pair<Monomial, Integer>> out;
  for (auto& k : keyed) out.emplace_back(k.second->first, k.second->second);
  return out;
}

Integer LaurentPoly::leading_coefficient() const {
  if (terms_.empty()) return 0;
  return canonical_terms().front().second;
}

bool LaurentPoly::sign_definite() const {
  bool pos = false, neg = false;
  for (auto& [m, c] : terms_) (c > 0 ? pos : neg) = true;
  return !(pos && neg);
}

bool LaurentPoly::depends_on(std::string_view name) const {
  int id = intern_symbol(name);
  for (auto& [m, c] : terms_)
    if (exponent_of(m, id) != 0) return true;
  return false;
}

int LaurentPoly::degree_in(std::string_view name) const {
  int id = intern_symbol(name);
  int best = INT32_MIN;
  for (auto& [m, c] : terms_) best = std::max(best, exponent_of(m, id));
  return terms_.empty() ? 0 : best;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return LaurentPoly();
  // Shift both to genuine polynomials not divisible by any variable; the
  // quotient is then a polynomial bounded by the dividend's degrees.
  auto min_shift = [](const LaurentPoly& p) {
    std::map<int, int> lo;
    for (auto& [m, c] : p.terms_)
      for (auto& [v, e] : m) lo.try_emplace(v, 0);
    for (auto& [v, e0] : lo) {
      int best = INT32_MAX;
      for (auto& [m, c] : p.terms_) best = std::min(best, exponent_of(m, v));
      e0 = best;
    }
    Monomial s;
    for (auto& [v, e] : lo)
      if (e != 0) s.emplace_back(v, -e);
    return s;
  };
  Monomial sp = min_shift(*this), sd = min_shift(d);
  LaurentPoly p = *this * monomial(1, sp), q_den = d * monomial(1, sd);
  std::map<int, int> hi;
  for (auto& [m, c] : p.terms_)
    for (auto& [v, e] : m) hi[v] = std::max(hi[v], e);

  auto lead = [](const LaurentPoly& x) {
    auto it = x.terms_.begin();
    for (auto j = x.terms_.begin(); j != x.terms_.end(); ++j)
      if (lex_cmp(j->first, it->first) > 0) it = j;
    return it;
  };
  auto dl = lead(q_den);
  LaurentPoly rem = p, quot;
  while (!rem.is_zero()) {
    auto rl = lead(rem);
    if (rl->second % dl->second != 0) return std::nullopt;
    Monomial m = mono_mul(rl->first, mono_inv(dl->first));
    for (auto& [v, e] : m)
      if (e < 0 || e > hi[v]) return std::nullopt;
    LaurentPoly t = monomial(rl->second / dl->second, m);
    quot += t;
    rem -= t * q_den;
  }
  // this = quot * d * x^(sd - sp)
  return quot * monomial(1, mono_mul(sd, mono_inv(sp)));
}

Rational LaurentPoly::evaluate(const std::map<std::string, Rational>& values) const {
  Rational sum = 0;
  for (auto& [m, c] : terms_) {
    Rational t = Rational(c);
    for (auto& [v, e] : m) {
      auto it = values.find(symbol_name(v));
      if (it == values.end()) throw std::out_of_range("no value for variable " + symbol_name(v));
      if (e < 0 && it->second == 0) throw std::domain_error("zero value for inverted variable " + symbol_name(v));
      Rational base = e < 0 ? Rational(1 / it->second) : it->second;
      for (int k = 0; k < std::abs(e); ++k) t *= base;
    }
    sum += t;
  }
  return sum;
}

double LaurentPoly::evaluate(const std::map<std::string, double>& values) const {
  double sum = 0;
  for (auto& [m, c] : terms_) {
    double t = c.convert_to<double>();
    for (auto& [v, e] : m) {
      auto it = values.find(symbol_name(v));
      if (it == values.end()) throw std::out_of_range("no value for variable " + symbol_name(v));
      t *= std::pow(it->second, e);
    }
    sum += t;
  }
  return sum;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : canonical_terms()) {
    Integer a = abs(c);
    std::string body = mono_str(m);
    std::string term;
    if (body.empty()) term = a.str();
    else if (a == 1) term = body;
    else term = a.str() + "*" + body;
    if (first) s += (c < 0 ? "-" : "") + term;
    else s += (c < 0 ? " - " : " + ") + term;
    first = false;
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------- SqrtRing

SqrtRing::SqrtRing(std::vector<SqrtGenerator> gens) : gens_(std::move(gens)) {
  if (gens_.size() > 31) throw std::invalid_argument("too many square-root generators");
}

std::size_t SqrtRing::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < gens_.size(); ++k)
    if (gens_[k].name == name) return k;
  throw std::invalid_argument("undeclared generator " + std::string(name));
}

namespace {

const SqrtRingPtr& common_ring(const SqrtElement& a, const SqrtElement& b) {
  if (!a.ring()) return b.ring();
  if (!b.ring() || a.ring() == b.ring()) return a.ring();
  if (a.ring()->generators().size() == b.ring()->generators().size()) {
    bool same = true;
    for (std::size_t k = 0; k < a.ring()->generators().size(); ++k) {
      auto& x = a.ring()->generators()[k];
      auto& y = b.ring()->generators()[k];
      same = same && x.name == y.name && x.square == y.square;
    }
    if (same) return a.ring();
  }
  throw std::invalid_argument("ring mismatch between square-root extensions");
}

}  // namespace

SqrtElement::SqrtElement(SqrtRingPtr ring, LaurentPoly base) : ring_(std::move(ring)) {
  if (ring_) den_.assign(ring_->generators().size(), 0);
  if (!base.is_zero()) num_.emplace(0u, std::move(base));
}

SqrtElement SqrtElement::generator(SqrtRingPtr ring, std::string_view name) {
  if (!ring) throw std::invalid_argument("undeclared generator " + std::string(name));
  std::size_t k = ring->index_of(name);
  SqrtElement e(ring, LaurentPoly());
  e.num_.emplace(1u << k, LaurentPoly(1));
  return e;
}

int SqrtElement::u_degree() const {
  int best = 0;
  for (auto& [mask, c] : num_) best = std::max(best, std::popcount(mask));
  return best;
}

std::optional<LaurentPoly> SqrtElement::as_base() const {
  for (int d : den_)
    if (d != 0) return std::nullopt;
  if (num_.empty()) return LaurentPoly();
  if (num_.size() == 1 && num_.begin()->first == 0) return num_.begin()->second;
  return std::nullopt;
}

void SqrtElement::reduce() {
  for (auto it = num_.begin(); it != num_.end();) it = it->second.is_zero() ? num_.erase(it) : std::next(it);
  if (num_.empty()) {
    std::fill(den_.begin(), den_.end(), 0);
    return;
  }
  for (std::size_t k = 0; k < den_.size(); ++k) {
    while (den_[k] > 0) {
      std::map<std::uint32_t, LaurentPoly> next;
      bool ok = true;
      for (auto& [mask, c] : num_) {
        auto q = c.divide_exact(ring_->generators()[k].square);
        if (!q) {
          ok = false;
          break;
        }
        next.emplace(mask, std::move(*q));
      }
      if (!ok) break;
      num_ = std::move(next);
      --den_[k];
    }
  }
}

SqrtElement sqrt_reduce(SqrtElement x) {
  // operations keep elements reduced; re-running is a no-op
  return x * SqrtElement(x.ring(), LaurentPoly(1));
}

SqrtElement SqrtElement::operator-() const {
  SqrtElement r = *this;
  for (auto& [m, c] : r.num_) c = -c;
  return r;
}

SqrtElement operator+(const SqrtElement& a, const SqrtElement& b) {
  const SqrtRingPtr& ring = common_ring(a, b);
  SqrtElement r(ring, LaurentPoly());
  if (!ring) {
    r.num_ = a.num_;
    for (auto& [m, c] : b.num_) r.num_[m] += c;
    r.reduce();
    return r;
  }
  std::size_t n = ring->generators().size();
  auto dexp = [&](const SqrtElement& x, std::size_t k) { return x.den_.empty() ? 0 : x.den_[k]; };
  for (std::size_t k = 0; k < n; ++k) r.den_[k] = std::max(dexp(a, k), dexp(b, k));
  auto lift = [&](const SqrtElement& x) {
    LaurentPoly f(1);
    for (std::size_t k = 0; k < n; ++k) f *= ring->generators()[k].square.pow(r.den_[k] - dexp(x, k));
    for (auto& [m, c] : x.num_) r.num_[m] += c * f;
  };
  lift(a);
  lift(b);
  r.reduce();
  return r;
}

SqrtElement operator*(const SqrtElement& a, const SqrtElement& b) {
  const SqrtRingPtr& ring = common_ring(a, b);
  SqrtElement r(ring, LaurentPoly());
  std::size_t n = ring ? ring->generators().size() : 0;
  for (std::size_t k = 0; k < n; ++k)
    r.den_[k] = (a.den_.empty() ? 0 : a.den_[k]) + (b.den_.empty() ? 0 : b.den_[k]);
  for (auto& [ma, ca] : a.num_) {
    for (auto& [mb, cb] : b.num_) {
      LaurentPoly c = ca * cb;
      std::uint32_t both = ma & mb;
      for (std::size_t k = 0; k < n; ++k)
        if (both & (1u << k)) c *= ring->generators()[k].square;
      r.num_[ma ^ mb] += c;
    }
  }
  r.reduce();
  return r;
}

bool operator==(const SqrtElement& a, const SqrtElement& b) { return (a - b).is_zero(); }

SqrtElement SqrtElement::inverse() const {
  if (num_.size() != 1 || !num_.begin()->second.is_monomial())
    throw std::domain_error("inverse only supported for monomial units times generators");
  auto& [mask, c] = *num_.begin();
  LaurentPoly inv = c.pow(-1);
  SqrtElement r(ring_, LaurentPoly());
  std::size_t n = ring_ ? ring_->generators().size() : 0;
  for (std::size_t k = 0; k < n; ++k) {
    inv *= ring_->generators()[k].square.pow(den_[k]);
    r.den_[k] = (mask >> k) & 1u;
  }
  r.num_.emplace(mask, std::move(inv));
  r.reduce();
  return r;
}

double SqrtElement::evaluate(const std::map<std::string, double>& values) const {
  std::size_t n = ring_ ? ring_->generators().size() : 0;
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = ring_->generators()[k].square.evaluate(values);
  double sum = 0;
  for (auto& [mask, c] : num_) {
    double t = c.evaluate(values);
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) t *= std::sqrt(r[k]);
    sum += t;
  }
  for (std::size_t k = 0; k < n; ++k) sum /= std::pow(r[k], den_[k]);
  return sum;
}

std::string SqrtElement::str() const {
  if (num_.empty()) return "0";
  std::string s;
  for (auto& [mask, c] : num_) {
    if (!s.empty()) s += " + ";
    std::string gens;
    for (std::size_t k = 0; k < 32; ++k)
      if (mask & (1u << k)) gens += "*" + ring_->generators()[k].name;
    s += mask ? "(" + c.str() + ")" + gens : "(" + c.str() + ")";
  }
  std::string den;
  for (std::size_t k = 0; k < den_.size(); ++k) {
    if (den_[k] == 0) continue;
    if (!den.empty()) den += "*";
    den += "(" + ring_->generators()[k].square.str() + ")";
    if (den_[k] != 1) den += "^" + std::to_string(den_[k]);
  }
  return den.empty() ? s : "[" + s + "] / " + den;
}

// ---------------------------------------------------------------- printing

namespace {

template <class T, class F>
std::string mat_str(const Mat2<T>& m, F f) {
  return "[[" + f(m.a) + ", " + f(m.b) + "], [" + f(m.c) + ", " + f(m.d) + "]]";
}

}  // namespace

std::string str(const Mat2<LaurentPoly>& m) {
  return mat_str(m, [](const LaurentPoly& p) { return p.str(); });
}
std::string str(const Mat2<Rational>& m) {
  return mat_str(m, [](const Rational& r) { return to_string(r); });
}
std::string str(const Mat2<SqrtElement>& m) {
  return mat_str(m, [](const SqrtElement& x) { return x.str(); });
}

}  // namespace spine
