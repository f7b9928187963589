#include "crinv/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

namespace crinv::lie {

namespace {

Matrix zero_matrix(int n) { return Matrix(n, std::vector<Scalar>(n)); }

Matrix unit_matrix(int n, int a, int b, Scalar value) {
  Matrix m = zero_matrix(n);
  m[a][b] = std::move(value);
  return m;
}

const Scalar kI = Scalar::i();

int first_nonzero(const Coords& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) return static_cast<int>(k);
  return -1;
}

// Lexicographic order on (re, im) pairs.
bool scalar_less(const Scalar& a, const Scalar& b) {
  int c = cmp(a.re(), b.re());
  if (c != 0) return c < 0;
  return cmp(a.im(), b.im()) < 0;
}

}  // namespace

// --- ambients ---------------------------------------------------------------

Ambient su_ambient(int n) {
  if (n < 2 || n > 8) throw std::domain_error("su(n) supported for 2 <= n <= 8, got " + std::to_string(n));
  return {"su(" + std::to_string(n) + ")", n, 0, RealForm::compact};
}

Ambient sl2_ambient() { return {"sl(2,R)", 2, 0, RealForm::split}; }

Ambient product_ambient(int torus_dim, int n) {
  if (torus_dim < 0) throw std::domain_error("negative torus dimension");
  if (n == 0) return {"R^" + std::to_string(torus_dim), 0, torus_dim, RealForm::compact};
  Ambient a = su_ambient(n);
  if (torus_dim == 0) return a;
  a.label = "R^" + std::to_string(torus_dim) + " + " + a.label;
  a.torus_dim = torus_dim;
  return a;
}

// --- LieElement -------------------------------------------------------------

LieElement::LieElement(Ambient ambient)
    : ambient_(std::move(ambient)), matrix_(zero_matrix(ambient_.matrix_dim)), torus_(ambient_.torus_dim) {}

LieElement::LieElement(Ambient ambient, Matrix matrix, Coords torus)
    : ambient_(std::move(ambient)), matrix_(std::move(matrix)), torus_(std::move(torus)) {
  if (torus_.empty()) torus_.resize(ambient_.torus_dim);
  if (static_cast<int>(matrix_.size()) != ambient_.matrix_dim ||
      static_cast<int>(torus_.size()) != ambient_.torus_dim)
    throw std::domain_error("element shape does not match ambient " + ambient_.label);
  for (const auto& row : matrix_)
    if (static_cast<int>(row.size()) != ambient_.matrix_dim) throw std::domain_error("matrix part is not square");
}

LieElement LieElement::torus_direction(const Ambient& ambient, int k) {
  if (k < 0 || k >= ambient.torus_dim) throw std::domain_error("torus direction index out of range");
  LieElement e(ambient);
  e.torus_[k] = Scalar(1);
  return e;
}

LieElement LieElement::from_coords(const Ambient& ambient, const Coords& flat) {
  if (flat.size() != ambient.flat_dim()) throw std::domain_error("coordinate vector length mismatch");
  LieElement e(ambient);
  int n = ambient.matrix_dim;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) e.matrix_[a][b] = flat[a * n + b];
  for (int k = 0; k < ambient.torus_dim; ++k) e.torus_[k] = flat[n * n + k];
  return e;
}

Coords LieElement::coords() const {
  Coords out;
  out.reserve(ambient_.flat_dim());
  for (const auto& row : matrix_) out.insert(out.end(), row.begin(), row.end());
  out.insert(out.end(), torus_.begin(), torus_.end());
  return out;
}

bool LieElement::is_zero() const {
  for (const auto& row : matrix_)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  for (const auto& x : torus_)
    if (!x.is_zero()) return false;
  return true;
}

bool LieElement::in_real_form() const {
  for (const auto& x : torus_)
    if (sgn(x.im()) != 0) return false;
  int n = ambient_.matrix_dim;
  Scalar trace;
  for (int a = 0; a < n; ++a) {
    trace += matrix_[a][a];
    for (int b = 0; b < n; ++b) {
      const Scalar& x = matrix_[a][b];
      if (ambient_.real_form == RealForm::split) {
        if (sgn(x.im()) != 0) return false;
      } else if (!(x + crinv::conjugate(matrix_[b][a])).is_zero()) {
        return false;
      }
    }
  }
  return trace.is_zero();
}

void LieElement::require_same(const LieElement& o) const {
  if (!(ambient_ == o.ambient_))
    throw std::domain_error("elements of different ambients: " + ambient_.label + " vs " + o.ambient_.label);
}

LieElement& LieElement::operator+=(const LieElement& o) {
  require_same(o);
  for (std::size_t a = 0; a < matrix_.size(); ++a)
    for (std::size_t b = 0; b < matrix_.size(); ++b) matrix_[a][b] += o.matrix_[a][b];
  for (std::size_t k = 0; k < torus_.size(); ++k) torus_[k] += o.torus_[k];
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  require_same(o);
  for (std::size_t a = 0; a < matrix_.size(); ++a)
    for (std::size_t b = 0; b < matrix_.size(); ++b) matrix_[a][b] -= o.matrix_[a][b];
  for (std::size_t k = 0; k < torus_.size(); ++k) torus_[k] -= o.torus_[k];
  return *this;
}

LieElement& LieElement::operator*=(const Scalar& s) {
  for (auto& row : matrix_)
    for (auto& x : row) x *= s;
  for (auto& x : torus_) x *= s;
  return *this;
}

std::string to_string(const LieElement& e) {
  std::string s = "[";
  for (std::size_t a = 0; a < e.matrix().size(); ++a) {
    if (a) s += "; ";
    for (std::size_t b = 0; b < e.matrix().size(); ++b) {
      if (b) s += ", ";
      s += crinv::to_string(e.matrix()[a][b]);
    }
  }
  s += "]";
  if (!e.torus().empty()) {
    s += " t(";
    for (std::size_t k = 0; k < e.torus().size(); ++k) {
      if (k) s += ", ";
      s += crinv::to_string(e.torus()[k]);
    }
    s += ")";
  }
  return s;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (!(a.ambient() == b.ambient()))
    throw std::domain_error("bracket of elements of different ambients: " + a.ambient().label + " vs " +
                            b.ambient().label);
  const auto& x = a.matrix();
  const auto& y = b.matrix();
  std::size_t n = x.size();
  Matrix m = zero_matrix(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!x[i][k].is_zero())
        for (std::size_t j = 0; j < n; ++j)
          if (!y[k][j].is_zero()) m[i][j] += x[i][k] * y[k][j];
      if (!y[i][k].is_zero())
        for (std::size_t j = 0; j < n; ++j)
          if (!x[k][j].is_zero()) m[i][j] -= y[i][k] * x[k][j];
    }
  return LieElement(a.ambient(), std::move(m));
}

LieElement conjugate(const LieElement& a) {
  const auto& x = a.matrix();
  std::size_t n = x.size();
  Matrix m = zero_matrix(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = a.ambient().real_form == RealForm::compact ? -crinv::conjugate(x[j][i]) : crinv::conjugate(x[i][j]);
  Coords t = a.torus();
  for (auto& c : t) c = crinv::conjugate(c);
  return LieElement(a.ambient(), std::move(m), std::move(t));
}

// --- bases ------------------------------------------------------------------

std::vector<LieElement> su_basis(int n) {
  Ambient amb = su_ambient(n);
  auto mat = [&](Matrix m) { return LieElement(amb, std::move(m)); };
  auto x_ab = [&](int a, int b) {
    Matrix m = zero_matrix(n);
    m[a][b] = kI;
    m[b][a] = kI;
    return mat(std::move(m));
  };
  auto y_ab = [&](int a, int b) {
    Matrix m = zero_matrix(n);
    m[a][b] = Scalar(-1);
    m[b][a] = Scalar(1);
    return mat(std::move(m));
  };
  if (n == 2) {
    Matrix t = zero_matrix(2);
    t[0][0] = kI;
    t[1][1] = -kI;
    return {x_ab(0, 1), y_ab(0, 1), mat(std::move(t))};
  }
  std::vector<LieElement> out;
  for (int k = 1; k < n; ++k) {
    Matrix t = zero_matrix(n);
    for (int a = 0; a < k; ++a) t[a][a] = kI;
    t[k][k] = Scalar(-k) * kI;
    out.push_back(mat(std::move(t)));
  }
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      out.push_back(x_ab(a, b));
      out.push_back(y_ab(a, b));
    }
  return out;
}

std::vector<LieElement> sl2_basis() {
  Ambient amb = sl2_ambient();
  Matrix t = zero_matrix(2);
  t[0][0] = Scalar(1);
  t[1][1] = Scalar(-1);
  return {LieElement(amb, std::move(t)), LieElement(amb, unit_matrix(2, 0, 1, Scalar(1))),
          LieElement(amb, unit_matrix(2, 1, 0, Scalar(1)))};
}

namespace {

// Re-tags the matrix part of an su(n) element into a larger product ambient.
LieElement lift(const Ambient& target, const LieElement& e) {
  return LieElement(target, e.matrix(), Coords(target.torus_dim));
}

}  // namespace

std::vector<LieElement> ambient_basis(const Ambient& ambient) {
  std::vector<LieElement> out;
  for (int k = 0; k < ambient.torus_dim; ++k) out.push_back(LieElement::torus_direction(ambient, k));
  if (ambient.matrix_dim == 0) return out;
  if (ambient.real_form == RealForm::split) {
    if (ambient.matrix_dim != 2) throw std::domain_error("split real forms supported only for sl(2,R)");
    for (auto& e : sl2_basis()) out.push_back(lift(ambient, e));
    return out;
  }
  for (auto& e : su_basis(ambient.matrix_dim)) out.push_back(lift(ambient, e));
  return out;
}

std::vector<LieElement> standard_torus(const Ambient& ambient) {
  std::vector<LieElement> out;
  for (int k = 0; k < ambient.torus_dim; ++k) out.push_back(LieElement::torus_direction(ambient, k));
  if (ambient.matrix_dim == 0) return out;
  for (const auto& e : ambient_basis(ambient)) {
    bool diagonal = true, nonzero = false;
    for (int a = 0; a < ambient.matrix_dim; ++a)
      for (int b = 0; b < ambient.matrix_dim; ++b) {
        if (e.matrix()[a][b].is_zero()) continue;
        nonzero = true;
        if (a != b) diagonal = false;
      }
    if (diagonal && nonzero) out.push_back(e);
  }
  return out;
}

// --- spans ------------------------------------------------------------------

ElementSpan::ElementSpan(const Ambient& ambient, const std::vector<LieElement>& elements)
    : ambient_(ambient), solver_(ambient.flat_dim()), count_(elements.size()) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!(elements[i].ambient() == ambient))
      throw std::domain_error("element of ambient " + elements[i].ambient().label + " in a span over " +
                              ambient.label);
    if (solver_.add(elements[i].coords())) accepted_.push_back(i);
  }
}

std::optional<Coords> ElementSpan::coordinates(const LieElement& e) const {
  auto c = solver_.coordinates(e.coords());
  if (!c) return std::nullopt;
  Coords out(count_);
  for (std::size_t k = 0; k < accepted_.size(); ++k) out[accepted_[k]] = (*c)[k];
  return out;
}

std::vector<LieElement> independent_subset(const Ambient& ambient, const std::vector<LieElement>& elements) {
  ElementSpan s(ambient, elements);
  std::vector<LieElement> out;
  for (auto i : s.accepted()) out.push_back(elements[i]);
  return out;
}

Subalgebra::Subalgebra(Ambient ambient, std::vector<LieElement> basis, std::string label)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), label_(std::move(label)) {
  ElementSpan s(ambient_, basis_);
  if (!s.independent()) throw std::domain_error("basis of '" + label_ + "' is linearly dependent");
}

// --- root decomposition -----------------------------------------------------

namespace {

// Closest rational with denominator <= 10^6, by continued fractions.
std::optional<Rational> rationalize(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (std::abs(x) < 1e-9) return Rational(0);
  double tol = 1e-8 * std::max(1.0, std::abs(x));
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    mpz_class ai(a);
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (k1 > 1000000) break;
    Rational q(h1, k1);
    q.canonicalize();
    if (std::abs(q.get_d() - x) <= tol) return q;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

struct JointSpace {
  std::vector<Coords> vectors;  // in ambient-basis coordinates
  std::vector<Scalar> eigenvalues;
};

}  // namespace

RootDatum root_decompose(const std::vector<LieElement>& torus, const std::vector<LieElement>& ambient_basis) {
  if (ambient_basis.empty()) return {torus, {}, {}};
  const Ambient amb = ambient_basis.front().ambient();
  for (std::size_t i = 0; i < torus.size(); ++i)
    for (std::size_t j = i + 1; j < torus.size(); ++j)
      if (!bracket(torus[i], torus[j]).is_zero())
        throw std::domain_error("torus elements " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " do not commute");

  std::vector<LieElement> basis = independent_subset(amb, ambient_basis);
  ElementSpan span(amb, basis);
  std::size_t dim = basis.size();

  // ad(T_j) in the chosen basis, column c = coordinates of [T_j, b_c].
  std::vector<Matrix> ad;
  for (const auto& t : torus) {
    Matrix m(dim, Coords(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      auto col = span.coordinates(bracket(t, basis[c]));
      if (!col) throw std::domain_error("ambient basis is not closed under ad of the torus");
      for (std::size_t r = 0; r < dim; ++r) m[r][c] = (*col)[r];
    }
    ad.push_back(std::move(m));
  }

  std::vector<JointSpace> spaces;
  {
    JointSpace all;
    for (std::size_t k = 0; k < dim; ++k) {
      Coords e(dim);
      e[k] = Scalar(1);
      all.vectors.push_back(std::move(e));
    }
    spaces.push_back(std::move(all));
  }

  for (std::size_t j = 0; j < ad.size(); ++j) {
    std::vector<JointSpace> next;
    for (auto& w : spaces) {
      std::size_t k = w.vectors.size();
      linalg::SpanSolver<Scalar> ws(dim);
      for (const auto& v : w.vectors) ws.add(v);
      // Restriction of ad(T_j) to w.
      Matrix b(k, Coords(k));
      for (std::size_t c = 0; c < k; ++c) {
        Coords img(dim);
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t s = 0; s < dim; ++s)
            if (!ad[j][r][s].is_zero() && !w.vectors[c][s].is_zero()) img[r] += ad[j][r][s] * w.vectors[c][s];
        auto col = ws.coordinates(img);
        if (!col) throw std::domain_error("joint eigenspace is not invariant; torus is not abelian on the ambient");
        for (std::size_t r = 0; r < k; ++r) b[r][c] = (*col)[r];
      }
      Eigen::MatrixXcd numeric(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) numeric(r, c) = to_complex(b[r][c]);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(numeric, false);
      std::vector<Scalar> candidates;
      for (Eigen::Index e = 0; e < solver.eigenvalues().size(); ++e) {
        auto z = solver.eigenvalues()[e];
        auto re = rationalize(z.real()), im = rationalize(z.imag());
        if (!re || !im)
          throw FieldExtensionError("needs field extension: eigenvalue " + std::to_string(z.real()) + "+" +
                                    std::to_string(z.imag()) + "i of ad(torus[" + std::to_string(j + 1) +
                                    "]) is not in Q(i)");
        Scalar cand(*re, *im);
        if (std::find(candidates.begin(), candidates.end(), cand) == candidates.end()) candidates.push_back(cand);
      }
      std::size_t found = 0;
      std::vector<JointSpace> pieces;
      for (const auto& lambda : candidates) {
        Matrix shifted = b;
        for (std::size_t r = 0; r < k; ++r) shifted[r][r] -= lambda;
        auto ker = linalg::nullspace(shifted, k);
        if (ker.empty()) continue;
        JointSpace piece;
        piece.eigenvalues = w.eigenvalues;
        piece.eigenvalues.push_back(lambda);
        for (const auto& kv : ker) {
          Coords v(dim);
          for (std::size_t c = 0; c < k; ++c)
            if (!kv[c].is_zero())
              for (std::size_t r = 0; r < dim; ++r) v[r] += kv[c] * w.vectors[c][r];
          piece.vectors.push_back(std::move(v));
        }
        found += ker.size();
        pieces.push_back(std::move(piece));
      }
      if (found != k)
        throw FieldExtensionError("needs field extension: ad(torus[" + std::to_string(j + 1) +
                                  "]) is not diagonalizable over Q(i) on a joint eigenspace");
      for (auto& p : pieces) next.push_back(std::move(p));
    }
    spaces = std::move(next);
  }

  struct Root {
    Coords coords;
    std::vector<Scalar> functional;
  };
  std::vector<Root> found;
  for (auto& w : spaces) {
    bool zero = std::all_of(w.eigenvalues.begin(), w.eigenvalues.end(), [](const Scalar& x) { return x.is_zero(); });
    if (zero) continue;
    if (w.vectors.size() != 1)
      throw std::domain_error("root space of dimension " + std::to_string(w.vectors.size()) +
                              "; the torus is not maximal");
    Coords v = w.vectors.front();
    int lead = first_nonzero(v);
    Scalar inv = Scalar(1) / v[lead];
    for (auto& x : v) x *= inv;
    found.push_back({std::move(v), std::move(w.eigenvalues)});
  }
  std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
    int la = first_nonzero(a.coords), lb = first_nonzero(b.coords);
    if (la != lb) return la < lb;
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end(),
                                        scalar_less);
  });

  RootDatum out;
  out.torus = torus;
  for (auto& r : found) {
    LieElement e(amb);
    for (std::size_t k = 0; k < dim; ++k)
      if (!r.coords[k].is_zero()) e += r.coords[k] * basis[k];
    for (std::size_t j = 0; j < torus.size(); ++j)
      if (!(bracket(torus[j], e) == r.functional[j] * e))
        throw std::logic_error("root vector failed exact eigenvector verification");
    out.roots.push_back(std::move(e));
    out.functionals.push_back(std::move(r.functional));
  }
  return out;
}

std::optional<std::size_t> find_root(const RootDatum& roots, const LieElement& e) {
  if (e.is_zero()) return std::nullopt;
  for (std::size_t r = 0; r < roots.roots.size(); ++r)
    if (proportionality(e, roots.roots[r])) return r;
  return std::nullopt;
}

std::vector<std::size_t> positive_roots(const RootDatum& roots, const std::vector<Rational>& weights) {
  if (weights.size() != roots.torus.size()) throw std::domain_error("weight vector length must match the torus");
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < roots.roots.size(); ++r) {
    Scalar s;
    for (std::size_t j = 0; j < weights.size(); ++j) s += Scalar(weights[j]) * roots.functionals[r][j];
    int sign = sgn(s.im()) != 0 ? sgn(s.im()) : sgn(s.re());
    if (sign == 0) throw std::domain_error("weights vanish on a root; choose a generic weight vector");
    if (sign > 0) out.push_back(r);
  }
  return out;
}

Scalar evaluate_root(const RootDatum& roots, std::size_t r, const LieElement& torus_element) {
  if (r >= roots.roots.size()) throw std::domain_error("root index out of range");
  if (roots.torus.empty()) throw std::domain_error("root datum has no torus");
  ElementSpan s(roots.torus.front().ambient(), roots.torus);
  auto c = s.coordinates(torus_element);
  if (!c) throw std::domain_error("element is not in the complexified torus span");
  Scalar v;
  for (std::size_t j = 0; j < c->size(); ++j) v += (*c)[j] * roots.functionals[r][j];
  return v;
}

bool is_simple_root(const RootDatum& roots, const std::vector<std::size_t>& positive, std::size_t r) {
  if (std::find(positive.begin(), positive.end(), r) == positive.end()) return false;
  const std::size_t t = roots.torus.size();
  for (std::size_t a = 0; a < positive.size(); ++a)
    for (std::size_t b = a; b < positive.size(); ++b) {
      bool sum = true;
      for (std::size_t j = 0; j < t && sum; ++j)
        sum = roots.functionals[positive[a]][j] + roots.functionals[positive[b]][j] == roots.functionals[r][j];
      if (sum) return false;
    }
  return true;
}

// --- predicates -------------------------------------------------------------

ClosureCertificate is_subalgebra(const std::vector<LieElement>& basis) {
  ClosureCertificate cert;
  if (basis.empty()) return cert;
  ElementSpan s(basis.front().ambient(), basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      LieElement b = bracket(basis[i], basis[j]);
      if (!s.contains(b)) {
        cert.ok = false;
        cert.witness = {i, j};
        cert.offending = std::move(b);
        return cert;
      }
    }
  return cert;
}

ClosureCertificate is_ideal(const Subalgebra& u, const Subalgebra& h) {
  ElementSpan hs = h.span();
  for (const auto& e : u.basis())
    if (!hs.contains(e)) throw std::domain_error("'" + u.label() + "' is not contained in '" + h.label() + "'");
  ClosureCertificate cert;
  ElementSpan us = u.span();
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < u.dim(); ++j) {
      LieElement b = bracket(h[i], u[j]);
      if (!us.contains(b)) {
        cert.ok = false;
        cert.witness = {i, j};
        cert.offending = std::move(b);
        return cert;
      }
    }
  return cert;
}

namespace {

std::vector<LieElement> with_conjugates(const std::vector<LieElement>& basis) {
  std::vector<LieElement> all = basis;
  for (const auto& e : basis) all.push_back(conjugate(e));
  return all;
}

}  // namespace

bool is_cr(const Subalgebra& h) {
  ElementSpan s(h.ambient(), with_conjugates(h.basis()));
  return s.rank() == 2 * h.dim();
}

bool meets_real_form_trivially(const Subalgebra& m) { return is_cr(m); }

// --- constructions ----------------------------------------------------------

namespace {

void require_in_torus(const Subalgebra& m, const RootDatum& roots) {
  if (m.dim() == 0) return;
  if (roots.torus.empty()) throw std::domain_error("toric part given but the root datum has no torus");
  ElementSpan ts(m.ambient(), roots.torus);
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!ts.contains(m[i]))
      throw std::domain_error("toric part element " + std::to_string(i + 1) + " is outside the complexified torus");
}

Subalgebra finish(const Ambient& amb, std::vector<LieElement> basis, const std::string& label) {
  Subalgebra h(amb, std::move(basis), label);
  auto cert = is_subalgebra(h.basis());
  if (!cert.ok)
    throw std::domain_error(label + " result is not a subalgebra: bracket of basis elements " +
                            std::to_string(cert.witness->first + 1) + " and " +
                            std::to_string(cert.witness->second + 1) + " leaves the span");
  return h;
}

}  // namespace

Subalgebra cr0_construct(const Subalgebra& m, const RootDatum& roots, const std::vector<std::size_t>& positive) {
  require_in_torus(m, roots);
  for (auto p : positive)
    if (p >= roots.roots.size()) throw std::domain_error("positive root index out of range");
  std::vector<LieElement> selected;
  for (auto p : positive) selected.push_back(roots.roots[p]);
  if (!selected.empty()) {
    ElementSpan ss(m.ambient(), selected);
    for (std::size_t a = 0; a < selected.size(); ++a)
      for (std::size_t b = a + 1; b < selected.size(); ++b)
        if (!ss.contains(bracket(selected[a], selected[b])))
          throw std::domain_error("root selection is not bracket-closed: roots " + std::to_string(positive[a] + 1) +
                                  " and " + std::to_string(positive[b] + 1));
  }
  std::vector<LieElement> basis = m.basis();
  basis.insert(basis.end(), selected.begin(), selected.end());
  return finish(m.ambient(), std::move(basis), "CR0");
}

Subalgebra cr1_construct(std::size_t alpha, const Subalgebra& m, const LieElement& x, const LieElement& t,
                         const RootDatum& roots, const std::vector<std::size_t>& positive) {
  if (alpha >= roots.roots.size()) throw std::domain_error("root index out of range");
  if (!is_simple_root(roots, positive, alpha)) throw std::domain_error("alpha is not a simple positive root");
  if (x.is_zero()) throw std::domain_error("x must be nonzero");
  if (!proportionality(x, roots.roots[alpha])) throw std::domain_error("x is not in the root space of alpha");
  if (!t.is_zero()) {
    ElementSpan ts(t.ambient(), roots.torus);
    if (!ts.contains(t) || !t.in_real_form()) throw std::domain_error("t must lie in the real torus");
  }
  require_in_torus(m, roots);
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!evaluate_root(roots, alpha, m[i]).is_zero())
      throw std::domain_error("toric part element " + std::to_string(i + 1) + " is not in ker(alpha)");
  if (!meets_real_form_trivially(m)) throw std::domain_error("toric part meets the real form");
  std::vector<LieElement> basis = m.basis();
  for (auto p : positive)
    if (p != alpha) basis.push_back(roots.roots[p]);
  basis.push_back(t + x);
  return finish(m.ambient(), std::move(basis), "CR1");
}

// --- Levi form --------------------------------------------------------------

Scalar Covector::operator()(const LieElement& e) const {
  if (basis.size() != values.size()) throw std::domain_error("covector basis and values differ in length");
  if (basis.empty()) return {};
  ElementSpan s(basis.front().ambient(), basis);
  auto c = s.coordinates(e);
  if (!c) throw std::domain_error("covector basis does not span the argument");
  Scalar v;
  for (std::size_t k = 0; k < c->size(); ++k) v += (*c)[k] * values[k];
  return v;
}

Scalar levi_form(const Covector& xi, const LieElement& L, const LieElement& M) {
  static const Scalar half_over_i = Scalar(1) / Scalar(0L, 2L);
  return half_over_i * xi(bracket(L, conjugate(M)));
}

LeviReport is_levi_flat(const Subalgebra& h) {
  if (!is_cr(h)) throw std::domain_error("Levi form requested for a non-CR subalgebra");
  std::vector<LieElement> both = with_conjugates(h.basis());
  ElementSpan s(h.ambient(), both);
  LeviReport report;
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j) {
      LieElement b = bracket(h[i], conjugate(h[j]));
      if (s.contains(b)) continue;
      // Complete h + conj h by ambient basis elements and use the dual of the
      // first completing element that sees the bracket.
      std::vector<LieElement> full = both;
      std::vector<LieElement> completion;
      linalg::SpanSolver<Scalar> solver(h.ambient().flat_dim());
      for (const auto& e : both) solver.add(e.coords());
      for (const auto& e : ambient_basis(h.ambient()))
        if (solver.add(e.coords())) completion.push_back(e);
      full.insert(full.end(), completion.begin(), completion.end());
      ElementSpan fs(h.ambient(), full);
      auto c = fs.coordinates(b);
      if (!c) throw std::logic_error("completed basis does not span the ambient");
      for (std::size_t k = both.size(); k < full.size(); ++k) {
        if ((*c)[k].is_zero()) continue;
        report.flat = false;
        report.witness = {i, j};
        report.bracket = b;
        report.dual_element = full[k];
        report.covector_value = (*c)[k];
        report.levi_value = Scalar(1) / Scalar(0L, 2L) * (*c)[k];
        return report;
      }
      throw std::logic_error("bracket outside h + conj h has no completing component");
    }
  return report;
}

// --- misc -------------------------------------------------------------------

Subalgebra derived_algebra(const Ambient& ambient, const std::vector<LieElement>& basis) {
  std::vector<LieElement> brackets;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      LieElement b = bracket(basis[i], basis[j]);
      if (!b.is_zero()) brackets.push_back(std::move(b));
    }
  return Subalgebra(ambient, independent_subset(ambient, brackets), "derived");
}

LieElement right_translate(const LieElement& x, const Matrix& t) {
  const Ambient& amb = x.ambient();
  if (amb.torus_dim != 0) throw std::domain_error("right translation needs a pure matrix ambient");
  if (static_cast<int>(t.size()) != amb.matrix_dim) throw std::domain_error("group element dimension mismatch");
  for (const auto& row : t)
    if (static_cast<int>(row.size()) != amb.matrix_dim) throw std::domain_error("group element is not square");
  if (linalg::determinant(t).is_zero()) throw std::domain_error("group element is not invertible");
  return LieElement(amb, linalg::multiply(x.matrix(), t));
}

std::optional<Scalar> proportionality(const LieElement& a, const LieElement& b) {
  if (!(a.ambient() == b.ambient())) return std::nullopt;
  Coords ca = a.coords(), cb = b.coords();
  int lead = first_nonzero(cb);
  if (lead < 0) throw std::domain_error("proportionality against the zero element");
  Scalar c = ca[lead] / cb[lead];
  for (std::size_t k = 0; k < ca.size(); ++k)
    if (!(ca[k] == c * cb[k])) return std::nullopt;
  return c;
}

// --- Chevalley-Eilenberg ------------------------------------------------------

StructureConstants::StructureConstants(const Subalgebra& h) : dim_(h.dim()), table_(h.dim() * h.dim()) {
  ElementSpan s = h.span();
  for (std::size_t a = 0; a < dim_; ++a) {
    table_[a * dim_ + a] = Coords(dim_);
    for (std::size_t b = a + 1; b < dim_; ++b) {
      auto c = s.coordinates(bracket(h[a], h[b]));
      if (!c) throw std::domain_error("basis of '" + h.label() + "' is not closed under the bracket");
      Coords neg = *c;
      for (auto& x : neg) x = -x;
      table_[a * dim_ + b] = std::move(*c);
      table_[b * dim_ + a] = std::move(neg);
    }
  }
}

Form ce_differential(const Form& u, const StructureConstants& consts) {
  const int dim = static_cast<int>(consts.dim());
  const int q = u.degree();
  if (u.universe() != dim) throw std::domain_error("form universe does not match the algebra dimension");
  if (q > dim) throw std::domain_error("form degree exceeds the algebra dimension");
  Form out(q + 1, dim);
  if (q + 1 > dim || u.is_zero()) return out;
  for (const auto& I : exterior::all_multi_indices(dim, q + 1)) {
    std::vector<int> e = I.entries();
    Scalar total;
    for (int j = 0; j < q + 1; ++j)
      for (int k = j + 1; k < q + 1; ++k) {
        // Positions are 1-based in the sign: (-1)^{(j+1)+(k+1)+1}.
        int sign = ((j + k + 1) % 2 == 0) ? 1 : -1;
        std::uint64_t rest = I.mask() & ~(std::uint64_t{1} << (e[j] - 1)) & ~(std::uint64_t{1} << (e[k] - 1));
        const Coords& c = consts(e[j] - 1, e[k] - 1);
        for (int t = 0; t < dim; ++t) {
          if (c[t].is_zero()) continue;
          std::uint64_t bit = std::uint64_t{1} << t;
          if (rest & bit) continue;
          auto J = exterior::MultiIndex::from_mask(rest | bit, dim);
          Scalar coeff = u.coeff(J);
          if (coeff.is_zero()) continue;
          Scalar term = c[t] * coeff;
          if (sign * exterior::permutation_sign(t + 1, J) < 0) term = -term;
          total += term;
        }
      }
    out.add(I, total);
  }
  return out;
}

Form ce_differential(const Form& u, const Subalgebra& h) { return ce_differential(u, StructureConstants(h)); }

Form extend_by_zero(const Form& u, const Subalgebra& h, const Subalgebra& m, const Subalgebra& ideal) {
  if (!(m.ambient() == h.ambient()) || !(ideal.ambient() == h.ambient()))
    throw std::domain_error("extension across different ambients");
  if (m.dim() + ideal.dim() != h.dim()) throw std::domain_error("dim m + dim ideal != dim h");
  if (u.universe() != static_cast<int>(m.dim())) throw std::domain_error("form is not written over m");
  std::vector<LieElement> split = m.basis();
  split.insert(split.end(), ideal.basis().begin(), ideal.basis().end());
  ElementSpan ss(h.ambient(), split);
  if (!ss.independent()) throw std::domain_error("m and the ideal intersect");
  ElementSpan hs = h.span();
  for (const auto& e : split)
    if (!hs.contains(e)) throw std::domain_error("m + ideal is not contained in h");
  auto cert = is_ideal(ideal, h);
  if (!cert.ok)
    throw std::domain_error("'" + ideal.label() + "' is not an ideal: bracket of h element " +
                            std::to_string(cert.witness->first + 1) + " with ideal element " +
                            std::to_string(cert.witness->second + 1));

  // P[i][a] = m_a coordinate of h_i.
  std::vector<Coords> P;
  for (const auto& x : h.basis()) {
    auto c = ss.coordinates(x);
    P.emplace_back(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(m.dim()));
  }
  const int q = u.degree();
  const int dh = static_cast<int>(h.dim());
  Form out(q, dh);
  for (const auto& I : exterior::all_multi_indices(dh, q)) {
    std::vector<int> rows = I.entries();
    Scalar total;
    for (const auto& [B, coeff] : u.terms()) {
      std::vector<int> cols = B.entries();
      Matrix minor(q, Coords(q));
      for (int r = 0; r < q; ++r)
        for (int c = 0; c < q; ++c) minor[r][c] = P[rows[r] - 1][cols[c] - 1];
      total += coeff * linalg::determinant(minor);
    }
    out.add(I, total);
  }
  return out;
}

}  // namespace crinv::lie
