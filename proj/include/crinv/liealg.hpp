#pragma once

// Exact matrix Lie algebras over Q(i).
//
// An element of a product ambient R^d x g (g a matrix algebra) is a matrix
// part plus d torus coordinates; torus directions are central. All linear
// algebra runs on the flattened coordinate vector (row-major matrix entries
// followed by the torus coordinates).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crinv/exterior.hpp"
#include "crinv/linalg.hpp"
#include "crinv/scalar.hpp"

namespace crinv::lie {

using Scalar = GaussianRational;
using Matrix = linalg::Mat<Scalar>;
using Coords = linalg::Vec<Scalar>;

/// compact: the real form is u(n)-type, conj(A) = -A^dagger.
/// split:   the real form is real matrices, conj(A) = entrywise conjugate.
enum class RealForm { compact, split };

struct Ambient {
  std::string label;
  int matrix_dim = 0;
  int torus_dim = 0;
  RealForm real_form = RealForm::compact;

  std::size_t flat_dim() const {
    return static_cast<std::size_t>(matrix_dim * matrix_dim + torus_dim);
  }
  friend bool operator==(const Ambient&, const Ambient&) = default;
};

Ambient su_ambient(int n);
Ambient sl2_ambient();
/// R^d x su(n); n == 0 gives the abelian algebra R^d.
Ambient product_ambient(int torus_dim, int n);

/// Raised when eigenvalues leave Q(i).
class FieldExtensionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(Ambient ambient);
  LieElement(Ambient ambient, Matrix matrix, Coords torus = {});

  static LieElement torus_direction(const Ambient& ambient, int k);  // d/dt_{k+1}
  static LieElement from_coords(const Ambient& ambient, const Coords& flat);

  const Ambient& ambient() const { return ambient_; }
  const Matrix& matrix() const { return matrix_; }
  const Coords& torus() const { return torus_; }
  Coords coords() const;

  bool is_zero() const;
  /// Skew-Hermitian traceless (compact) or real traceless (split) matrix part
  /// and real torus coordinates.
  bool in_real_form() const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Scalar& s);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator-(LieElement a) { return a *= Scalar(-1); }
  friend LieElement operator*(const Scalar& s, LieElement a) { return a *= s; }
  friend LieElement operator*(LieElement a, const Scalar& s) { return a *= s; }
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.ambient_ == b.ambient_ && a.matrix_ == b.matrix_ && a.torus_ == b.torus_;
  }

 private:
  void require_same(const LieElement& o) const;

  Ambient ambient_;
  Matrix matrix_;
  Coords torus_;
};

std::string to_string(const LieElement& e);

LieElement bracket(const LieElement& a, const LieElement& b);
LieElement conjugate(const LieElement& a);

/// Basis of su(n): for n = 2 the elements X, Y, T; for n >= 3 the diagonal
/// T_1..T_{n-1} followed by X_1, Y_1, ..., X_m, Y_m over index pairs (a,b),
/// a < b, ordered by b then a.
std::vector<LieElement> su_basis(int n);
/// T, X, Y of sl_2 with T = diag(1,-1), X = E_12, Y = E_21.
std::vector<LieElement> sl2_basis();
/// Standard real basis of the ambient: torus directions first, then the matrix part.
std::vector<LieElement> ambient_basis(const Ambient& ambient);
/// Standard maximal torus: torus directions and the diagonal matrix basis elements.
std::vector<LieElement> standard_torus(const Ambient& ambient);

/// Span membership and coordinates for a list of elements.
class ElementSpan {
 public:
  ElementSpan(const Ambient& ambient, const std::vector<LieElement>& elements);
  std::size_t rank() const { return solver_.rank(); }
  bool independent() const { return rank() == count_; }
  bool contains(const LieElement& e) const { return solver_.contains(e.coords()); }
  /// Coordinates with respect to the independent inputs, in input order.
  std::optional<Coords> coordinates(const LieElement& e) const;
  const std::vector<std::size_t>& accepted() const { return accepted_; }

 private:
  Ambient ambient_;
  linalg::SpanSolver<Scalar> solver_;
  std::vector<std::size_t> accepted_;
  std::size_t count_ = 0;
};

class Subalgebra {
 public:
  Subalgebra() = default;
  /// Throws std::domain_error if the basis is linearly dependent or mixes ambients.
  Subalgebra(Ambient ambient, std::vector<LieElement> basis, std::string label = {});

  const Ambient& ambient() const { return ambient_; }
  const std::vector<LieElement>& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return basis_.size(); }
  const LieElement& operator[](std::size_t i) const { return basis_[i]; }

  ElementSpan span() const { return ElementSpan(ambient_, basis_); }

 private:
  Ambient ambient_;
  std::vector<LieElement> basis_;
  std::string label_;
};

/// Linearly independent sublist of the given elements, in order.
std::vector<LieElement> independent_subset(const Ambient& ambient, const std::vector<LieElement>& elements);

struct RootDatum {
  std::vector<LieElement> torus;
  std::vector<LieElement> roots;
  /// functionals[r][j] = eigenvalue of ad(torus[j]) on roots[r].
  std::vector<std::vector<Scalar>> functionals;
};

/// Simultaneous eigenvectors of ad(torus) on the span of ambient_basis.
/// Root vectors are scaled so that their first nonzero coordinate with respect
/// to ambient_basis is 1, and ordered by that coordinate position and then
/// lexicographically.
RootDatum root_decompose(const std::vector<LieElement>& torus, const std::vector<LieElement>& ambient_basis);

/// Index of the root whose vector is proportional to e.
std::optional<std::size_t> find_root(const RootDatum& roots, const LieElement& e);

/// Roots r with Im(sum_j w_j alpha_r(T_j)) > 0. Throws if w is not generic.
std::vector<std::size_t> positive_roots(const RootDatum& roots, const std::vector<Rational>& weights);

/// alpha_r evaluated on an element of the complexified torus span.
Scalar evaluate_root(const RootDatum& roots, std::size_t r, const LieElement& torus_element);

/// True when root r is in the positive set and is not a sum of two positive roots.
bool is_simple_root(const RootDatum& roots, const std::vector<std::size_t>& positive, std::size_t r);

struct ClosureCertificate {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::optional<LieElement> offending;  // the bracket that left the span
};

ClosureCertificate is_subalgebra(const std::vector<LieElement>& basis);

/// [h, u] inside span(u). Throws std::domain_error if span(u) is not inside span(h).
ClosureCertificate is_ideal(const Subalgebra& u, const Subalgebra& h);

bool is_cr(const Subalgebra& h);

/// Zero test for m intersected with the real form: rank(m u conj m) == 2 dim m.
bool meets_real_form_trivially(const Subalgebra& m);

Subalgebra cr0_construct(const Subalgebra& m, const RootDatum& roots, const std::vector<std::size_t>& positive);

Subalgebra cr1_construct(std::size_t alpha, const Subalgebra& m, const LieElement& x, const LieElement& t,
                         const RootDatum& roots, const std::vector<std::size_t>& positive);

/// Linear functional given by its values on a basis of the ambient.
struct Covector {
  std::vector<LieElement> basis;
  std::vector<Scalar> values;

  Scalar operator()(const LieElement& e) const;
};

/// (1/2i) xi([L, conj M]).
Scalar levi_form(const Covector& xi, const LieElement& L, const LieElement& M);

struct LeviReport {
  bool flat = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::optional<LieElement> bracket;       // [L, conj M]
  std::optional<LieElement> dual_element;  // xi is the dual of this element
  Scalar covector_value;                   // xi([L, conj M])
  Scalar levi_value;                       // (1/2i) xi([L, conj M])
};

LeviReport is_levi_flat(const Subalgebra& h);

Subalgebra derived_algebra(const Ambient& ambient, const std::vector<LieElement>& basis);

LieElement right_translate(const LieElement& x, const Matrix& t);

/// c with a = c * b, or nullopt when a is not a multiple of b (b nonzero).
std::optional<Scalar> proportionality(const LieElement& a, const LieElement& b);

/// [X_a, X_b] = sum_c consts[a][b][c] X_c on a basis closed under brackets.
class StructureConstants {
 public:
  explicit StructureConstants(const Subalgebra& h);
  std::size_t dim() const { return dim_; }
  const Coords& operator()(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }

 private:
  std::size_t dim_;
  std::vector<Coords> table_;
};

using Form = exterior::AltForm<Scalar>;

/// (du)(X_1..X_{q+1}) = sum_{j<k} (-1)^{j+k+1} u([X_j,X_k], X_1..^j..^k..X_{q+1}),
/// u written on the dual basis of h.
Form ce_differential(const Form& u, const StructureConstants& consts);
Form ce_differential(const Form& u, const Subalgebra& h);

/// Extends a form on m to h = m + ideal by zero on the ideal.
Form extend_by_zero(const Form& u, const Subalgebra& h, const Subalgebra& m, const Subalgebra& ideal);

}  // namespace crinv::lie
