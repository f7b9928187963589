#pragma once

// Dense linear algebra over any FieldScalar.
//
// Exact realizations use plain Gaussian elimination with exact zero tests.
// Complex64 uses the same code with a pivot of largest modulus and an
// absolute zero threshold supplied by the caller.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crinv/scalar.hpp"

namespace crinv::linalg {

template <FieldScalar S>
using Vec = std::vector<S>;

template <FieldScalar S>
using Mat = std::vector<std::vector<S>>;  // row-major, rows of equal length

struct Tolerance {
  double abs = 1e-12;  // ignored by exact realizations
};

template <FieldScalar S>
bool negligible(const S& x, Tolerance tol = {}) {
  if constexpr (ScalarTraits<S>::exact)
    return is_zero(x);
  else
    return modulus(x) <= tol.abs;
}

template <FieldScalar S>
bool is_zero_vector(const Vec<S>& v, Tolerance tol = {}) {
  for (const auto& x : v)
    if (!negligible(x, tol)) return false;
  return true;
}

/// Incrementally maintained row echelon form of a list of vectors, with each
/// reduced row stored as a combination of the accepted input vectors. Gives
/// rank, membership and coordinates with respect to the accepted vectors.
template <FieldScalar S>
class SpanSolver {
 public:
  explicit SpanSolver(std::size_t dim, Tolerance tol = {}) : dim_(dim), tol_(tol) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v if it is independent of the vectors accepted so far. Returns
  /// whether it was accepted.
  bool add(const Vec<S>& v) {
    check(v);
    Vec<S> r = v;
    Vec<S> comb = reduce(r);
    std::optional<std::size_t> pivot = choose_pivot(r);
    if (!pivot) return false;
    std::size_t k = accepted_;
    ++accepted_;
    for (auto& c : combs_) c.resize(accepted_);
    // r = v - sum comb_j rows_j and rows_j = sum combs_j[i] input_i.
    Vec<S> own(accepted_);
    own[k] = from_int<S>(1);
    for (std::size_t j = 0; j < comb.size(); ++j) {
      if (is_zero(comb[j])) continue;
      for (std::size_t i = 0; i < k; ++i) own[i] -= comb[j] * combs_[j][i];
    }
    S inv = from_int<S>(1) / r[*pivot];
    for (auto& x : r) x *= inv;
    for (auto& x : own) x *= inv;
    rows_.push_back(std::move(r));
    combs_.push_back(std::move(own));
    pivots_.push_back(*pivot);
    return true;
  }

  bool contains(const Vec<S>& v) const {
    check(v);
    Vec<S> r = v;
    reduce(r);
    return is_zero_vector(r, tol_);
  }

  /// Coefficients c with v = sum c_i input_i over the accepted inputs, or
  /// nullopt when v is outside the span.
  std::optional<Vec<S>> coordinates(const Vec<S>& v) const {
    check(v);
    Vec<S> r = v;
    Vec<S> comb = reduce(r);
    if (!is_zero_vector(r, tol_)) return std::nullopt;
    Vec<S> out(accepted_);
    for (std::size_t j = 0; j < comb.size(); ++j) {
      if (is_zero(comb[j])) continue;
      for (std::size_t i = 0; i < accepted_; ++i) out[i] += comb[j] * combs_[j][i];
    }
    return out;
  }

  /// The part of v left after eliminating all pivot columns.
  Vec<S> residual(const Vec<S>& v) const {
    check(v);
    Vec<S> r = v;
    reduce(r);
    return r;
  }

 private:
  void check(const Vec<S>& v) const {
    if (v.size() != dim_) throw std::domain_error("vector length does not match span dimension");
  }

  // Eliminates pivot columns from r in place; returns the multipliers.
  Vec<S> reduce(Vec<S>& r) const {
    Vec<S> comb(rows_.size());
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const S& f = r[pivots_[j]];
      if (is_zero(f)) continue;
      S factor = f;
      comb[j] = factor;
      for (std::size_t c = 0; c < dim_; ++c)
        if (!is_zero(rows_[j][c])) r[c] -= factor * rows_[j][c];
      if constexpr (!ScalarTraits<S>::exact) r[pivots_[j]] = S{};
    }
    return comb;
  }

  std::optional<std::size_t> choose_pivot(const Vec<S>& r) const {
    std::optional<std::size_t> best;
    double best_mod = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (negligible(r[c], tol_)) continue;
      if constexpr (ScalarTraits<S>::exact) {
        return c;
      } else {
        double m = modulus(r[c]);
        if (!best || m > best_mod) {
          best = c;
          best_mod = m;
        }
      }
    }
    return best;
  }

  std::size_t dim_;
  Tolerance tol_;
  std::size_t accepted_ = 0;
  std::vector<Vec<S>> rows_;   // normalized so rows_[j][pivots_[j]] == 1
  std::vector<Vec<S>> combs_;  // rows_[j] = sum_i combs_[j][i] * input_i
  std::vector<std::size_t> pivots_;
};

template <FieldScalar S>
std::size_t rank(const std::vector<Vec<S>>& vectors, std::size_t dim, Tolerance tol = {}) {
  SpanSolver<S> s(dim, tol);
  for (const auto& v : vectors) s.add(v);
  return s.rank();
}

/// Reduced row echelon form in place; returns the pivot columns.
template <FieldScalar S>
std::vector<std::size_t> rref(Mat<S>& a, Tolerance tol = {}) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> p;
    double best = 0.0;
    for (std::size_t i = r; i < rows; ++i) {
      if (negligible(a[i][c], tol)) continue;
      if constexpr (ScalarTraits<S>::exact) {
        p = i;
        break;
      } else {
        double m = modulus(a[i][c]);
        if (!p || m > best) {
          p = i;
          best = m;
        }
      }
    }
    if (!p) {
      for (std::size_t i = r; i < rows; ++i) a[i][c] = S{};
      continue;
    }
    std::swap(a[r], a[*p]);
    S inv = from_int<S>(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      S f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        if (!is_zero(a[r][k])) a[i][k] -= f * a[r][k];
      a[i][c] = S{};
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {x : a x = 0}, one vector per free column, in column order.
template <FieldScalar S>
std::vector<Vec<S>> nullspace(Mat<S> a, std::size_t cols, Tolerance tol = {}) {
  for (const auto& row : a)
    if (row.size() != cols) throw std::domain_error("ragged matrix");
  auto pivots = rref(a, tol);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<S>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec<S> x(cols);
    x[f] = from_int<S>(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -a[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

template <FieldScalar S>
S determinant(Mat<S> a, Tolerance tol = {}) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::domain_error("determinant of a non-square matrix");
  S det = from_int<S>(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> p;
    double best = 0.0;
    for (std::size_t i = c; i < n; ++i) {
      if (negligible(a[i][c], tol)) continue;
      if constexpr (ScalarTraits<S>::exact) {
        p = i;
        break;
      } else {
        double m = modulus(a[i][c]);
        if (!p || m > best) {
          p = i;
          best = m;
        }
      }
    }
    if (!p) return S{};
    if (*p != c) {
      std::swap(a[c], a[*p]);
      det = -det;
    }
    det *= a[c][c];
    S inv = from_int<S>(1) / a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a[i][c])) continue;
      S f = a[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  return det;
}

template <FieldScalar S>
Mat<S> multiply(const Mat<S>& a, const Mat<S>& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Mat<S> out(n, Vec<S>(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::domain_error("matrix product shape mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(b[l][j])) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

}  // namespace crinv::linalg
