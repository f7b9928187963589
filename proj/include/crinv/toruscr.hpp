#pragma once

// Bi-invariant CR structures on the torus T^N.
//
// Row j of the coefficient matrix holds a_{j1..jN} of L_j = sum_k a_jk d/dx_k.
// The symbol of L_j at a frequency xi is i * sum_k a_jk xi_k.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crinv/linalg.hpp"
#include "crinv/scalar.hpp"

namespace crinv::torus {

using Frequency = std::vector<std::int64_t>;

/// Malformed structure data (wrong shape, not CR, not of maximal rank).
class InvalidStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kFloatResonance = 1e-12;

template <FieldScalar S>
class TorusStructure {
 public:
  TorusStructure() = default;
  TorusStructure(int N, int n, linalg::Mat<S> rows) : N_(N), n_(n), rows_(std::move(rows)) { validate(); }

  int N() const { return N_; }
  int n() const { return n_; }
  const linalg::Mat<S>& rows() const { return rows_; }
  const S& coeff(int j, int k) const { return rows_[j][k]; }

  S symbol(int j, std::span<const std::int64_t> xi) const {
    if (j < 0 || j >= n_) throw std::domain_error("symbol row index out of range");
    check_frequency(xi);
    S sum{};
    for (int k = 0; k < N_; ++k)
      if (xi[k] != 0) sum += rows_[j][k] * from_int<S>(static_cast<long>(xi[k]));
    return imag_unit<S>() * sum;
  }

  std::vector<S> symbols(std::span<const std::int64_t> xi) const {
    std::vector<S> out;
    out.reserve(n_);
    for (int j = 0; j < n_; ++j) out.push_back(symbol(j, xi));
    return out;
  }

  double max_symbol(std::span<const std::int64_t> xi) const {
    double m = 0.0;
    for (int j = 0; j < n_; ++j) m = std::max(m, modulus(symbol(j, xi)));
    return m;
  }

  /// All symbols vanish: exactly for exact scalars, below 1e-12 for floats.
  bool is_resonance(std::span<const std::int64_t> xi) const {
    if constexpr (ScalarTraits<S>::exact) {
      for (int j = 0; j < n_; ++j)
        if (!is_zero(symbol(j, xi))) return false;
      return true;
    } else {
      return max_symbol(xi) < kFloatResonance;
    }
  }

  linalg::Mat<Complex64> as_complex() const {
    linalg::Mat<Complex64> out(n_, std::vector<Complex64>(N_));
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < N_; ++k) out[j][k] = to_complex(rows_[j][k]);
    return out;
  }

  void check_frequency(std::span<const std::int64_t> xi) const {
    if (static_cast<int>(xi.size()) != N_)
      throw std::domain_error("frequency has " + std::to_string(xi.size()) + " entries, expected " +
                              std::to_string(N_));
  }

  /// Zero threshold used for rank decisions on float data.
  linalg::Tolerance tolerance() const {
    if constexpr (ScalarTraits<S>::exact) {
      return {};
    } else {
      double scale = 0.0;
      for (const auto& row : rows_)
        for (const auto& x : row) scale = std::max(scale, modulus(x));
      return {1e-9 * std::max(scale, 1.0)};
    }
  }

  friend bool operator==(const TorusStructure& a, const TorusStructure& b) {
    return a.N_ == b.N_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  void validate() const {
    if (N_ < 3 || N_ % 2 == 0) throw InvalidStructure("torus dimension must be odd and >= 3, got " + std::to_string(N_));
    if (n_ != (N_ - 1) / 2)
      throw InvalidStructure("CR rank must be (N-1)/2 = " + std::to_string((N_ - 1) / 2) + ", got " +
                             std::to_string(n_));
    if (static_cast<int>(rows_.size()) != n_) throw InvalidStructure("expected " + std::to_string(n_) + " rows");
    for (const auto& row : rows_) {
      if (static_cast<int>(row.size()) != N_)
        throw InvalidStructure("each row needs " + std::to_string(N_) + " coefficients");
      if constexpr (!ScalarTraits<S>::exact)
        for (const auto& x : row) {
          try {
            require_finite(x);
          } catch (const std::domain_error& e) {
            throw InvalidStructure(e.what());
          }
        }
    }
    auto tol = tolerance();
    try {
      linalg::SpanSolver<S> span(N_, tol);
      for (const auto& row : rows_) span.add(row);
      for (const auto& row : rows_) {
        std::vector<S> c;
        for (const auto& x : row) c.push_back(conjugate(x));
        span.add(c);
      }
      if (static_cast<int>(span.rank()) != 2 * n_)
        throw InvalidStructure("rows and their conjugates are not independent; not a CR structure of rank " +
                               std::to_string(n_));
      bool completes = false;
      for (int k = 0; k < N_ && !completes; ++k) {
        std::vector<S> e(N_);
        e[k] = from_int<S>(1);
        completes = !span.contains(e);
      }
      if (!completes) throw InvalidStructure("no real direction completes the structure to C^N");
    } catch (const InvalidStructure&) {
      throw;
    } catch (const std::domain_error& e) {
      throw InvalidStructure(e.what());
    }
  }

  int N_ = 0;
  int n_ = 0;
  linalg::Mat<S> rows_;
};

/// A' = M A. Throws std::domain_error for singular M.
template <FieldScalar S>
TorusStructure<S> basis_change(const TorusStructure<S>& s, const linalg::Mat<S>& M) {
  if (static_cast<int>(M.size()) != s.n()) throw std::domain_error("basis change must be n x n");
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != s.n()) throw std::domain_error("basis change must be n x n");
  if (linalg::negligible(linalg::determinant(M, s.tolerance()), s.tolerance()))
    throw std::domain_error("basis change matrix is singular");
  return TorusStructure<S>(s.N(), s.n(), linalg::multiply(M, s.rows()));
}

// ---------------------------------------------------------------------------
// Exact resonance lattice.

namespace detail {

inline void push_real_rows(const GaussianRational& x, std::vector<Rational>& re, std::vector<Rational>& im) {
  re.push_back(x.re());
  im.push_back(x.im());
}

Frequency primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace detail

/// Primitive integer generator of {xi in Z^N : all symbols vanish}, with
/// first nonzero entry positive, or nullopt when only xi = 0 qualifies.
/// Only exact realizations: the condition splits into rational equations.
template <FieldScalar S>
  requires(ScalarTraits<S>::exact)
std::optional<Frequency> resonance_generator(const TorusStructure<S>& s) {
  linalg::Mat<GaussianRational> eqs;
  for (const auto& row : s.rows()) {
    std::vector<std::vector<Rational>> parts(4);
    for (const auto& x : row) {
      if constexpr (std::is_same_v<S, GaussianRational>) {
        detail::push_real_rows(x, parts[0], parts[1]);
      } else {
        detail::push_real_rows(x.rational_part(), parts[0], parts[1]);
        detail::push_real_rows(x.surd_part(), parts[2], parts[3]);
      }
    }
    for (auto& p : parts) {
      if (p.empty()) continue;
      std::vector<GaussianRational> r;
      for (auto& q : p) r.emplace_back(q);
      eqs.push_back(std::move(r));
    }
  }
  auto ker = linalg::nullspace(eqs, static_cast<std::size_t>(s.N()));
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1) throw std::logic_error("resonance lattice of rank > 1 for a maximal-rank structure");
  std::vector<Rational> v;
  for (const auto& x : ker.front()) v.push_back(x.re());
  return detail::primitive_integer_vector(v);
}

/// Nonzero multiples of the generator with sup norm <= radius, sorted lexicographically.
std::vector<Frequency> lattice_points_in_box(const Frequency& generator, std::int64_t radius);

// ---------------------------------------------------------------------------
// Divisor-condition scan.

enum class Verdict { resonant, evidence_holds, evidence_fails };
std::string_view to_string(Verdict v);

struct ShellMinimum {
  std::int64_t r = 0;
  double value = 0.0;  // min over ||xi||_inf = r of max_j |L_j^(xi)|
  Frequency argmin;
  double argmin_norm = 0.0;  // Euclidean |argmin|
};

struct RhoEvidence {
  double rho = 0.0;
  double margin = 0.0;     // min_r m(r) (1 + |xi*_r|)^rho
  double inner_min = 0.0;  // same minimum over r <= floor(sqrt R)
  double outer_min = 0.0;  // over r > floor(sqrt R); 0 when that range is empty
  bool holds = false;
};

struct DCReport {
  int N = 0;
  std::int64_t radius = 0;
  std::vector<double> rho_grid;
  Verdict verdict = Verdict::evidence_fails;
  bool exact = false;
  std::vector<Frequency> resonances;
  bool resonances_suspect = false;  // float data: threshold hits, not exact zeros
  std::vector<ShellMinimum> shells;
  std::optional<double> fit_C;
  std::optional<double> fit_rho;
  std::vector<RhoEvidence> evidence;
  std::optional<double> best_rho;  // smallest grid rho with evidence
  std::string kernel;              // line kernel variant used
};

struct ScanOptions {
  std::int64_t radius = 0;  // 0 selects the default for N
  std::vector<double> rho_grid = {0.5, 1.0, 1.1, 1.5, 2.0, 3.0};
  int workers = 0;          // 0 selects std::thread::hardware_concurrency
};

/// 50 for N = 3, smaller for larger N so that (2R+1)^N stays near 10^7.
std::int64_t default_radius(int N);

namespace detail {

struct ShellScan {
  std::vector<ShellMinimum> shells;
  std::vector<Frequency> near_zero;  // float hits below the resonance threshold, both signs
};

ShellScan scan_shells(const linalg::Mat<Complex64>& a, std::int64_t radius, int workers);

DCReport assemble(int N, std::int64_t radius, const std::vector<double>& rho_grid, ShellScan scan, bool exact,
                  std::optional<std::vector<Frequency>> exact_resonances);

}  // namespace detail

template <FieldScalar S>
DCReport dc_scan(const TorusStructure<S>& s, const ScanOptions& options = {}) {
  std::int64_t radius = options.radius == 0 ? default_radius(s.N()) : options.radius;
  if (radius < 1) throw std::domain_error("scan radius must be >= 1");
  auto scan = detail::scan_shells(s.as_complex(), radius, options.workers);
  std::optional<std::vector<Frequency>> exact;
  if constexpr (ScalarTraits<S>::exact) {
    exact.emplace();
    if (auto g = resonance_generator(s)) *exact = lattice_points_in_box(*g, radius);
  }
  return detail::assemble(s.N(), radius, options.rho_grid, std::move(scan), ScalarTraits<S>::exact,
                          std::move(exact));
}

}  // namespace crinv::torus
