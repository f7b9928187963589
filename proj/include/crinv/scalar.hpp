#pragma once

// Scalar realizations shared by every module.
//
//   GaussianRational  exact element of Q(i), stored in lowest terms
//   SurdScalar        exact element of Q(i)(sqrt d) for one squarefree d >= 2
//   Complex64         binary64 complex number
//
// Generic code talks to scalars only through the free functions declared
// here (is_zero, conjugate, modulus, compare_modulus, ...) so that one
// template body serves all three.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace crinv {

using Rational = mpq_class;
using Complex64 = std::complex<double>;

enum class ScalarKind { exact, surd, float64 };

std::string_view to_string(ScalarKind kind);
ScalarKind parse_scalar_kind(std::string_view text);

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT: integers embed naturally
  GaussianRational(Rational re, Rational im = 0);
  GaussianRational(long re, long im) : re_(re), im_(im) {}

  static GaussianRational i() { return {0L, 1L}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  /// |z|^2 as an exact rational.
  Rational norm_sq() const;
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// a + b*sqrt(d) with a, b in Q(i). d == 0 marks a value with no surd part;
/// combining values with two different nonzero d throws std::domain_error.
class SurdScalar {
 public:
  SurdScalar() = default;
  SurdScalar(long v) : a_(v) {}  // NOLINT
  SurdScalar(GaussianRational a) : a_(std::move(a)) {}  // NOLINT
  SurdScalar(GaussianRational a, GaussianRational b, std::int64_t d);

  const GaussianRational& rational_part() const { return a_; }
  const GaussianRational& surd_part() const { return b_; }
  std::int64_t radicand() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  SurdScalar& operator+=(const SurdScalar& o);
  SurdScalar& operator-=(const SurdScalar& o);
  SurdScalar& operator*=(const SurdScalar& o);
  SurdScalar& operator/=(const SurdScalar& o);

  friend SurdScalar operator+(SurdScalar a, const SurdScalar& b) { return a += b; }
  friend SurdScalar operator-(SurdScalar a, const SurdScalar& b) { return a -= b; }
  friend SurdScalar operator*(SurdScalar a, const SurdScalar& b) { return a *= b; }
  friend SurdScalar operator/(SurdScalar a, const SurdScalar& b) { return a /= b; }
  friend SurdScalar operator-(const SurdScalar& a) { return {-a.a_, -a.b_, a.d_}; }
  friend bool operator==(const SurdScalar& a, const SurdScalar& b) {
    return a.a_ == b.a_ && a.b_ == b.b_;
  }

 private:
  std::int64_t merged_radicand(const SurdScalar& o) const;
  void normalize();

  GaussianRational a_;
  GaussianRational b_;
  std::int64_t d_ = 0;
};

/// Throws std::domain_error unless d is a squarefree integer >= 2.
void require_squarefree(std::int64_t d);

// ---------------------------------------------------------------------------
// Uniform scalar interface.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr ScalarKind kind = ScalarKind::exact;
};

template <>
struct ScalarTraits<SurdScalar> {
  static constexpr bool exact = true;
  static constexpr ScalarKind kind = ScalarKind::surd;
};

template <>
struct ScalarTraits<Complex64> {
  static constexpr bool exact = false;
  static constexpr ScalarKind kind = ScalarKind::float64;
};

template <class S>
concept FieldScalar = requires { ScalarTraits<S>::exact; };

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(const SurdScalar& z) { return z.is_zero(); }
inline bool is_zero(const Complex64& z) { return z == Complex64{}; }

GaussianRational conjugate(const GaussianRational& z);
SurdScalar conjugate(const SurdScalar& z);
inline Complex64 conjugate(const Complex64& z) { return std::conj(z); }

Complex64 to_complex(const GaussianRational& z);
Complex64 to_complex(const SurdScalar& z);
inline Complex64 to_complex(const Complex64& z) { return z; }

template <FieldScalar S>
double modulus(const S& z) {
  return std::abs(to_complex(z));
}

/// Sign of |a| - |b|, exact for the exact realizations.
int compare_modulus(const GaussianRational& a, const GaussianRational& b);
int compare_modulus(const SurdScalar& a, const SurdScalar& b);
int compare_modulus(const Complex64& a, const Complex64& b);

/// Embeds a Gaussian rational into each realization.
template <FieldScalar S>
S from_gaussian(const GaussianRational& z);

template <>
inline GaussianRational from_gaussian<GaussianRational>(const GaussianRational& z) { return z; }
template <>
inline SurdScalar from_gaussian<SurdScalar>(const GaussianRational& z) { return SurdScalar(z); }
template <>
inline Complex64 from_gaussian<Complex64>(const GaussianRational& z) { return to_complex(z); }

template <FieldScalar S>
S from_int(long v) {
  return from_gaussian<S>(GaussianRational(v));
}

template <FieldScalar S>
S imag_unit() {
  return from_gaussian<S>(GaussianRational::i());
}

std::string to_string(const GaussianRational& z);
std::string to_string(const SurdScalar& z);
std::string to_string(const Complex64& z);

/// Throws std::domain_error if either component is NaN or infinite.
void require_finite(const Complex64& z);

}  // namespace crinv
