#include "crinv/scalar.hpp"

#include <cmath>
#include <sstream>

namespace crinv {

std::string_view to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::exact: return "exact";
    case ScalarKind::surd: return "surd";
    case ScalarKind::float64: return "float";
  }
  return "?";
}

ScalarKind parse_scalar_kind(std::string_view text) {
  if (text == "exact") return ScalarKind::exact;
  if (text == "surd") return ScalarKind::surd;
  if (text == "float") return ScalarKind::float64;
  throw std::invalid_argument("unknown scalar realization '" + std::string(text) + "'");
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class n(strip_plus(num));
  mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// --- GaussianRational ------------------------------------------------------

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Rational GaussianRational::norm_sq() const { return Rational(re_ * re_ + im_ * im_); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.norm_sq();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational conjugate(const GaussianRational& z) { return {z.re(), Rational(-z.im())}; }

Complex64 to_complex(const GaussianRational& z) { return {z.re().get_d(), z.im().get_d()}; }

int compare_modulus(const GaussianRational& a, const GaussianRational& b) {
  return cmp(a.norm_sq(), b.norm_sq());
}

std::string to_string(const GaussianRational& z) {
  if (sgn(z.im()) == 0) return to_string(z.re());
  std::ostringstream os;
  if (sgn(z.re()) != 0) {
    os << to_string(z.re()) << (sgn(z.im()) > 0 ? "+" : "-");
    Rational m = abs(z.im());
    if (m != 1) os << to_string(m);
  } else if (z.im() == -1) {
    os << "-";
  } else if (z.im() != 1) {
    os << to_string(z.im());
  }
  os << "i";
  return os.str();
}

// --- SurdScalar ------------------------------------------------------------

void require_squarefree(std::int64_t d) {
  if (d < 2) throw std::domain_error("surd radicand must be >= 2, got " + std::to_string(d));
  for (std::int64_t p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) throw std::domain_error("surd radicand " + std::to_string(d) + " is not squarefree");
}

SurdScalar::SurdScalar(GaussianRational a, GaussianRational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!b_.is_zero()) require_squarefree(d_);
  normalize();
}

void SurdScalar::normalize() {
  if (b_.is_zero()) d_ = 0;
}

std::int64_t SurdScalar::merged_radicand(const SurdScalar& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw std::domain_error("cannot combine surds with radicands " + std::to_string(d_) + " and " +
                          std::to_string(o.d_));
}

SurdScalar& SurdScalar::operator+=(const SurdScalar& o) {
  d_ = merged_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

SurdScalar& SurdScalar::operator-=(const SurdScalar& o) {
  d_ = merged_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

SurdScalar& SurdScalar::operator*=(const SurdScalar& o) {
  std::int64_t d = merged_radicand(o);
  GaussianRational a = a_ * o.a_ + b_ * o.b_ * GaussianRational(static_cast<long>(d));
  GaussianRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

SurdScalar& SurdScalar::operator/=(const SurdScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero surd");
  std::int64_t d = merged_radicand(o);
  // (a + b r)^-1 = (a - b r) / (a^2 - b^2 d); the norm is nonzero since r is
  // not in Q(i) for squarefree d >= 2.
  GaussianRational norm = o.a_ * o.a_ - o.b_ * o.b_ * GaussianRational(static_cast<long>(d));
  SurdScalar inv(o.a_ / norm, -o.b_ / norm, d);
  return *this *= inv;
}

SurdScalar conjugate(const SurdScalar& z) {
  return {conjugate(z.rational_part()), conjugate(z.surd_part()), z.radicand()};
}

Complex64 to_complex(const SurdScalar& z) {
  Complex64 r = to_complex(z.rational_part());
  if (z.radicand() != 0) r += to_complex(z.surd_part()) * std::sqrt(static_cast<double>(z.radicand()));
  return r;
}

namespace {

// Exact sign of x + y*sqrt(d) for rationals x, y.
int sign_of_surd(const Rational& x, const Rational& y, std::int64_t d) {
  int sx = sgn(x), sy = sgn(y);
  if (sy == 0 || d == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: compare x^2 with y^2 d.
  int c = cmp(Rational(x * x), Rational(y * y * d));
  return c == 0 ? 0 : (c > 0 ? sx : sy);
}

// |z|^2 = p + q sqrt(d) with rational p, q.
void surd_norm_sq(const SurdScalar& z, Rational& p, Rational& q) {
  const auto& a = z.rational_part();
  const auto& b = z.surd_part();
  Rational d(static_cast<long>(z.radicand()));
  p = a.norm_sq() + b.norm_sq() * d;
  q = 2 * (a.re() * b.re() + a.im() * b.im());
}

}  // namespace

int compare_modulus(const SurdScalar& a, const SurdScalar& b) {
  std::int64_t d = a.radicand() != 0 ? a.radicand() : b.radicand();
  if (a.radicand() != 0 && b.radicand() != 0 && a.radicand() != b.radicand())
    throw std::domain_error("cannot compare surds with different radicands");
  Rational pa, qa, pb, qb;
  surd_norm_sq(a, pa, qa);
  surd_norm_sq(b, pb, qb);
  return sign_of_surd(Rational(pa - pb), Rational(qa - qb), d);
}

int compare_modulus(const Complex64& a, const Complex64& b) {
  double x = std::norm(a), y = std::norm(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::string to_string(const SurdScalar& z) {
  if (z.radicand() == 0) return to_string(z.rational_part());
  std::string s = to_string(z.surd_part());
  if (sgn(z.surd_part().im()) != 0) s = "(" + s + ")";
  std::string r = "sqrt(" + std::to_string(z.radicand()) + ")";
  std::string tail = s == "1" ? r : (s == "-1" ? "-" + r : s + "*" + r);
  if (z.rational_part().is_zero()) return tail;
  std::string head = to_string(z.rational_part());
  if (sgn(z.rational_part().im()) != 0) head = "(" + head + ")";
  return head + (tail[0] == '-' ? "" : "+") + tail;
}

std::string to_string(const Complex64& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

void require_finite(const Complex64& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("non-finite float scalar");
}

}  // namespace crinv
