#pragma once

// The tangential Cauchy-Riemann complex of a torus CR structure, acting on
// trigonometric-polynomial (0,q)-forms frequency by frequency:
//
//   (dbar_b u)^(xi) = omega(xi) ^ u^(xi),   omega(xi) = sum_k L_k^(xi) tau_k.

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "crinv/exterior.hpp"
#include "crinv/toruscr.hpp"

namespace crinv::fourier {

using torus::Frequency;

std::string to_string(const Frequency& xi);

/// A nonzero coefficient sits on a frequency where every symbol vanishes.
class ResonanceError : public std::runtime_error {
 public:
  explicit ResonanceError(Frequency xi)
      : std::runtime_error("resonant frequency " + to_string(xi) + " carries a nonzero coefficient"),
        xi_(std::move(xi)) {}
  const Frequency& frequency() const { return xi_; }

 private:
  Frequency xi_;
};

/// Input violates a precondition that the caller promised (closedness).
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(const std::string& what, std::optional<Frequency> xi, double residual)
      : std::runtime_error(what), xi_(std::move(xi)), residual_(residual) {}
  const std::optional<Frequency>& frequency() const { return xi_; }
  double residual() const { return residual_; }

 private:
  std::optional<Frequency> xi_;
  double residual_;
};

inline constexpr double kFloatRelativeTolerance = 1e-9;

template <FieldScalar S>
using Form = exterior::AltForm<S>;

template <FieldScalar S>
class FourierForm {
 public:
  using Structure = torus::TorusStructure<S>;

  FourierForm() = default;
  FourierForm(std::shared_ptr<const Structure> structure, int q) : structure_(std::move(structure)), q_(q) {
    if (!structure_) throw std::domain_error("FourierForm needs a structure");
    if (q < 0) throw std::domain_error("form degree must be nonnegative");
  }

  const Structure& structure() const { return *structure_; }
  const std::shared_ptr<const Structure>& structure_ptr() const { return structure_; }
  int degree() const { return q_; }
  int universe() const { return structure_->n(); }
  const std::map<Frequency, Form<S>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Form<S> coefficient(const Frequency& xi) const {
    auto it = terms_.find(xi);
    return it == terms_.end() ? Form<S>(q_, universe()) : it->second;
  }

  /// Accumulates f e^{i xi x}; zero results are dropped.
  void add(const Frequency& xi, const Form<S>& f) {
    structure_->check_frequency(xi);
    if (f.degree() != q_ || f.universe() != universe())
      throw std::domain_error("coefficient shape does not match the form");
    if (f.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(xi, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FourierForm& operator+=(const FourierForm& o) {
    check_compatible(o);
    for (const auto& [xi, f] : o.terms_) add(xi, f);
    return *this;
  }
  FourierForm& operator-=(const FourierForm& o) {
    check_compatible(o);
    for (const auto& [xi, f] : o.terms_) add(xi, -f);
    return *this;
  }
  friend FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
  friend FourierForm operator-(FourierForm a, const FourierForm& b) { return a -= b; }

  friend bool operator==(const FourierForm& a, const FourierForm& b) {
    return a.q_ == b.q_ && *a.structure_ == *b.structure_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const FourierForm& o) const {
    if (o.q_ != q_ || !(*o.structure_ == *structure_))
      throw std::domain_error("combining Fourier forms of different shapes");
  }

  std::shared_ptr<const Structure> structure_;
  int q_ = 0;
  std::map<Frequency, Form<S>> terms_;
};

template <FieldScalar S>
Form<S> symbol_covector(const torus::TorusStructure<S>& s, const Frequency& xi) {
  auto sym = s.symbols(xi);
  return exterior::covector<S>(std::span<const S>(sym.data(), sym.size()));
}

template <FieldScalar S>
FourierForm<S> dbar_b(const FourierForm<S>& u) {
  FourierForm<S> out(u.structure_ptr(), u.degree() + 1);
  if (u.degree() >= u.universe()) return out;
  for (const auto& [xi, f] : u.terms()) out.add(xi, exterior::wedge(symbol_covector(u.structure(), xi), f));
  return out;
}

namespace detail {

// Largest stored modulus of a - b relative to the scale, for float checks.
template <FieldScalar S>
double relative_gap(const Form<S>& residual, double scale) {
  double r = exterior::sup_coeff_norm(residual);
  return scale > 0.0 ? r / scale : r;
}

template <FieldScalar S>
bool negligible_residual(const Form<S>& residual, double scale) {
  if constexpr (ScalarTraits<S>::exact)
    return residual.is_zero();
  else
    return relative_gap(residual, scale) <= kFloatRelativeTolerance;
}

}  // namespace detail

struct ClosedCheck {
  bool closed = true;
  std::optional<Frequency> witness;
  double residual = 0.0;  // sup norm of omega ^ u^ at the witness
};

template <FieldScalar S>
ClosedCheck is_closed(const FourierForm<S>& u) {
  ClosedCheck out;
  if (u.degree() >= u.universe()) return out;
  for (const auto& [xi, f] : u.terms()) {
    Form<S> omega = symbol_covector(u.structure(), xi);
    Form<S> w = exterior::wedge(omega, f);
    double scale = exterior::sup_coeff_norm(omega) * exterior::sup_coeff_norm(f);
    if (!detail::negligible_residual(w, scale)) {
      out.closed = false;
      out.witness = xi;
      out.residual = exterior::sup_coeff_norm(w);
      return out;
    }
  }
  return out;
}

/// Index (0-based) of the first symbol of largest modulus; nullopt if all vanish.
template <FieldScalar S>
std::optional<int> dominant_symbol(std::span<const S> symbols) {
  std::optional<int> best;
  for (int k = 0; k < static_cast<int>(symbols.size()); ++k) {
    if (is_zero(symbols[k])) continue;
    if (!best || compare_modulus(symbols[k], symbols[*best]) > 0) best = k;
  }
  return best;
}

/// v^ with omega ^ v^ = u^, dividing by the dominant symbol L_sigma:
///   v^ = sum_{J contains sigma} eps_{sigma,J} u^_J / L_sigma tau_{J \ sigma}.
template <FieldScalar S>
Form<S> solve_frequency(const Form<S>& u_hat, std::span<const S> symbols) {
  const int n = static_cast<int>(symbols.size());
  if (u_hat.universe() != n) throw std::domain_error("symbol count does not match the form universe");
  if (u_hat.degree() == 0 && !u_hat.is_zero())
    throw ContractViolation("a nonzero function coefficient is not closed at a nonresonant frequency", std::nullopt,
                            exterior::sup_coeff_norm(u_hat));
  auto sigma = dominant_symbol(symbols);
  bool resonant = !sigma;
  if constexpr (!ScalarTraits<S>::exact)
    if (sigma && modulus(symbols[*sigma]) < torus::kFloatResonance) resonant = true;
  if (resonant) throw ResonanceError({});
  Form<S> omega = exterior::covector(symbols);
  if (u_hat.degree() < n) {
    Form<S> w = exterior::wedge(omega, u_hat);
    double scale = exterior::sup_coeff_norm(omega) * exterior::sup_coeff_norm(u_hat);
    if (!detail::negligible_residual(w, scale))
      throw ContractViolation("coefficient is not closed: omega ^ u has sup norm " +
                                  std::to_string(exterior::sup_coeff_norm(w)),
                              std::nullopt, exterior::sup_coeff_norm(w));
  }
  const int s = *sigma + 1;
  const S inv = from_int<S>(1) / symbols[*sigma];
  Form<S> v(u_hat.degree() - 1, n);
  for (const auto& [J, c] : u_hat.terms()) {
    if (!J.contains(s)) continue;
    S coeff = c * inv;
    if (exterior::permutation_sign(s, J) < 0) coeff = -coeff;
    v.add(exterior::remove_index(J, s), coeff);
  }
  return v;
}

struct EstimateEntry {
  Frequency xi;
  double v_norm = 0.0;
  double u_norm = 0.0;
  double max_symbol = 0.0;
  bool bound_holds = true;  // ||v^|| <= ||u^|| / max_j |L_j^|, exact for exact scalars
};

template <FieldScalar S>
struct SolveResult {
  Form<S> invariant_part;
  std::optional<FourierForm<S>> primitive;  // absent for functions (q = 0)
  std::vector<EstimateEntry> estimates;

  /// Largest ||v^|| / ||u^|| * max symbol over the log; at most 1 by construction.
  double worst_ratio() const {
    double w = 0.0;
    for (const auto& e : estimates)
      if (e.u_norm > 0) w = std::max(w, e.v_norm * e.max_symbol / e.u_norm);
    return w;
  }
};

namespace detail {

template <FieldScalar S>
bool estimate_bound(const Form<S>& v, const Form<S>& u, const S& dominant) {
  if constexpr (ScalarTraits<S>::exact) {
    // max_K |v_K| |L_sigma| <= max_J |u_J|, compared exactly.
    const S* top = nullptr;
    for (const auto& [J, c] : u.terms())
      if (!top || compare_modulus(c, *top) > 0) top = &c;
    for (const auto& [K, c] : v.terms()) {
      if (!top) return false;
      if (compare_modulus(c * dominant, *top) > 0) return false;
    }
    return true;
  } else {
    double lhs = exterior::sup_coeff_norm(v);
    double rhs = exterior::sup_coeff_norm(u) / modulus(dominant);
    return lhs <= rhs * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
  }
}

}  // namespace detail

/// Splits a closed form into its bi-invariant part and a dbar_b-primitive of
/// the rest. Throws ContractViolation if u is not closed and ResonanceError if
/// a resonant frequency carries a nonzero coefficient.
template <FieldScalar S>
SolveResult<S> solve(const FourierForm<S>& u) {
  auto closed = is_closed(u);
  if (!closed.closed)
    throw ContractViolation("form is not dbar_b-closed at " + to_string(*closed.witness), closed.witness,
                            closed.residual);
  const int n = u.universe();
  const int N = u.structure().N();
  SolveResult<S> out;
  Frequency zero(N, 0);
  out.invariant_part = u.coefficient(zero);
  if (u.degree() > 0) out.primitive.emplace(u.structure_ptr(), u.degree() - 1);
  for (const auto& [xi, f] : u.terms()) {
    if (xi == zero) continue;
    auto sym = u.structure().symbols(xi);
    std::span<const S> view(sym.data(), sym.size());
    auto sigma = dominant_symbol(view);
    bool resonant = !sigma;
    if constexpr (!ScalarTraits<S>::exact)
      if (sigma && modulus(sym[*sigma]) < torus::kFloatResonance) resonant = true;
    if (resonant) throw ResonanceError(xi);
    if (u.degree() == 0)
      throw ContractViolation("closed function has a nonconstant term at " + to_string(xi), xi,
                              exterior::sup_coeff_norm(f));
    Form<S> v = solve_frequency(f, view);
    EstimateEntry e;
    e.xi = xi;
    e.v_norm = exterior::sup_coeff_norm(v);
    e.u_norm = exterior::sup_coeff_norm(f);
    e.max_symbol = modulus(sym[*sigma]);
    e.bound_holds = detail::estimate_bound(v, f, sym[*sigma]);
    out.estimates.push_back(std::move(e));
    out.primitive->add(xi, v);
  }
  (void)n;
  return out;
}

/// The constant form c, as a Fourier form supported at xi = 0.
template <FieldScalar S>
FourierForm<S> constant_form(std::shared_ptr<const torus::TorusStructure<S>> s, const Form<S>& c) {
  FourierForm<S> out(s, c.degree());
  out.add(Frequency(s->N(), 0), c);
  return out;
}

/// dbar_b(primitive) + u_0 - u: exactly zero for exact scalars. Returns the
/// sup norm of that difference relative to the sup norm of u.
template <FieldScalar S>
double roundtrip_residual(const FourierForm<S>& u, const SolveResult<S>& r) {
  FourierForm<S> rebuilt = constant_form(u.structure_ptr(), r.invariant_part);
  if (r.primitive) rebuilt += dbar_b(*r.primitive);
  FourierForm<S> diff = rebuilt - u;
  double scale = 0.0, gap = 0.0;
  for (const auto& [xi, f] : u.terms()) scale = std::max(scale, exterior::sup_coeff_norm(f));
  for (const auto& [xi, f] : diff.terms()) gap = std::max(gap, exterior::sup_coeff_norm(f));
  if constexpr (ScalarTraits<S>::exact)
    if (!diff.is_zero() && gap == 0.0) gap = std::numeric_limits<double>::min();
  return scale > 0.0 ? gap / scale : gap;
}

/// sum_xi e^{i <xi, x>} u^(xi) at a point x of [0, 2 pi)^N.
template <FieldScalar S>
Form<Complex64> evaluate(const FourierForm<S>& u, std::span<const double> x) {
  const int N = u.structure().N();
  if (static_cast<int>(x.size()) != N) throw std::domain_error("evaluation point has the wrong dimension");
  Form<Complex64> out(u.degree(), u.universe());
  for (const auto& [xi, f] : u.terms()) {
    double phase = 0.0;
    for (int k = 0; k < N; ++k) phase += static_cast<double>(xi[k]) * x[k];
    Complex64 e = std::polar(1.0, phase);
    for (const auto& [J, c] : f.terms()) out.add(J, e * to_complex(c));
  }
  return out;
}

}  // namespace crinv::fourier
