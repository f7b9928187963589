// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "crinv/fixtures.hpp"
#include "crinv/fourier.hpp"
#include "crinv/liealg.hpp"
#include "crinv/toruscr.hpp"
#include "support.hpp"

using namespace crinv;
using lie::LieElement;
using lie::Scalar;
using G = GaussianRational;
using C = Complex64;

namespace {

// Pinned limits.
constexpr double kTablesSeconds = 1.0;
constexpr double kLeviSeconds = 1.0;
constexpr double kScanSeconds = 10.0;
constexpr double kFloatRoundtrip = 1e-9;
constexpr double kFloatDbarSquared = 1e-12;  // relative to the largest input coefficient times symbol^2
constexpr double kFloatEstimateSlack = 1e-12;
constexpr double kGoldenRho = 1.1;
constexpr std::int64_t kScanRadius = 50;
constexpr std::int64_t kLiouvilleRadius = 10000;
constexpr int kFourierCases = 1000;
constexpr int kFourierMaxFrequencies = 50;
constexpr int kCeForms = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// --- AC1 -----------------------------------------------------------------------

Outcome ac1() {
  auto t0 = std::chrono::steady_clock::now();
  auto s = fixtures::su4();
  int plus = 0, minus = 0, cells = 0;
  for (int i = 1; i <= 6; ++i)
    for (int j = i; j <= 6; ++j) {
      LieElement got = lie::bracket(s.L[i - 1], lie::conjugate(s.L[j - 1]));
      LieElement printed = fixtures::realize(s, fixtures::printed_bracket(i, j));
      plus += got == printed;
      minus += got == -printed;
      ++cells;
    }
  int lplus = 0, lminus = 0, lams = 0;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 6; ++k) {
      // [T_j, L_k] = -i lambda L_k.
      Scalar p(static_cast<long>(fixtures::printed_lambda(j, k)));
      LieElement lhs = lie::bracket(s.T[j - 1], s.L[k - 1]);
      lplus += lhs == Scalar(0L, -1L) * p * s.L[k - 1];
      lminus += lhs == Scalar(0L, 1L) * p * s.L[k - 1];
      ++lams;
    }
  LieElement L = fixtures::sl2_L(), Lb = lie::conjugate(L);
  bool sl2 = lie::bracket(L, Lb) == Scalar(0L, 2L) * (L + Lb);
  double secs = seconds_since(t0);
  int best_cells = std::max(plus, minus);
  int cell_sign = plus >= minus ? 1 : -1;
  int lam_sign = lplus >= lminus ? 1 : -1;
  bool uniform = best_cells == cells && std::max(lplus, lminus) == lams && cell_sign == lam_sign;
  Outcome o;
  o.pass = uniform && sl2 && secs < kTablesSeconds;
  o.detail = fmt("bracket cells %d/%d (+1: %d, -1: %d); lambda %d/%d (+1: %d, -1: %d); sl2 identity %s; %.3f s",
                 best_cells, cells, plus, minus, std::max(lplus, lminus), lams, lplus, lminus,
                 sl2 ? "exact" : "FAILS", secs);
  return o;
}

// --- AC2 -----------------------------------------------------------------------

Outcome ac2() {
  auto t0 = std::chrono::steady_clock::now();
  bool sl2 = lie::is_levi_flat(fixtures::sl2_cr1().h).flat;
  bool su2a = lie::is_levi_flat(fixtures::su2_cr0().h).flat;
  bool su2b = lie::is_levi_flat(fixtures::su2_cr1().h).flat;
  bool ex3 = lie::is_levi_flat(fixtures::example3().h).flat;
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = sl2 && !su2a && !su2b && ex3 && secs < kLeviSeconds;
  o.detail = fmt("sl2 CR1 %s, su(2) CR0 %s, su(2) CR1 %s, T^2 x SU(4) %s; %.3f s", sl2 ? "flat" : "not flat",
                 su2a ? "flat" : "not flat", su2b ? "flat" : "not flat", ex3 ? "flat" : "not flat", secs);
  return o;
}

// --- AC3 -----------------------------------------------------------------------

Outcome ac3() {
  Outcome o;
  std::ostringstream d;
  for (int n = 2; n <= 4; ++n) {
    std::size_t dim = lie::derived_algebra(lie::su_ambient(n), lie::su_basis(n)).dim();
    o.pass &= dim == static_cast<std::size_t>(n * n - 1);
    d << "su(" << n << ") -> " << dim << "; ";
  }
  auto p = lie::product_ambient(2, 4);
  auto der = lie::derived_algebra(p, lie::ambient_basis(p));
  bool no_torus = true;
  for (const auto& e : der.basis())
    for (const auto& t : e.torus()) no_torus &= t.is_zero();
  // Contained in su(4) and of full dimension there.
  lie::ElementSpan su4(p, [&] {
    std::vector<LieElement> v;
    for (const auto& e : lie::ambient_basis(p))
      if (std::all_of(e.torus().begin(), e.torus().end(), [](const Scalar& x) { return x.is_zero(); })) v.push_back(e);
    return v;
  }());
  bool inside = true;
  for (const auto& e : der.basis()) inside &= su4.contains(e);
  o.pass &= der.dim() == 15 && no_torus && inside;
  d << "R^2 + su(4) -> " << der.dim() << (no_torus && inside ? " inside su(4)" : " NOT inside su(4)");
  o.detail = d.str();
  return o;
}

// --- AC4 -----------------------------------------------------------------------

Outcome ac4() {
  Outcome o;
  std::ostringstream d;
  for (const auto& f : {fixtures::su2_cr0(), fixtures::su2_cr1(), fixtures::sl2_cr1(), fixtures::example3()}) {
    std::size_t N = lie::ambient_basis(f.ambient).size();
    std::size_t dtor = f.roots.torus.size();
    bool sub = lie::is_subalgebra(f.h.basis()).ok;
    bool cr = lie::is_cr(f.h);
    std::size_t expect = f.type == "CR0" ? dtor / 2 + f.positive.size() : N / 2;
    bool dims = f.h.dim() == expect && f.h.dim() == N / 2;
    bool ideal = lie::is_ideal(f.ideal, f.h).ok;
    o.pass &= sub && cr && dims && ideal;
    d << f.name << " " << f.type << " dim " << f.h.dim() << "/" << expect << (sub ? "" : " not-subalgebra")
      << (cr ? "" : " not-CR") << (ideal ? "" : " not-ideal") << "; ";
  }
  o.pass &= fixtures::example3().h.dim() == 8;
  o.detail = d.str();
  o.detail.resize(o.detail.size() - 2);
  return o;
}

// --- AC5 -----------------------------------------------------------------------

Outcome ac5() {
  Outcome o;
  std::ostringstream d;
  {
    auto t0 = std::chrono::steady_clock::now();
    torus::ScanOptions opt;
    opt.radius = kScanRadius;
    auto r = torus::dc_scan(fixtures::lambda_half(), opt);
    double secs = seconds_since(t0);
    bool listed = std::find(r.resonances.begin(), r.resonances.end(), torus::Frequency{1, -2, 0}) != r.resonances.end();
    bool ok = r.verdict == torus::Verdict::resonant && listed && secs < kScanSeconds;
    o.pass &= ok;
    d << "lambda=1/2: " << torus::to_string(r.verdict) << (listed ? " with (1,-2,0)" : " without (1,-2,0)")
      << fmt(" %.2f s [%s]; ", secs, ok ? "ok" : "bad");
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    torus::ScanOptions opt;
    opt.radius = kScanRadius;
    auto r = torus::dc_scan(fixtures::golden(), opt);
    double secs = seconds_since(t0);
    double margin = 0;
    bool holds = false;
    for (const auto& e : r.evidence)
      if (e.rho == kGoldenRho) holds = e.holds, margin = e.margin;
    bool ok = r.verdict == torus::Verdict::evidence_holds && holds && margin > 0 && secs < kScanSeconds;
    o.pass &= ok;
    d << "golden R=50: " << torus::to_string(r.verdict) << fmt(" margin(1.1) %.4g %.2f s [%s]; ", margin, secs,
                                                                 ok ? "ok" : "bad");
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    torus::ScanOptions opt;
    opt.radius = kLiouvilleRadius;
    auto r = torus::dc_scan(fixtures::liouville(), opt);
    double secs = seconds_since(t0);
    bool ok = r.verdict == torus::Verdict::evidence_fails && secs < kScanSeconds;
    o.pass &= ok;
    d << "Liouville R=1e4: " << torus::to_string(r.verdict)
      << fmt(" (best rho %s, fit rho %.3g) %.2f s [%s]", r.best_rho ? fmt("%g", *r.best_rho).c_str() : "none",
             r.fit_rho.value_or(-1.0), secs, ok ? "ok" : "bad");
  }
  o.detail = d.str();
  return o;
}

// --- AC6 -----------------------------------------------------------------------

Rational norm2(const G& z) { return z.re() * z.re() + z.im() * z.im(); }

bool exact_case(int n, std::string& why) {
  auto s = std::make_shared<const torus::TorusStructure<G>>(testing::random_exact_structure(n));
  int q = testing::uniform(0, n - 1);
  auto w = testing::random_fourier<G>(s, q, testing::uniform(1, kFourierMaxFrequencies),
                                      [] { return testing::small_gaussian(6); });
  auto u = fourier::dbar_b(w);
  if (!fourier::dbar_b(u).is_zero()) return why = "dbar_b^2 != 0", false;
  auto r = fourier::solve(u);
  if (!r.invariant_part.is_zero()) return why = "nonzero invariant part", false;
  if (!(fourier::dbar_b(*r.primitive) == u)) return why = "roundtrip differs", false;
  // ||v^|| max|L^| <= ||u^||, squared moduli compared as rationals.
  for (const auto& [xi, v] : r.primitive->terms()) {
    Rational top = 0, sym = 0;
    const auto uc = u.coefficient(xi);
    for (const auto& [J, c] : uc.terms()) top = std::max(top, norm2(c));
    for (const auto& l : s->symbols(xi)) sym = std::max(sym, norm2(l));
    for (const auto& [K, c] : v.terms())
      if (norm2(c) * sym > top) return why = "estimate exceeds constant 1 at " + fourier::to_string(xi), false;
  }
  return true;
}

bool float_case(int n, std::string& why) {
  auto s = std::make_shared<const torus::TorusStructure<C>>(testing::random_float_structure(n));
  int q = testing::uniform(0, n - 1);
  auto w = testing::random_fourier<C>(s, q, testing::uniform(1, kFourierMaxFrequencies), testing::random_complex);
  auto u = fourier::dbar_b(w);
  auto uu = fourier::dbar_b(u);
  for (const auto& [xi, f] : uu.terms()) {
    double sym = s->max_symbol(xi);
    if (exterior::sup_coeff_norm(f) > kFloatDbarSquared * sym * sym * exterior::sup_coeff_norm(w.coefficient(xi)) * 10)
      return why = "float dbar_b^2 residual at " + fourier::to_string(xi), false;
  }
  auto r = fourier::solve(u);
  if (fourier::roundtrip_residual(u, r) > kFloatRoundtrip) return why = "float roundtrip residual", false;
  for (const auto& [xi, v] : r.primitive->terms()) {
    double lhs = exterior::sup_coeff_norm(v) * s->max_symbol(xi);
    double rhs = exterior::sup_coeff_norm(u.coefficient(xi));
    if (lhs > rhs * (1 + kFloatEstimateSlack)) return why = "float estimate exceeds constant 1", false;
  }
  return true;
}

Outcome ac6() {
  Outcome o;
  int failures = 0, exact = 0, flt = 0;
  std::string first;
  for (int k = 0; k < kFourierCases; ++k) {
    int n = 1 + k % 3;
    std::string why;
    bool ok;
    try {
      if (k % 2 == 0) {
        ++exact;
        ok = exact_case(n, why);
      } else {
        ++flt;
        ok = float_case(n, why);
      }
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    if (!ok) {
      ++failures;
      if (first.empty()) first = why;
    }
  }
  o.pass = failures == 0;
  o.detail = fmt("%d cases (%d exact, %d float, n <= 3, <= %d frequencies): %d failures", kFourierCases, exact, flt,
                 kFourierMaxFrequencies, failures);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

// --- AC7 -----------------------------------------------------------------------

Outcome ac7() {
  Outcome o;
  std::vector<lie::Subalgebra> hs = {lie::Subalgebra(lie::su_ambient(2), lie::su_basis(2)),
                                     lie::Subalgebra(lie::su_ambient(4), lie::su_basis(4)), fixtures::example3().h};
  std::vector<lie::StructureConstants> sc;
  for (const auto& h : hs) sc.emplace_back(h);
  int bad = 0;
  for (int k = 0; k < kCeForms; ++k) {
    const auto& h = hs[k % 3];
    int n = static_cast<int>(h.dim());
    int q = testing::uniform(0, std::min(n - 2, 3));
    auto u = testing::random_form<Scalar>(q, n, testing::uniform(1, 5), [] { return testing::small_gaussian(4); });
    auto du = lie::ce_differential(u, sc[k % 3]);
    if (!lie::ce_differential(du, sc[k % 3]).is_zero()) ++bad;
  }
  auto ex = fixtures::example3();
  int m = static_cast<int>(ex.m.dim());
  lie::Form z1(1, m), z12(2, m);
  z1.add(exterior::MultiIndex({1}, m), Scalar(1));
  z12.add(exterior::MultiIndex({1, 2}, m), Scalar(1));
  bool e1 = lie::ce_differential(lie::extend_by_zero(z1, ex.h, ex.m, ex.ideal), ex.h).is_zero();
  bool e12 = lie::ce_differential(lie::extend_by_zero(z12, ex.h, ex.m, ex.ideal), ex.h).is_zero();
  bool nonzero = !lie::extend_by_zero(z12, ex.h, ex.m, ex.ideal).is_zero();
  o.pass = bad == 0 && e1 && e12 && nonzero;
  o.detail = fmt("d^2 = 0 on %d/%d random forms; extension of zeta_1 %s, of zeta_1 ^ zeta_2 %s", kCeForms - bad,
                 kCeForms, e1 ? "closed" : "NOT closed", e12 ? "closed" : "NOT closed");
  return o;
}

// --- AC8 -----------------------------------------------------------------------

Outcome ac8() {
  LieElement L = fixtures::su2_L();
  lie::Matrix t = {{Scalar(0L, 1L), Scalar()}, {Scalar(), Scalar(0L, -1L)}};
  LieElement moved = lie::right_translate(L, t);
  bool ok = moved == Scalar(0L, -1L) * L;
  auto c = lie::proportionality(moved, L);
  Outcome o;
  o.pass = ok;
  o.detail = "(R_t)_* L = " + (c ? to_string(*c) : std::string("not proportional")) + " L, expected -i L";
  return o;
}

}  // namespace

int main() {
  std::printf("seed %llu\n", static_cast<unsigned long long>(testing::seed()));
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {"AC1", "table verification", ac1},     {"AC2", "Levi-flat verdicts", ac2},
      {"AC3", "semisimplicity witness", ac3}, {"AC4", "CR0/CR1 constructions", ac4},
      {"AC5", "divisor-condition scans", ac5}, {"AC6", "Fourier solver properties", ac6},
      {"AC7", "cohomology extension", ac7},   {"AC8", "right translation", ac8},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
