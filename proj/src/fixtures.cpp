#include "crinv/fixtures.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace crinv::fixtures {

using lie::Ambient;
using lie::Scalar;

namespace {

const Scalar kI = Scalar::i();

Scalar q(long num, long den = 1) { return Scalar(Rational(num, den)); }
Scalar qi(long num, long den = 1) { return Scalar(Rational(0), Rational(num, den)); }

SymbolTerm T(int j, Scalar c) { return {SymbolTerm::Kind::T, j, std::move(c)}; }
SymbolTerm L(int k, Scalar c) { return {SymbolTerm::Kind::L, k, std::move(c)}; }
SymbolTerm Lb(int k, Scalar c) { return {SymbolTerm::Kind::Lbar, k, std::move(c)}; }

using Table = std::array<std::array<PrintedCell, 6>, 6>;

Table build_table() {
  Table t;
  t[0][0] = {T(1, qi(4))};
  t[0][1] = {L(3, qi(-2))};
  t[0][3] = {L(5, qi(2))};
  t[1][1] = {T(1, qi(2)), T(2, qi(2))};
  t[1][2] = {Lb(1, qi(2))};
  t[2][2] = {T(2, qi(2)), T(1, qi(-2))};
  t[2][4] = {Lb(6, qi(-2))};
  t[3][3] = {T(1, qi(2)), T(2, qi(2, 3)), T(3, qi(4, 3))};
  t[3][4] = {Lb(1, qi(-2))};
  t[3][5] = {Lb(2, qi(-2))};
  t[4][4] = {T(2, qi(2, 3)), T(1, qi(-2)), T(3, qi(4, 3))};
  t[4][5] = {Lb(3, qi(-2))};
  t[5][5] = {T(2, qi(4, 3)), T(3, qi(-4, 3))};
  return t;
}

constexpr int kLambda[3][6] = {{2, 1, -1, 1, -1, 0}, {0, 3, 3, 1, 1, -2}, {0, 0, 0, 4, 4, 4}};

LieElement lift(const Ambient& target, const LieElement& e) {
  return LieElement(target, e.matrix(), lie::Coords(target.torus_dim));
}

CrFixture make(std::string name, Ambient amb, lie::RootDatum roots, std::vector<std::size_t> positive,
               Subalgebra m, Subalgebra h, Subalgebra ideal, std::string type, bool flat) {
  CrFixture f;
  f.name = std::move(name);
  f.ambient = std::move(amb);
  f.roots = std::move(roots);
  f.positive = std::move(positive);
  f.m = std::move(m);
  f.h = std::move(h);
  f.ideal = std::move(ideal);
  f.type = std::move(type);
  f.paper_flat = flat;
  return f;
}

std::size_t root_of(const lie::RootDatum& roots, const LieElement& e) {
  auto r = lie::find_root(roots, e);
  if (!r) throw std::logic_error("fixture element is not a root vector");
  return *r;
}

}  // namespace

Su4 su4() {
  Su4 s;
  s.ambient = lie::su_ambient(4);
  auto b = lie::su_basis(4);
  for (int j = 0; j < 3; ++j) s.T.push_back(b[j]);
  for (int k = 0; k < 6; ++k) {
    s.X.push_back(b[3 + 2 * k]);
    s.Y.push_back(b[4 + 2 * k]);
    LieElement l = s.Y.back();
    l *= -kI;
    l += s.X.back();
    s.L.push_back(l);
  }
  return s;
}

std::string to_string(const PrintedCell& cell) {
  if (cell.empty()) return "0";
  std::string out;
  for (const auto& t : cell) {
    if (!out.empty()) out += " + ";
    out += "(" + crinv::to_string(t.coeff) + ")";
    switch (t.kind) {
      case SymbolTerm::Kind::T: out += "T" + std::to_string(t.index); break;
      case SymbolTerm::Kind::L: out += "L" + std::to_string(t.index); break;
      case SymbolTerm::Kind::Lbar: out += "conj L" + std::to_string(t.index); break;
    }
  }
  return out;
}

LieElement realize(const Su4& s, const PrintedCell& cell) {
  LieElement out(s.ambient);
  for (const auto& t : cell) {
    LieElement e = t.kind == SymbolTerm::Kind::T   ? s.T.at(t.index - 1)
                   : t.kind == SymbolTerm::Kind::L ? s.L.at(t.index - 1)
                                                   : lie::conjugate(s.L.at(t.index - 1));
    e *= t.coeff;
    out += e;
  }
  return out;
}

PrintedCell bar_swapped(const PrintedCell& cell) {
  PrintedCell out = cell;
  for (auto& t : out) {
    if (t.kind == SymbolTerm::Kind::L)
      t.kind = SymbolTerm::Kind::Lbar;
    else if (t.kind == SymbolTerm::Kind::Lbar)
      t.kind = SymbolTerm::Kind::L;
  }
  return out;
}

const PrintedCell& printed_bracket(int i, int j) {
  static const Table table = build_table();
  if (i < 1 || j < i || j > 6) throw std::domain_error("printed bracket cells are 1 <= i <= j <= 6");
  return table[i - 1][j - 1];
}

int printed_lambda(int j, int k) {
  if (j < 1 || j > 3 || k < 1 || k > 6) throw std::domain_error("lambda index out of range");
  return kLambda[j - 1][k - 1];
}

LieElement su2_L() {
  auto b = lie::su_basis(2);
  LieElement l = b[1];
  l *= -kI;
  l += b[0];
  return l;
}

LieElement sl2_L() {
  auto b = lie::sl2_basis();
  LieElement l = b[0];
  l *= kI;
  l += b[1];
  return l;
}

CrFixture su2_cr0() {
  Ambient amb = lie::su_ambient(2);
  auto basis = lie::su_basis(2);
  auto roots = lie::root_decompose({basis[2]}, basis);
  auto positive = lie::positive_roots(roots, {Rational(1)});
  Subalgebra m(amb, {}, "toric part");
  Subalgebra h = lie::cr0_construct(m, roots, positive);
  std::vector<LieElement> ideal;
  for (auto p : positive) ideal.push_back(roots.roots[p]);
  Subalgebra u(amb, std::move(ideal), "positive roots");
  return make("su(2) CR0", amb, std::move(roots), std::move(positive), std::move(m), std::move(h), std::move(u),
              "CR0", false);
}

CrFixture su2_cr1() {
  Ambient amb = lie::su_ambient(2);
  auto basis = lie::su_basis(2);
  auto roots = lie::root_decompose({basis[2]}, basis);
  auto positive = lie::positive_roots(roots, {Rational(1)});
  LieElement x = su2_L();
  std::size_t alpha = root_of(roots, x);
  Subalgebra m(amb, {}, "toric part");
  Subalgebra h = lie::cr1_construct(alpha, m, x, basis[2], roots, positive);
  Subalgebra u(amb, h.basis(), "ideal");
  return make("su(2) CR1", amb, std::move(roots), std::move(positive), std::move(m), std::move(h), std::move(u),
              "CR1", false);
}

CrFixture sl2_cr1() {
  Ambient amb = lie::sl2_ambient();
  auto basis = lie::sl2_basis();
  auto roots = lie::root_decompose({basis[0]}, basis);
  auto positive = lie::positive_roots(roots, {Rational(1)});
  std::size_t alpha = root_of(roots, basis[1]);
  LieElement x = basis[1];
  x *= -kI;
  Subalgebra m(amb, {}, "toric part");
  Subalgebra h = lie::cr1_construct(alpha, m, x, basis[0], roots, positive);
  Subalgebra u(amb, h.basis(), "ideal");
  return make("sl(2,R) CR1", amb, std::move(roots), std::move(positive), std::move(m), std::move(h), std::move(u),
              "CR1", true);
}

Example3Elements example3_elements() {
  Ambient amb = lie::product_ambient(2, 4);
  Su4 s = su4();
  Example3Elements e;
  LieElement t2 = lift(amb, s.T[1]);
  t2 *= -kI;
  e.Z1 = lift(amb, s.T[0]) + t2;
  LieElement t3 = lift(amb, s.T[2]);
  t3 *= kI;
  e.Z2 = LieElement::torus_direction(amb, 0) + t3;
  for (const auto& l : s.L) e.L.push_back(lift(amb, l));
  return e;
}

std::size_t example3_literal_dim() {
  auto e = example3_elements();
  std::vector<LieElement> v = {e.Z1, e.Z2, e.L[0], e.L[1], e.L[2]};
  return lie::ElementSpan(v.front().ambient(), v).rank();
}

CrFixture example3() {
  Ambient amb = lie::product_ambient(2, 4);
  auto e = example3_elements();
  auto torus = lie::standard_torus(amb);
  auto roots = lie::root_decompose(torus, lie::ambient_basis(amb));
  std::vector<Rational> weights = {Rational(0), Rational(0), Rational(1), Rational(1), Rational(1)};
  auto positive = lie::positive_roots(roots, weights);
  Subalgebra m(amb, {e.Z1, e.Z2}, "toric part");
  Subalgebra h = lie::cr0_construct(m, roots, positive);
  Subalgebra u(amb, e.L, "span{L_1..L_6}");
  return make("T^2 x SU(4) CR0", amb, std::move(roots), std::move(positive), std::move(m), std::move(h),
              std::move(u), "CR0", true);
}

torus::TorusStructure<GaussianRational> lambda_half() {
  return {3, 1, {{q(1), q(1, 2), kI}}};
}

torus::TorusStructure<SurdScalar> golden() {
  SurdScalar phi(q(1, 2), q(1, 2), 5);
  return {3, 1, {{SurdScalar(1), phi, SurdScalar(kI)}}};
}

double liouville_value() {
  double v = 0.0;
  double fact = 1.0;
  for (int k = 1; k <= 6; ++k) {
    fact *= k;
    v += std::pow(10.0, -fact);
  }
  return v;
}

torus::TorusStructure<Complex64> liouville() {
  return {3, 1, {{Complex64(1.0), Complex64(liouville_value()), Complex64(0.0, 1.0)}}};
}

}  // namespace crinv::fixtures
