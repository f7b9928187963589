#pragma once

// Embedded fixture data: the su(2), sl(2,R), su(4) and T^2 x SU(4) examples,
// the printed su(4) bracket and eigenvalue tables, and three structures on T^3.

#include <optional>
#include <string>
#include <vector>

#include "crinv/liealg.hpp"
#include "crinv/toruscr.hpp"

namespace crinv::fixtures {

using lie::LieElement;
using lie::Subalgebra;

// --- su(4) -------------------------------------------------------------------

struct Su4 {
  lie::Ambient ambient;
  std::vector<LieElement> T;  // T_1..T_3
  std::vector<LieElement> X;  // X_1..X_6
  std::vector<LieElement> Y;
  std::vector<LieElement> L;  // L_k = X_k - i Y_k
};

Su4 su4();

/// A printed table entry as a combination of T_j, L_k and conj L_k.
struct SymbolTerm {
  enum class Kind { T, L, Lbar };
  Kind kind;
  int index;  // 1-based
  GaussianRational coeff;
};
using PrintedCell = std::vector<SymbolTerm>;

std::string to_string(const PrintedCell& cell);
LieElement realize(const Su4& s, const PrintedCell& cell);
/// The same cell with every L_k and conj L_k exchanged.
PrintedCell bar_swapped(const PrintedCell& cell);

/// Printed value of [L_i, conj L_j] for 1 <= i <= j <= 6.
const PrintedCell& printed_bracket(int i, int j);
/// Printed lambda_{jk}, j in 1..3, k in 1..6, from [T_j, L_k] = -i lambda_{jk} L_k.
int printed_lambda(int j, int k);

// --- CR fixtures ---------------------------------------------------------------

struct CrFixture {
  std::string name;
  lie::Ambient ambient;
  lie::RootDatum roots;
  std::vector<std::size_t> positive;
  Subalgebra m;
  Subalgebra h;
  Subalgebra ideal;  // the complement of m declared as an ideal of h
  std::string type;  // "CR0" or "CR1"
  bool paper_flat = false;
};

/// su(2), torus {T}, h = span{X - iY}.
CrFixture su2_cr0();
/// su(2), alpha the root of X - iY, t = T, x = X - iY.
CrFixture su2_cr1();
/// sl(2,R) with L = X + iT; built as t = T, x = -iX so that t + x = -iL.
CrFixture sl2_cr1();
/// T^2 x SU(4): m = span{Z_1, Z_2}, Z_1 = T_1 - iT_2, Z_2 = d/dt_1 + iT_3, with all six L_k.
CrFixture example3();

LieElement sl2_L();
LieElement su2_L();

struct Example3Elements {
  LieElement Z1, Z2;
  std::vector<LieElement> L;  // L_1..L_6 lifted to the product ambient
};
Example3Elements example3_elements();
/// Dimension of span{Z_1, Z_2, L_1, L_2, L_3}, the text's literal index range.
std::size_t example3_literal_dim();

// --- structures on T^3 -----------------------------------------------------------

/// L = d/dx + lambda d/dy + i d/dt.
torus::TorusStructure<GaussianRational> lambda_half();
torus::TorusStructure<SurdScalar> golden();
double liouville_value();  // sum_{k <= 6} 10^{-k!} in binary64
torus::TorusStructure<Complex64> liouville();

}  // namespace crinv::fixtures
