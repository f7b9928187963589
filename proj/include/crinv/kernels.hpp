#pragma once

// Line-minimum kernels for the lattice scan.
//
// A line is a family of lattice points that differ only in one "solved"
// coordinate t. For every u in [u_lo, u_lo + count) the kernel finds the
// integer t in [t_lo, t_hi] minimizing
//
//   f_u(t) = max_j |c_j(u) + t a_j|^2,   c_j(u) = c0_j + u b_j,
//
// and writes the minimum and the smallest minimizer. One row uses the closed
// form of the quadratic minimizer; several rows use a binary search on the
// convex f_u. Every variant performs the same IEEE operations in the same
// order (the kernel sources are built without FP contraction), so results
// are bit-identical across variants.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace crinv::kernels {

inline constexpr int kMaxRows = 16;

struct LineProblem {
  int rows = 0;
  const double* a_re = nullptr;
  const double* a_im = nullptr;
  const double* c0_re = nullptr;
  const double* c0_im = nullptr;
  const double* b_re = nullptr;
  const double* b_im = nullptr;
  std::int64_t u_lo = 0;
  std::size_t count = 0;
  std::int64_t t_lo = 0;
  std::int64_t t_hi = 0;
};

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Parses "scalar", "avx2", "neon" or "auto"; auto picks the best supported.
Isa parse_isa(std::string_view text);

bool isa_supported(Isa isa);
Isa best_isa();

/// The variant used by line_minima. Initialized from CR_INVARIANTS_KERNEL
/// (default auto) on first use.
Isa active_isa();
/// Throws std::invalid_argument if the variant is not supported on this CPU.
void set_active_isa(Isa isa);

void line_minima(const LineProblem& p, double* value, double* t_out);

void line_minima_scalar(const LineProblem& p, double* value, double* t_out);
void line_minima_avx2(const LineProblem& p, double* value, double* t_out);
void line_minima_neon(const LineProblem& p, double* value, double* t_out);

}  // namespace crinv::kernels
