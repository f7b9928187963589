#include <bit>

#include "crinv/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace crinv::kernels {

namespace {

struct Rows {
  float64x2_t cr[kMaxRows];
  float64x2_t ci[kMaxRows];
};

inline float64x2_t eval2(const LineProblem& p, const Rows& r, float64x2_t t) {
  float64x2_t best = vdupq_n_f64(0.0);
  for (int j = 0; j < p.rows; ++j) {
    float64x2_t x = vaddq_f64(r.cr[j], vmulq_f64(t, vdupq_n_f64(p.a_re[j])));
    float64x2_t y = vaddq_f64(r.ci[j], vmulq_f64(t, vdupq_n_f64(p.a_im[j])));
    float64x2_t v = vaddq_f64(vmulq_f64(x, x), vmulq_f64(y, y));
    // v > best ? v : best, matching the scalar reference.
    best = vbslq_f64(vcgtq_f64(v, best), v, best);
  }
  return best;
}

// std::min / std::max semantics on non-NaN input.
inline float64x2_t vmax(float64x2_t a, float64x2_t b) { return vbslq_f64(vcltq_f64(a, b), b, a); }
inline float64x2_t vmin(float64x2_t a, float64x2_t b) { return vbslq_f64(vcltq_f64(b, a), b, a); }

}  // namespace

void line_minima_neon(const LineProblem& p, double* value, double* t_out) {
  const float64x2_t lo0 = vdupq_n_f64(static_cast<double>(p.t_lo));
  const float64x2_t hi0 = vdupq_n_f64(static_cast<double>(p.t_hi));
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t half = vdupq_n_f64(0.5);
  const int iters = p.t_hi > p.t_lo ? std::bit_width(static_cast<std::uint64_t>(p.t_hi - p.t_lo)) : 0;
  double den = 0.0;
  if (p.rows == 1) den = p.a_re[0] * p.a_re[0] + p.a_im[0] * p.a_im[0];
  const float64x2_t vden = vdupq_n_f64(den);
  const double lane[2] = {0.0, 1.0};

  const std::size_t full = p.count - p.count % 2;
  Rows r;
  for (std::size_t k = 0; k < full; k += 2) {
    const double base = static_cast<double>(p.u_lo + static_cast<std::int64_t>(k));
    float64x2_t u = vaddq_f64(vdupq_n_f64(base), vld1q_f64(lane));
    for (int j = 0; j < p.rows; ++j) {
      r.cr[j] = vaddq_f64(vdupq_n_f64(p.c0_re[j]), vmulq_f64(u, vdupq_n_f64(p.b_re[j])));
      r.ci[j] = vaddq_f64(vdupq_n_f64(p.c0_im[j]), vmulq_f64(u, vdupq_n_f64(p.b_im[j])));
    }
    float64x2_t t;
    if (p.rows == 1) {
      if (den == 0.0) {
        t = lo0;
      } else {
        float64x2_t num = vaddq_f64(vmulq_f64(vdupq_n_f64(p.a_re[0]), r.cr[0]),
                                    vmulq_f64(vdupq_n_f64(p.a_im[0]), r.ci[0]));
        float64x2_t ts = vdivq_f64(vnegq_f64(num), vden);
        float64x2_t tf = vrndmq_f64(ts);
        tf = vmin(vmax(tf, lo0), hi0);
        float64x2_t tc = vmin(vaddq_f64(tf, one), hi0);
        t = vbslq_f64(vcltq_f64(eval2(p, r, tc), eval2(p, r, tf)), tc, tf);
      }
    } else {
      float64x2_t lo = lo0, hi = hi0;
      for (int it = 0; it < iters; ++it) {
        uint64x2_t active = vcltq_f64(lo, hi);
        if ((vgetq_lane_u64(active, 0) | vgetq_lane_u64(active, 1)) == 0) break;
        float64x2_t mid = vrndmq_f64(vmulq_f64(vaddq_f64(lo, hi), half));
        float64x2_t mid1 = vaddq_f64(mid, one);
        uint64x2_t rising = vcgeq_f64(eval2(p, r, mid1), eval2(p, r, mid));
        hi = vbslq_f64(vandq_u64(active, rising), mid, hi);
        lo = vbslq_f64(vbicq_u64(active, rising), mid1, lo);
      }
      t = lo;
    }
    vst1q_f64(value + k, eval2(p, r, t));
    vst1q_f64(t_out + k, t);
  }
  if (full < p.count) {
    LineProblem tail = p;
    tail.u_lo = p.u_lo + static_cast<std::int64_t>(full);
    tail.count = p.count - full;
    line_minima_scalar(tail, value + full, t_out + full);
  }
}

}  // namespace crinv::kernels

#else

#include <stdexcept>

namespace crinv::kernels {

void line_minima_neon(const LineProblem&, double*, double*) {
  throw std::invalid_argument("NEON kernel is not available on this architecture");
}

}  // namespace crinv::kernels

#endif
