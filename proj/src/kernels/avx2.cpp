#include <bit>

#include "crinv/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace crinv::kernels {

namespace {

struct Rows {
  __m256d cr[kMaxRows];
  __m256d ci[kMaxRows];
};

__attribute__((target("avx2"))) inline __m256d eval4(const LineProblem& p, const Rows& r, __m256d t) {
  __m256d best = _mm256_setzero_pd();
  for (int j = 0; j < p.rows; ++j) {
    __m256d x = _mm256_add_pd(r.cr[j], _mm256_mul_pd(t, _mm256_set1_pd(p.a_re[j])));
    __m256d y = _mm256_add_pd(r.ci[j], _mm256_mul_pd(t, _mm256_set1_pd(p.a_im[j])));
    __m256d v = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    best = _mm256_max_pd(v, best);
  }
  return best;
}

}  // namespace

__attribute__((target("avx2"))) void line_minima_avx2(const LineProblem& p, double* value, double* t_out) {
  const __m256d lo0 = _mm256_set1_pd(static_cast<double>(p.t_lo));
  const __m256d hi0 = _mm256_set1_pd(static_cast<double>(p.t_hi));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const int iters = p.t_hi > p.t_lo ? std::bit_width(static_cast<std::uint64_t>(p.t_hi - p.t_lo)) : 0;
  double den = 0.0;
  if (p.rows == 1) den = p.a_re[0] * p.a_re[0] + p.a_im[0] * p.a_im[0];
  const __m256d vden = _mm256_set1_pd(den);

  const std::size_t full = p.count - p.count % 4;
  Rows r;
  for (std::size_t k = 0; k < full; k += 4) {
    const double base = static_cast<double>(p.u_lo + static_cast<std::int64_t>(k));
    // Lane values u are exact integers, so base + {0,1,2,3} matches the scalar u.
    __m256d u = _mm256_add_pd(_mm256_set1_pd(base), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
    for (int j = 0; j < p.rows; ++j) {
      r.cr[j] = _mm256_add_pd(_mm256_set1_pd(p.c0_re[j]), _mm256_mul_pd(u, _mm256_set1_pd(p.b_re[j])));
      r.ci[j] = _mm256_add_pd(_mm256_set1_pd(p.c0_im[j]), _mm256_mul_pd(u, _mm256_set1_pd(p.b_im[j])));
    }
    __m256d t;
    if (p.rows == 1) {
      if (den == 0.0) {
        t = lo0;
      } else {
        __m256d num = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(p.a_re[0]), r.cr[0]),
                                    _mm256_mul_pd(_mm256_set1_pd(p.a_im[0]), r.ci[0]));
        __m256d ts = _mm256_div_pd(_mm256_xor_pd(num, _mm256_set1_pd(-0.0)), vden);
        __m256d tf = _mm256_floor_pd(ts);
        tf = _mm256_min_pd(_mm256_max_pd(tf, lo0), hi0);
        __m256d tc = _mm256_min_pd(_mm256_add_pd(tf, one), hi0);
        __m256d take_c = _mm256_cmp_pd(eval4(p, r, tc), eval4(p, r, tf), _CMP_LT_OQ);
        t = _mm256_blendv_pd(tf, tc, take_c);
      }
    } else {
      __m256d lo = lo0, hi = hi0;
      for (int it = 0; it < iters; ++it) {
        __m256d active = _mm256_cmp_pd(lo, hi, _CMP_LT_OQ);
        if (_mm256_movemask_pd(active) == 0) break;
        __m256d mid = _mm256_floor_pd(_mm256_mul_pd(_mm256_add_pd(lo, hi), half));
        __m256d mid1 = _mm256_add_pd(mid, one);
        __m256d rising = _mm256_cmp_pd(eval4(p, r, mid1), eval4(p, r, mid), _CMP_GE_OQ);
        hi = _mm256_blendv_pd(hi, mid, _mm256_and_pd(active, rising));
        lo = _mm256_blendv_pd(lo, mid1, _mm256_andnot_pd(rising, active));
      }
      t = lo;
    }
    _mm256_storeu_pd(value + k, eval4(p, r, t));
    _mm256_storeu_pd(t_out + k, t);
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

void line_minima_avx2(const LineProblem&, double*, double*) {
  throw std::invalid_argument("AVX2 kernel is not available on this architecture");
}

}  // namespace crinv::kernels

#endif
