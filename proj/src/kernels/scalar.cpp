#include <algorithm>
#include <bit>
#include <cmath>

#include "crinv/kernels.hpp"

namespace crinv::kernels {

namespace {

inline double eval(const LineProblem& p, const double* cr, const double* ci, double t) {
  double best = 0.0;
  for (int j = 0; j < p.rows; ++j) {
    double x = cr[j] + t * p.a_re[j];
    double y = ci[j] + t * p.a_im[j];
    double v = x * x + y * y;
    best = v > best ? v : best;
  }
  return best;
}

}  // namespace

void line_minima_scalar(const LineProblem& p, double* value, double* t_out) {
  const double lo0 = static_cast<double>(p.t_lo);
  const double hi0 = static_cast<double>(p.t_hi);
  const int iters = p.t_hi > p.t_lo ? std::bit_width(static_cast<std::uint64_t>(p.t_hi - p.t_lo)) : 0;
  double den = 0.0;
  if (p.rows == 1) den = p.a_re[0] * p.a_re[0] + p.a_im[0] * p.a_im[0];

  double cr[kMaxRows], ci[kMaxRows];
  for (std::size_t k = 0; k < p.count; ++k) {
    const double u = static_cast<double>(p.u_lo + static_cast<std::int64_t>(k));
    for (int j = 0; j < p.rows; ++j) {
      cr[j] = p.c0_re[j] + u * p.b_re[j];
      ci[j] = p.c0_im[j] + u * p.b_im[j];
    }
    double t;
    if (p.rows == 1) {
      if (den == 0.0) {
        t = lo0;
      } else {
        double num = p.a_re[0] * cr[0] + p.a_im[0] * ci[0];
        double ts = -num / den;
        double tf = std::floor(ts);
        tf = std::min(std::max(tf, lo0), hi0);
        double tc = std::min(tf + 1.0, hi0);
        t = eval(p, cr, ci, tc) < eval(p, cr, ci, tf) ? tc : tf;
      }
    } else {
      double lo = lo0, hi = hi0;
      for (int it = 0; it < iters; ++it) {
        if (!(lo < hi)) break;
        double mid = std::floor((lo + hi) * 0.5);
        bool rising = eval(p, cr, ci, mid + 1.0) >= eval(p, cr, ci, mid);
        if (rising)
          hi = mid;
        else
          lo = mid + 1.0;
      }
      t = lo;
    }
    value[k] = eval(p, cr, ci, t);
    t_out[k] = t;
  }
}

}  // namespace crinv::kernels
