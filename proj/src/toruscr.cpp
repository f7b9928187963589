#include "crinv/toruscr.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "crinv/kernels.hpp"

namespace crinv::torus {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::resonant: return "RESONANT";
    case Verdict::evidence_holds: return "EVIDENCE_HOLDS";
    case Verdict::evidence_fails: return "EVIDENCE_FAILS";
  }
  return "?";
}

std::int64_t default_radius(int N) {
  if (N <= 3) return 50;
  double side = std::pow(1e7, 1.0 / N);
  auto r = static_cast<std::int64_t>(std::floor((side - 1.0) / 2.0));
  return std::clamp<std::int64_t>(r, 1, 50);
}

namespace detail {

Frequency primitive_integer_vector(const std::vector<Rational>& v) {
  mpz_class l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& q : v) {
    mpz_class n = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    z.push_back(n);
  }
  if (g == 0) throw std::domain_error("zero vector has no primitive multiple");
  int sign = 0;
  for (const auto& n : z)
    if (sgn(n) != 0) {
      sign = sgn(n);
      break;
    }
  Frequency out;
  for (auto& n : z) {
    mpz_class k = n / g * sign;
    if (!k.fits_slong_p()) throw std::overflow_error("resonance generator entry does not fit in 64 bits");
    out.push_back(k.get_si());
  }
  return out;
}

}  // namespace detail

std::vector<Frequency> lattice_points_in_box(const Frequency& generator, std::int64_t radius) {
  std::int64_t top = 0;
  for (auto x : generator) top = std::max<std::int64_t>(top, x < 0 ? -x : x);
  std::vector<Frequency> out;
  if (top == 0) return out;
  std::int64_t kmax = radius / top;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    Frequency f;
    for (auto x : generator) f.push_back(k * x);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

namespace {

struct ShellResult {
  ShellMinimum best;
  std::vector<Frequency> hits;
};

class ShellScanner {
 public:
  explicit ShellScanner(const linalg::Mat<Complex64>& a) : a_(a), n_(static_cast<int>(a.size())), N_(a.empty() ? 0 : static_cast<int>(a[0].size())) {
    if (n_ < 1 || n_ > kernels::kMaxRows) throw std::domain_error("scan supports 1..16 rows");
    // The solved coordinate on each face is the free one with the largest
    // column norm; the vectorized one is the smallest remaining index.
    for (int k = 0; k < N_; ++k) {
      int s = -1;
      double best = -1.0;
      for (int l = 0; l < N_; ++l) {
        if (l == k) continue;
        double norm = 0.0;
        for (int j = 0; j < n_; ++j) norm += std::norm(a_[j][l]);
        if (norm > best) {
          best = norm;
          s = l;
        }
      }
      int u = -1;
      std::vector<int> outer;
      for (int l = 0; l < N_; ++l) {
        if (l == k || l == s) continue;
        if (u < 0)
          u = l;
        else
          outer.push_back(l);
      }
      faces_.push_back({k, s, u, std::move(outer)});
    }
  }

  ShellResult scan(std::int64_t r) {
    ShellResult res;
    res.best.r = r;
    bool have = false;
    double best_sq = 0.0;
    const std::size_t count = static_cast<std::size_t>(2 * r + 1);
    value_.resize(count);
    t_.resize(count);
    std::vector<double> a_re(n_), a_im(n_), c_re(n_), c_im(n_), b_re(n_), b_im(n_);
    for (const auto& face : faces_) {
      for (int j = 0; j < n_; ++j) {
        Complex64 ia = Complex64(0, 1) * a_[j][face.solved];
        Complex64 ib = Complex64(0, 1) * a_[j][face.vec];
        a_re[j] = ia.real();
        a_im[j] = ia.imag();
        b_re[j] = ib.real();
        b_im[j] = ib.imag();
      }
      std::vector<std::int64_t> outer(face.outer.size(), -r);
      while (true) {
        for (int j = 0; j < n_; ++j) {
          Complex64 c = a_[j][face.fixed] * static_cast<double>(r);
          for (std::size_t o = 0; o < outer.size(); ++o) c += a_[j][face.outer[o]] * static_cast<double>(outer[o]);
          c *= Complex64(0, 1);
          c_re[j] = c.real();
          c_im[j] = c.imag();
        }
        kernels::LineProblem p;
        p.rows = n_;
        p.a_re = a_re.data();
        p.a_im = a_im.data();
        p.c0_re = c_re.data();
        p.c0_im = c_im.data();
        p.b_re = b_re.data();
        p.b_im = b_im.data();
        p.u_lo = -r;
        p.count = count;
        p.t_lo = -r;
        p.t_hi = r;
        kernels::line_minima(p, value_.data(), t_.data());
        for (std::size_t k = 0; k < count; ++k) {
          double v = value_[k];
          bool improves = !have || v < best_sq;
          bool hit = v < kFloatResonance * kFloatResonance;
          if (!improves && !hit) continue;
          Frequency xi(N_);
          xi[face.fixed] = r;
          xi[face.vec] = -r + static_cast<std::int64_t>(k);
          xi[face.solved] = static_cast<std::int64_t>(t_[k]);
          for (std::size_t o = 0; o < outer.size(); ++o) xi[face.outer[o]] = outer[o];
          if (hit) {
            Frequency neg = xi;
            for (auto& x : neg) x = -x;
            res.hits.push_back(xi);
            res.hits.push_back(std::move(neg));
          }
          if (improves) {
            have = true;
            best_sq = v;
            res.best.argmin = std::move(xi);
          }
        }
        // Advance the outer odometer, last coordinate fastest.
        std::size_t o = outer.size();
        while (o > 0 && outer[o - 1] == r) {
          outer[o - 1] = -r;
          --o;
        }
        if (o == 0) break;
        ++outer[o - 1];
      }
    }
    res.best.value = std::sqrt(best_sq);
    double e = 0.0;
    for (auto x : res.best.argmin) e += static_cast<double>(x) * static_cast<double>(x);
    res.best.argmin_norm = std::sqrt(e);
    return res;
  }

 private:
  struct Face {
    int fixed;
    int solved;
    int vec;
    std::vector<int> outer;
  };

  const linalg::Mat<Complex64>& a_;
  int n_;
  int N_;
  std::vector<Face> faces_;
  std::vector<double> value_, t_;
};

}  // namespace

ShellScan scan_shells(const linalg::Mat<Complex64>& a, std::int64_t radius, int workers) {
  if (a.empty() || a[0].size() < 3) throw std::domain_error("scan needs a structure on T^N with N >= 3");
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::int64_t>(workers, radius));
  std::vector<ShellResult> results(static_cast<std::size_t>(radius));
  auto run = [&](int w) {
    ShellScanner scanner(a);
    for (std::int64_t r = 1 + w; r <= radius; r += workers) results[r - 1] = scanner.scan(r);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  ShellScan out;
  for (auto& r : results) {
    out.shells.push_back(std::move(r.best));
    for (auto& h : r.hits) out.near_zero.push_back(std::move(h));
  }
  std::sort(out.near_zero.begin(), out.near_zero.end());
  out.near_zero.erase(std::unique(out.near_zero.begin(), out.near_zero.end()), out.near_zero.end());
  return out;
}

DCReport assemble(int N, std::int64_t radius, const std::vector<double>& rho_grid, ShellScan scan, bool exact,
                  std::optional<std::vector<Frequency>> exact_resonances) {
  DCReport rep;
  rep.N = N;
  rep.radius = radius;
  rep.rho_grid = rho_grid;
  rep.exact = exact;
  rep.kernel = std::string(kernels::to_string(kernels::active_isa()));
  rep.shells = std::move(scan.shells);
  if (exact_resonances) {
    rep.resonances = std::move(*exact_resonances);
    // Exact zeros override float round-off in the shell table.
    for (const auto& xi : rep.resonances) {
      std::int64_t r = 0;
      for (auto x : xi) r = std::max<std::int64_t>(r, x < 0 ? -x : x);
      auto& shell = rep.shells[r - 1];
      if (shell.value > 0.0 || shell.argmin.empty()) {
        shell.value = 0.0;
        shell.argmin = xi;
        double e = 0.0;
        for (auto x : xi) e += static_cast<double>(x) * static_cast<double>(x);
        shell.argmin_norm = std::sqrt(e);
      }
    }
  } else {
    rep.resonances = std::move(scan.near_zero);
    rep.resonances_suspect = !rep.resonances.empty();
  }

  // Fit log m ~ log C - rho log(1 + r) on the running minimum of the shell minima.
  std::vector<double> xs, ys;
  double env = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.shells) {
    env = std::min(env, s.value);
    if (env > 0.0) {
      xs.push_back(std::log1p(static_cast<double>(s.r)));
      ys.push_back(std::log(env));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    rep.fit_rho = std::max(0.0, -slope);
    rep.fit_C = std::exp(my - slope * mx);
  }

  const auto split = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(radius))));
  for (double rho : rho_grid) {
    RhoEvidence ev;
    ev.rho = rho;
    double inner = std::numeric_limits<double>::infinity();
    double outer = std::numeric_limits<double>::infinity();
    for (const auto& s : rep.shells) {
      double g = s.value * std::pow(1.0 + s.argmin_norm, rho);
      (s.r <= split ? inner : outer) = std::min(s.r <= split ? inner : outer, g);
    }
    bool has_outer = radius > split;
    ev.inner_min = inner;
    ev.outer_min = has_outer ? outer : 0.0;
    ev.margin = std::min(inner, has_outer ? outer : inner);
    ev.holds = has_outer && ev.margin > 0.0 && ev.outer_min >= 0.5 * ev.inner_min;
    if (ev.holds && (!rep.best_rho || rho < *rep.best_rho)) rep.best_rho = rho;
    rep.evidence.push_back(ev);
  }

  if (!rep.resonances.empty())
    rep.verdict = Verdict::resonant;
  else if (rep.best_rho)
    rep.verdict = Verdict::evidence_holds;
  else
    rep.verdict = Verdict::evidence_fails;
  return rep;
}

}  // namespace detail

}  // namespace crinv::torus
