#pragma once

#include <cstdint>
#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "crinv/exterior.hpp"
#include "crinv/fourier.hpp"

namespace testing {

inline std::uint64_t seed() {
  const char* env = std::getenv("CR_INVARIANTS_SEED");
  return env && *env ? std::stoull(env) : 20261014ULL;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(seed());
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline crinv::GaussianRational small_gaussian(int bound = 5) {
  return {static_cast<long>(uniform(-bound, bound)), static_cast<long>(uniform(-bound, bound))};
}

/// Random strictly increasing subset of 1..n of the given size.
inline std::vector<int> random_subset(int n, int size) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng());
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

template <class S, class Gen>
crinv::exterior::AltForm<S> random_form(int q, int n, int terms, Gen coeff) {
  crinv::exterior::AltForm<S> f(q, n);
  for (int t = 0; t < terms; ++t) {
    auto J = random_subset(n, q);
    f.add(crinv::exterior::MultiIndex(J, n), coeff());
  }
  return f;
}

/// Sign of the permutation sorting v, by counting adjacent swaps; 0 on repeats.
inline int bubble_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return 0;
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return 0;
  return sign;
}

/// L_j = d_j + i d_{n+j} + c_j d_N on T^N, N = 2n + 1; valid for any c.
inline crinv::torus::TorusStructure<crinv::GaussianRational> random_exact_structure(int n) {
  using G = crinv::GaussianRational;
  const int N = 2 * n + 1;
  crinv::linalg::Mat<G> rows(n, std::vector<G>(N));
  for (int j = 0; j < n; ++j) {
    rows[j][j] = G(1);
    rows[j][n + j] = G(0L, 1L);
    rows[j][N - 1] = G(crinv::Rational(uniform(-9, 9), uniform(1, 7)), crinv::Rational(uniform(-9, 9), uniform(1, 7)));
  }
  return {N, n, rows};
}

/// Dense random complex rows; redrawn until they form a structure.
inline crinv::torus::TorusStructure<crinv::Complex64> random_float_structure(int n) {
  const int N = 2 * n + 1;
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  while (true) {
    crinv::linalg::Mat<crinv::Complex64> rows(n, std::vector<crinv::Complex64>(N));
    for (auto& row : rows)
      for (auto& x : row) x = {d(rng()), d(rng())};
    try {
      return {N, n, rows};
    } catch (const crinv::torus::InvalidStructure&) {
    }
  }
}

/// d_1 + phi d_2 + i d_3 style rows with sqrt 5 entries on T^N.
inline crinv::torus::TorusStructure<crinv::SurdScalar> random_surd_structure(int n) {
  using G = crinv::GaussianRational;
  using Sd = crinv::SurdScalar;
  const int N = 2 * n + 1;
  crinv::linalg::Mat<Sd> rows(n, std::vector<Sd>(N));
  for (int j = 0; j < n; ++j) {
    rows[j][j] = Sd(G(1));
    rows[j][n + j] = Sd(G(0L, 1L));
    rows[j][N - 1] = Sd(G(crinv::Rational(uniform(-5, 5), 2)), G(crinv::Rational(uniform(1, 5), uniform(1, 3))), 5);
  }
  return {N, n, rows};
}

inline crinv::torus::Frequency random_frequency(int N, int bound) {
  crinv::torus::Frequency xi(N);
  for (auto& v : xi) v = uniform(-bound, bound);
  return xi;
}

/// Up to `frequencies` random support points, each with a random coefficient form.
template <class S, class Gen>
crinv::fourier::FourierForm<S> random_fourier(std::shared_ptr<const crinv::torus::TorusStructure<S>> s, int q,
                                              int frequencies, Gen coeff) {
  crinv::fourier::FourierForm<S> u(s, q);
  for (int k = 0; k < frequencies; ++k)
    u.add(random_frequency(s->N(), 6), random_form<S>(q, s->n(), uniform(1, 3), coeff));
  return u;
}

inline crinv::Complex64 random_complex() {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {d(rng()), d(rng())};
}

}  // namespace testing
