#pragma once

#include <cstdint>
#include <random>

#include "ktrans/core.hpp"

namespace ktrans {

using Rng = std::mt19937_64;

inline double gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  return nd(rng);
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> ud(lo, hi);
  return ud(rng);
}

/// Standard Gaussian vector in F^n (independent real and imaginary parts for C).
inline CVec gaussian_vector(Rng& rng, int n, Field f) {
  CVec v(n);
  for (int i = 0; i < n; ++i) {
    const double re = gaussian(rng);
    const double im = f == Field::complex ? gaussian(rng) : 0.0;
    v(i) = cplx(re, im);
  }
  return v;
}

inline CMat gaussian_matrix(Rng& rng, int rows, int cols, Field f) {
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) = gaussian_vector(rng, rows, f);
  return m;
}

/// Uniformly distributed (Haar) orthonormal n-frame in F^dim.
inline Frame random_frame(Rng& rng, int dim, int n, Field f) {
  for (;;) {
    try {
      return orthonormalize(gaussian_matrix(rng, dim, n, f), f);
    } catch (const Error&) {
    }
  }
}

/// Mixes a base seed with a stream index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ktrans
