#pragma once

// Small seeded generators for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "dbscale/fncore.hpp"

namespace dbscale::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Cplx point(double re = 2.0, double im = 1.5) { return {real(-re, re), real(-im, im)}; }
  /// |Im| in [0.2, im], either half-plane.
  Cplx nonreal(double re = 2.0, double im = 1.5) {
    const double y = real(0.2, im);
    return {real(-re, re), integer(0, 1) == 0 ? y : -y};
  }
  Cplx upper(double re = 3.0, double im = 3.0) { return {real(-re, re), real(0.05, im)}; }

  /// Combination of 1-3 kernels at random points.
  EntireFn b_function() {
    const int n = integer(1, 3);
    std::vector<Cplx> c;
    std::vector<EntireFn> t;
    for (int k = 0; k < n; ++k) {
      c.push_back(point(1.0, 1.0));
      t.push_back(EntireFn::kernel(point()));
    }
    return EntireFn::lin_comb(std::move(c), std::move(t));
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Cplx> grid9() {
  std::vector<Cplx> g;
  for (int j = 0; j < 9; ++j) g.emplace_back(-2.0 + 0.5 * j, j % 3 == 0 ? 0.0 : (j % 3 == 1 ? 0.3 : -0.3));
  return g;
}

inline double rel_err(Cplx got, Cplx want) { return std::abs(got - want) / (1.0 + std::abs(want)); }

}  // namespace dbscale::testing
