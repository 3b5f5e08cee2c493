#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "generators.hpp"

using namespace dbscale;
using dbscale::testing::Gen;

namespace {

std::vector<EntireFn> dictionary(const DbSpace& space) {
  const ExtensionHandle ext(space, kPi / 4.0);
  std::vector<EntireFn> fs;
  for (const Cplx w : {Cplx(0.0), Cplx(0.5), Cplx(-1.0), kI, -kI, Cplx(1.0, 1.0), Cplx(-0.5, 0.7)}) {
    fs.push_back(EntireFn::kernel(w));
  }
  fs.push_back(resolvent_apply(ext, kI, EntireFn::kernel(0.3)));
  fs.push_back(resolvent_apply(ext, -kI, EntireFn::kernel(Cplx(1.0, -1.0))));
  fs.push_back(cayley_apply(ext, Cplx(0.2, 0.6), EntireFn::kernel(-0.4)));
  return fs;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IllConditioned;  // sentinel: nothing was thrown
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("reproducing kernel examples") {
    const DbSpace pw = DbSpace::paley_wiener(kPi);
    CHECK(std::abs(inner_B(pw, EntireFn::kernel(0.0), EntireFn::kernel(0.0)) - 1.0) < 1e-10);
    CHECK(std::abs(inner_B(pw, EntireFn::kernel(0.0), EntireFn::kernel(-kI)) - std::sinh(kPi) / kPi) < 1e-9);
    CHECK(norm_B(pw, EntireFn::kernel(kI)) == doctest::Approx(std::sqrt(std::sinh(2 * kPi) / (2 * kPi))).epsilon(1e-10));
  }

  TEST_CASE("reproducing property on a dictionary, both engines") {
    Gen g(23);
    for (const DbSpace& base : {DbSpace::paley_wiener(kPi), DbSpace::shifted_paley_wiener(1.0)}) {
      for (const IpEngine& eng : {IpEngine::sampling(), IpEngine::quadrature()}) {
        const DbSpace sp = base.with_engine(eng);
        const auto fs = dictionary(sp);
        for (int k = 0; k < 3; ++k) {
          const Cplx w = g.point();
          const auto row = inner_B_table(sp, {EntireFn::kernel(w)}, fs);
          for (std::size_t j = 0; j < fs.size(); ++j) {
            const Cplx fw = fn_eval(fs[j], sp, w);
            CHECK(std::abs(row[j] - fw) <= 1e-6 * (1.0 + std::abs(fw)));
          }
        }
      }
    }
  }

  TEST_CASE("sampling and quadrature agree") {
    for (const DbSpace& base : {DbSpace::paley_wiener(kPi), DbSpace::shifted_paley_wiener(kPi)}) {
      const auto fs = dictionary(base);
      const std::vector<EntireFn> left(fs.begin(), fs.begin() + 4);
      const std::vector<EntireFn> right(fs.begin() + 5, fs.end());
      const auto s = inner_B_table(base.with_engine(IpEngine::sampling()), left, right);
      const auto q = inner_B_table(base.with_engine(IpEngine::quadrature()), left, right);
      REQUIRE(s.size() == 20);
      for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(s[k] - q[k]) <= 1e-6 * (1.0 + std::abs(s[k])));
    }
  }

  TEST_CASE("inner product is Hermitian and conjugate-linear in the first slot") {
    const DbSpace sp = DbSpace::shifted_paley_wiener(kPi);
    const auto fs = dictionary(sp);
    const Cplx c(0.3, -1.2);
    for (std::size_t j = 0; j + 1 < fs.size(); j += 3) {
      const Cplx ab = inner_B(sp, fs[j], fs[j + 1]);
      CHECK(std::abs(ab - std::conj(inner_B(sp, fs[j + 1], fs[j]))) < 1e-10 * (1.0 + std::abs(ab)));
      CHECK(std::abs(inner_B(sp, c * fs[j], fs[j + 1]) - std::conj(c) * ab) < 1e-10 * (1.0 + std::abs(ab)));
    }
  }

  TEST_CASE("Parseval on the zeros of s_0") {
    const double a = kPi;
    const DbSpace pw = DbSpace::paley_wiener(a);
    for (const EntireFn& f : {EntireFn::kernel(0.3), EntireFn::kernel(Cplx(0.2, 0.8)),
                              EntireFn::lin_comb({1.0, kI}, {EntireFn::kernel(-0.6), EntireFn::kernel(Cplx(1.0, -0.5))})}) {
      const long n_max = 2'000'000;
      double sum = 0.0;
      for (long n = -n_max; n <= n_max; ++n) sum += std::norm(fn_eval(f, pw, n * kPi / a));
      const double parseval = kPi / a * sum;
      const double norm_sq = std::pow(norm_B(pw, f), 2);
      CHECK(std::abs(parseval - norm_sq) <= 1e-6 * norm_sq);
    }
  }

  TEST_CASE("find_zeros examples") {
    const DbSpace pw = DbSpace::paley_wiener(kPi);
    const auto z0 = find_zeros(pw, 0.0, {-2.5, 2.5});
    REQUIRE(z0.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(z0[k] - (k - 2)) < 1e-12);
    const auto zh = find_zeros(pw, kPi / 2.0, {-2.2, 2.2});
    REQUIRE(zh.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(zh[k] - (k - 1.5)) < 1e-12);
  }

  TEST_CASE("zero residuals and interlacing") {
    Gen g(29);
    for (const DbSpace& sp : {DbSpace::paley_wiener(kPi), DbSpace::shifted_paley_wiener(1.0)}) {
      const RootWindow win{-6.0, 6.0};
      for (int k = 0; k < 6; ++k) {
        const double g1 = g.real(0.0, kPi);
        double g2 = g.real(0.0, kPi);
        if (std::abs(g2 - g1) < 0.05) g2 = std::fmod(g1 + 1.0, kPi);
        const auto x = find_zeros(sp, g1, win);
        const auto y = find_zeros(sp, g2, win);
        double smax = 0.0;
        for (double t = win.lo; t <= win.hi; t += 0.01) smax = std::max(smax, std::abs(s_gamma(sp, g1, t)));
        for (const double mu : x) CHECK(std::abs(s_gamma(sp, g1, mu)) <= 1e-9 * smax);
        // Between consecutive zeros of one family lies exactly one zero of the other.
        for (std::size_t j = 0; j + 1 < x.size(); ++j) {
          const auto inside = std::count_if(y.begin(), y.end(), [&](double v) { return v > x[j] && v < x[j + 1]; });
          CHECK(inside == 1);
        }
      }
    }
  }

  TEST_CASE("errors") {
    const DbSpace pw = DbSpace::paley_wiener(kPi);
    CHECK(code_of([&] { find_zeros(pw, 0.0, {1.0, -1.0}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { find_zeros(pw, 0.0, {-1.0, 1.0, 0.6}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { IpEngine::sampling(4).validate(); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { IpEngine::quadrature(16.0, 0.0).validate(); }) == ErrorCode::InvalidArgument);
    IpEngine strict = IpEngine::sampling(8, 1e-16);
    strict.max_doublings = 1;
    const DbSpace sp = pw.with_engine(strict);
    CHECK(code_of([&] { inner_B(sp, EntireFn::kernel(kI), EntireFn::kernel(Cplx(0.3, 1.2))); }) ==
          ErrorCode::NonConvergence);
  }
}
