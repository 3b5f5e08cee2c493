#include <doctest.h>

#include <cmath>

#include "dbscale/fncore.hpp"
#include "generators.hpp"

using namespace dbscale;
using dbscale::testing::Gen;

namespace {

// k(z, w) built by hand from e and e# = conj(e(conj z)).
Cplx kernel_oracle(double a, bool shifted, Cplx z, Cplx w) {
  auto e = [&](Cplx x) { return (shifted ? x + kI : Cplx(1.0)) * std::exp(-kI * a * x); };
  auto es = [&](Cplx x) { return std::conj(e(std::conj(x))); };
  const Cplx wb = std::conj(w);
  return (e(z) * std::conj(e(w)) - es(z) * std::conj(es(w))) / (2.0 * kPi * kI * (wb - z));
}

const DbSpace kPw = DbSpace::paley_wiener(kPi);

}  // namespace

TEST_SUITE("fncore") {
  TEST_CASE("s atoms on Paley-Wiener") {
    CHECK(std::abs(fn_eval(EntireFn::s(0.0), kPw, 0.5) - 1.0) < 1e-14);
    CHECK(std::abs(fn_eval(EntireFn::s(kPi / 2.0), kPw, 0.0) + 1.0) < 1e-14);
    CHECK(std::abs(s_gamma(kPw, 0.0, kI) - kI * std::sinh(kPi)) < 1e-12);
    CHECK(std::abs(s_gamma(kPw, kPi / 2.0, kI) + std::cosh(kPi)) < 1e-12);
    Gen g(11);
    for (int k = 0; k < 20; ++k) {
      const Cplx z = g.point();
      const double gam = g.real(-kPi, kPi);
      CHECK(std::abs(s_gamma(kPw, gam + kPi, z) + s_gamma(kPw, gam, z)) < 1e-13 * (1.0 + std::abs(s_gamma(kPw, gam, z))));
    }
  }

  TEST_CASE("linear combination cancels") {
    const EntireFn f = EntireFn::kernel(Cplx(0.3, 0.2));
    const EntireFn zero = EntireFn::lin_comb({1.0, -1.0}, {f, f});
    CHECK(std::abs(fn_eval(zero, kPw, Cplx(0.7, -0.4))) == doctest::Approx(0.0));
  }

  TEST_CASE("Hermite-Biehler sweeps") {
    const auto grid = standard_hb_grid();
    CHECK(grid.size() == 400);
    const auto pw = hb_verify(HbRealization::paley_wiener(kPi), grid);
    CHECK(pw.holds);
    CHECK(pw.worst_margin > 0.0);
    const auto sh = hb_verify(HbRealization::shifted(HbRealization::paley_wiener(1.0)), grid);
    CHECK(sh.holds);
    CHECK(sh.worst_margin > 0.0);

    Gen g(3);
    std::vector<Cplx> pts;
    for (int k = 0; k < 50; ++k) pts.push_back(g.upper());
    CHECK(hb_verify(HbRealization::paley_wiener(1.0), pts).holds);

    CHECK_THROWS_AS(hb_verify(HbRealization::paley_wiener(1.0), std::vector<Cplx>{}), Error);
    try {
      hb_verify(HbRealization::paley_wiener(1.0), std::vector<Cplx>{});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptySampleSet);
    }
  }

  TEST_CASE("kernel closed-form values") {
    CHECK(kernel(kPw, 0.25, 0.0).real() == doctest::Approx(std::sin(0.25 * kPi) / (0.25 * kPi)).epsilon(1e-13));
    CHECK(kernel(kPw, 0.25, 0.0).real() == doctest::Approx(0.9003163).epsilon(1e-7));
    CHECK(std::abs(kernel(kPw, 0.7, 0.7) - 1.0) < 1e-13);
    CHECK(std::abs(kernel(kPw, kI, 0.0) - std::sinh(kPi) / kPi) < 1e-12);
    CHECK(std::abs(kernel(kPw, kI, kI) - std::sinh(2.0 * kPi) / (2.0 * kPi)) < 1e-10);
  }

  TEST_CASE("kernel matches the (e, e#) oracle on both realizations") {
    Gen g(5);
    for (const bool shifted : {false, true}) {
      for (const double a : {1.0, kPi}) {
        const DbSpace sp = shifted ? DbSpace::shifted_paley_wiener(a) : DbSpace::paley_wiener(a);
        for (int k = 0; k < 50; ++k) {
          const Cplx z = g.point(), w = g.point();
          if (std::abs(z - std::conj(w)) < 1e-3) continue;
          CHECK(dbscale::testing::rel_err(kernel(sp, z, w), kernel_oracle(a, shifted, z, w)) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("kernel through the s-family") {
    CHECK(kernel_via_s(kPw, 0.0, 0.25, 0.0).real() == doctest::Approx(0.9003163).epsilon(1e-7));
    CHECK(std::abs(kernel_via_s(kPw, 0.4, 1.3, 1.3) - 1.0) < 1e-12);
    Gen g(7);
    for (const DbSpace& sp : {kPw, DbSpace::shifted_paley_wiener(1.0)}) {
      for (int k = 0; k < 100; ++k) {
        const Cplx z = g.point(), w = g.point();
        const double g0 = g.real(-kPi, kPi);
        const Cplx ref = kernel(sp, z, w);
        CHECK(std::abs(kernel_via_s(sp, g0, z, w) - ref) <= 1e-10 * (1.0 + std::abs(ref)));
        CHECK(std::abs(kernel_via_s(sp, g0 + kPi / 2.0, z, w) - kernel_via_s(sp, g0, z, w)) <=
              1e-10 * (1.0 + std::abs(ref)));
      }
    }
  }

  TEST_CASE("s_gamma rotation property") {
    Gen g(13);
    const DbSpace sh = DbSpace::shifted_paley_wiener(kPi);
    for (const DbSpace& sp : {kPw, sh}) {
      for (int k = 0; k < 100; ++k) {
        const Cplx z = g.point(3.0, 2.0);
        const double gam = g.real(-kPi, 2.0 * kPi), g0 = g.real(-kPi, kPi);
        const Cplx lhs = s_gamma(sp, gam, z);
        const Cplx rhs = std::cos(gam - g0) * s_gamma(sp, g0, z) + std::sin(gam - g0) * s_gamma(sp, g0 + kPi / 2.0, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      }
    }
  }

  TEST_CASE("kernel symmetries") {
    Gen g(17);
    const DbSpace sh = DbSpace::shifted_paley_wiener(1.0);
    for (const DbSpace& sp : {kPw, sh}) {
      for (int k = 0; k < 100; ++k) {
        const Cplx z = g.point(), w = g.point();
        const Cplx kzw = kernel(sp, z, w);
        CHECK(std::abs(std::conj(kernel(sp, std::conj(z), w)) - kernel(sp, z, std::conj(w))) <= 1e-12 * (1.0 + std::abs(kzw)));
        CHECK(std::abs(kzw - std::conj(kernel(sp, w, z))) <= 1e-12 * (1.0 + std::abs(kzw)));
      }
    }
  }

  TEST_CASE("sharp of a kernel atom") {
    Gen g(19);
    for (int k = 0; k < 20; ++k) {
      const Cplx z = g.point(), w = g.point();
      const Cplx got = fn_eval(sharp(EntireFn::kernel(w)), kPw, z);
      CHECK(std::abs(got - kernel(kPw, z, std::conj(w))) < 1e-12 * (1.0 + std::abs(got)));
    }
  }

  TEST_CASE("continuity across the removable switch") {
    const DbSpace sh = DbSpace::shifted_paley_wiener(kPi);
    for (const DbSpace& sp : {kPw, sh}) {
      const double d = sp.removable_tol();
      const double eps = d / 10.0;
      const Cplx w(0.4, 0.3);
      for (const double r : {d - eps, d + eps}) {
        for (const double angle : {0.0, 1.0, 2.5, 4.0}) {
          const Cplx z = std::conj(w) + std::polar(r, angle);
          CHECK(std::abs(kernel(sp, z, w) - kernel(sp, z + eps, w)) <= 1e-6);
        }
      }
    }
  }

  TEST_CASE("derivatives and Taylor coefficients") {
    const Cplx z(0.3, 0.4);
    CHECK(std::abs(fn_derivative(EntireFn::s(0.0), kPw, z) - kPi * std::cos(kPi * z)) < 1e-10);
    std::array<Cplx, 3> t{};
    fn_taylor(EntireFn::s(kPi / 2.0), kPw, z, t);
    CHECK(std::abs(t[0] + std::cos(kPi * z)) < 1e-12);
    CHECK(std::abs(t[1] - kPi * std::sin(kPi * z)) < 1e-10);
    CHECK(std::abs(t[2] - kPi * kPi * std::cos(kPi * z) / 2.0) < 1e-9);

    const EntireFn u = EntireFn::user("z^3", [](Cplx x) { return x * x * x; });
    CHECK(std::abs(fn_derivative(u, kPw, z) - 3.0 * z * z) < 1e-10);
  }

  TEST_CASE("errors") {
    try {
      fn_eval(EntireFn::e(), kPw, Cplx(0.0, 50.0));
      FAIL("expected OverflowGuard");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OverflowGuard);
    }
    // (k(., 0) - 2 s_0) / z is not entire: k(0, 0) = 1 while s_0(0) = 0.
    try {
      EntireFn::diff_quotient(kPw, EntireFn::kernel(0.0), 2.0, EntireFn::s(0.0), 0.0);
      FAIL("expected RemovabilityViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RemovabilityViolation);
    }
    const EntireFn ok = EntireFn::diff_quotient(kPw, EntireFn::s(0.0), 0.0, EntireFn(), 0.0);
    CHECK(std::abs(fn_eval(ok, kPw, 0.0) - kPi) < 1e-9);
    CHECK_THROWS_AS(DbSpace::paley_wiener(-1.0), Error);
  }
}
