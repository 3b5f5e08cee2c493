#include <doctest.h>

#include <cmath>

#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "generators.hpp"

using namespace dbscale;
using dbscale::testing::Gen;
using dbscale::testing::grid9;

namespace {

const DbSpace kPw = DbSpace::paley_wiener(kPi);
const DbSpace kSh = DbSpace::shifted_paley_wiener(kPi);

double max_diff(const DbSpace& sp, const EntireFn& f, const EntireFn& g, const std::vector<Cplx>& grid) {
  double m = 0.0;
  for (const Cplx z : grid) m = std::max(m, std::abs(fn_eval(f, sp, z) - fn_eval(g, sp, z)));
  return m;
}

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("resolvent of a kernel at z = 0") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    const Cplx got = fn_eval(resolvent_apply(ext, kI, EntireFn::kernel(0.0)), kPw, 0.0);
    const Cplx want = kI * (1.0 - std::tanh(kPi) / kPi);
    CHECK(std::abs(got - want) < 1e-13);
    CHECK(got.imag() == doctest::Approx(0.682876).epsilon(1e-6));
  }

  TEST_CASE("S_gamma inverts the resolvent shift") {
    Gen g(31);
    for (const DbSpace& sp : {kPw, kSh}) {
      for (int k = 0; k < 10; ++k) {
        const ExtensionHandle ext(sp, g.real(0.0, kPi));
        const Cplx w = g.nonreal();
        const EntireFn f = g.b_function();
        const GammaDomainElement el{f, w};
        const EntireFn lhs = apply_S_gamma(ext, el);
        const EntireFn rhs = w * domain_function(ext, el) + f;
        CHECK(max_diff(sp, lhs, rhs, grid9()) < 1e-10);
      }
    }
  }

  TEST_CASE("eigenfunctions") {
    const ExtensionHandle ext0(kPw, 0.0);
    const EntireFn u = eigenfunction(ext0, 1.0);
    CHECK(std::abs(fn_eval(u, kPw, 0.5) + 2.0) < 1e-13);
    CHECK(std::abs(fn_eval(u, kPw, 0.0)) < 1e-13);

    for (const DbSpace& sp : {kPw, kSh}) {
      for (const double gam : {0.0, 0.7, kPi / 2.0, 2.4}) {
        const ExtensionHandle ext(sp, gam);
        for (const double mu : find_zeros(sp, gam, {-2.0, 2.0})) {
          const GammaDomainElement el = eigen_domain_element(ext, mu);
          const EntireFn su = apply_S_gamma(ext, el);
          CHECK(max_diff(sp, su, mu * eigenfunction(ext, mu), grid9()) < 1e-9);
          CHECK(max_diff(sp, domain_function(ext, el), eigenfunction(ext, mu), grid9()) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("first resolvent identity") {
    Gen g(37);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, kPi / 3.0);
      for (int k = 0; k < 5; ++k) {
        const Cplx v = g.nonreal(), w = g.nonreal();
        const EntireFn f = g.b_function();
        const EntireFn lhs = resolvent_apply(ext, w, f) - resolvent_apply(ext, v, f);
        const EntireFn rhs = (w - v) * resolvent_apply(ext, w, resolvent_apply(ext, v, f));
        CHECK(max_diff(sp, lhs, rhs, grid9()) < 1e-9);
      }
    }
  }

  TEST_CASE("Cayley transform") {
    Gen g(41);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, 1.1);
      for (int k = 0; k < 5; ++k) {
        const Cplx w = g.nonreal();
        const EntireFn f = g.b_function();
        const EntireFn back = cayley_apply(ext, w, cayley_apply(ext, std::conj(w), f));
        CHECK(max_diff(sp, back, f, grid9()) < 1e-10);
        CHECK(norm_B(sp, cayley_apply(ext, w, f)) == doctest::Approx(norm_B(sp, f)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("identity checks") {
    const ExtensionHandle ext(kPw, 0.0);
    std::vector<Cplx> grid;
    for (int j = 0; j <= 8; ++j) {
      for (const double y : {0.0, 0.5, -0.5}) grid.emplace_back(-2.0 + 0.5 * j, y);
    }
    CHECK(quotient_kernel_identity_check(ext, kI, 2.0 * kI, grid).max_abs <= 1e-10);
    Gen g(43);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle e(sp, g.real(0.0, kPi));
      for (int k = 0; k < 5; ++k) {
        const Cplx v = g.nonreal(), w = g.nonreal();
        CHECK(symmetry_check(e, v, w, grid9()).scaled <= 1e-10);
        CHECK(cayley_kernel_check(e, w, grid9()).scaled <= 1e-10);
        CHECK(cayley_on_kernel_check(e, v, g.point(), grid9()).scaled <= 1e-10);
      }
    }
  }

  TEST_CASE("dom(S) sits inside every dom(S_gamma)") {
    Gen g(47);
    for (const DbSpace& sp : {kPw, kSh}) {
      const Cplx kii = kernel(sp, kI, kI);
      for (int k = 0; k < 5; ++k) {
        const EntireFn f = g.b_function();
        const EntireFn f0 = f - (fn_eval(f, sp, kI) / kii) * EntireFn::kernel(kI);
        for (const double gam : {0.0, 0.9, kPi / 2.0}) {
          const ExtensionHandle ext(sp, gam);
          const GammaDomainElement h{f0, kI};
          const EntireFn zh = EntireFn::mul_affine(0.0, domain_function(ext, h));
          CHECK(max_diff(sp, apply_S_gamma(ext, h), zh, grid9()) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("adjoint domain") {
    Gen g(53);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, kPi / 2.0);
      for (int k = 0; k < 5; ++k) {
        const StarDomainElement el{g.b_function(), g.point(1.0, 1.0)};
        // b = 0 reduces S* to S_gamma_ref.
        const StarDomainElement plain{el.h_generator, 0.0};
        CHECK(max_diff(sp, star_apply(sp, plain), apply_S_gamma(ext, {el.h_generator, kI}), grid9()) < 1e-10);

        const EntireFn F = star_function(sp, el);
        const StarDomainElement back = star_decompose(sp, F, star_apply(sp, el));
        CHECK(std::abs(back.b - el.b) < 1e-9);
        CHECK(max_diff(sp, star_function(sp, back), F, grid9()) < 1e-9);

        const DeficiencyDecomposition d = deficiency_decompose(sp, el);
        const EntireFn sum = d.h + d.a_plus * EntireFn::kernel(-kI) + d.a_minus * EntireFn::kernel(kI);
        CHECK(max_diff(sp, sum, F, grid9()) < 1e-9);
      }
      // S* k(., w) = conj(w) k(., w).
      const Cplx w(0.4, -0.8);
      const StarDomainElement kw = star_from_kernel(sp, w);
      CHECK(max_diff(sp, star_apply(sp, kw), std::conj(w) * EntireFn::kernel(w), grid9()) < 1e-10);
    }
  }

  TEST_CASE("sharp of a domain element") {
    Gen g(59);
    const ExtensionHandle ext(kSh, 0.8);
    for (int k = 0; k < 5; ++k) {
      const GammaDomainElement el{g.b_function(), g.nonreal()};
      const EntireFn f = domain_function(ext, el);
      const EntireFn fs = domain_function(ext, sharp(el));
      for (const Cplx z : grid9()) CHECK(std::abs(fn_eval(fs, kSh, z) - std::conj(fn_eval(f, kSh, std::conj(z)))) < 1e-10);
      const GammaDomainElement moved = regenerate_at(ext, el, Cplx(0.2, -0.9));
      CHECK(max_diff(kSh, domain_function(ext, moved), f, grid9()) < 1e-10);
    }
  }

  TEST_CASE("spectral point") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    try {
      resolvent_apply(ext, 0.5, EntireFn::kernel(0.0));
      FAIL("expected SpectralPoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpectralPoint);
    }
    CHECK_NOTHROW(resolvent_apply(ext, 0.3, EntireFn::kernel(0.0)));
  }
}
