#include <doctest.h>

#include <cmath>

#include "dbscale/numerics.hpp"
#include "dbscale/scale.hpp"
#include "generators.hpp"

using namespace dbscale;
using dbscale::testing::Gen;
using dbscale::testing::grid9;

namespace {

const DbSpace kPw = DbSpace::paley_wiener(kPi);
const DbSpace kSh = DbSpace::shifted_paley_wiener(kPi);
const double kKii = std::sinh(2.0 * kPi) / (2.0 * kPi);

}  // namespace

TEST_SUITE("scale") {
  TEST_CASE("+2 norm examples") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    CHECK(norm_plus2(ext, {EntireFn::kernel(0.0), kI}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm_plus2(ext, {EntireFn(), kI}) == 0.0);
    CHECK(norm_plus2(ext, {EntireFn::kernel(-kI), kI}) == doctest::Approx(std::sqrt(kKii)).epsilon(1e-10));
    CHECK(norm_plus2(ext, {EntireFn::kernel(-kI), kI}) == doctest::Approx(6.5279).epsilon(1e-4));
  }

  TEST_CASE("+2 norm equals the graph norm") {
    Gen g(61);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, 0.6);
      for (int k = 0; k < 4; ++k) {
        const GammaDomainElement el{g.b_function(), g.nonreal()};
        const double graph = std::sqrt(std::pow(norm_B(sp, domain_function(ext, el)), 2) +
                                       std::pow(norm_B(sp, apply_S_gamma(ext, el)), 2));
        CHECK(norm_plus2(ext, el) == doctest::Approx(graph).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("+F inner product") {
    const StarDomainElement dir{EntireFn(), 1.0};
    CHECK(inner_plusF(kPw, dir, dir).real() == doctest::Approx(kKii).epsilon(1e-12));
    CHECK(inner_plusF(kPw, dir, dir).real() == doctest::Approx(42.6129).epsilon(1e-5));
    Gen g(67);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, kPi / 2.0);
      for (int k = 0; k < 3; ++k) {
        const EntireFn h = g.b_function();
        const StarDomainElement el{h, 0.0};
        CHECK(norm_plusF(sp, el) == doctest::Approx(norm_plus2(ext, {h, kI})).epsilon(1e-12));
        const StarDomainElement mixed{h, g.point(1.0, 1.0)};
        CHECK(norm_plusF(sp, mixed) == doctest::Approx(std::sqrt(inner_plusF_graph(sp, mixed, mixed).real())).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("k+2 reproduces on dom(S_gamma)") {
    Gen g(71);
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, 1.3);
      for (int k = 0; k < 10; ++k) {
        const Cplx w = g.point();
        const GammaDomainElement el{g.b_function(), g.nonreal()};
        const Cplx want = fn_eval(domain_function(ext, el), sp, w);
        CHECK(std::abs(inner_plus2(ext, kernel_plus2(ext, w), el) - want) <= 1e-8 * (1.0 + std::abs(want)));
      }
    }
  }

  TEST_CASE("-2 pairing examples") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    const GammaDomainElement g0{EntireFn::kernel(0.0), kI};
    const DualFunctional s0{assoc_decompose(kPw, EntireFn::s(0.0)), DualLevel::BMinus2, kPi / 2.0, true};
    CHECK(pairing_minus2(ext, s0, g0).real() == doctest::Approx(std::tanh(kPi)).epsilon(1e-12));
    DualFunctional generic = s0;
    generic.is_s0 = false;
    CHECK(std::abs(pairing_minus2(ext, generic, g0) - std::tanh(kPi)) < 1e-10);

    Gen g(73);
    for (int k = 0; k < 5; ++k) {
      const GammaDomainElement el{g.b_function(), g.nonreal()};
      const EntireFn f = domain_function(ext, el);
      CHECK(std::abs(pairing_minus2(ext, EntireFn::kernel(0.0), el) - fn_eval(f, kPw, 0.0)) < 1e-9);
      CHECK(std::abs(pairing_minus2(ext, EntireFn::kernel(0.5), el) - fn_eval(f, kPw, 0.5)) < 1e-9);
      CHECK(std::abs(pairing_minus2(ext, EntireFn::kernel(0.3), el) - fn_eval(f, kPw, 0.3)) < 1e-8);
    }

    const DualFunctional other{assoc_decompose(kPw, EntireFn::s(0.0)), DualLevel::BMinus2, kPi / 3.0};
    try {
      pairing_minus2(ext, other, g0);
      FAIL("expected LevelMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LevelMismatch);
    }
    try {
      pairing_F(kPw, s0, star_from_kernel(kPw, 0.0));
      FAIL("expected LevelMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LevelMismatch);
    }
  }

  TEST_CASE("F pairing examples") {
    const StarDomainElement k_minus_i = star_from_kernel(kPw, -kI);
    CHECK(std::abs(pairing_F(kPw, AssocFunction::from_B(EntireFn::kernel(0.0)), k_minus_i) - std::sinh(kPi) / kPi) < 1e-9);
    const AssocFunction s0 = assoc_decompose(kPw, EntireFn::s(0.0));
    CHECK(std::abs(pairing_F(kPw, s0, k_minus_i) - kI * std::sinh(kPi)) < 1e-8);

    Gen g(79);
    for (const DbSpace& sp : {kPw, kSh}) {
      for (int k = 0; k < 3; ++k) {
        const EntireFn f = g.b_function();
        const StarDomainElement el{g.b_function(), g.point(1.0, 1.0)};
        const Cplx want = inner_B(sp, f, star_function(sp, el));
        CHECK(std::abs(pairing_F(sp, AssocFunction::from_B(f), el) - want) <= 1e-8 * (1.0 + std::abs(want)));
      }
    }
  }

  TEST_CASE("associated functions") {
    Gen g(83);
    for (const DbSpace& sp : {kPw, kSh}) {
      for (const EntireFn& phi : {EntireFn::s(0.0), EntireFn::s(kPi / 4.0), EntireFn::mul_affine(0.0, EntireFn::kernel(0.0))}) {
        const AssocFunction a = assoc_decompose(sp, phi);
        for (int k = 0; k < 5; ++k) {
          const Cplx z = g.point();
          CHECK(std::abs(fn_eval(a.function(), sp, z) - fn_eval(phi, sp, z)) < 1e-10 * (1.0 + std::abs(fn_eval(phi, sp, z))));
        }
      }
    }
    std::vector<Cplx> grid;
    for (int j = 0; j <= 8; ++j) grid.emplace_back(-2.0 + 0.5 * j, 0.0);
    CHECK(assoc_roundtrip(kPw, {EntireFn::kernel(0.0), EntireFn()}, grid).max_abs <= 1e-7);
    CHECK(assoc_roundtrip(kPw, AssocFunction::from_B(EntireFn::kernel(Cplx(0.4, 0.2))), grid).max_abs <= 1e-9);
    CHECK(assoc_roundtrip(kSh, assoc_decompose(kSh, EntireFn::s(kPi / 4.0)), grid9()).max_abs <= 1e-7);
  }

  TEST_CASE("pairings agree and s_gamma annihilates dom(S_gamma)") {
    for (const DbSpace& sp : {kPw, kSh}) {
      const ExtensionHandle ext(sp, kPi / 4.0);
      const auto dict = default_gamma_dictionary(ext);
      std::vector<StarDomainElement> stars;
      for (std::size_t k = 0; k < 6; ++k) stars.push_back(to_star(ext, dict[k]));
      const AssocFunction phi{EntireFn::kernel(kI), EntireFn::kernel(0.3)};
      const auto viaF = pairing_F_many(sp, phi, stars);
      for (std::size_t k = 0; k < stars.size(); ++k) {
        CHECK(std::abs(pairing_minus2(ext, DualFunctional{phi}, dict[k]) - viaF[k]) <= 1e-8 * (1.0 + std::abs(viaF[k])));
      }
      const AssocFunction sg = assoc_decompose(sp, EntireFn::s(ext.gamma()));
      for (const Cplx p : pairing_F_many(sp, sg, stars)) CHECK(std::abs(p) <= 1e-8);
      for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(pairing_minus2(ext, DualFunctional{sg}, dict[k])) <= 1e-8);
    }
  }

  TEST_CASE("-F lower bounds") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    const auto stars = default_star_dictionary(ext);
    CHECK(minusF_lower(kPw, AssocFunction::from_B(EntireFn()), stars) == 0.0);
    CHECK_THROWS_AS(minusF_lower(kPw, AssocFunction::from_B(EntireFn::kernel(0.0)), {}), Error);
    try {
      minusF_lower(kPw, AssocFunction::from_B(EntireFn::kernel(0.0)), {});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyDictionary);
    }

    const AssocFunction k0 = AssocFunction::from_B(EntireFn::kernel(0.0));
    const StarDomainElement single = stars[3];
    CHECK(minusF_lower(kPw, k0, std::span(&single, 1)) ==
          doctest::Approx(std::abs(pairing_F(kPw, k0, single)) / norm_plusF(kPw, single)).epsilon(1e-12));

    double prev = 0.0;
    for (std::size_t n = 3; n <= stars.size(); n += 8) {
      const double v = minusF_lower(kPw, k0, std::span(stars).first(n));
      CHECK(v >= prev - 1e-12);
      CHECK(v <= 1.0 + 1e-9);
      prev = v;
    }
  }

  TEST_CASE("scale chain and conjugation isometries") {
    const ExtensionHandle ext(kSh, kPi / 4.0);
    const auto gd = default_gamma_dictionary(ext);
    const auto sd = default_star_dictionary(ext);
    const ScaleNorms n = scale_norms(ext, {EntireFn::kernel(Cplx(0.5, -0.5)), Cplx(0.3, 0.9)}, gd, sd);
    CHECK(n.minus2_lower <= n.minusF_lower + 1e-8);
    CHECK(n.minusF_lower <= n.plain + 1e-8);
    CHECK(n.plain <= n.plusF + 1e-8);
    CHECK(n.plusF == doctest::Approx(n.plus2).epsilon(1e-9));

    const SharpIsometryReport r = sharp_isometry_checks(ExtensionHandle(kPw, kPi / 3.0));
    CHECK(r.checked > 0);
    CHECK(r.plus2_rel <= 1e-8);
    CHECK(r.plusF_rel <= 1e-8);
    CHECK(r.minusF_rel <= 1e-8);
  }

  TEST_CASE("dom(S_pi/2) is not dense in F+1") {
    const ExtensionHandle ext(kPw, kPi / 2.0);
    std::vector<GammaDomainElement> dict;
    for (const Cplx w : {Cplx(0.0), Cplx(0.5), Cplx(-0.5), Cplx(1.0), kI, -kI, Cplx(1.0, 1.0), Cplx(-1.0, 1.0)}) {
      dict.push_back({EntireFn::kernel(w), kI});
    }
    CHECK(nondensity_ratio(ext, dict) >= 0.99);
  }

  TEST_CASE("Paley-Wiener counterexample") {
    const CounterexampleReport r = counterexample_run(1.0);
    CHECK(std::abs(r.f_at_w0) <= 1e-12);
    CHECK(std::abs(r.w0 - Cplx(kPi, -1.0)) < 1e-15);
    CHECK(r.norm_phi_prime_sq == doctest::Approx(std::sinh(2.0)).epsilon(1e-8));
    CHECK(r.norm_phi_prime_sq == doctest::Approx(3.626860).epsilon(1e-6));
    CHECK(r.norm_eta_sq == doctest::Approx(r.norm_phi_sq).epsilon(1e-10));
    CHECK(r.relative_gap > 0.01);
    CHECK(r.fourier_residual <= 1e-10);
    CHECK(r.plancherel_ratio == doctest::Approx(2.0 * kPi).epsilon(1e-8));
    // f(z) = 2 sin((z + i) a) / (z + i) vanishes at pi / a - i for other a too.
    CHECK(std::abs(counterexample_run(2.5).f_at_w0) <= 1e-12);
  }
}
