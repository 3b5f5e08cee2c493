#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "dbscale/perturbation.hpp"
#include "dbscale/scale.hpp"

namespace dbscale::suite::detail {

namespace {

Records qfunction(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c10.q_forms." + tag;
    auto rng = ctx.rng(id);
    IdentityError err;
    for (int k = 0; k < 10; ++k) {
      const Cplx w = random_nonreal(rng);
      err.add(qfunc(space, w, QForm::Definitional), qfunc(space, w, QForm::ClosedForm));
    }
    out.push_back(error_record(id, 10, {{"points", 10}, {"metric", "scaled"}}, err.scaled, ctx.tol(1e-9)));

    double min_im = INFINITY;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 5; ++c) {
        const Cplx w(-2.0 + c, 0.1 + 0.5 * r);
        min_im = std::min(min_im, qfunc(space, w).imag());
      }
    }
    out.push_back(predicate_record("c10.herglotz." + tag, 10, {{"points", 20}}, min_im, 0.0, min_im > 0.0,
                                   "smallest Im q on the upper half-plane grid"));
  }

  const double a = ctx.config.a;
  const DbSpace pw = DbSpace::paley_wiener(a);
  const std::string id = "c10.q_tangent.pw";
  auto rng = ctx.rng(id);
  IdentityError err;
  for (int k = 0; k < 10; ++k) {
    // Real points are kept a safe distance from the poles (n + 1/2) pi / a.
    Cplx w = k < 3 ? Cplx((uniform(rng, -2.0, 2.0) + 0.25 * (k % 2 == 0 ? 1 : -1)) * kPi / a / 2.0, 0.0)
                   : random_point(rng);
    if (std::abs(s_gamma(pw, kPi / 2.0, w)) < 1e-3) w += Cplx(0.0, 0.1);
    err.add(qfunc(pw, w), kPi * std::tan(a * w));
  }
  out.push_back(error_record(id, 10, {{"points", 10}, {"metric", "scaled"}}, err.scaled, ctx.tol(1e-10)));
  return out;
}

std::vector<EntireFn> krein_family(const DbSpace& space) {
  const ExtensionHandle half(space, kPi / 2.0);
  return {EntireFn::kernel(0.0), EntireFn::kernel(Cplx(1.0, 1.0)),
          domain_function(half, {EntireFn::kernel(0.5), kI})};
}

Records krein(const Ctx& ctx) {
  Records out;
  const auto grid = grid9();
  const Cplx ws[] = {kI, Cplx(0.3, 0.7)};
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const auto fs = krein_family(space);
    double resolvent = 0.0;
    double denominator = 0.0;
    for (const double g : gamma_grid(ctx.config)) {
      for (const QForm form : {QForm::ClosedForm, QForm::Definitional}) {
        const KreinData data = make_krein_data(space, g, form);
        for (const Cplx w : ws) {
          for (const auto& f : fs) {
            const KreinCheck c = krein_diff_check(space, data, w, f, grid);
            resolvent = std::max(resolvent, c.resolvent.max_abs);
            denominator = std::max(denominator, c.denominator_residual);
          }
        }
      }
    }
    const nlohmann::json p = {{"gammas", gamma_grid(ctx.config)}, {"points", 2}, {"functions", fs.size()}};
    out.push_back(error_record("c11.krein_resolvent." + tag, 11, p, resolvent, ctx.tol(1e-9)));
    out.push_back(error_record("c11.krein_denominator." + tag, 11, p, denominator, ctx.tol(1e-10)));

    // Real poles of the rank-one formula are the eigenvalues of S_gamma.
    const RootWindow win{ctx.config.window_lo, ctx.config.window_hi};
    double worst = 0.0;
    for (const double g : gamma_grid(ctx.config)) {
      const auto poles = krein_poles(space, g, win);
      const auto zeros = find_zeros(space, g, win);
      if (poles.size() != zeros.size()) {
        worst = INFINITY;
        continue;
      }
      for (std::size_t k = 0; k < poles.size(); ++k) worst = std::max(worst, std::abs(poles[k] - zeros[k]));
    }
    out.push_back(error_record("c11.krein_poles." + tag, 11, {{"gammas", gamma_grid(ctx.config)}}, worst,
                               ctx.tol(1e-8)));
  }
  return out;
}

Records domain_characterization(const Ctx& ctx) {
  Records out;
  const auto grid = grid9();
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c12.domain." + tag;
    auto rng = ctx.rng(id);
    double reassembly = 0.0;
    double boundary = 0.0;
    for (const double g : gamma_grid(ctx.config)) {
      for (int k = 0; k < 10; ++k) {
        const PerturbedDomainElement p = dom_gamma_decompose(space, g, {random_b_function(rng), kI}, grid);
        reassembly = std::max(reassembly, p.reassembly_residual);
        boundary = std::max(boundary, p.boundary_residual);
      }
    }
    const nlohmann::json params = {{"gammas", gamma_grid(ctx.config)}, {"draws_per_gamma", 10}};
    out.push_back(error_record("c12.reassembly." + tag, 12, params, reassembly, ctx.tol(1e-9)));
    out.push_back(error_record("c12.boundary_condition." + tag, 12, params, boundary, ctx.tol(1e-8)));
  }
  return out;
}

Records boundary_functional_checks(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c13.boundary_functional." + tag;
    auto rng = ctx.rng(id);
    const ExtensionHandle half(space, kPi / 2.0);
    const DualFunctional s0{assoc_decompose(space, EntireFn::s(0.0)), DualLevel::BMinus2, kPi / 2.0};
    const EntireFn ki = EntireFn::kernel(kI);
    const Cplx kii = kernel(space, kI, kI);
    double inside = 0.0;
    double outside = INFINITY;
    for (int k = 0; k < 10; ++k) {
      // A generator vanishing at i gives an element of dom(S).
      const EntireFn f = random_b_function(rng);
      const EntireFn f0 = f - (fn_eval(f, space, kI) / kii) * ki;
      const GammaDomainElement h{f0, kI};
      inside = std::max({inside, std::abs(boundary_functional(space, h)),
                         std::abs(pairing_minus2(half, s0, h))});
      const GammaDomainElement g{f + ki, kI};
      outside = std::min({outside, std::abs(boundary_functional(space, g)),
                          std::abs(pairing_minus2(half, s0, g))});
    }
    out.push_back(error_record(id + ".dom_S", 13, {{"samples", 10}}, inside, ctx.tol(1e-9)));
    out.push_back(predicate_record(id + ".outside", 13, {{"samples", 10}}, outside, 1e-6, outside >= 1e-6,
                                   "smallest |<s_0, h>| on dom(S_pi/2) minus dom(S)"));
  }
  return out;
}

Records perturbed_pairing(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c14.s_tilde." + tag;
    auto rng = ctx.rng(id);
    std::vector<GammaDomainElement> tests;
    for (int k = 0; k < 5; ++k) tests.push_back({random_b_function(rng), k % 2 == 0 ? kI : random_nonreal(rng)});
    double worst = 0.0;
    for (const double g : gamma_grid(ctx.config)) {
      const GammaDomainElement elem{random_b_function(rng), kI};
      worst = std::max(worst, s_tilde_gamma_pairing_check(space, g, elem, tests).max_abs);
    }
    out.push_back(error_record(id, 14, {{"gammas", gamma_grid(ctx.config)}, {"tests", tests.size()}}, worst,
                               ctx.tol(1e-7)));
  }
  return out;
}

Records cyclicity(const Ctx& ctx) {
  Records out;
  const std::vector<Cplx> ws = {Cplx(0.5, 1.0), Cplx(-0.5, 1.0), Cplx(1.5, 0.5),  Cplx(-1.5, 0.5),
                                Cplx(0.0, 2.0), Cplx(2.5, 1.0),  Cplx(-2.5, 1.0), Cplx(0.0, 0.5)};
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const ExtensionHandle half(space, kPi / 2.0);
    const std::pair<const char*, EntireFn> targets[] = {
        {"k0", EntireFn::kernel(0.0)},
        {"k0.7", EntireFn::kernel(0.7)},
        {"resolvent", domain_function(half, {EntireFn::kernel(-0.3), kI})},
    };
    bool decreasing = true;
    bool flagged = false;
    nlohmann::json rows = nlohmann::json::object();
    double worst_ratio = 0.0;
    for (const auto& [name, t] : targets) {
      double prev = INFINITY;
      nlohmann::json res = nlohmann::json::array();
      for (const std::size_t n : {2u, 4u, 8u}) {
        const CyclicityResult c = cyclicity_check(space, std::span(ws).first(n), t);
        res.push_back(c.residual);
        flagged = flagged || c.ill_conditioned;
        if (!(c.residual < prev)) decreasing = false;
        if (std::isfinite(prev)) worst_ratio = std::max(worst_ratio, c.residual / prev);
        prev = c.residual;
      }
      rows[name] = res;
    }
    out.push_back(predicate_record("c16.cyclicity." + tag, 16, {{"residuals", rows}, {"ill_conditioned", flagged}},
                                   worst_ratio, 1.0, decreasing,
                                   "largest ratio of consecutive residuals"));
  }
  return out;
}

}  // namespace

void add_perturbation_tasks(std::vector<Task>& tasks) {
  tasks.push_back({"c10.qfunction", 10, qfunction});
  tasks.push_back({"c11.krein", 11, krein});
  tasks.push_back({"c12.domain", 12, domain_characterization});
  tasks.push_back({"c13.boundary_functional", 13, boundary_functional_checks});
  tasks.push_back({"c14.s_tilde", 14, perturbed_pairing});
  tasks.push_back({"c16.cyclicity", 16, cyclicity});
}

}  // namespace dbscale::suite::detail
