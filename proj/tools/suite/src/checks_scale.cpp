#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "dbscale/scale.hpp"

namespace dbscale::suite::detail {

namespace {

Records duality(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c08.duality_on_B." + tag;
    auto rng = ctx.rng(id);
    IdentityError err;
    for (int k = 0; k < 10; ++k) {
      const EntireFn f = random_b_function(rng);
      const StarDomainElement g{random_b_function(rng), random_point(rng, 1.0, 1.0)};
      err.add(pairing_F(space, AssocFunction::from_B(f), g),
              inner_B(space, f, star_function(space, g)));
    }
    out.push_back(error_record(id, 8, {{"pairs", 10}, {"metric", "scaled"}}, err.scaled, ctx.tol(1e-7)));
  }
  return out;
}

std::vector<std::pair<std::string, AssocFunction>> assoc_samples(const DbSpace& space) {
  return {
      {"z_k0", {EntireFn::kernel(0.0), EntireFn()}},
      {"s_quarter_pi", assoc_decompose(space, EntireFn::s(kPi / 4.0))},
      {"s0", assoc_decompose(space, EntireFn::s(0.0))},
      {"mixed", {EntireFn::kernel(Cplx(1.0, 1.0)), EntireFn::kernel(-0.5)}},
      {"e", assoc_decompose(space, EntireFn::e())},
  };
}

Records roundtrip(const Ctx& ctx) {
  Records out;
  const auto grid = grid9();
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    double worst = 0.0;
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [name, f] : assoc_samples(space)) {
      const IdentityError e = assoc_roundtrip(space, f, grid);
      per[name] = e.scaled;
      worst = std::max(worst, e.scaled);
    }
    out.push_back(error_record("c08.assoc_roundtrip." + tag, 8, {{"elements", per}, {"metric", "scaled"}},
                               worst, ctx.tol(1e-7)));
  }
  return out;
}

Records pairing_consistency(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const ExtensionHandle ext(space, ctx.config.gamma);
    const std::string id = "c08.minus2_vs_F." + tag;
    auto rng = ctx.rng(id);
    std::vector<GammaDomainElement> gs;
    std::vector<StarDomainElement> stars;
    for (int k = 0; k < 4; ++k) {
      gs.push_back({random_b_function(rng), k % 2 == 0 ? kI : random_nonreal(rng)});
      stars.push_back(to_star(ext, gs.back()));
    }
    IdentityError err;
    for (const auto& [name, f] : assoc_samples(space)) {
      const std::vector<Cplx> viaF = pairing_F_many(space, f, stars);
      for (std::size_t k = 0; k < gs.size(); ++k) {
        err.add(pairing_minus2(ext, DualFunctional{f}, gs[k]), viaF[k]);
      }
    }
    out.push_back(error_record(id, 8, {{"functionals", 5}, {"elements", gs.size()}, {"metric", "scaled"}},
                               err.scaled, ctx.tol(1e-8)));

    // s_gamma annihilates dom(S_gamma) under both pairings.
    const AssocFunction sg = assoc_decompose(space, EntireFn::s(ext.gamma()));
    const auto dict = default_gamma_dictionary(ext);
    std::vector<StarDomainElement> dict_star;
    for (std::size_t k = 0; k < 10; ++k) dict_star.push_back(to_star(ext, dict[k]));
    double worst = 0.0;
    for (const Cplx p : pairing_F_many(space, sg, dict_star)) worst = std::max(worst, std::abs(p));
    for (std::size_t k = 0; k < 10; ++k) {
      worst = std::max(worst, std::abs(pairing_minus2(ext, DualFunctional{sg}, dict[k])));
    }
    out.push_back(error_record("c08.annihilator." + tag, 8, {{"elements", 10}, {"gamma", ext.gamma()}},
                               worst, ctx.tol(1e-8)));
  }
  return out;
}

Records scale_chain(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const ExtensionHandle ext(space, ctx.config.gamma);
    const auto gdict = default_gamma_dictionary(ext);
    const auto sdict = default_star_dictionary(ext);
    const GammaDomainElement samples[] = {{EntireFn::kernel(0.0), kI},
                                          {EntireFn::kernel(Cplx(0.5, -0.5)), Cplx(0.3, 0.9)}};
    // Lower bounds come from different engines, so allow a small slack.
    constexpr double kSlack = 1e-8;
    double violation = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& g : samples) {
      const ScaleNorms n = scale_norms(ext, g, gdict, sdict);
      violation = std::max(violation, n.minus2_lower - n.minusF_lower);
      violation = std::max(violation, n.minusF_lower - n.plain);
      violation = std::max(violation, n.plain - n.plusF);
      violation = std::max(violation, std::abs(n.plusF - n.plus2) / n.plus2);
      rows.push_back({n.minus2_lower, n.minusF_lower, n.plain, n.plusF, n.plus2});
    }
    out.push_back(error_record("c08.scale_chain." + tag, 8,
                               {{"norms[minus2,minusF,B,plusF,plus2]", rows}},
                               std::max(0.0, violation), std::max(kSlack, ctx.tol(kSlack))));
  }
  return out;
}

Records nondensity(const Ctx& ctx) {
  Records out;
  const Cplx pts[] = {0.0, 0.5, -0.5, 1.0, -1.0, kI, -kI, Cplx(1.0, 1.0)};
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const ExtensionHandle ext(space, kPi / 2.0);
    std::vector<GammaDomainElement> dict;
    for (const Cplx w : pts) dict.push_back({EntireFn::kernel(w), kI});
    const double ratio = nondensity_ratio(ext, dict);
    out.push_back(predicate_record("c09.nondensity." + tag, 9, {{"dictionary", dict.size()}}, ratio,
                                   0.99, ratio >= 0.99));
  }
  return out;
}

Records counterexample(const Ctx& ctx) {
  Records out;
  std::vector<double> as = {1.0};
  if (std::abs(ctx.config.a - 1.0) > 1e-12) as.push_back(ctx.config.a);
  for (const double a : as) {
    const CounterexampleReport r = counterexample_run(a);
    const std::string tag = a == 1.0 ? "a1" : "a_config";
    const nlohmann::json p = {{"a", a}, {"w0", cplx_json(r.w0)}};
    out.push_back(error_record("c15.zero_at_w0." + tag, 15, p, std::abs(r.f_at_w0), ctx.tol(1e-12)));
    const double closed = std::sinh(2.0 * a);
    out.push_back(error_record("c15.norm_phi_prime." + tag, 15,
                               {{"a", a}, {"quadrature", r.norm_phi_prime_sq}, {"closed_form", closed}},
                               std::abs(r.norm_phi_prime_sq - closed) / closed, ctx.tol(1e-8)));
    out.push_back(predicate_record("c15.isometry_gap." + tag, 15,
                                   {{"a", a},
                                    {"norm_phi_prime_sq", r.norm_phi_prime_sq},
                                    {"norm_eta_prime_sq", r.norm_eta_prime_sq}},
                                   r.relative_gap, 0.01, r.relative_gap > 0.01));
    out.push_back(error_record("c15.fourier_image." + tag, 15, {{"a", a}}, r.fourier_residual,
                               ctx.tol(1e-10)));
    out.push_back(error_record("c15.eta_norm." + tag, 15,
                               {{"a", a}, {"norm_phi_sq", r.norm_phi_sq}, {"norm_eta_sq", r.norm_eta_sq}},
                               std::abs(r.norm_eta_sq - r.norm_phi_sq) / r.norm_phi_sq, ctx.tol(1e-10)));
    out.push_back(error_record("c15.plancherel." + tag, 15, {{"a", a}, {"ratio", r.plancherel_ratio}},
                               std::abs(r.plancherel_ratio - 2.0 * kPi) / (2.0 * kPi), ctx.tol(1e-8)));
  }
  return out;
}

}  // namespace

void add_scale_tasks(std::vector<Task>& tasks) {
  tasks.push_back({"c08.duality_on_B", 8, duality});
  tasks.push_back({"c08.assoc_roundtrip", 8, roundtrip});
  tasks.push_back({"c08.minus2_vs_F", 8, pairing_consistency});
  tasks.push_back({"c08.scale_chain", 8, scale_chain});
  tasks.push_back({"c09.nondensity", 9, nondensity});
  tasks.push_back({"c15.counterexample", 15, counterexample});
}

}  // namespace dbscale::suite::detail
