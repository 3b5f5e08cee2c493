#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"
#include "dbscale/scale.hpp"

namespace dbscale::suite::detail {

namespace {

constexpr int kDraws = 10;

template <class Body>
CheckRecord identity_draws(const Ctx& ctx, const std::string& id, int criterion, double tol,
                           Body body) {
  auto rng = ctx.rng(id);
  IdentityError err;
  for (int k = 0; k < kDraws; ++k) body(rng, err);
  return error_record(id, criterion, {{"draws", kDraws}, {"grid", 9}, {"metric", "scaled"}},
                      err.scaled, ctx.tol(tol));
}

Records resolvent_identities(const Ctx& ctx) {
  Records out;
  const auto grid = grid9();
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    out.push_back(identity_draws(ctx, "c05.quotient_kernel." + tag, 5, 1e-10,
                                 [&](auto& rng, IdentityError& err) {
      const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
      const Cplx v = random_nonreal(rng);
      const Cplx w = random_nonreal(rng);
      const IdentityError e = quotient_kernel_identity_check(ext, v, w, grid);
      err.max_abs = std::max(err.max_abs, e.max_abs);
      err.scaled = std::max(err.scaled, e.scaled);
    }));
    out.push_back(identity_draws(ctx, "c05.symmetry." + tag, 5, 1e-10,
                                 [&](auto& rng, IdentityError& err) {
      const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
      const IdentityError e = symmetry_check(ext, random_nonreal(rng), random_nonreal(rng), grid);
      err.max_abs = std::max(err.max_abs, e.max_abs);
      err.scaled = std::max(err.scaled, e.scaled);
    }));
    out.push_back(identity_draws(ctx, "c05.cayley_kernel." + tag, 5, 1e-10,
                                 [&](auto& rng, IdentityError& err) {
      const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
      const IdentityError e = cayley_kernel_check(ext, random_nonreal(rng), grid);
      err.max_abs = std::max(err.max_abs, e.max_abs);
      err.scaled = std::max(err.scaled, e.scaled);
    }));
    out.push_back(identity_draws(ctx, "c05.cayley_on_kernel." + tag, 5, 1e-10,
                                 [&](auto& rng, IdentityError& err) {
      const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
      const Cplx w0 = random_nonreal(rng);
      const Cplx z = random_point(rng);
      const IdentityError e = cayley_on_kernel_check(ext, w0, z, grid);
      err.max_abs = std::max(err.max_abs, e.max_abs);
      err.scaled = std::max(err.scaled, e.scaled);
    }));
  }
  return out;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

Records isometries(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    {
      const std::string id = "c06.cayley_unitary." + tag;
      auto rng = ctx.rng(id);
      double worst = 0.0;
      for (int k = 0; k < kDraws; ++k) {
        const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
        const EntireFn f = random_b_function(rng);
        const Cplx w = random_nonreal(rng);
        worst = std::max(worst, rel(norm_B(space, cayley_apply(ext, w, f)), norm_B(space, f)));
      }
      out.push_back(error_record(id, 6, {{"draws", kDraws}, {"metric", "relative"}}, worst, ctx.tol(1e-8)));
    }
    {
      const std::string id = "c06.sharp_plus2." + tag;
      auto rng = ctx.rng(id);
      double worst = 0.0;
      for (int k = 0; k < kDraws; ++k) {
        const ExtensionHandle ext(space, uniform(rng, 0.0, kPi));
        const GammaDomainElement g{random_b_function(rng), random_nonreal(rng)};
        worst = std::max(worst, rel(norm_plus2(ext, sharp(g)), norm_plus2(ext, g)));
      }
      out.push_back(error_record(id, 6, {{"draws", kDraws}, {"metric", "relative"}}, worst, ctx.tol(1e-8)));
    }
    {
      const std::string id = "c06.sharp_plusF." + tag;
      auto rng = ctx.rng(id);
      double worst = 0.0;
      for (int k = 0; k < kDraws; ++k) {
        const StarDomainElement g{random_b_function(rng), random_point(rng, 1.0, 1.0)};
        const StarDomainElement gs = star_decompose(space, sharp(star_function(space, g)),
                                                    sharp(star_apply(space, g)), g.gamma_ref);
        worst = std::max(worst, rel(norm_plusF(space, gs), norm_plusF(space, g)));
      }
      out.push_back(error_record(id, 6, {{"draws", kDraws}, {"metric", "relative"}}, worst, ctx.tol(1e-8)));
    }
    {
      // The +F inner product from the decomposition against the graph inner product.
      const std::string id = "c06.plusF_graph." + tag;
      auto rng = ctx.rng(id);
      IdentityError err;
      for (int k = 0; k < kDraws; ++k) {
        const StarDomainElement f{random_b_function(rng), random_point(rng, 1.0, 1.0)};
        const StarDomainElement g{random_b_function(rng), random_point(rng, 1.0, 1.0)};
        err.add(inner_plusF(space, f, g), inner_plusF_graph(space, f, g));
      }
      out.push_back(error_record(id, 6, {{"draws", kDraws}, {"metric", "scaled"}}, err.scaled, ctx.tol(1e-8)));
    }
  }
  return out;
}

Records sharp_report(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const ExtensionHandle ext(space, ctx.config.gamma);
    const SharpIsometryReport rep = sharp_isometry_checks(ext);
    const double worst = std::max({rep.plus2_rel, rep.plusF_rel, rep.minusF_rel});
    out.push_back(error_record("c06.sharp_dictionary." + tag, 6,
                               {{"checked", rep.checked},
                                {"plus2_rel", rep.plus2_rel},
                                {"plusF_rel", rep.plusF_rel},
                                {"minusF_rel", rep.minusF_rel}},
                               worst, ctx.tol(1e-8)));
  }
  return out;
}

Records kernel_plus2_checks(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c07.kernel_plus2." + tag;
    auto rng = ctx.rng(id);
    const ExtensionHandle ext(space, ctx.config.gamma);
    IdentityError err;
    double min_diag = INFINITY;
    for (int k = 0; k < 20; ++k) {
      const Cplx w = k % 4 == 0 ? Cplx(uniform(rng, -2.0, 2.0), 0.0) : random_point(rng);
      const GammaDomainElement g{random_b_function(rng), k % 2 == 0 ? kI : random_nonreal(rng)};
      const GammaDomainElement kp = kernel_plus2(ext, w);
      err.add(inner_plus2(ext, kp, g), fn_eval(domain_function(ext, g), space, w));
      const Cplx diag = fn_eval(domain_function(ext, kp), space, w);
      err.add(Cplx(std::pow(norm_plus2(ext, kp), 2)), diag);
      min_diag = std::min(min_diag, diag.real());
    }
    CheckRecord r = error_record(id, 7, {{"pairs", 20}, {"min_diagonal", min_diag}, {"metric", "scaled"}},
                                 err.scaled, ctx.tol(1e-8));
    r.pass = r.pass && min_diag > 0.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace

void add_operator_tasks(std::vector<Task>& tasks) {
  tasks.push_back({"c05.resolvent_identities", 5, resolvent_identities});
  tasks.push_back({"c06.isometries", 6, isometries});
  tasks.push_back({"c06.sharp_dictionary", 6, sharp_report});
  tasks.push_back({"c07.kernel_plus2", 7, kernel_plus2_checks});
}

}  // namespace dbscale::suite::detail
