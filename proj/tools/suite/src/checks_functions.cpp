#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "dbscale/numerics.hpp"
#include "dbscale/operator.hpp"

namespace dbscale::suite::detail {

namespace {

Records kernel_via_s(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c01.kernel_via_s." + tag;
    auto rng = ctx.rng(id);
    IdentityError err;
    for (int k = 0; k < 100; ++k) {
      const Cplx z = random_point(rng, 3.0, 2.0);
      // Every tenth draw sits next to the diagonal z = conj(w).
      const Cplx w = k % 10 == 0 ? std::conj(z) + Cplx(1e-9, -2e-9) : random_point(rng, 3.0, 2.0);
      const double g0 = uniform(rng, 0.0, kPi);
      err.add(kernel(space, z, w), kernel_via_s(space, g0, z, w));
    }
    out.push_back(error_record(id, 1, {{"draws", 100}, {"metric", "scaled"}}, err.scaled,
                               ctx.tol(1e-10)));
  }
  return out;
}

// 20 test functions: kernels, resolvent images, Cayley images.
std::vector<EntireFn> reproducing_family(const DbSpace& space, double gamma) {
  const ExtensionHandle ext(space, gamma);
  const Cplx pts[] = {0.0, 0.5, -0.5, 1.0, -1.0, kI, -kI, Cplx(1.0, 1.0), Cplx(1.0, -1.0)};
  std::vector<EntireFn> fs;
  for (const Cplx w : pts) fs.push_back(EntireFn::kernel(w));
  for (int j = 0; j < 5; ++j) fs.push_back(domain_function(ext, {EntireFn::kernel(pts[j + 3]), kI}));
  for (int j = 0; j < 3; ++j) fs.push_back(domain_function(ext, {EntireFn::kernel(pts[j]), -kI}));
  fs.push_back(cayley_apply(ext, Cplx(0.3, 0.8), EntireFn::kernel(0.2)));
  fs.push_back(cayley_apply(ext, Cplx(-0.5, -1.0), EntireFn::kernel(Cplx(0.4, 0.6))));
  fs.push_back(EntireFn::lin_comb({1.0, Cplx(0.0, 2.0), -0.5},
                                  {fs[0], fs[10], EntireFn::kernel(Cplx(-1.2, 0.3))}));
  return fs;
}

Records reproducing(const Ctx& ctx) {
  Records out;
  const Cplx ws[] = {0.3, -0.7, 1.2, Cplx(0.25, 0.5), Cplx(-1.0, 0.3), Cplx(0.5, -0.5),
                     Cplx(0.0, 1.5), Cplx(-0.8, -1.1), 2.2, 0.0};
  for (const auto& [tag, base] : primary_spaces(ctx.config)) {
    const std::vector<EntireFn> fs = reproducing_family(base, ctx.config.gamma);
    std::vector<EntireFn> ks;
    for (const Cplx w : ws) ks.push_back(EntireFn::kernel(w));
    const std::pair<const char*, IpEngine> engines[] = {{"sampling", IpEngine::sampling()},
                                                        {"quadrature", IpEngine::quadrature()}};
    for (const auto& [name, engine] : engines) {
      const DbSpace space = base.with_engine(engine);
      const std::vector<Cplx> table = inner_B_table(space, ks, fs);
      double worst = 0.0;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
          const Cplx fw = fn_eval(fs[j], space, ws[i]);
          worst = std::max(worst, std::abs(table[i * fs.size() + j] - fw) / (1.0 + std::abs(fw)));
        }
      }
      out.push_back(error_record("c02.reproducing." + tag + "." + name, 2,
                                 {{"functions", fs.size()}, {"points", ks.size()}}, worst,
                                 ctx.tol(1e-6)));
    }
  }
  return out;
}

Records s_rotation(const Ctx& ctx) {
  Records out;
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const std::string id = "c03.s_rotation." + tag;
    auto rng = ctx.rng(id);
    IdentityError err;
    for (int k = 0; k < 100; ++k) {
      const Cplx z = random_point(rng, 3.0, 2.0);
      const double g = uniform(rng, -kPi, 2.0 * kPi);
      const Cplx rhs = std::cos(g) * s_gamma(space, 0.0, z) + std::sin(g) * s_gamma(space, kPi / 2.0, z);
      err.add(s_gamma(space, g, z), rhs);
    }
    out.push_back(error_record(id, 3, {{"draws", 100}, {"metric", "scaled"}}, err.scaled,
                               ctx.tol(1e-12)));
  }
  return out;
}

double max_offset(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  return worst;
}

bool strictly_interlaced(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, int>> merged;
  for (const double v : x) merged.emplace_back(v, 0);
  for (const double v : y) merged.emplace_back(v, 1);
  std::sort(merged.begin(), merged.end());
  for (std::size_t k = 1; k < merged.size(); ++k) {
    if (merged[k].second == merged[k - 1].second) return false;
    if (merged[k].first - merged[k - 1].first < 1e-9) return false;
  }
  return !x.empty() && !y.empty();
}

Records spectra(const Ctx& ctx) {
  Records out;
  const double a = ctx.config.a;
  const double h = kPi / a;
  const DbSpace pw = DbSpace::paley_wiener(a);

  std::vector<double> ints, halves;
  for (int n = -5; n <= 5; ++n) ints.push_back(n * h);
  for (int n = -5; n <= 4; ++n) halves.push_back((n + 0.5) * h);
  const auto z0 = find_zeros(pw, 0.0, {-5.5 * h, 5.5 * h});
  const auto z1 = find_zeros(pw, kPi / 2.0, {-5.25 * h, 5.25 * h});
  out.push_back(error_record("c04.spectrum.gamma0", 4, {{"expected", "n pi / a, |n| <= 5"}, {"found", z0.size()}},
                             max_offset(z0, ints), ctx.tol(1e-10)));
  out.push_back(error_record("c04.spectrum.gamma_half_pi", 4,
                             {{"expected", "(n + 1/2) pi / a"}, {"found", z1.size()}},
                             max_offset(z1, halves), ctx.tol(1e-10)));

  const std::pair<double, double> pairs[] = {{0.0, kPi / 4.0},
                                             {kPi / 6.0, kPi / 2.0},
                                             {kPi / 3.0, 2.0 * kPi / 3.0},
                                             {0.2, 2.9},
                                             {reduce_gamma(ctx.config.gamma), reduce_gamma(ctx.config.gamma + 0.5)}};
  for (const auto& [tag, space] : primary_spaces(ctx.config)) {
    const RootWindow win{ctx.config.window_lo, ctx.config.window_hi};
    int ok = 0;
    nlohmann::json bad = nlohmann::json::array();
    for (const auto& [g1, g2] : pairs) {
      if (strictly_interlaced(find_zeros(space, g1, win), find_zeros(space, g2, win))) {
        ++ok;
      } else {
        bad.push_back({g1, g2});
      }
    }
    out.push_back(predicate_record("c04.interlacing." + tag, 4, {{"pairs", 5}, {"failed_pairs", bad}},
                                   ok, 5, ok == 5));
  }
  return out;
}

}  // namespace

void add_function_tasks(std::vector<Task>& tasks) {
  tasks.push_back({"c01.kernel_via_s", 1, kernel_via_s});
  tasks.push_back({"c02.reproducing", 2, reproducing});
  tasks.push_back({"c03.s_rotation", 3, s_rotation});
  tasks.push_back({"c04.spectrum", 4, spectra});
}

}  // namespace dbscale::suite::detail
