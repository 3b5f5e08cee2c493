#include "dbscale/scale.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dbscale/numerics.hpp"

namespace dbscale {

EntireFn AssocFunction::function() const {
  if (g.is_zero()) return h;
  return EntireFn::mul_affine(0.0, g) + h;
}

AssocFunction assoc_decompose(const DbSpace& space, const EntireFn& phi) {
  const EntireFn t = (1.0 / kernel(space, kI, kI)) * EntireFn::kernel(kI);
  const Cplx phi_i = fn_eval(phi, space, kI);
  const EntireFn g = EntireFn::diff_quotient(space, phi, phi_i, t, kI);
  return {g, phi_i * t - kI * g};
}

double norm_plus2(const ExtensionHandle& ext, const GammaDomainElement& g) {
  return norm_B(ext.space(), regenerate_at(ext, g, kI).generator);
}

Cplx inner_plus2(const ExtensionHandle& ext, const GammaDomainElement& f,
                 const GammaDomainElement& g) {
  return inner_B(ext.space(), regenerate_at(ext, f, kI).generator,
                 regenerate_at(ext, g, kI).generator);
}

namespace {

void require_same_reference(const StarDomainElement& f, const StarDomainElement& g) {
  if (reduce_gamma(f.gamma_ref) != reduce_gamma(g.gamma_ref)) {
    throw Error(ErrorCode::InvalidArgument, "+F pairing needs a common gamma_ref");
  }
}

bool same_extension(double g1, double g2) {
  const double d = std::abs(reduce_gamma(g1) - reduce_gamma(g2));
  return d < 1e-12 || std::abs(d - kPi) < 1e-12;
}

EntireFn rhat_minus_i(const ExtensionHandle& ext, const DualFunctional& phi) {
  const DbSpace& space = ext.space();
  if (phi.is_s0 && same_extension(ext.gamma(), kPi / 2.0)) {
    return (-kPi / s_gamma(space, kPi / 2.0, -kI)) * EntireFn::kernel(kI);
  }
  const EntireFn f = phi.rep.function();
  const Cplx c = fn_eval(f, space, -kI) / s_gamma(space, ext.gamma(), -kI);
  return EntireFn::diff_quotient(space, f, c, EntireFn::s(ext.gamma()), -kI);
}

void check_level(const ExtensionHandle& ext, const DualFunctional& phi) {
  if (phi.level == DualLevel::BMinus2 && !same_extension(phi.gamma, ext.gamma())) {
    throw Error(ErrorCode::LevelMismatch,
                "functional defined for another selfadjoint extension");
  }
}

}  // namespace

Cplx inner_plusF(const DbSpace& space, const StarDomainElement& f, const StarDomainElement& g) {
  require_same_reference(f, g);
  Cplx out = inner_B(space, f.h_generator, g.h_generator);
  if (f.b != Cplx{} && g.b != Cplx{}) out += std::conj(f.b) * g.b * kernel(space, kI, kI);
  return out;
}

double norm_plusF(const DbSpace& space, const StarDomainElement& g) {
  return std::sqrt(std::max(0.0, inner_plusF(space, g, g).real()));
}

Cplx inner_plusF_graph(const DbSpace& space, const StarDomainElement& f,
                       const StarDomainElement& g) {
  return inner_B(space, star_function(space, f), star_function(space, g)) +
         inner_B(space, star_apply(space, f), star_apply(space, g));
}

GammaDomainElement kernel_plus2(const ExtensionHandle& ext, Cplx w) {
  return {resolvent_apply(ext, -kI, EntireFn::kernel(w)), kI};
}

Cplx pairing_minus2(const ExtensionHandle& ext, const DualFunctional& phi,
                    const GammaDomainElement& g) {
  check_level(ext, phi);
  return inner_B(ext.space(), rhat_minus_i(ext, phi), regenerate_at(ext, g, kI).generator);
}

Cplx pairing_minus2(const ExtensionHandle& ext, const EntireFn& phi, const GammaDomainElement& g) {
  return pairing_minus2(ext, DualFunctional{AssocFunction::from_B(phi)}, g);
}

std::vector<Cplx> pairing_F_many(const DbSpace& space, const AssocFunction& f,
                                 std::span<const StarDomainElement> gs, double tol) {
  const EntireFn fn = f.function();
  std::vector<EntireFn> hs;
  std::vector<DeficiencyDecomposition> parts;
  hs.reserve(gs.size());
  parts.reserve(gs.size());
  for (const auto& g : gs) {
    parts.push_back(deficiency_decompose(space, g));
    hs.push_back(parts.back().h);
  }
  const std::vector<Cplx> integrals = weighted_integrals(space, fn, hs, tol);
  // f#(i) = conj f(-i), f#(-i) = conj f(i).
  const Cplx sharp_at_i = std::conj(fn_eval(fn, space, -kI));
  const Cplx sharp_at_minus_i = std::conj(fn_eval(fn, space, kI));
  std::vector<Cplx> out(gs.size());
  for (std::size_t j = 0; j < gs.size(); ++j) {
    out[j] = integrals[j] + parts[j].a_plus * sharp_at_i + parts[j].a_minus * sharp_at_minus_i;
  }
  return out;
}

Cplx pairing_F(const DbSpace& space, const AssocFunction& f, const StarDomainElement& g,
               double tol) {
  return pairing_F_many(space, f, std::span(&g, 1), tol).front();
}

Cplx pairing_F(const DbSpace& space, const DualFunctional& phi, const StarDomainElement& g,
               double tol) {
  if (phi.level != DualLevel::FMinus1) {
    throw Error(ErrorCode::LevelMismatch, "the F pairing needs a functional on F+1");
  }
  return pairing_F(space, phi.rep, g, tol);
}

IdentityError assoc_roundtrip(const DbSpace& space, const AssocFunction& f,
                              std::span<const Cplx> grid, double tol) {
  std::vector<StarDomainElement> kernels;
  kernels.reserve(grid.size());
  for (const Cplx z : grid) kernels.push_back(star_from_kernel(space, z));
  const std::vector<Cplx> p = pairing_F_many(space, f, kernels, tol);
  const EntireFn fn = f.function();
  IdentityError err;
  for (std::size_t j = 0; j < grid.size(); ++j) err.add(std::conj(p[j]), fn_eval(fn, space, grid[j]));
  return err;
}

double minusF_lower(const DbSpace& space, const AssocFunction& f,
                    std::span<const StarDomainElement> dictionary, double tol) {
  if (dictionary.empty()) throw Error(ErrorCode::EmptyDictionary, "minusF_lower needs a dictionary");
  const std::vector<Cplx> p = pairing_F_many(space, f, dictionary, tol);
  double best = 0.0;
  for (std::size_t j = 0; j < dictionary.size(); ++j) {
    const double n = norm_plusF(space, dictionary[j]);
    if (n > 0.0) best = std::max(best, std::abs(p[j]) / n);
  }
  return best;
}

double minus2_lower(const ExtensionHandle& ext, const DualFunctional& phi,
                    std::span<const GammaDomainElement> dictionary) {
  if (dictionary.empty()) throw Error(ErrorCode::EmptyDictionary, "minus2_lower needs a dictionary");
  check_level(ext, phi);
  std::vector<EntireFn> gens;
  gens.reserve(dictionary.size());
  for (const auto& g : dictionary) gens.push_back(regenerate_at(ext, g, kI).generator);
  const std::vector<Cplx> p = inner_B_table(ext.space(), {rhat_minus_i(ext, phi)}, gens);
  double best = 0.0;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const double n = norm_B(ext.space(), gens[j]);
    if (n > 0.0) best = std::max(best, std::abs(p[j]) / n);
  }
  return best;
}

ScaleNorms scale_norms(const ExtensionHandle& ext, const GammaDomainElement& g,
                       std::span<const GammaDomainElement> gamma_dictionary,
                       std::span<const StarDomainElement> star_dictionary) {
  const DbSpace& space = ext.space();
  const EntireFn fn = domain_function(ext, g);
  ScaleNorms out;
  out.plus2 = norm_plus2(ext, g);
  out.plusF = norm_plusF(space, to_star(ext, g));
  out.plain = norm_B(space, fn);
  out.minusF_lower = minusF_lower(space, AssocFunction::from_B(fn), star_dictionary);
  out.minus2_lower = minus2_lower(ext, DualFunctional{AssocFunction::from_B(fn)}, gamma_dictionary);
  return out;
}

std::vector<Cplx> default_dictionary_points() {
  return {0.0, 0.5, -0.5, 1.0, -1.0, kI, -kI, Cplx(1.0, 1.0), Cplx(1.0, -1.0)};
}

std::vector<GammaDomainElement> default_gamma_dictionary(const ExtensionHandle&) {
  std::vector<GammaDomainElement> out;
  for (const Cplx w : default_dictionary_points()) {
    out.push_back({EntireFn::kernel(w), kI});
    out.push_back({EntireFn::kernel(w), -kI});
  }
  return out;
}

std::vector<StarDomainElement> default_star_dictionary(const ExtensionHandle& ext) {
  std::vector<StarDomainElement> out;
  for (const Cplx w : default_dictionary_points()) out.push_back(star_from_kernel(ext.space(), w));
  for (const auto& g : default_gamma_dictionary(ext)) out.push_back(to_star(ext, g));
  return out;
}

SharpIsometryReport sharp_isometry_checks(const ExtensionHandle& ext) {
  const DbSpace& space = ext.space();
  SharpIsometryReport rep;
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1e-300, std::abs(y)); };

  for (const auto& g : default_gamma_dictionary(ext)) {
    rep.plus2_rel = std::max(rep.plus2_rel, rel(norm_plus2(ext, sharp(g)), norm_plus2(ext, g)));
    ++rep.checked;
  }
  const auto stars = default_star_dictionary(ext);
  for (const auto& g : stars) {
    const EntireFn F = star_function(space, g);
    const EntireFn SF = star_apply(space, g);
    const StarDomainElement gs = star_decompose(space, sharp(F), sharp(SF), g.gamma_ref);
    rep.plusF_rel = std::max(rep.plusF_rel, rel(norm_plusF(space, gs), norm_plusF(space, g)));
    ++rep.checked;
  }
  const AssocFunction samples[] = {
      {EntireFn::kernel(kI), EntireFn::kernel(Cplx(1.0, 1.0))},
      {EntireFn(), EntireFn::kernel(Cplx(0.5, 0.5)) + kI * EntireFn::kernel(0.0)},
  };
  for (const auto& f : samples) {
    const AssocFunction fs{sharp(f.g), sharp(f.h)};
    rep.minusF_rel = std::max(
        rep.minusF_rel, rel(minusF_lower(space, fs, stars), minusF_lower(space, f, stars)));
    ++rep.checked;
  }
  return rep;
}

double nondensity_ratio(const ExtensionHandle& ext,
                        std::span<const GammaDomainElement> dictionary) {
  const DbSpace& space = ext.space();
  const EntireFn ki = EntireFn::kernel(kI);
  std::vector<EntireFn> fs{star_direction(space, ext.gamma())};
  std::vector<EntireFn> sfs{Cplx(-1.0) * resolvent_apply(ext, kI, ki)};
  for (const auto& g : dictionary) {
    fs.push_back(domain_function(ext, g));
    sfs.push_back(apply_S_gamma(ext, g));
  }
  const std::size_t n = fs.size();
  const std::vector<Cplx> a = inner_B_table(space, fs, fs);
  const std::vector<Cplx> b = inner_B_table(space, sfs, sfs);
  Eigen::MatrixXcd gram(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) gram(r, c) = a[r * n + c] + b[r * n + c];
  }
  double dist_sq = gram(0, 0).real();
  if (n > 1) {
    const Eigen::MatrixXcd h = gram.bottomRightCorner(n - 1, n - 1);
    const Eigen::VectorXcd r = gram.col(0).tail(n - 1);
    const Eigen::VectorXcd x = h.completeOrthogonalDecomposition().solve(r);
    dist_sq -= (r.adjoint() * x)(0).real();
  }
  return std::sqrt(std::max(0.0, dist_sq) / kernel(space, kI, kI).real());
}

CounterexampleReport counterexample_run(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidArgument, "counterexample needs a > 0");
  }
  using boost::math::quadrature::gauss_kronrod;
  using Quad = gauss_kronrod<double, 61>;
  constexpr double kQuadTol = 1e-13;
  const double c = 2.0 * a / kPi;
  const double shift = kPi / a;

  auto f = [a](Cplx z) {
    const Cplx t = z + kI;
    if (std::abs(t) < 1e-8) return Cplx(2.0 * a);
    return 2.0 * std::sin(a * t) / t;
  };
  auto eta = [c, shift](double x) {
    const Cplx wave = std::exp(Cplx(0.0, -shift * x));
    return std::exp(-x) * (1.0 + kI * c * (1.0 + wave));
  };
  auto eta_prime = [c, shift](double x) {
    const Cplx wave = std::exp(Cplx(0.0, -shift * x));
    const double ex = std::exp(-x);
    return -ex + kI * c * (-ex * (1.0 + wave) - Cplx(0.0, shift) * ex * wave);
  };
  auto integrate = [a](auto&& fn) { return Quad::integrate(fn, -a, a, 15, kQuadTol); };

  CounterexampleReport rep;
  rep.a = a;
  rep.w0 = Cplx(shift, -1.0);
  rep.f_at_w0 = f(rep.w0);
  rep.norm_phi_sq = integrate([](double x) { return std::exp(-2.0 * x); });
  rep.norm_phi_prime_sq = rep.norm_phi_sq;
  rep.norm_eta_sq = integrate([&](double x) { return std::norm(eta(x)); });
  rep.norm_eta_prime_sq = integrate([&](double x) { return std::norm(eta_prime(x)); });
  const double np = std::sqrt(rep.norm_phi_prime_sq);
  rep.relative_gap = std::abs(std::sqrt(rep.norm_eta_prime_sq) - np) / np;

  const Cplx zs[] = {0.0, 0.7, Cplx(-1.3, 0.4), Cplx(2.0, -0.5)};
  for (const Cplx z : zs) {
    auto integrand = [&](double x) { return std::exp(kI * z * x) * eta(x); };
    const double re = integrate([&](double x) { return integrand(x).real(); });
    const double im = integrate([&](double x) { return integrand(x).imag(); });
    const Cplx target = (z - std::conj(rep.w0)) / (z - rep.w0) * f(z);
    rep.fourier_residual =
        std::max(rep.fourier_residual, std::abs(Cplx(re, im) - target) / (1.0 + std::abs(target)));
  }

  const DbSpace space = DbSpace::paley_wiener(a);
  const EntireFn f_fn = EntireFn::user("2 sin(a(z+i))/(z+i)", f);
  const double nb = norm_B(space, f_fn);
  rep.plancherel_ratio = nb * nb / rep.norm_phi_sq;
  return rep;
}

}  // namespace dbscale
