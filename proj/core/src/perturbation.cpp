#include "dbscale/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

namespace dbscale {

namespace {

constexpr double kHalfPi = kPi / 2.0;

Cplx s_half(const DbSpace& space, Cplx z) { return s_gamma(space, kHalfPi, z); }

Cplx checked_s_half(const DbSpace& space, Cplx w) {
  const Cplx s = s_half(space, w);
  if (std::abs(s) < kSpectralTol) {
    std::ostringstream os;
    os << "w = " << w << " lies in the spectrum of S_{pi/2}";
    throw Error(ErrorCode::SpectralPoint, os.str());
  }
  return s;
}

// Re(s_0(i) / s_{pi/2}(i)), zero for every Paley-Wiener space.
double re_ratio_at_i(const DbSpace& space) {
  return (s_gamma(space, 0.0, kI) / s_half(space, kI)).real();
}

void require_perturbed_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < kPi) || std::abs(gamma - kHalfPi) < 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, pi) without pi/2");
  }
}

}  // namespace

EntireFn rhat_on_s0(const DbSpace& space, Cplx w) {
  const Cplx s = checked_s_half(space, w);
  return (-kPi / s) * EntireFn::kernel(std::conj(w));
}

Cplx boundary_functional(const DbSpace& space, const GammaDomainElement& h) {
  const ExtensionHandle ext(space, kHalfPi);
  const GammaDomainElement at_i = regenerate_at(ext, h, kI);
  return -kPi * fn_eval(at_i.generator, space, kI) / s_half(space, kI);
}

Cplx qfunc(const DbSpace& space, Cplx w, QForm form) {
  const Cplx s = checked_s_half(space, w);
  if (form == QForm::ClosedForm) {
    return kPi * re_ratio_at_i(space) - kPi * s_gamma(space, 0.0, w) / s;
  }
  if (w.imag() == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "definitional Q-function needs Im w != 0");
  }
  const ExtensionHandle ext(space, kHalfPi);
  const EntireFn phi = rhat_on_s0(space, kI);
  const EntireFn r_phi = resolvent_apply(ext, w, phi);
  return w * inner_B(space, phi, phi) + (1.0 + w * w) * inner_B(space, phi, r_phi);
}

double lambda_of_gamma(const DbSpace& space, double gamma) {
  return kPi * std::tan(gamma) + kPi * re_ratio_at_i(space);
}

KreinData make_krein_data(const DbSpace& space, double gamma, QForm form) {
  require_perturbed_gamma(gamma);
  return {gamma, lambda_of_gamma(space, gamma), form};
}

KreinCheck krein_diff_check(const DbSpace& space, const KreinData& data, Cplx w,
                            const EntireFn& f, std::span<const Cplx> grid) {
  require_perturbed_gamma(data.gamma);
  if (w.imag() == 0.0) throw Error(ErrorCode::InvalidArgument, "Krein check needs Im w != 0");
  const Cplx s = checked_s_half(space, w);
  const Cplx reduced = std::tan(data.gamma) + s_gamma(space, 0.0, w) / s;
  if (std::abs(reduced) < kDegenerateTol) {
    throw Error(ErrorCode::DegenerateDenominator, "tan gamma + s_0(w)/s_{pi/2}(w) vanishes");
  }
  const Cplx denom = kPi * reduced;

  const ExtensionHandle ext_g(space, data.gamma);
  const ExtensionHandle ext_h(space, kHalfPi);
  const EntireFn direct = resolvent_apply(ext_g, w, f) - resolvent_apply(ext_h, w, f);
  const EntireFn rhat_w = rhat_on_s0(space, w);
  const Cplx coeff = inner_B(space, rhat_on_s0(space, std::conj(w)), f) / denom;

  KreinCheck out;
  for (const Cplx z : grid) out.resolvent.add(fn_eval(direct, space, z), coeff * fn_eval(rhat_w, space, z));
  out.denominator_residual = std::abs(data.lambda - qfunc(space, w, data.form) - denom);
  return out;
}

std::vector<double> krein_poles(const DbSpace& space, double gamma, const RootWindow& window) {
  require_perturbed_gamma(gamma);
  const double step = window.effective_step(space) / 2.0;
  const double t = std::tan(gamma);
  auto s0 = [&](double x) { return s_gamma(space, 0.0, x).real(); };
  auto sh = [&](double x) { return s_half(space, x).real(); };
  auto ratio = [&](double x) { return t + s0(x) / sh(x); };
  const boost::math::tools::eps_tolerance<double> tol(50);

  // Splits [lo, hi] at a zero of s_{pi/2} and brackets sign changes of the
  // ratio on the continuous pieces.
  std::vector<double> roots;
  auto solve = [&](auto&& fn, double lo, double hi) {
    boost::uintmax_t iters = 200;
    const auto br = boost::math::tools::toms748_solve(fn, lo, hi, tol, iters);
    return 0.5 * (br.first + br.second);
  };
  auto scan_piece = [&](double lo, double hi) {
    const double flo = ratio(lo);
    const double fhi = ratio(hi);
    if (flo == 0.0) roots.push_back(lo);
    else if (flo * fhi < 0.0) roots.push_back(solve(ratio, lo, hi));
  };
  const int n = static_cast<int>(std::ceil((window.hi - window.lo) / step));
  for (int k = 0; k < n; ++k) {
    const double lo = window.lo + k * step;
    const double hi = std::min(window.hi, lo + step);
    const double a = sh(lo);
    const double b = sh(hi);
    if (a * b < 0.0) {
      const double pole = solve(sh, lo, hi);
      const double gap = 1e-9 * (1.0 + std::abs(pole));
      if (pole - gap > lo) scan_piece(lo, pole - gap);
      if (pole + gap < hi) scan_piece(pole + gap, hi);
    } else if (a != 0.0 && b != 0.0) {
      scan_piece(lo, hi);
    }
  }
  if (const double fh = sh(window.hi); fh != 0.0 && ratio(window.hi) == 0.0) roots.push_back(window.hi);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              roots.end());
  return roots;
}

EntireFn perturbation_direction(const DbSpace& space) {
  const ExtensionHandle ext(space, kHalfPi);
  const EntireFn phi = rhat_on_s0(space, kI);
  return phi - kI * resolvent_apply(ext, -kI, phi);
}

PerturbedDomainElement dom_gamma_decompose(const DbSpace& space, double gamma,
                                           const GammaDomainElement& g,
                                           std::span<const Cplx> grid) {
  const ExtensionHandle ext_g(space, gamma);
  const ExtensionHandle ext_h(space, kHalfPi);
  const Cplx s_i = s_gamma(space, gamma, kI);
  if (std::abs(s_i) < kDegenerateTol) {
    throw Error(ErrorCode::DegenerateDenominator, "s_gamma(i) vanishes");
  }
  const GammaDomainElement at_i = regenerate_at(ext_g, g, kI);
  const Cplx f_i = fn_eval(at_i.generator, space, kI);

  PerturbedDomainElement out;
  out.gamma = gamma;
  // cos(pi/2) is not exactly zero in floating point.
  const double c = std::abs(gamma - kHalfPi) < 1e-12 ? 0.0 : std::cos(gamma);
  out.b = -c * f_i / s_i;
  // h = R(i) f + i b R(-i) phi, and R(-i) phi = R(i) (phi - 2i R(-i) phi).
  EntireFn gen = at_i.generator;
  if (out.b != Cplx{}) {
    const EntireFn phi = rhat_on_s0(space, kI);
    const EntireFn shifted = phi - Cplx(0.0, 2.0) * resolvent_apply(ext_h, -kI, phi);
    gen = gen + (kI * out.b) * shifted;
  }
  out.h = {gen, kI};

  const Cplx lhs = boundary_functional(space, out.h);
  const Cplx rhs = kPi * out.b * (std::tan(gamma) + re_ratio_at_i(space));
  out.boundary_residual = std::abs(lhs - rhs);

  const EntireFn g_fn = domain_function(ext_g, at_i);
  const EntireFn h_fn = domain_function(ext_h, out.h);
  const EntireFn d = perturbation_direction(space);
  for (const Cplx z : grid) {
    const Cplx re = fn_eval(h_fn, space, z) + out.b * fn_eval(d, space, z);
    out.reassembly_residual = std::max(out.reassembly_residual, std::abs(re - fn_eval(g_fn, space, z)));
  }
  return out;
}

Cplx pairing_s0_F(const DbSpace& space, const PerturbedDomainElement& p) {
  return boundary_functional(space, p.h) - kPi * p.b * re_ratio_at_i(space);
}

IdentityError s_tilde_gamma_pairing_check(const DbSpace& space, double gamma,
                                          const GammaDomainElement& g,
                                          std::span<const GammaDomainElement> tests) {
  const ExtensionHandle ext_g(space, gamma);
  const ExtensionHandle ext_h(space, kHalfPi);
  const PerturbedDomainElement p = dom_gamma_decompose(space, gamma, g, {});
  const Cplx sigma = pairing_s0_F(space, p);
  const double cot = std::cos(gamma) / std::sin(gamma);

  const EntireFn g_fn = domain_function(ext_g, g);
  const EntireFn sg_fn = apply_S_gamma(ext_g, g);
  std::vector<EntireFn> us, sus;
  for (const auto& u : tests) {
    us.push_back(domain_function(ext_h, u));
    sus.push_back(apply_S_gamma(ext_h, u));
  }
  const std::vector<Cplx> g_su = inner_B_table(space, {g_fn}, sus);
  const std::vector<Cplx> sg_u = inner_B_table(space, {sg_fn}, us);
  IdentityError err;
  for (std::size_t j = 0; j < tests.size(); ++j) {
    const Cplx lhs = g_su[j] - cot / kPi * std::conj(sigma) * boundary_functional(space, tests[j]);
    err.add(lhs, sg_u[j]);
  }
  return err;
}

CyclicityResult cyclicity_check(const DbSpace& space, std::span<const Cplx> w_set,
                                const EntireFn& target) {
  if (w_set.empty()) throw Error(ErrorCode::EmptyDictionary, "cyclicity needs at least one point");
  const auto n = static_cast<Eigen::Index>(w_set.size());
  Eigen::MatrixXcd gram(n, n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Cplx wj = w_set[j];
    if (wj.imag() == 0.0) throw Error(ErrorCode::InvalidArgument, "cyclicity points must be nonreal");
    checked_s_half(space, wj);
    for (Eigen::Index l = 0; l < n; ++l) {
      gram(j, l) = kernel(space, std::conj(wj), std::conj(w_set[l]));
    }
    rhs(j) = fn_eval(target, space, std::conj(wj));
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
  const auto& sv = svd.singularValues();
  CyclicityResult out;
  out.condition = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : INFINITY;
  out.ill_conditioned = !(out.condition <= 1e12);
  const Eigen::VectorXcd c = gram.completeOrthogonalDecomposition().solve(rhs);

  std::vector<Cplx> coeffs{1.0};
  std::vector<EntireFn> terms{target};
  for (Eigen::Index j = 0; j < n; ++j) {
    coeffs.push_back(-c(j));
    terms.push_back(EntireFn::kernel(std::conj(w_set[j])));
  }
  out.residual = norm_B(space, EntireFn::lin_comb(std::move(coeffs), std::move(terms)));
  return out;
}

}  // namespace dbscale
